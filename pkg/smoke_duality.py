"""Smoke checks for duality.py; deleted before the final commit."""

import random
from fractions import Fraction

from ellsurf import duality as du
from ellsurf import elliptic as el
from ellsurf.exactpoly import BiHomPoly, HomPoly, UniPoly, homogenize, tensor_forms
from ellsurf.hermite_aj import NormalizationViolated, UnitViolation

rng = random.Random(20260819)
ST = ("s", "t")
UV = ("U", "V")


def rand_form(vars, deg, lo=-9, hi=9):
    while True:
        p = HomPoly.of(vars, tuple(rng.randint(lo, hi) for _ in range(deg + 1)))
        if not p.is_zero:
            return p


def check(label, cond):
    if not cond:
        raise SystemExit(f"FAIL: {label}")
    print(f"ok: {label}")


# --- RESData / base_change_k3 / twist_model ---------------------------------
f4 = HomPoly.of(ST, (1, 0, 0, 0, 1))
g6 = HomPoly.of(ST, (0, 1, 0, 0, 0, 1, 1))
r = du.RESData(f4, g6)
check("RESData model weight 1", r.model().weight == 1)

y = du.base_change_k3(r, 0, 0)
check("base change weight 2", y.weight == 2)
check("base change deg doubling", (y.a4.degree, y.a6.degree) == (8, 12))
# d0 = d_inf = 0 pulls back along [u^2 : v^2]
check(
    "base change square substitution",
    y.a4 == f4.substitute(HomPoly.of(("u", "v"), (1, 0, 0)), HomPoly.of(("u", "v"), (0, 0, 1))),
)
cfg = el.fiber_configuration(y)
check("base change generic 24 I1", cfg.summary() == {"I1": 24})

try:
    du.base_change_k3(r, 2, Fraction(1, 2))
    raise SystemExit("FAIL: base change unit gate")
except UnitViolation:
    print("ok: base change unit gate")
try:
    du.base_change_k3(r, 1, 5)
    raise SystemExit("FAIL: base change collapse gate")
except UnitViolation:
    print("ok: base change collapse gate")

# singular-branch-fiber gate: force disc zero at [1:1] but not identically
f_bad = HomPoly.of(ST, (-3, 0, 0, 0, 0))
g_bad = HomPoly.of(ST, (0, 0, 0, 0, 0, 0, 2))
# 4f^3+27g^2 = -108 s^12 + 108 t^12 vanishes at (1,1)
rb = du.RESData(f_bad, g_bad)
try:
    du.base_change_k3(rb, 0, 0)
    raise SystemExit("FAIL: singular branch fiber gate")
except du.SingularBranchFiber as e:
    print(f"ok: singular branch fiber gate ({e})")

tw = du.twist_model(r, 0, 0)
check("twist weight 2", tw.weight == 2)
cfg = el.fiber_configuration(tw)
check("twist config 2 I0* + 12 I1", cfg.summary() == {"I0*": 2, "I1": 12})
check("twist euler 24", cfg.euler_total == 24)
star_places = sorted(p.place.text() for p in cfg.places if p.kodaira.label == "I0*")
print("twist star places:", star_places)

# --- two_isogeny_dual --------------------------------------------------------
A = rand_form(ST, 4)
B = rand_form(ST, 8)
pair = du.AlternatePair(A, B)
dual = du.two_isogeny_dual(pair)
ddual = du.two_isogeny_dual(dual)
check("isogeny square trace", ddual.trace == 4 * A)
check("isogeny square norm", ddual.norm == 16 * B)

A1 = HomPoly.of(ST, (1, 0, 0, 0, 0))
B1 = HomPoly.of(ST, (1, 0, 0, 0, 0, 0, 0, 0, -1))
p1 = du.AlternatePair(A1, B1)
m1 = el.fiber_configuration(p1.model())
m2 = el.fiber_configuration(du.two_isogeny_dual(p1).model())
print("isogeny place swap:", m1.summary(), m2.summary())

# --- ruling_swap -------------------------------------------------------------
C = HomPoly.of(ST, (1, 0, 0, 0, 0))
D = HomPoly.of(ST, (0, 0, 0, 0, 1))
Z = HomPoly.zero(ST, 4)
sw = du.ruling_swap(Z, C, D)
check("ruling swap a4", sw.coeffs[4] == HomPoly.of(UV, (1, 0, 0)))
check("ruling swap a0", sw.coeffs[0] == HomPoly.of(UV, (0, 0, 1)))
check("ruling swap middle zero", all(sw.coeffs[j].is_zero for j in (1, 2, 3)))
check("ruling swap f", sw.f == HomPoly.of(UV, (0, 0, -4, 0, 0)))
check("ruling swap g", sw.g.is_zero)

A = rand_form(ST, 4)
C = rand_form(ST, 4)
D = rand_form(ST, 4)
sw = du.ruling_swap(A, C, D)
cfg = el.fiber_configuration(sw.jacobian_model())
check("ruling swap jacobian config", cfg.summary() == {"I0*": 2, "I1": 12})

# matching identity: C(s,t)U^2 - A UV + D V^2 == sum_j a_j(U,V) s^j t^(4-j)
for _ in range(20):
    s0, t0, u0, v0 = (rng.randint(-9, 9) for _ in range(4))
    lhs = C(s0, t0) * u0 * u0 - A(s0, t0) * u0 * v0 + D(s0, t0) * v0 * v0
    rhs = sum(sw.coeffs[j](u0, v0) * s0**j * t0 ** (4 - j) for j in range(5))
    if lhs != rhs:
        raise SystemExit("FAIL: ruling swap matching identity")
print("ok: ruling swap matching identity")

# --- quadric_double_cover ----------------------------------------------------
pair = du.AlternatePair(A, C * D, split=(C, D))
qc = du.quadric_double_cover(pair)
check("quadric cover jacobian weight", qc.jacobian.weight == 2)
y00 = du.base_change_k3(du.RESData(qc.swap.f, qc.swap.g), 0, 0)
check("quadric cover vs base change", qc.jacobian == y00)

swap_uv = qc.branch.substitute_pair2(
    HomPoly.of(("u", "v"), (0, 1)), HomPoly.of(("u", "v"), (1, 0))
)
pair_flip = du.AlternatePair(A, C * D, split=(D, C))
check("u<->v exchanges split", swap_uv == du.quadric_double_cover(pair_flip).branch)

try:
    du.quadric_double_cover(du.AlternatePair(A, C * D))
    raise SystemExit("FAIL: missing factorization gate")
except du.MissingFactorization:
    print("ok: missing factorization gate")

# --- two_param_family / moduli_involution ------------------------------------
d0, dinf = Fraction(2), Fraction(3)
fam = du.two_param_family(A, C, D, d0, dinf)
inv = el.invariants(fam.model)
check("two-param reduced discriminant", inv.delta == 16 * fam.reduced_discriminant)

a2, a4 = fam.model.a2, fam.model.a4
lhs = a2 * a2 - 4 * a4
rhs = (d0 * dinf - 1) ** 2 * (
    A.rename(ST) * A.rename(ST) - 4 * C.rename(ST) * D.rename(ST)
)
check("two-param torsion discriminant identity", lhs == rhs)

t1 = du.moduli_involution(A, C, D, d0, dinf)
t2 = du.moduli_involution(*t1, d0, dinf)
scale = (d0 * dinf - 1) ** 2
check(
    "involution squares to scalar",
    t2 == (scale * A, scale * C, scale * D),
)
check(
    "involution at origin",
    du.moduli_involution(A, C, D, 0, 0) == (-A, C, D),
)
nA, nC, nD = t1
check(
    "involution preserves torsion discriminant",
    nA * nA - 4 * nC * nD == scale * (A * A - 4 * C * D),
)

# --- correspondence_surfaces --------------------------------------------------
g2, a2c, a1c, a0c, d0c = (Fraction(x) for x in (3, 1, -2, 5, 7))
gamma = HomPoly.of(UV, (g2, a2c, Fraction(4)))
alpha = HomPoly.of(UV, (a2c, a1c, a0c))
delta = HomPoly.of(UV, (Fraction(4), a0c, d0c))
table = du.correspondence_surfaces(alpha, gamma, delta)
for key in (
    "branch_cover1_cover2",
    "branch_cover1_quot2",
    "branch_quot1_cover2",
    "branch_quot1_quot2",
):
    lhs, rhs = table[key]
    check(f"{key} two routes agree", lhs == rhs)
for key in ("cover1", "cover1_dual", "quot1", "quot1_dual"):
    m = table[key]
    el.invariants(m)
print("cover1 config:", el.fiber_configuration(table["cover1"]).summary())
print("quot2 config:", el.fiber_configuration(table["quot2"]).summary())
print("rat2 config:", el.fiber_configuration(table["rat2"]).summary())
check("rat1 weight one", table["rat1"].weight == 1)

bad_gamma = HomPoly.of(UV, (g2, a2c + 1, Fraction(4)))
try:
    du.correspondence_surfaces(alpha, bad_gamma, delta)
    raise SystemExit("FAIL: normalization gate")
except NormalizationViolated:
    print("ok: normalization gate")

# --- full_torsion_surfaces ----------------------------------------------------
Af = rand_form(ST, 4)
Cf = rand_form(ST, 4)
tor = du.full_torsion_surfaces(Af, Cf)
for key in ("branch_4cover", "branch_cover", "branch_quot"):
    lhs, rhs = tor[key]
    check(f"{key} two routes agree", lhs == rhs)
check(
    "full torsion alt a4",
    4 * tor["alt"].a4 == Af.rename(ST) ** 2 - Cf.rename(ST) ** 2,
)
check("full torsion alt dual a4", tor["alt_dual"].a4 == Cf.rename(ST) ** 2)
print("alt config:", el.fiber_configuration(tor["alt"]).summary())
print("jac_cover config:", el.fiber_configuration(tor["jac_cover"]).summary())
print("res_quot config:", el.fiber_configuration(tor["res_quot"]).summary())
try:
    du.full_torsion_surfaces(Af, HomPoly.zero(ST, 4))
    raise SystemExit("FAIL: zero difference gate")
except du.DegenerateInput:
    print("ok: zero difference gate")
try:
    du.full_torsion_surfaces(Af, Af)
    raise SystemExit("FAIL: equal forms gate")
except du.DegenerateInput:
    print("ok: equal forms gate")

# --- bilinear_quadruple_surface ------------------------------------------------
quad = du.BilinearQuadruple.of(
    ((1, 2, 3, 5), (2, -1, 1, 4), (0, 1, 1, -3), (1, 1, -2, 1))
)
surf = du.bilinear_quadruple_surface(quad)
cfg = el.fiber_configuration(surf.model)
print("quadruple cover config:", cfg.summary())
check("quadruple cover euler", cfg.euler_total == 24)
b, c = surf.torsion_factors
sections = el.two_torsion_sections(surf.model)
print("torsion sections found:", len(sections))
check("torsion section b", any(s == b for s in sections))
check("torsion section c", any(s == c for s in sections))

rows_bad = ((1, 2, 2, 4), (2, -1, 1, 4), (0, 1, 1, -3), (1, 1, -2, 1))
try:
    du.bilinear_quadruple_surface(du.BilinearQuadruple.of(rows_bad))
    raise SystemExit("FAIL: reducible row gate")
except du.GenericityViolated as e:
    print(f"ok: reducible row gate ({e})")

rows_prop = ((1, 2, 3, 5), (2, 4, 6, 10), (0, 1, 1, -3), (1, 1, -2, 1))
try:
    du.bilinear_quadruple_surface(du.BilinearQuadruple.of(rows_prop))
    raise SystemExit("FAIL: proportional rows gate")
except du.GenericityViolated as e:
    print(f"ok: proportional rows gate ({e})")

# --- three lines + cubic --------------------------------------------------------
params = du.ThreeLinesCubicParams.of(
    mu=0, nu=1, c0=2, c1=1, d0=-1, d1=3, d2=2, e0=1, e1=-2, e2=1
)
model = du.three_lines_cubic_model(params)
cfg = el.fiber_configuration(model)
print("three lines config:", cfg.summary())
check("three lines config", cfg.summary() == {"I0*": 3, "I1": 6})

# degeneration chain at infinity
p_d2 = du.ThreeLinesCubicParams.of(0, 1, 2, 1, -1, 3, 0, 1, -2, 1)
print("d2=0 config:", el.fiber_configuration(du.three_lines_cubic_model(p_d2)).summary())
p_e2 = du.ThreeLinesCubicParams.of(0, 1, 2, 1, -1, 3, 0, 1, -2, 0)
print("d2=e2=0 config:", el.fiber_configuration(du.three_lines_cubic_model(p_e2)).summary())
# the final sharpening needs d1 = 0 as well (normalized subfamily)
p_e1 = du.ThreeLinesCubicParams.of(0, 1, 2, 1, -1, 0, 0, 1, 0, 0)
cfg_e1 = el.fiber_configuration(du.three_lines_cubic_model(p_e1)).summary()
print("d2=e2=e1=d1=0 config:", cfg_e1)
check("I3* chain step", cfg_e1 == {"I3*": 1, "I0*": 2, "I1": 3})
p_e1_generic_d1 = du.ThreeLinesCubicParams.of(0, 1, 2, 1, -1, 3, 0, 1, 0, 0)
check(
    "d1 != 0 stays at I2*",
    el.fiber_configuration(du.three_lines_cubic_model(p_e1_generic_d1)).summary()
    == {"I2*": 1, "I0*": 2, "I1": 4},
)

# normalize round trip (c1 > 0 draws recover exactly)
sq, lin, cst = du.general_form_coefficients(params)
back = du.normalize_three_i0star(0, 1, sq, lin, cst)
check("normalize round trip", back == params)

# mirror branch: c1 < 0 input becomes model-equal params
params_neg = du.ThreeLinesCubicParams.of(
    mu=0, nu=1, c0=2, c1=-1, d0=-1, d1=3, d2=2, e0=1, e1=-2, e2=1
)
sqn, linn, cstn = du.general_form_coefficients(params_neg)
back_neg = du.normalize_three_i0star(0, 1, sqn, linn, cstn)
check(
    "mirror branch model equality",
    du.three_lines_cubic_model(back_neg) == du.three_lines_cubic_model(params_neg),
)

# shifted round trip: forward-shift the image of params by rho_f = -5.  The
# cleared cubic of the image has roots {0, d2, c1+d2} = {0, 2, 3}, so the
# shifted data's roots are {5, 7, 8} and normalize is forced to pick 5,
# recovering params exactly.
sq_f, lin_f, cst_f = du.shift_cubic_term(sq, lin, cst, -5)
check("forward shift leaves cubic entry", cst_f[0] != 0)
back_shift = du.normalize_three_i0star(0, 1, sq_f, lin_f, cst_f)
check("shifted round trip params", back_shift == params)
shift_form = homogenize(5 * UniPoly.of(0, 1) * UniPoly.of(0, 1, 1), ("t", "h"), 4)
check(
    "shifted round trip model",
    du.star_triple_model(0, 1, sq_f, lin_f, cst_f).shift_x(shift_form)
    == du.three_lines_cubic_model(params),
)

try:
    du.normalize_three_i0star(0, 1, (1, 0), (0, 0, 0), (1, 0, 0, 7))
    raise SystemExit("FAIL: no rational root gate")
except du.NoRationalCubicRoot:
    print("ok: no rational root gate")
try:
    du.normalize_three_i0star(0, 1, (1, 0), (-1, 0, 0), (0, 0, 0, 0))
    raise SystemExit("FAIL: nonsquare disc gate")
except du.NonSquareDiscriminant:
    print("ok: nonsquare disc gate")

# --- refibration_jacobian --------------------------------------------------------
# a generic quadruple fails the square-discriminant gate
try:
    du.refibration_jacobian(quad)
    raise SystemExit("FAIL: generic quad should fail the square gate")
except du.NonSquareDiscriminant:
    print("ok: generic quad fails square gate")


def interpolate_row(base, x1, x2, lam1, lam2):
    """Row of a curve meeting the ``base`` curve over s = x1 and s = x2."""
    r1, r2, r3, r4 = base
    a1, b1 = lam1 * (r1 * x1 + r2), lam1 * (r3 * x1 + r4)
    a2, b2 = lam2 * (r1 * x2 + r2), lam2 * (r3 * x2 + r4)
    p1 = Fraction(a1 - a2, 1) / (x1 - x2)
    p3 = Fraction(b1 - b2, 1) / (x1 - x2)
    return (p1, a1 - p1 * x1, p3, b1 - p3 * x1)


def sample_refiber_quad(rng):
    """Quadruple whose pairs (0,3) and (1,2) meet over rational s values."""
    while True:
        row0 = tuple(Fraction(rng.randint(-5, 5)) for _ in range(4))
        row1 = tuple(Fraction(rng.randint(-5, 5)) for _ in range(4))
        xs = rng.sample(range(-6, 7), 4)
        lams = [Fraction(rng.randint(1, 4)) for _ in range(4)]
        try:
            row3 = interpolate_row(row0, Fraction(xs[0]), Fraction(xs[1]), lams[0], lams[1])
            row2 = interpolate_row(row1, Fraction(xs[2]), Fraction(xs[3]), lams[2], lams[3])
            q = du.BilinearQuadruple.of((row0, row1, row2, row3))
            du.bilinear_quadruple_surface(q)
            return q
        except (du.GenericityViolated, ZeroDivisionError):
            continue


quad_r = sample_refiber_quad(rng)
surf_r = du.bilinear_quadruple_surface(quad_r)
b_r, c_r = surf_r.torsion_factors
rj = du.refibration_jacobian(quad_r)
tor_r = du.full_torsion_surfaces(b_r + c_r, b_r - c_r)
check("refibration f matches full torsion", rj.f == tor_r["f"])
check("refibration g matches full torsion", rj.g == tor_r["g"])
cfg = el.fiber_configuration(rj.model)
print("refibration config:", cfg.summary())
check("refibration params chart", (rj.params.mu, rj.params.nu) == (0, 1))
rj2 = du.refibration_jacobian(quad_r, 2, 5)
check("chart independence of (f,g)", (rj2.f, rj2.g) == (rj.f, rj.g))

# --- subfamily_models -------------------------------------------------------------
f2 = HomPoly.of(UV, (2, -1, 3))
g3 = HomPoly.of(UV, (1, 0, -2, 1))
for kind, expect in (
    ("cover4", None),
    ("cover2", None),
    ("twist", None),
    ("rational", None),
):
    m = du.subfamily_models(kind, f2, g3)
    print(f"subfamily {kind}:", el.fiber_configuration(m).summary())
m_rat = du.subfamily_models("rational", f2, g3)
check("rational weight one", m_rat.weight == 1)
check(
    "rational euler 12",
    el.fiber_configuration(m_rat).euler_total == 12,
)
try:
    du.subfamily_models("bogus", f2, g3)
    raise SystemExit("FAIL: unknown kind gate")
except ValueError:
    print("ok: unknown kind gate")

print("\nALL SMOKE CHECKS PASSED")
