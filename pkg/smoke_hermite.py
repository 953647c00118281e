import random
from fractions import Fraction

from ellsurf.exactpoly import UniPoly, discriminant_form
from ellsurf.hermite_aj import (
    AJImage,
    BasePointRamified,
    FamilyParams,
    NotOnCurve,
    QuarticCurve,
    ShortCubic,
    SingularCurve,
    ZeroScale,
    abel_jacobi,
    correspondence_22,
    correspondence_polys,
    discr_relation_check,
    exchange_constraint,
    j_invariant_22,
    j_invariant_quartic,
    jacobian_quartic,
    surface_symmetry,
)

rng = random.Random(2)


def rand_frac(lo=-9, hi=9):
    return Fraction(rng.randint(lo, hi))


# frozen examples
c = jacobian_quartic(QuarticCurve.of(1, 0, 0, 0, 1))
assert (c.f, c.g) == (-4, 0), (c.f, c.g)
c = jacobian_quartic(QuarticCurve.of(0, 0, -1, 0, 1))
assert (c.f, c.g) == (Fraction(-1, 3), Fraction(-2, 27)), (c.f, c.g)
assert c.discriminant == 0
c = jacobian_quartic(QuarticCurve.of(0, 0, 0, 0, 0))
assert (c.f, c.g) == (0, 0)
c = jacobian_quartic(QuarticCurve.of(1, 2, 0, 0, 1))
assert (c.f, c.g) == (-4, 4)
assert c.discriminant == -176

# P = x^4 -> Q = 0
polys = correspondence_polys(QuarticCurve.of(0, 0, 0, 0, 1))
assert polys.cofactor_diagonal.is_zero

# identity sweep
for trial in range(60):
    h = QuarticCurve.of(*(rand_frac() for _ in range(5)))
    p = h.poly()
    polys = correspondence_polys(h)
    R, R1 = polys.pairing, polys.cofactor
    assert R.is_symmetric and R1.is_symmetric
    assert R.diagonal() == p
    q_direct = Fraction(1, 3) * (p * p.derivative().derivative()) - Fraction(1, 4) * (
        p.derivative() * p.derivative()
    )
    assert polys.cofactor_diagonal == q_direct
    # R^2 + R1 (x-x0)^2 = P(x) P(x0): compare at second-coordinate samples
    for x0 in (Fraction(0), Fraction(1), Fraction(-2), Fraction(3, 2), Fraction(7)):
        lhs = R.at_second(x0) * R.at_second(x0) + R1.at_second(x0) * UniPoly.of(
            -x0, 1
        ) ** 2
        assert lhs == p * p(x0), (h, x0)
    disc_p, disc_q, s0 = discr_relation_check(h)

# discr frozen rows
dp, dq, s0 = discr_relation_check(QuarticCurve.of(1, 0, 0, 0, 1))
assert (dp, dq, s0) == (256, 0, 0)
dp, dq, s0 = discr_relation_check(QuarticCurve.of(1, 2, 0, 0, 1))
assert (dp, dq, s0) == (-176, 16 * -176, 4)
dp, dq, s0 = discr_relation_check(QuarticCurve.of(0, 0, -1, 0, 1))
assert dp == 0 and dq == 0

# AJ hand case
h = QuarticCurve.of(1, 2, 0, 0, 1)
img = abel_jacobi(h, (0, -1), (1, 2))
assert (img.xi, img.eta) == (0, -2), img
cub = jacobian_quartic(h)
assert cub.contains(img.xi, img.eta)
assert abel_jacobi(h, (0, -1), (0, -1)).is_infinity
conj = abel_jacobi(h, (0, -1), (0, 1))
assert cub.contains(conj.xi, conj.eta), conj
# base with w=0: P = x(x-1)(x+1)(x-2) has (0,0)
p0 = UniPoly.of(0, 1) * UniPoly.of(-1, 1) * UniPoly.of(1, 1) * UniPoly.of(-2, 1)
h0 = QuarticCurve.of(*(p0.coeff(i) for i in range(5)))
try:
    abel_jacobi(h0, (0, 0), (0, 0))
    raise AssertionError("expected BasePointRamified")
except BasePointRamified:
    pass
img = abel_jacobi(h0, (0, 0), (1, 0))  # distinct ramified points: generic chart
assert jacobian_quartic(h0).contains(img.xi, img.eta)
try:
    abel_jacobi(h, (0, -1), (5, 1))
    raise AssertionError("expected NotOnCurve")
except NotOnCurve:
    pass

# functional + conjugate checks over random curves with a rational point
checked = 0
while checked < 25:
    x0 = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    w0 = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    if w0 == 0:
        continue
    a1, a2, a3, a4 = (rand_frac(-5, 5) for _ in range(4))
    a0 = w0**2 - (a1 * x0 + a2 * x0**2 + a3 * x0**3 + a4 * x0**4)
    h = QuarticCurve.of(a0, a1, a2, a3, a4)
    cub = jacobian_quartic(h)
    base = (x0, -w0)
    conj = abel_jacobi(h, base, (x0, w0))
    assert cub.contains(conj.xi, conj.eta), (h, base)
    # another rational point when available: x = x0 gives only the pair; try
    # crafting a second one by reusing the same trick on the curve
    checked += 1

# j invariants
assert j_invariant_quartic(QuarticCurve.of(1, 0, 0, 0, 1)) == 1728
try:
    j_invariant_quartic(QuarticCurve.of(0, 0, -1, 0, 1))
    raise AssertionError("expected SingularCurve")
except SingularCurve:
    pass

done = 0
while done < 15:
    h = QuarticCurve.of(*(rand_frac(-6, 6) for _ in range(5)))
    if h.discriminant() == 0:
        continue
    xi = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    b = correspondence_22(h, xi)
    assert b.phi.is_symmetric
    # gamma/alpha/delta reading matches phi
    for xs in (Fraction(2), Fraction(-1), Fraction(1, 2)):
        for x0s in (Fraction(3), Fraction(-2)):
            val = (
                b.gamma(xs, 1) * x0s**2 + b.alpha(xs, 1) * x0s + b.delta(xs, 1)
            )
            assert val == b.phi(xs, x0s)
    jq = j_invariant_quartic(h)
    j22 = j_invariant_22(b)
    assert jq == j22, (h, xi, jq, j22)
    # exchange constraint equals -8*a3*(xi^3 + f xi + g)
    params = FamilyParams.from_triple(b.gamma, b.alpha, b.delta, 0, 0)
    cub = jacobian_quartic(h)
    assert exchange_constraint(params) == -8 * h.a3 * cub.rhs(xi), (h, xi)
    done += 1

# phi(x,x) = -4*Q at xi=0
h = QuarticCurve.of(1, 2, 0, 0, 1)
b = correspondence_22(h, 0)
assert b.phi.diagonal() == -4 * correspondence_polys(h).cofactor_diagonal

# symmetry moves
p = FamilyParams.of(3, -2, 5, 7, -1, 4, 2, 3)
assert surface_symmetry(p, "a", lam=1) == p
p2 = surface_symmetry(surface_symmetry(p, "c"), "c")
assert p2 == p
p0 = FamilyParams.of(3, -2, 5, 7, -1, 4, 0, 0)
assert surface_symmetry(p0, "d") == p0
try:
    surface_symmetry(p, "a", lam=0)
    raise AssertionError("expected ZeroScale")
except ZeroScale:
    pass
try:
    surface_symmetry(p0, "c")
    raise AssertionError("expected ZeroScale")
except ZeroScale:
    pass
# case a and b commute
pa = surface_symmetry(surface_symmetry(p, "a", lam=Fraction(3, 2)), "b", mu=2)
pb = surface_symmetry(surface_symmetry(p, "b", mu=2), "a", lam=Fraction(3, 2))
assert pa == pb

print("hermite smoke ok")
