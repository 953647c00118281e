"""Surface constructions linking elliptic fibrations by covers, twists,
and isogenies.

Everything here manufactures Weierstrass models or double-cover branch
data from exact rational input:

* degree-two base changes and two-point quadratic twists of a rational
  elliptic surface (``base_change_k3``, ``twist_model``);
* the fiberwise two-isogeny dual of a fibration with a two-torsion
  section (``two_isogeny_dual``);
* double covers of the quadric surface together with the exchange of
  their two rulings (``quadric_double_cover``, ``ruling_swap``) and the
  two-parameter deformation obtained by moving a pair of section lines
  (``two_param_family``, ``moduli_involution``);
* the tower of models attached to a symmetric correspondence family
  (``correspondence_surfaces``) and to a family with full two-torsion
  (``full_torsion_surfaces``), plus the small tower shared by both
  (``subfamily_models``);
* double covers branched over four bilinear curves on the quadric
  (``bilinear_quadruple_surface``) and the relative Jacobian of their
  second, genus-one fibration (``refibration_jacobian``), which lands in
  the three-concurrent-lines-plus-cubic double planes
  (``three_lines_cubic_model``, ``normalize_three_i0star``).

All arithmetic is exact over the rationals; nothing here ever rounds or
approximates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .elliptic import (
    DegenerateModel,
    WeierstrassModel,
    invariants,
    quadratic_twist,
)
from .exactpoly import (
    BiHomPoly,
    DegreeMismatch,
    HomPoly,
    RationalLike,
    UniPoly,
    form_discriminant,
    homogenize,
    rat,
    tensor_forms,
)
from .hermite_aj import NormalizationViolated, UnitViolation, hermite_pair_forms

__all__ = [
    "AlternatePair",
    "BilinearQuadruple",
    "DegenerateInput",
    "DivisionGuard",
    "GenericityViolated",
    "MissingFactorization",
    "NoRationalCubicRoot",
    "NonSquareDiscriminant",
    "ParameterConstraintViolated",
    "QuadricCoverData",
    "QuadrupleCoverSurface",
    "RESData",
    "RefibrationJacobian",
    "RulingSwapData",
    "SingularBranchFiber",
    "ThreeLinesCubicParams",
    "TwoParamFamily",
    "base_change_k3",
    "bilinear_quadruple_surface",
    "correspondence_surfaces",
    "form_from_line_restriction",
    "full_torsion_surfaces",
    "general_form_coefficients",
    "moduli_involution",
    "normalize_three_i0star",
    "quadric_double_cover",
    "refibration_jacobian",
    "ruling_swap",
    "shift_cubic_term",
    "star_triple_model",
    "subfamily_models",
    "three_lines_cubic_model",
    "twist_model",
    "two_isogeny_dual",
    "two_param_family",
]

# Base-coordinate conventions.  Quotient bases use capitals, their double
# covers lower case; the fourfold cover gets its own pair, as does the
# affine pencil coordinate (second slot is the homogenizer).
_FIRST_QUOT = ("S", "T")
_FIRST_COVER = ("s", "t")
_SECOND_QUOT = ("U", "V")
_SECOND_COVER = ("u", "v")
_FOURFOLD = ("ut", "vt")
_PENCIL = ("t", "h")


class SingularBranchFiber(ValueError):
    """A fiber that the base change needs to be smooth is singular."""


class MissingFactorization(ValueError):
    """The construction needs a factorization that was not attached."""


class DegenerateInput(ValueError):
    """Input forms satisfy an identity that collapses the construction."""


class GenericityViolated(ValueError):
    """A configuration fails one of its genericity conditions."""


class NoRationalCubicRoot(ValueError):
    """The normalizing shift needs a rational cubic root and none exists."""


class NonSquareDiscriminant(ValueError):
    """A rational square root is required and does not exist."""


class DivisionGuard(ValueError):
    """Both sign choices for a square root hit a vanishing denominator."""


class ParameterConstraintViolated(ValueError):
    """A parameter tuple violates one of its defining constraints."""


# ---------------------------------------------------------------------------
# small exact helpers


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i * i != n:
                out.append(n // i)
        i += 1
    return out


def _rational_sqrt(c: Fraction) -> Fraction | None:
    """Exact square root of a rational, or None if not a square."""
    if c < 0:
        return None
    num, den = c.numerator, c.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _rational_cubic_roots(b: Fraction, c: Fraction, d: Fraction) -> list[Fraction]:
    """All rational roots of the monic cubic x^3 + b x^2 + c x + d."""
    lcm = 1
    for q in (b.denominator, c.denominator, d.denominator):
        lcm = lcm * q // math.gcd(lcm, q)
    ints = [lcm, int(b * lcm), int(c * lcm), int(d * lcm)]
    roots: set[Fraction] = set()
    while ints[-1] == 0:
        roots.add(Fraction(0))
        ints.pop()
        if len(ints) == 1:
            return sorted(roots)
    for num in _divisors(ints[-1]):
        for den in _divisors(ints[0]):
            if math.gcd(num, den) != 1:
                continue
            for cand in (Fraction(num, den), Fraction(-num, den)):
                acc = Fraction(0)
                for coeff in ints:
                    acc = acc * cand + coeff
                if acc == 0:
                    roots.add(cand)
    return sorted(roots)


def _solve_linear(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a square rational system exactly by Gaussian elimination."""
    n = len(rhs)
    rows = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular linear system")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def _form_resultant2(p: HomPoly, q: HomPoly) -> Fraction:
    """Resultant of two binary forms of declared degree two (4x4 Sylvester).

    Unlike the affine resultant this sees roots at infinity, so it vanishes
    exactly when the forms share a projective zero (or one is zero).
    """
    p0, p1, p2 = p.coeffs
    q0, q1, q2 = q.coeffs
    m = [
        [p0, p1, p2, Fraction(0)],
        [Fraction(0), p0, p1, p2],
        [q0, q1, q2, Fraction(0)],
        [Fraction(0), q0, q1, q2],
    ]

    def det3(a):
        return (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )

    total = Fraction(0)
    for j in range(4):
        minor = [[m[r][col] for col in range(4) if col != j] for r in range(1, 4)]
        term = m[0][j] * det3(minor)
        total += term if j % 2 == 0 else -term
    return total


def form_from_line_restriction(
    p: UniPoly,
    mu: RationalLike,
    nu: RationalLike,
    degree: int,
    vars: tuple[str, str] = ("U", "V"),
) -> HomPoly:
    """The unique form F of the declared degree with F(x + mu, x + nu) = p(x).

    Restricting a binary form to the affine line (x + mu, x + nu) is a
    linear isomorphism onto polynomials of degree <= degree whenever
    mu != nu; this inverts it by an exact linear solve.
    """
    muv, nuv = rat(mu), rat(nu)
    if muv == nuv:
        raise ParameterConstraintViolated("restriction line needs mu != nu")
    if p.degree > degree:
        raise DegreeMismatch(
            f"polynomial degree {p.degree} exceeds declared degree {degree}"
        )
    first = UniPoly.of(muv, 1)
    second = UniPoly.of(nuv, 1)
    cols = [first ** (degree - k) * second**k for k in range(degree + 1)]
    matrix = [[cols[k].coeff(m) for k in range(degree + 1)] for m in range(degree + 1)]
    rhs = [p.coeff(m) for m in range(degree + 1)]
    return HomPoly.of(vars, _solve_linear(matrix, rhs))


# ---------------------------------------------------------------------------
# rational elliptic surfaces: base change and twist


@dataclass(frozen=True)
class RESData:
    """A rational elliptic surface y^2 z = x^3 + f(s,t) x z^2 + g(s,t) z^3.

    ``f`` and ``g`` are binary forms of degrees four and six on the same
    base coordinates; 4 f^3 + 27 g^2 must not vanish identically.
    """

    f: HomPoly
    g: HomPoly

    def __post_init__(self) -> None:
        self.f._check_vars(self.g)
        if (self.f.degree, self.g.degree) != (4, 6):
            raise DegreeMismatch("rational surface data needs degrees (4, 6)")
        if self.reduced_discriminant().is_zero:
            raise DegenerateModel("discriminant vanishes identically")

    def reduced_discriminant(self) -> HomPoly:
        """4 f^3 + 27 g^2, the discriminant up to the constant -16."""
        return 4 * self.f**3 + 27 * self.g**2

    def model(self) -> WeierstrassModel:
        return WeierstrassModel(
            HomPoly.zero(self.f.vars, 2), self.f, self.g, 1
        )


def base_change_k3(
    r: RESData, d0: RationalLike, d_inf: RationalLike
) -> WeierstrassModel:
    """Pull back a rational elliptic surface along a degree-two base map.

    The double cover of the base line ramifies over [d0 : 1] and
    [1 : d_inf] and fixes [1 : 1]; pulling the coefficients back gives a
    weight-two model on the covering coordinates ("u", "v").  Requires
    (1 - d0)(1 - d_inf)(1 - d0 d_inf) != 0, so the three points stay
    distinct and the map has honest degree two, and the fibers of ``r``
    over all three points must be smooth.
    """
    d0v, div = rat(d0), rat(d_inf)
    if (1 - d0v) * (1 - div) * (1 - d0v * div) == 0:
        raise UnitViolation(
            "base cover degenerates: need d0 != 1, d_inf != 1 and d0*d_inf != 1"
        )
    disc = r.reduced_discriminant()
    for a, b in ((d0v, Fraction(1)), (Fraction(1), div), (Fraction(1), Fraction(1))):
        if disc(a, b) == 0:
            raise SingularBranchFiber(f"the fiber over [{a}:{b}] is singular")
    h_first = HomPoly.of(_SECOND_COVER, (1 - d0v, 0, d0v * (1 - div)))
    h_second = HomPoly.of(_SECOND_COVER, (div * (1 - d0v), 0, 1 - div))
    return WeierstrassModel(
        HomPoly.zero(_SECOND_COVER, 4),
        r.f.substitute(h_first, h_second),
        r.g.substitute(h_first, h_second),
        2,
    )


def twist_model(
    r: RESData, d0: RationalLike, d_inf: RationalLike
) -> WeierstrassModel:
    """Quadratic twist of a rational elliptic surface at two base points.

    Twisting at [d0 : 1] and [1 : d_inf] multiplies (f, g) by the square
    and cube of (U - d0 V)(d_inf U - V); the result is a weight-two model
    on the base coordinates of ``r`` whose generic fiber configuration is
    two additive star fibers plus twelve nodal ones.  Requires
    d0 * d_inf != 1 so the two twist points differ.
    """
    d0v, div = rat(d0), rat(d_inf)
    if d0v * div == 1:
        raise UnitViolation("twist points coincide: d0*d_inf must not be one")
    line0 = HomPoly.of(r.f.vars, (1, -d0v))
    line_inf = HomPoly.of(r.f.vars, (div, -1))
    return quadratic_twist(r.model(), line0 * line_inf)


# ---------------------------------------------------------------------------
# the two-torsion normal form and its two-isogeny dual


@dataclass(frozen=True)
class AlternatePair:
    """A fibration in the form y^2 z = x(x^2 - trace x z + norm z^2).

    ``trace`` (degree 2w) and ``norm`` (degree 4w) are the sum and product
    of the x-coordinates of the two nonzero two-torsion points.  ``norm``
    must not vanish identically.  An optional ``split`` attaches a
    factorization norm = left * right used by the quadric double cover.
    """

    trace: HomPoly
    norm: HomPoly
    split: tuple[HomPoly, HomPoly] | None = None

    def __post_init__(self) -> None:
        self.trace._check_vars(self.norm)
        if self.trace.degree % 2 or self.norm.degree != 2 * self.trace.degree:
            raise DegreeMismatch("trace and norm need degrees (2w, 4w)")
        if self.norm.is_zero:
            raise DegenerateModel("norm form vanishes identically")
        if self.split is not None:
            left, right = self.split
            self.trace._check_vars(left)
            self.trace._check_vars(right)
            if left * right != self.norm:
                raise MissingFactorization(
                    "attached factors do not multiply to the norm form"
                )

    @property
    def weight(self) -> int:
        return self.trace.degree // 2

    def model(self) -> WeierstrassModel:
        zero = HomPoly.zero(self.trace.vars, 3 * self.trace.degree)
        return WeierstrassModel(-self.trace, self.norm, zero, self.weight)


def two_isogeny_dual(pair: AlternatePair) -> AlternatePair:
    """Quotient by fiberwise translation by the two-torsion point x = 0.

    Sends (trace, norm) to (-2 trace, trace^2 - 4 norm).  Applying the map
    twice gives (4 trace, 16 norm), the original pair rescaled by the
    isomorphism (x, y) -> (4x, 8y), so the square acts as multiplication
    by four on the data.  The discriminant loci trade multiplicities: the
    places of norm and of trace^2 - 4 norm swap their fiber types.
    """
    return AlternatePair(
        -2 * pair.trace, pair.trace * pair.trace - 4 * pair.norm
    )


# ---------------------------------------------------------------------------
# double covers of the quadric and the exchange of rulings


@dataclass(frozen=True)
class RulingSwapData:
    """Refibration data for the curve left U^2 - trace UV + right V^2 = 0.

    Reading the bidegree-(4, 2) branch form against the second ruling
    turns the three degree-four coefficients into five degree-two forms:
    ``coeffs[j]`` is the coefficient of s^j t^(4-j), so that

        left(s,t) U^2 - trace(s,t) UV + right(s,t) V^2
            = sum_j coeffs[j](U, V) s^j t^(4-j).

    ``f`` and ``g`` (degrees 4 and 6) are the Jacobian coefficient pair of
    that quartic family.
    """

    trace: HomPoly
    left: HomPoly
    right: HomPoly
    coeffs: tuple[HomPoly, HomPoly, HomPoly, HomPoly, HomPoly]
    f: HomPoly
    g: HomPoly

    def jacobian_model(self) -> WeierstrassModel:
        """Twisted relative Jacobian: x^3 + U^2 V^2 f x + U^3 V^3 g."""
        uv = HomPoly.var_power(self.f.vars, 0, 1) * HomPoly.var_power(
            self.f.vars, 1, 1
        )
        return WeierstrassModel(
            HomPoly.zero(self.f.vars, 4),
            uv * uv * self.f,
            uv * uv * uv * self.g,
            2,
        )


def ruling_swap(trace: HomPoly, left: HomPoly, right: HomPoly) -> RulingSwapData:
    """Refiber the quadric double cover along its second ruling.

    The three inputs are degree-four forms on the first ruling describing
    the branch curve left u^4 - trace u^2 v^2 + right v^4; the output
    collects the degree-two coefficient forms on the second ruling
    together with their Jacobian pair (f, g).
    """
    trace._check_vars(left)
    trace._check_vars(right)
    if {trace.degree, left.degree, right.degree} != {4}:
        raise DegreeMismatch("ruling swap needs three degree-four forms")
    coeffs = tuple(
        HomPoly.of(
            _SECOND_QUOT,
            (left.coeffs[4 - j], -trace.coeffs[4 - j], right.coeffs[4 - j]),
        )
        for j in range(5)
    )
    f, g = hermite_pair_forms(*coeffs)
    return RulingSwapData(trace, left, right, coeffs, f, g)


@dataclass(frozen=True)
class QuadricCoverData:
    """A double cover of the quadric surface and its relative Jacobian."""

    branch: BiHomPoly
    swap: RulingSwapData
    jacobian: WeierstrassModel


def quadric_double_cover(pair: AlternatePair) -> QuadricCoverData:
    """Double cover of the quadric branched over left u^4 - trace u^2v^2 + right v^4.

    Requires ``pair.split``: the branch curve needs the factorization
    norm = left * right.  The projection to the first ruling is a
    genus-one fibration without section; its relative Jacobian, fibered
    over the covering coordinates of the second ruling, is the weight-two
    model x^3 + f(u^2, v^2) x + g(u^2, v^2) where (f, g) come from the
    ruling swap.  Exchanging u and v exchanges ``left`` and ``right``.
    """
    if pair.split is None:
        raise MissingFactorization("the norm form needs an attached factorization")
    left, right = pair.split
    trace_c = pair.trace.rename(_FIRST_COVER)
    u4 = HomPoly.var_power(_SECOND_COVER, 0, 4)
    v4 = HomPoly.var_power(_SECOND_COVER, 1, 4)
    u2v2 = HomPoly.var_power(_SECOND_COVER, 0, 2) * HomPoly.var_power(
        _SECOND_COVER, 1, 2
    )
    branch = (
        tensor_forms(left.rename(_FIRST_COVER), u4)
        + tensor_forms(-trace_c, u2v2)
        + tensor_forms(right.rename(_FIRST_COVER), v4)
    )
    swap = ruling_swap(pair.trace, left, right)
    u_sq = HomPoly.of(_SECOND_COVER, (1, 0, 0))
    v_sq = HomPoly.of(_SECOND_COVER, (0, 0, 1))
    jacobian = WeierstrassModel(
        HomPoly.zero(_SECOND_COVER, 4),
        swap.f.substitute(u_sq, v_sq),
        swap.g.substitute(u_sq, v_sq),
        2,
    )
    return QuadricCoverData(branch, swap, jacobian)


# ---------------------------------------------------------------------------
# moving the section lines: the two-parameter deformation


@dataclass(frozen=True)
class TwoParamFamily:
    """Branch curve, model and discriminant of a deformed quadric cover.

    ``reduced_discriminant`` is the model discriminant divided by 16; it
    factors as (d0 d_inf - 1)^2 L^2 M^2 (trace^2 - 4 left right) with L, M
    the two degree-four factors of the quartic coefficient.
    """

    branch: BiHomPoly
    model: WeierstrassModel
    reduced_discriminant: HomPoly


def _deformed_triple(
    trace: HomPoly,
    left: HomPoly,
    right: HomPoly,
    d0v: Fraction,
    div: Fraction,
) -> tuple[HomPoly, HomPoly, HomPoly]:
    new_trace = 2 * d0v * left + 2 * div * right - (1 + d0v * div) * trace
    new_left = left + div * div * right - div * trace
    new_right = d0v * d0v * left + right - d0v * trace
    return new_trace, new_left, new_right


def two_param_family(
    trace: HomPoly,
    left: HomPoly,
    right: HomPoly,
    d0: RationalLike,
    d_inf: RationalLike,
) -> TwoParamFamily:
    """Deform a quadric double cover by moving its two section lines.

    The branch curve of bidegree (4, 4) is

        (U - d0 V)(d_inf U - V)(left U^2 - trace UV + right V^2)

    with coefficient forms on the first covering pair ("s", "t").  The
    fibration over that pair is the two-torsion model with trace and norm
    read off from the deformed data; ``reduced_discriminant`` is its
    discriminant over 16.  The places of the factor trace^2 - 4 left right
    do not move with (d0, d_inf).  Requires d0 * d_inf != 1.
    """
    trace._check_vars(left)
    trace._check_vars(right)
    if {trace.degree, left.degree, right.degree} != {4}:
        raise DegreeMismatch("deformation needs three degree-four forms")
    d0v, div = rat(d0), rat(d_inf)
    if d0v * div == 1:
        raise UnitViolation("section lines meet on the curve: d0*d_inf must not be one")
    trace_c = trace.rename(_FIRST_COVER)
    left_c = left.rename(_FIRST_COVER)
    right_c = right.rename(_FIRST_COVER)
    lines = HomPoly.of(_SECOND_QUOT, (1, -d0v)) * HomPoly.of(_SECOND_QUOT, (div, -1))
    u_sq = HomPoly.of(_SECOND_QUOT, (1, 0, 0))
    uv = HomPoly.of(_SECOND_QUOT, (0, 1, 0))
    v_sq = HomPoly.of(_SECOND_QUOT, (0, 0, 1))
    branch = (
        tensor_forms(left_c, lines * u_sq)
        + tensor_forms(-trace_c, lines * uv)
        + tensor_forms(right_c, lines * v_sq)
    )
    new_trace, new_left, new_right = _deformed_triple(
        trace_c, left_c, right_c, d0v, div
    )
    model = WeierstrassModel(
        -new_trace,
        new_left * new_right,
        HomPoly.zero(_FIRST_COVER, 12),
        2,
    )
    unit = (d0v * div - 1) ** 2
    reduced = (
        unit
        * new_left**2
        * new_right**2
        * (trace_c * trace_c - 4 * left_c * right_c)
    )
    return TwoParamFamily(branch, model, reduced)


def moduli_involution(
    trace: HomPoly,
    left: HomPoly,
    right: HomPoly,
    d0: RationalLike,
    d_inf: RationalLike,
) -> tuple[HomPoly, HomPoly, HomPoly]:
    """Parameter involution induced by renormalizing the deformed cover.

    Maps (trace, left, right) to

        (2 d0 left + 2 d_inf right - (1 + d0 d_inf) trace,
         left + d_inf^2 right - d_inf trace,
         d0^2 left + right - d0 trace).

    At (0, 0) this is (-trace, left, right).  Applying the map twice
    rescales all three forms by (d0 d_inf - 1)^2, and the combination
    trace^2 - 4 left right is preserved up to the same factor squared.
    Requires d0 * d_inf != 1.
    """
    trace._check_vars(left)
    trace._check_vars(right)
    if {trace.degree, left.degree, right.degree} != {4}:
        raise DegreeMismatch("involution needs three degree-four forms")
    d0v, div = rat(d0), rat(d_inf)
    if d0v * div == 1:
        raise UnitViolation("involution degenerates: d0*d_inf must not be one")
    return _deformed_triple(trace, left, right, d0v, div)


# ---------------------------------------------------------------------------
# the symmetric correspondence tower


def correspondence_surfaces(
    alpha: HomPoly, gamma: HomPoly, delta: HomPoly
) -> dict[str, object]:
    """All models attached to a ruling-symmetric correspondence family.

    The inputs are the degree-two coefficient forms of the bidegree-(2,2)
    curve gamma(S,T) U^2 + alpha(S,T) UV + delta(S,T) V^2 and must satisfy
    the exchange normalization (the form is invariant under swapping the
    pairs (S,T) and (U,V)); otherwise ``NormalizationViolated`` is raised.
    Under the normalization the same three forms describe the curve read
    against either ruling.

    The returned dictionary holds the triple read against the second
    ruling under ``"cad"`` and twelve Weierstrass models: double covers
    (``cover1``, ``cover2``), twisted quotients (``quot1``, ``quot2``) and
    weight-one quotients (``rat1``, ``rat2``) of both rulings, each with
    its fiberwise two-isogeny dual under the ``_dual`` suffix.  The four
    ``branch_*`` keys hold pairs of bidegree-(4,4) forms built through two
    independent routes (once from each ruling's reading); each pair is
    equal, and reproduces the branch data of the corresponding double
    cover.
    """
    alpha._check_vars(gamma)
    alpha._check_vars(delta)
    if {alpha.degree, gamma.degree, delta.degree} != {2}:
        raise DegreeMismatch("correspondence data needs three degree-two forms")
    g2, g1, g0 = gamma.coeffs
    a2, a1, a0 = alpha.coeffs
    d2, d1, d0 = delta.coeffs
    if g1 != a2 or d2 != g0 or d1 != a0:
        raise NormalizationViolated(
            "triple is not symmetric under exchanging the two rulings"
        )

    prod = gamma * delta
    disc = alpha * alpha - 4 * prod

    def tower(base2, base4, vars, weight):
        zero = HomPoly.zero(vars, 6 * weight)
        return (
            WeierstrassModel(base2, base4, zero, weight),
            WeierstrassModel(-2 * base2, base2 * base2 - 4 * base4, zero, weight),
        )

    s_sq = HomPoly.of(_FIRST_COVER, (1, 0, 0))
    t_sq = HomPoly.of(_FIRST_COVER, (0, 0, 1))
    u_sq = HomPoly.of(_SECOND_COVER, (1, 0, 0))
    v_sq = HomPoly.of(_SECOND_COVER, (0, 0, 1))
    alpha_s = alpha.substitute(s_sq, t_sq)
    prod_s = prod.substitute(s_sq, t_sq)
    alpha_u = alpha.substitute(u_sq, v_sq)
    prod_u = prod.substitute(u_sq, v_sq)

    alpha_q1 = alpha.rename(_FIRST_QUOT)
    prod_q1 = prod.rename(_FIRST_QUOT)
    alpha_q2 = alpha.rename(_SECOND_QUOT)
    prod_q2 = prod.rename(_SECOND_QUOT)
    st = HomPoly.var_power(_FIRST_QUOT, 0, 1) * HomPoly.var_power(_FIRST_QUOT, 1, 1)
    uv = HomPoly.var_power(_SECOND_QUOT, 0, 1) * HomPoly.var_power(_SECOND_QUOT, 1, 1)

    cover1, cover1_dual = tower(alpha_s, prod_s, _FIRST_COVER, 2)
    cover2_dual, cover2 = tower(alpha_u, prod_u, _SECOND_COVER, 2)
    quot1, quot1_dual = tower(st * alpha_q1, st * st * prod_q1, _FIRST_QUOT, 2)
    quot2_dual, quot2 = tower(uv * alpha_q2, uv * uv * prod_q2, _SECOND_QUOT, 2)
    rat1, rat1_dual = tower(alpha_q1, prod_q1, _FIRST_QUOT, 1)
    rat2_dual, rat2 = tower(alpha_q2, prod_q2, _SECOND_QUOT, 1)

    # Both routes for each branch pair: read the curve against the first
    # ruling (left entry) and against the second (right entry).
    gamma_s = gamma.substitute(s_sq, t_sq)
    delta_s = delta.substitute(s_sq, t_sq)
    gamma_u = gamma.substitute(u_sq, v_sq)
    delta_u = delta.substitute(u_sq, v_sq)
    gamma_q1 = gamma.rename(_FIRST_QUOT)
    delta_q1 = delta.rename(_FIRST_QUOT)
    gamma_q2 = gamma.rename(_SECOND_QUOT)
    delta_q2 = delta.rename(_SECOND_QUOT)

    u4 = HomPoly.var_power(_SECOND_COVER, 0, 4)
    v4 = HomPoly.var_power(_SECOND_COVER, 1, 4)
    u2v2 = u_sq * v_sq
    s4 = HomPoly.var_power(_FIRST_COVER, 0, 4)
    t4 = HomPoly.var_power(_FIRST_COVER, 1, 4)
    s2t2 = s_sq * t_sq
    s3t = HomPoly.of(_FIRST_QUOT, (0, 1, 0, 0, 0))
    s2t2_q = HomPoly.of(_FIRST_QUOT, (0, 0, 1, 0, 0))
    st3 = HomPoly.of(_FIRST_QUOT, (0, 0, 0, 1, 0))
    u3v = HomPoly.of(_SECOND_QUOT, (0, 1, 0, 0, 0))
    u2v2_q = HomPoly.of(_SECOND_QUOT, (0, 0, 1, 0, 0))
    uv3 = HomPoly.of(_SECOND_QUOT, (0, 0, 0, 1, 0))

    branch_cc = (
        tensor_forms(gamma_s, u4)
        + tensor_forms(alpha_s, u2v2)
        + tensor_forms(delta_s, v4),
        tensor_forms(s4, gamma_u)
        + tensor_forms(s2t2, alpha_u)
        + tensor_forms(t4, delta_u),
    )
    branch_cq = (
        tensor_forms(gamma_s, u3v)
        + tensor_forms(alpha_s, u2v2_q)
        + tensor_forms(delta_s, uv3),
        tensor_forms(s4, uv * gamma_q2)
        + tensor_forms(s2t2, uv * alpha_q2)
        + tensor_forms(t4, uv * delta_q2),
    )
    branch_qc = (
        tensor_forms(st * gamma_q1, u4)
        + tensor_forms(st * alpha_q1, u2v2)
        + tensor_forms(st * delta_q1, v4),
        tensor_forms(s3t, gamma_u)
        + tensor_forms(s2t2_q, alpha_u)
        + tensor_forms(st3, delta_u),
    )
    branch_qq = (
        tensor_forms(st * gamma_q1, u3v)
        + tensor_forms(st * alpha_q1, u2v2_q)
        + tensor_forms(st * delta_q1, uv3),
        tensor_forms(s3t, uv * gamma_q2)
        + tensor_forms(s2t2_q, uv * alpha_q2)
        + tensor_forms(st3, uv * delta_q2),
    )

    return {
        "cad": (gamma_q2, alpha_q2, delta_q2),
        "cover1": cover1,
        "cover1_dual": cover1_dual,
        "cover2": cover2,
        "cover2_dual": cover2_dual,
        "quot1": quot1,
        "quot1_dual": quot1_dual,
        "quot2": quot2,
        "quot2_dual": quot2_dual,
        "rat1": rat1,
        "rat1_dual": rat1_dual,
        "rat2": rat2,
        "rat2_dual": rat2_dual,
        "branch_cover1_cover2": branch_cc,
        "branch_cover1_quot2": branch_cq,
        "branch_quot1_cover2": branch_qc,
        "branch_quot1_quot2": branch_qq,
    }


# ---------------------------------------------------------------------------
# the full two-torsion tower


def full_torsion_surfaces(trace: HomPoly, difference: HomPoly) -> dict[str, object]:
    """All models attached to a family with two independent two-torsion sections.

    ``trace`` and ``difference`` are degree-four forms: the x-coordinates
    of the two nonzero two-torsion points are (trace +- difference) / 2.
    Requires difference != 0 and trace^2 != difference^2 as forms
    (``DegenerateInput`` otherwise).

    Keys: the coefficient forms ``"a"`` (five linear forms a_i(U, V) with
    sum_i a_i s^(4-i) t^i the refibered branch quartic) and their Jacobian
    pair ``"f"``, ``"g"``; the two-torsion model ``alt`` and its
    two-isogeny dual ``alt_dual``; branch-form pairs built through two
    independent routes (``branch_4cover``, ``branch_cover``,
    ``branch_quot``, each a pair of equal bidegree-(4,4) forms); and the
    Jacobian tower ``jac_4cover``, ``jac_cover``, ``jac_quot_twisted``,
    ``res_cover``, ``res_quot``.
    """
    trace._check_vars(difference)
    if {trace.degree, difference.degree} != {4}:
        raise DegreeMismatch("full-torsion data needs two degree-four forms")
    if difference.is_zero:
        raise DegenerateInput("the two torsion sections coincide")
    if (trace * trace - difference * difference).is_zero:
        raise DegenerateInput("a torsion section hits x = 0 identically")

    trace_c = trace.rename(_FIRST_COVER)
    diff_c = difference.rename(_FIRST_COVER)
    half = Fraction(1, 2)
    coeffs = tuple(
        HomPoly.of(
            _SECOND_QUOT,
            (
                (trace_c.coeffs[i] - diff_c.coeffs[i]) * half,
                -(trace_c.coeffs[i] + diff_c.coeffs[i]) * half,
            ),
        )
        for i in range(5)
    )
    f, g = hermite_pair_forms(*coeffs)

    norm = (trace_c * trace_c - diff_c * diff_c) * Fraction(1, 4)
    alt_pair = AlternatePair(trace_c, norm)
    alt = alt_pair.model()
    alt_dual = two_isogeny_dual(alt_pair).model()

    # power-of-variable forms on the three base charts
    u_sq = HomPoly.of(_SECOND_COVER, (1, 0, 0))
    v_sq = HomPoly.of(_SECOND_COVER, (0, 0, 1))
    u2_minus_v2 = HomPoly.of(_SECOND_COVER, (1, 0, -1))
    cover_sq = HomPoly.of(_FOURFOLD, (1, 0, -1)) ** 2
    cover_sum = HomPoly.of(_FOURFOLD, (1, 0, 1)) ** 2
    u_q = HomPoly.var_power(_SECOND_QUOT, 0, 1)
    v_q = HomPoly.var_power(_SECOND_QUOT, 1, 1)
    uv_line = u_q * v_q * (u_q - v_q)

    def a_sum(u_form: HomPoly, v_form: HomPoly) -> BiHomPoly:
        """sum_i s^(4-i) t^i (x) a_i(u_form, v_form), the refibered branch."""
        powers = [
            HomPoly.of(_FIRST_COVER, tuple(1 if k == i else 0 for k in range(5)))
            for i in range(5)
        ]
        terms = [
            tensor_forms(powers[i], coeffs[i].substitute(u_form, v_form))
            for i in range(5)
        ]
        total = terms[0]
        for term in terms[1:]:
            total = total + term
        return total

    quarter_u4 = HomPoly.var_power(_FOURFOLD, 0, 4)
    quarter_v4 = HomPoly.var_power(_FOURFOLD, 1, 4)
    quarter_u2v2 = (
        HomPoly.var_power(_FOURFOLD, 0, 2) * HomPoly.var_power(_FOURFOLD, 1, 2)
    )
    branch_4cover = (
        a_sum(cover_sq, cover_sum),
        tensor_forms(-diff_c, quarter_u4)
        + tensor_forms(-2 * trace_c, quarter_u2v2)
        + tensor_forms(-diff_c, quarter_v4),
    )

    one_c = HomPoly.constant(_FIRST_COVER, 1)
    branch_cover = (
        tensor_forms((trace_c - diff_c) * half, u2_minus_v2 * u_sq)
        + tensor_forms(-(trace_c + diff_c) * half, u2_minus_v2 * v_sq),
        a_sum(u_sq, v_sq) * tensor_forms(one_c, u2_minus_v2),
    )
    branch_quot = (
        tensor_forms((trace_c - diff_c) * half, uv_line * u_q)
        + tensor_forms(-(trace_c + diff_c) * half, uv_line * v_q),
        a_sum(u_q, v_q) * tensor_forms(one_c, uv_line),
    )

    def jac(a4: HomPoly, a6: HomPoly, vars, weight: int) -> WeierstrassModel:
        return WeierstrassModel(HomPoly.zero(vars, 2 * weight), a4, a6, weight)

    jac_4cover = jac(
        f.substitute(cover_sq, cover_sum),
        g.substitute(cover_sq, cover_sum),
        _FOURFOLD,
        2,
    )
    jac_cover = jac(
        u2_minus_v2**2 * f.substitute(u_sq, v_sq),
        u2_minus_v2**3 * g.substitute(u_sq, v_sq),
        _SECOND_COVER,
        2,
    )
    jac_quot_twisted = jac(uv_line**2 * f, uv_line**3 * g, _SECOND_QUOT, 2)
    u_minus_v = u_q - v_q
    res_cover = jac(
        f.substitute(u_sq, v_sq), g.substitute(u_sq, v_sq), _SECOND_COVER, 1
    )
    res_quot = jac(u_minus_v**2 * f, u_minus_v**3 * g, _SECOND_QUOT, 1)

    return {
        "a": coeffs,
        "f": f,
        "g": g,
        "alt": alt,
        "alt_dual": alt_dual,
        "branch_4cover": branch_4cover,
        "branch_cover": branch_cover,
        "branch_quot": branch_quot,
        "jac_4cover": jac_4cover,
        "jac_cover": jac_cover,
        "jac_quot_twisted": jac_quot_twisted,
        "res_cover": res_cover,
        "res_quot": res_quot,
    }


# ---------------------------------------------------------------------------
# four bilinear curves on the quadric


@dataclass(frozen=True)
class BilinearQuadruple:
    """Four bidegree-(1,1) curves on the quadric, one coefficient row each.

    Row k holds (r1, r2, r3, r4) for the curve r1 s U + r2 U + r3 s + r4 = 0
    in affine coordinates (s, U) of the two rulings.
    """

    rows: tuple[
        tuple[Fraction, Fraction, Fraction, Fraction],
        tuple[Fraction, Fraction, Fraction, Fraction],
        tuple[Fraction, Fraction, Fraction, Fraction],
        tuple[Fraction, Fraction, Fraction, Fraction],
    ]

    def __post_init__(self) -> None:
        if len(self.rows) != 4 or any(len(row) != 4 for row in self.rows):
            raise DegreeMismatch("need a 4 x 4 coefficient matrix")

    @staticmethod
    def of(rows) -> BilinearQuadruple:
        return BilinearQuadruple(
            tuple(tuple(rat(x) for x in row) for row in rows)
        )

    def pair_form(self, i: int, j: int) -> HomPoly:
        """Eliminant of curves i and j: a degree-two form on the first ruling
        whose zeros sit under the intersection points of the two curves."""
        r1i, r2i, r3i, r4i = self.rows[i]
        r1j, r2j, r3j, r4j = self.rows[j]
        return HomPoly.of(
            _FIRST_COVER,
            (
                r1i * r3j - r3i * r1j,
                r1i * r4j + r2i * r3j - r3i * r2j - r4i * r1j,
                r2i * r4j - r4i * r2j,
            ),
        )


@dataclass(frozen=True)
class QuadrupleCoverSurface:
    """Double cover of the quadric branched over four bilinear curves.

    ``torsion_factors`` holds the two degree-four forms b = P01 P23 and
    c = P02 P13 (products of pair eliminants) giving the two-torsion model
    x (x - b)(x - c); ``refiber_triples[i]`` is the coefficient triple
    (p_i - q_i, p_i, -q_i) of the ascending s-coefficients of b and c,
    which are the building blocks of the second fibration's chart forms.
    """

    quadruple: BilinearQuadruple
    torsion_factors: tuple[HomPoly, HomPoly]
    model: WeierstrassModel
    refiber_triples: tuple[tuple[Fraction, Fraction, Fraction], ...]


def bilinear_quadruple_surface(quad: BilinearQuadruple) -> QuadrupleCoverSurface:
    """Weierstrass model of the double cover branched over four bilinear curves.

    Genericity requirements, each reported separately: every curve must be
    irreducible (nonvanishing 2x2 determinant), every pair must meet in
    two distinct points (nonzero eliminant with nonzero discriminant), and
    no three curves may share a point (nonzero resultant of eliminants).
    The generic configuration has twelve I2 fibers and full two-torsion:
    the model is y^2 z = x(x - b z)(x - c z) expanded about x = 0.
    """
    for k, row in enumerate(quad.rows):
        if row[0] * row[3] - row[1] * row[2] == 0:
            raise GenericityViolated(
                f"curve {k} is reducible: its 2x2 coefficient determinant vanishes"
            )
    pair_forms = {}
    for i, j in itertools.combinations(range(4), 2):
        p = quad.pair_form(i, j)
        if p.is_zero:
            raise GenericityViolated(f"curves {i} and {j} share a component")
        if form_discriminant(p) == 0:
            raise GenericityViolated(
                f"curves {i} and {j} are tangent: a double intersection point"
            )
        pair_forms[(i, j)] = p
    for i, j, k in itertools.combinations(range(4), 3):
        if _form_resultant2(pair_forms[(i, j)], pair_forms[(i, k)]) == 0:
            raise GenericityViolated(f"curves {i}, {j} and {k} meet in a point")

    b = pair_forms[(0, 1)] * pair_forms[(2, 3)]
    c = pair_forms[(0, 2)] * pair_forms[(1, 3)]
    model = WeierstrassModel(
        -(b + c), b * c, HomPoly.zero(_FIRST_COVER, 12), 2
    )
    b_aff, c_aff = b.as_unipoly(), c.as_unipoly()
    triples = tuple(
        (b_aff.coeff(i) - c_aff.coeff(i), b_aff.coeff(i), -c_aff.coeff(i))
        for i in range(5)
    )
    return QuadrupleCoverSurface(quad, (b, c), model, triples)


# ---------------------------------------------------------------------------
# three concurrent lines and a cubic: the pinned-star family


@dataclass(frozen=True)
class ThreeLinesCubicParams:
    """Parameters of a double plane branched over three concurrent lines
    and a cubic.

    The three lines of the pencil sit over t = -mu, t = -nu and t =
    infinity; (c1, c0) scale the c-part, (d2, d1, d0) the d-part and
    (e2, e1, e0) the e-part of the cubic.  Constraints: mu != nu, c1 != 0
    and c1 + d2 != 0.
    """

    mu: Fraction
    nu: Fraction
    c0: Fraction
    c1: Fraction
    d0: Fraction
    d1: Fraction
    d2: Fraction
    e0: Fraction
    e1: Fraction
    e2: Fraction

    def __post_init__(self) -> None:
        if self.mu == self.nu:
            raise ParameterConstraintViolated("the two marked lines coincide (mu = nu)")
        if self.c1 == 0:
            raise ParameterConstraintViolated("c1 must not vanish")
        if self.c1 + self.d2 == 0:
            raise ParameterConstraintViolated("c1 + d2 must not vanish")

    @staticmethod
    def of(mu, nu, c0, c1, d0, d1, d2, e0, e1, e2) -> ThreeLinesCubicParams:
        return ThreeLinesCubicParams(
            rat(mu), rat(nu), rat(c0), rat(c1), rat(d0),
            rat(d1), rat(d2), rat(e0), rat(e1), rat(e2),
        )


def _coeff_tuple(values, length: int, label: str) -> tuple[Fraction, ...]:
    out = tuple(rat(x) for x in values)
    if len(out) != length:
        raise DegreeMismatch(f"{label} needs exactly {length} coefficients")
    return out


def star_triple_model(
    mu: RationalLike,
    nu: RationalLike,
    sq,
    lin,
    cst,
) -> WeierstrassModel:
    """Weight-two model with additive star fibers pinned at t = -mu, -nu, infinity.

    With p = (t + mu)(t + nu) the model is

        y^2 = x^3 + p (sq1 t + sq0) x^2 + p^2 (lin2 t^2 + lin1 t + lin0) x
              + p^3 (cst3 t^3 + cst2 t^2 + cst1 t + cst0),

    homogenized on the pencil coordinates.  Coefficient tuples are given
    descending: ``sq`` has length 2, ``lin`` 3, ``cst`` 4.  Requires
    mu != nu.
    """
    muv, nuv = rat(mu), rat(nu)
    if muv == nuv:
        raise ParameterConstraintViolated("the two affine star fibers coincide")
    sqv = _coeff_tuple(sq, 2, "quadratic part")
    linv = _coeff_tuple(lin, 3, "linear part")
    cstv = _coeff_tuple(cst, 4, "constant part")
    pencil = UniPoly.of(muv * nuv, muv + nuv, 1)
    a2 = pencil * UniPoly.of(*reversed(sqv))
    a4 = pencil**2 * UniPoly.of(*reversed(linv))
    a6 = pencil**3 * UniPoly.of(*reversed(cstv))
    return WeierstrassModel(
        homogenize(a2, _PENCIL, 4),
        homogenize(a4, _PENCIL, 8),
        homogenize(a6, _PENCIL, 12),
        2,
    )


def shift_cubic_term(sq, lin, cst, rho: RationalLike):
    """Coefficient effect of the shift x -> x + rho * t * (t + mu)(t + nu).

    Returns the new (sq, lin, cst) tuples; the transformation is
    independent of mu and nu.  Choosing rho as a root of
    z^3 + sq1 z^2 + lin2 z + cst3 clears the leading constant-part entry.
    """
    sqv = _coeff_tuple(sq, 2, "quadratic part")
    linv = _coeff_tuple(lin, 3, "linear part")
    cstv = _coeff_tuple(cst, 4, "constant part")
    r = rat(rho)
    c1, c0 = sqv
    d2, d1, d0 = linv
    e3, e2, e1, e0 = cstv
    new_sq = (c1 + 3 * r, c0)
    new_lin = (d2 + 2 * r * c1 + 3 * r * r, d1 + 2 * r * c0, d0)
    new_cst = (
        e3 + r**3 + r * r * c1 + r * d2,
        e2 + r * r * c0 + r * d1,
        e1 + r * d0,
        e0,
    )
    return new_sq, new_lin, new_cst


def general_form_coefficients(p: ThreeLinesCubicParams):
    """Pinned-star coefficient tuples (sq, lin, cst) of a line-cubic family.

    ``star_triple_model(p.mu, p.nu, *general_form_coefficients(p))`` is
    the Weierstrass model of the double plane with parameters ``p``; the
    leading constant-part entry is always zero in this image.
    """
    s = p.c1 + p.d2
    sq = (-(p.c1 + 2 * p.d2), p.c0 + p.d1 + p.e2)
    lin = (s * p.d2, -s * (p.d1 + 2 * p.e2), s * (p.d0 + p.e1))
    cst = (Fraction(0), s * s * p.e2, -s * s * p.e1, s * s * p.e0)
    return sq, lin, cst


def three_lines_cubic_model(p: ThreeLinesCubicParams) -> WeierstrassModel:
    """Weierstrass model of the double plane with parameters ``p``.

    The generic configuration is three additive star fibers (at t = -mu,
    t = -nu and infinity) plus six nodal fibers; the chain d2 = 0, then
    e2 = 0, then e1 = 0 sharpens the star at infinity one step at a time
    while removing nodal fibers.  The last step needs d1 = 0 as well: with
    d2 = e2 = e1 = 0 but d1 != 0 the star at infinity stays one step lower,
    because the degree count at infinity picks up a c1^4 d1^2 term.
    """
    sq, lin, cst = general_form_coefficients(p)
    return star_triple_model(p.mu, p.nu, sq, lin, cst)


def normalize_three_i0star(
    mu: RationalLike, nu: RationalLike, sq, lin, cst
) -> ThreeLinesCubicParams:
    """Recover line-cubic parameters from pinned-star coefficient tuples.

    A shift x -> x + rho t (t + mu)(t + nu) first clears the leading
    constant-part entry; rho must be a rational root of the monic cubic
    z^3 + sq1 z^2 + lin2 z + cst3 (``NoRationalCubicRoot`` otherwise).
    Roots are tried by increasing magnitude (nonnegative first on ties),
    so already-cleared inputs are left untouched, and the first root whose
    shifted quadratic-part discriminant sq1^2 - 4 lin2 is a rational
    square is used (``NonSquareDiscriminant`` if none is).  The positive
    square root becomes c1 unless that choice makes the denominator
    c1 - sq1 vanish, in which case the negative root is taken
    (``DivisionGuard`` if both vanish, ``ParameterConstraintViolated`` if
    the square root itself is zero, since c1 = 0 never parametrizes a
    double plane).  The remaining parameters follow by exact substitution.
    """
    muv, nuv = rat(mu), rat(nu)
    if muv == nuv:
        raise ParameterConstraintViolated("the two affine star fibers coincide")
    sq0 = _coeff_tuple(sq, 2, "quadratic part")
    lin0 = _coeff_tuple(lin, 3, "linear part")
    cst0 = _coeff_tuple(cst, 4, "constant part")
    roots = _rational_cubic_roots(sq0[0], lin0[0], cst0[0])
    if not roots:
        raise NoRationalCubicRoot("no rational shift clears the leading cubic entry")
    roots.sort(key=lambda r: (abs(r), 1 if r < 0 else 0))
    chosen = None
    for rho in roots:
        sqv, linv, cstv = shift_cubic_term(sq0, lin0, cst0, rho)
        disc = sqv[0] * sqv[0] - 4 * linv[0]
        root = _rational_sqrt(disc)
        if root is not None and root != 0:
            chosen = (sqv, linv, cstv, root)
            break
    if chosen is None:
        sqv, linv, _ = shift_cubic_term(sq0, lin0, cst0, roots[0])
        disc = sqv[0] * sqv[0] - 4 * linv[0]
        if disc == 0:
            raise ParameterConstraintViolated(
                "vanishing quadratic discriminant: c1 would be zero"
            )
        raise NonSquareDiscriminant(
            f"shifted quadratic discriminant {disc} is not a rational square"
        )
    sqv, linv, cstv, root = chosen
    c1t, c0t = sqv
    d2t, d1t, d0t = linv
    e3t, e2t, e1t, e0t = cstv
    assert e3t == 0
    c1 = root
    if c1 == c1t:
        c1 = -root
        if c1 == c1t:
            raise DivisionGuard("both square-root signs collide with the shifted data")
    den = c1 - c1t
    d2 = -(c1 + c1t) / 2
    e2 = 4 * e2t / den**2
    e1 = -4 * e1t / den**2
    e0 = 4 * e0t / den**2
    d0 = 2 * d0t / den + 4 * e1t / den**2
    d1 = -2 * d1t / den - 8 * e2t / den**2
    c0 = 2 * d1t / den + 4 * e2t / den**2 + c0t
    return ThreeLinesCubicParams(muv, nuv, c0, c1, d0, d1, d2, e0, e1, e2)


# ---------------------------------------------------------------------------
# refibering the quadruple cover


@dataclass(frozen=True)
class RefibrationJacobian:
    """Relative Jacobian data of the second fibration of a quadruple cover.

    ``model`` is the pinned-star model obtained by freezing the first
    fibration coordinate on the chart (mu, nu); ``params`` its line-cubic
    normalization; ``f`` and ``g`` the coefficient forms of the branch
    cubic x^3 + f x + g, reconstructed from the model and equal to the
    Jacobian pair of the induced full-torsion family.
    """

    params: ThreeLinesCubicParams
    model: WeierstrassModel
    f: HomPoly
    g: HomPoly


def refibration_jacobian(
    quad: BilinearQuadruple,
    mu: RationalLike = 0,
    nu: RationalLike = 1,
) -> RefibrationJacobian:
    """Relative Jacobian of the genus-one refibration of a quadruple cover.

    Freezing the base coordinate of the quadruple-cover surface and
    refibering along the other direction gives a genus-one pencil whose
    relative Jacobian has additive star fibers pinned at t = -mu, -nu and
    infinity; (mu, nu) only fix the affine chart and must differ.  The
    rationality conditions of the normalization (rational cubic root,
    square discriminant) do not depend on the chart.  The reconstructed
    pair (f, g) satisfies, for the two torsion factors b and c of the
    cover, full_torsion_surfaces(b + c, b - c)["f"] == f and likewise for
    g.
    """
    surface = bilinear_quadruple_surface(quad)
    muv, nuv = rat(mu), rat(nu)
    if muv == nuv:
        raise ParameterConstraintViolated("chart parameters must be distinct")
    b, c = surface.torsion_factors
    b_aff, c_aff = b.as_unipoly(), c.as_unipoly()
    quartic = [
        UniPoly.of(
            b_aff.coeff(i) * muv - c_aff.coeff(i) * nuv,
            b_aff.coeff(i) - c_aff.coeff(i),
        )
        for i in range(5)
    ]
    a0q, a1q, a2q, a3q, a4q = quartic
    sq_poly = a2q
    lin_poly = a1q * a3q - 4 * a0q * a4q
    cst_poly = a1q * a1q * a4q + a0q * a3q * a3q - 4 * a0q * a2q * a4q

    def descending(p: UniPoly, degree: int) -> tuple[Fraction, ...]:
        return tuple(p.coeff(degree - k) for k in range(degree + 1))

    sq = descending(sq_poly, 1)
    lin = descending(lin_poly, 2)
    cst = descending(cst_poly, 3)
    model = star_triple_model(muv, nuv, sq, lin, cst)
    params = normalize_three_i0star(muv, nuv, sq, lin, cst)
    third = Fraction(1, 3)
    depressed_lin = lin_poly - sq_poly * sq_poly * third
    depressed_cst = (
        Fraction(2, 27) * sq_poly**3 - third * sq_poly * lin_poly + cst_poly
    )
    f_hat = form_from_line_restriction(depressed_lin, muv, nuv, 2, _SECOND_QUOT)
    g_hat = form_from_line_restriction(depressed_cst, muv, nuv, 3, _SECOND_QUOT)
    f_out = f_hat.swap().rename(_SECOND_QUOT)
    g_out = (-g_hat).swap().rename(_SECOND_QUOT)
    return RefibrationJacobian(params, model, f_out, g_out)


# ---------------------------------------------------------------------------
# the shared subfamily tower


_SUBFAMILY_KINDS = ("cover4", "cover2", "twist", "rational")


def subfamily_models(kind: str, f: HomPoly, g: HomPoly) -> WeierstrassModel:
    """One member of the model tower attached to a short pair (f, g).

    ``f`` and ``g`` are forms of degrees two and three on a shared pair.
    Kinds:

    * ``"cover4"``: weight two on the fourfold-cover coordinates, with
      f and g evaluated at ((u^2 - v^2)^2, (u^2 + v^2)^2);
    * ``"cover2"``: weight two on the double-cover coordinates, with
      coefficients (u^2 - v^2)^2 f(u^2, v^2) and (u^2 - v^2)^3 g(u^2, v^2);
    * ``"twist"``: weight two on the quotient coordinates, twisted by
      UV(U - V);
    * ``"rational"``: weight one on the quotient coordinates, twisted by
      (U - V).

    Raises ``DegenerateModel`` if the resulting discriminant vanishes
    identically.
    """
    f._check_vars(g)
    if (f.degree, g.degree) != (2, 3):
        raise DegreeMismatch("subfamily tower needs degrees (2, 3)")
    if kind == "cover4":
        vars = _FOURFOLD
        sq_diff = HomPoly.of(vars, (1, 0, -1)) ** 2
        sq_sum = HomPoly.of(vars, (1, 0, 1)) ** 2
        model = WeierstrassModel(
            HomPoly.zero(vars, 4),
            f.substitute(sq_diff, sq_sum),
            g.substitute(sq_diff, sq_sum),
            2,
        )
    elif kind == "cover2":
        vars = _SECOND_COVER
        u_sq = HomPoly.of(vars, (1, 0, 0))
        v_sq = HomPoly.of(vars, (0, 0, 1))
        diff = HomPoly.of(vars, (1, 0, -1))
        model = WeierstrassModel(
            HomPoly.zero(vars, 4),
            diff**2 * f.substitute(u_sq, v_sq),
            diff**3 * g.substitute(u_sq, v_sq),
            2,
        )
    elif kind == "twist":
        vars = _SECOND_QUOT
        u_q = HomPoly.var_power(vars, 0, 1)
        v_q = HomPoly.var_power(vars, 1, 1)
        line = u_q * v_q * (u_q - v_q)
        f_q = f.rename(vars)
        g_q = g.rename(vars)
        model = WeierstrassModel(
            HomPoly.zero(vars, 4), line**2 * f_q, line**3 * g_q, 2
        )
    elif kind == "rational":
        vars = _SECOND_QUOT
        line = HomPoly.of(vars, (1, -1))
        f_q = f.rename(vars)
        g_q = g.rename(vars)
        model = WeierstrassModel(
            HomPoly.zero(vars, 2), line**2 * f_q, line**3 * g_q, 1
        )
    else:
        raise ValueError(f"unknown kind {kind!r}; expected one of {_SUBFAMILY_KINDS}")
    invariants(model)
    return model
