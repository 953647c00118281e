"""Weierstrass models of elliptic surfaces fibered over the projective line.

A model of weight ``w`` is

    y^2 = x^3 + a2(s,t) x^2 + a4(s,t) x + a6(s,t)

with binary forms of degrees ``(2w, 4w, 6w)``.  Everything downstream of the
coefficients is exact: the standard invariants ``c4, c6, delta`` are forms,
fibers are classified per place of the base from the valuation triple
``(v(c4), v(c6), v(delta))`` after local minimalization, and two-torsion
sections are found as exact polynomial roots of the right-hand cubic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .exactpoly import (
    DegreeMismatch,
    HomPoly,
    UniPoly,
    form_sqrt,
    homogenize,
    multiplicity_in,
    refine_against,
    squarefree_split,
)


class DegenerateModel(ValueError):
    """The discriminant vanishes identically; there is no elliptic surface."""


class NonMinimal(ValueError):
    """Valuations admit a (4, 6, 12) reduction; classify after minimalizing."""


class InconsistentValuations(ValueError):
    """No Weierstrass model can realize the requested valuation triple."""


# ---------------------------------------------------------------------------
# fiber types
# ---------------------------------------------------------------------------


_EULER_BASE = {"I": 0, "I*": 6, "II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}


@dataclass(frozen=True)
class KodairaType:
    """A Kodaira fiber type; ``n`` is used only by the I and I* series."""

    family: str
    n: int = 0

    def __post_init__(self):
        if self.family not in _EULER_BASE:
            raise ValueError(f"unknown fiber family {self.family!r}")
        if self.family in ("I", "I*"):
            if self.n < 0:
                raise ValueError("fiber index must be nonnegative")
        elif self.n != 0:
            raise ValueError(f"type {self.family} carries no index")

    @property
    def euler(self) -> int:
        return _EULER_BASE[self.family] + self.n

    @property
    def label(self) -> str:
        if self.family == "I":
            return f"I{self.n}"
        if self.family == "I*":
            return f"I{self.n}*"
        return self.family

    @staticmethod
    def parse(text: str) -> KodairaType:
        t = text.strip()
        if t in ("II", "III", "IV", "II*", "III*", "IV*"):
            return KodairaType(t)
        star = t.endswith("*")
        body = t[:-1] if star else t
        if body.startswith("I") and body[1:].isdigit():
            return KodairaType("I*" if star else "I", int(body[1:]))
        raise ValueError(f"unrecognized fiber label {text!r}")

    def __str__(self) -> str:
        return self.label


def euler_number(fiber: KodairaType) -> int:
    """Euler number contributed by one fiber of this type."""
    return fiber.euler


# ---------------------------------------------------------------------------
# models and invariants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 = x^3 + a2 x^2 + a4 x + a6 with forms of degrees (2w, 4w, 6w)."""

    a2: HomPoly
    a4: HomPoly
    a6: HomPoly
    weight: int

    def __post_init__(self):
        if self.weight < 0:
            raise ValueError("weight must be nonnegative")
        if not (self.a2.vars == self.a4.vars == self.a6.vars):
            raise DegreeMismatch("coefficient forms must share a variable pair")
        want = (2 * self.weight, 4 * self.weight, 6 * self.weight)
        got = (self.a2.degree, self.a4.degree, self.a6.degree)
        if want != got:
            raise DegreeMismatch(
                f"weight {self.weight} needs coefficient degrees {want}, got {got}"
            )

    @property
    def vars(self) -> tuple[str, str]:
        return self.a2.vars

    @staticmethod
    def build(a2: HomPoly, a4: HomPoly, a6: HomPoly) -> WeierstrassModel:
        """Infer the weight from the declared degree of ``a2``."""
        if a2.degree % 2:
            raise DegreeMismatch("a2 must have even declared degree")
        return WeierstrassModel(a2, a4, a6, a2.degree // 2)

    def rhs_at(self, x: HomPoly) -> HomPoly:
        """Evaluate x^3 + a2 x^2 + a4 x + a6 at a form of degree 2w."""
        if x.degree != 2 * self.weight:
            raise DegreeMismatch(
                f"section form must have degree {2 * self.weight}, got {x.degree}"
            )
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def shift_x(self, u: HomPoly) -> WeierstrassModel:
        """Substitute x -> x + u; u must be a form of degree 2w."""
        if u.degree != 2 * self.weight:
            raise DegreeMismatch(
                f"shift form must have degree {2 * self.weight}, got {u.degree}"
            )
        a2 = self.a2 + 3 * u
        a4 = self.a4 + 2 * self.a2 * u + 3 * u * u
        a6 = self.rhs_at(u)
        return WeierstrassModel(a2, a4, a6, self.weight)


@dataclass(frozen=True)
class ModelInvariants:
    """The forms c4, c6, delta of a model; j = c4^3 / delta."""

    c4: HomPoly
    c6: HomPoly
    delta: HomPoly

    @property
    def j_numerator(self) -> HomPoly:
        return self.c4 ** 3

    @property
    def j_denominator(self) -> HomPoly:
        return self.delta


def invariants(model: WeierstrassModel) -> ModelInvariants:
    """c4 = 16(a2^2 - 3 a4), c6 = -32(2 a2^3 - 9 a2 a4 + 27 a6),
    delta = (c4^3 - c6^2)/1728.  Raises DegenerateModel if delta is zero."""
    a2, a4, a6 = model.a2, model.a4, model.a6
    c4 = 16 * (a2 * a2 - 3 * a4)
    c6 = -32 * (2 * a2 * a2 * a2 - 9 * a2 * a4 + 27 * a6)
    delta = (c4 * c4 * c4 - c6 * c6) * Fraction(1, 1728)
    if delta.is_zero:
        raise DegenerateModel("discriminant vanishes identically")
    return ModelInvariants(c4, c6, delta)


def quadratic_twist(model: WeierstrassModel, d: HomPoly) -> WeierstrassModel:
    """Twist by a nonzero form of even degree: (a2, a4, a6) -> (d a2, d^2 a4, d^3 a6).

    The weight grows by deg(d)/2 and j is unchanged.  A non-squarefree d
    leaves non-minimal places behind; fiber classification absorbs them.
    """
    if d.vars != model.vars:
        raise DegreeMismatch("twist form must live on the base variables")
    if d.is_zero:
        raise DegenerateModel("cannot twist by the zero form")
    if d.degree % 2:
        raise DegreeMismatch("twist form must have even degree")
    return WeierstrassModel(
        d * model.a2,
        d * d * model.a4,
        d * d * d * model.a6,
        model.weight + d.degree // 2,
    )


# ---------------------------------------------------------------------------
# classification from valuations
# ---------------------------------------------------------------------------


def _check_realizable(v_c4: int | None, v_c6: int | None, v_delta: int) -> None:
    for v in (v_c4, v_c6):
        if v is not None and v < 0:
            raise ValueError("valuations must be nonnegative")
    if v_delta < 0:
        raise ValueError("valuations must be nonnegative")
    if v_c4 is None and v_c6 is None:
        raise InconsistentValuations(
            "c4 and c6 cannot both vanish identically when delta does not"
        )
    if v_c4 is None:
        if v_delta != 2 * v_c6:
            raise InconsistentValuations(
                f"with c4 = 0, v(delta) must equal 2 v(c6) = {2 * v_c6}, got {v_delta}"
            )
        return
    if v_c6 is None:
        if v_delta != 3 * v_c4:
            raise InconsistentValuations(
                f"with c6 = 0, v(delta) must equal 3 v(c4) = {3 * v_c4}, got {v_delta}"
            )
        return
    lhs, rhs = 3 * v_c4, 2 * v_c6
    if lhs != rhs:
        if v_delta != min(lhs, rhs):
            raise InconsistentValuations(
                f"1728 delta = c4^3 - c6^2 forces v(delta) = {min(lhs, rhs)}, got {v_delta}"
            )
    elif v_delta < lhs:
        raise InconsistentValuations(
            f"1728 delta = c4^3 - c6^2 forces v(delta) >= {lhs}, got {v_delta}"
        )


def _is_reducible(v_c4: int | None, v_c6: int | None, v_delta: int) -> bool:
    return (
        (v_c4 is None or v_c4 >= 4)
        and (v_c6 is None or v_c6 >= 6)
        and v_delta >= 12
    )


def minimalize_at(
    v_c4: int | None, v_c6: int | None, v_delta: int
) -> tuple[tuple[int | None, int | None, int], int]:
    """Subtract (4, 6, 12) while possible; returns the reduced triple and
    the number of reductions applied."""
    reductions = 0
    while _is_reducible(v_c4, v_c6, v_delta):
        v_c4 = None if v_c4 is None else v_c4 - 4
        v_c6 = None if v_c6 is None else v_c6 - 6
        v_delta -= 12
        reductions += 1
    return (v_c4, v_c6, v_delta), reductions


def kodaira_from_valuations(
    v_c4: int | None, v_c6: int | None, v_delta: int
) -> KodairaType:
    """Classify the fiber over a place from the valuations of (c4, c6, delta).

    ``None`` means the form vanishes identically.  The triple must be
    realizable by some model (InconsistentValuations otherwise) and locally
    minimal (NonMinimal otherwise; see ``minimalize_at``).
    """
    _check_realizable(v_c4, v_c6, v_delta)
    if _is_reducible(v_c4, v_c6, v_delta):
        reduced, k = minimalize_at(v_c4, v_c6, v_delta)
        raise NonMinimal(
            f"triple ({v_c4}, {v_c6}, {v_delta}) reduces {k} time(s) to {reduced}"
        )
    big = 10 ** 9
    v4 = big if v_c4 is None else v_c4
    v6 = big if v_c6 is None else v_c6
    if v4 == 0:
        return KodairaType("I", v_delta)
    if v_delta == 0:
        return KodairaType("I", 0)
    if v4 >= 1 and v6 == 1 and v_delta == 2:
        return KodairaType("II")
    if v4 == 1 and v6 >= 2 and v_delta == 3:
        return KodairaType("III")
    if v4 >= 2 and v6 == 2 and v_delta == 4:
        return KodairaType("IV")
    if v4 >= 2 and v6 >= 3 and v_delta == 6:
        return KodairaType("I*", 0)
    if v4 == 2 and v6 == 3 and v_delta >= 7:
        return KodairaType("I*", v_delta - 6)
    if v4 >= 3 and v6 == 4 and v_delta == 8:
        return KodairaType("IV*")
    if v4 == 3 and v6 >= 5 and v_delta == 9:
        return KodairaType("III*")
    if v4 >= 4 and v6 == 5 and v_delta == 10:
        return KodairaType("II*")
    raise InconsistentValuations(
        f"triple ({v_c4}, {v_c6}, {v_delta}) matches no fiber type"
    )


# ---------------------------------------------------------------------------
# fiber configurations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiberPlace:
    """One place of the base where delta vanishes.

    ``place`` is a squarefree factor, monic in the first variable (the
    factor equal to the second variable is the point at infinity).  The
    stored valuations are those of the model as given; ``reductions``
    counts the (4, 6, 12) minimalizations applied before classification.
    """

    place: HomPoly
    kodaira: KodairaType
    v_c4: int | None
    v_c6: int | None
    v_delta: int
    reductions: int

    @property
    def degree(self) -> int:
        return self.place.degree


@dataclass(frozen=True)
class FiberConfiguration:
    """All singular fibers of a model, one entry per squarefree place."""

    weight: int
    places: tuple[FiberPlace, ...]

    @property
    def euler_total(self) -> int:
        """Sum of deg(place) * euler(type); equals 12 * weight for a model
        that is minimal everywhere."""
        return sum(p.degree * p.kodaira.euler for p in self.places)

    @property
    def reductions_total(self) -> int:
        return sum(p.degree * p.reductions for p in self.places)

    def summary(self) -> dict[str, int]:
        """Point counts per fiber label, keyed and ordered by label."""
        acc: dict[str, int] = {}
        for p in self.places:
            label = p.kodaira.label
            acc[label] = acc.get(label, 0) + p.degree
        return dict(sorted(acc.items()))


def fiber_configuration(model: WeierstrassModel) -> FiberConfiguration:
    """Locate and classify every singular fiber of the model.

    The discriminant is split into squarefree pieces, refined until each
    piece has a uniform valuation in c4 and in c6 as well, and each piece
    is classified after local minimalization.
    """
    inv = invariants(model)
    split = squarefree_split(inv.delta)
    split = refine_against(split, inv.c4)
    split = refine_against(split, inv.c6)
    places = []
    for f, m in split.factors:
        v4 = None if inv.c4.is_zero else multiplicity_in(inv.c4, f)
        v6 = None if inv.c6.is_zero else multiplicity_in(inv.c6, f)
        reduced, k = minimalize_at(v4, v6, m)
        fiber = kodaira_from_valuations(*reduced)
        places.append(FiberPlace(f, fiber, v4, v6, m, k))
    places.sort(key=lambda p: (p.place.degree, p.place.coeffs))
    return FiberConfiguration(model.weight, tuple(places))


# ---------------------------------------------------------------------------
# two-torsion sections
# ---------------------------------------------------------------------------


def _lcm(values):
    out = 1
    for v in values:
        g = out
        a, b = g, v
        while b:
            a, b = b, a % b
        out = out // a * v
    return out


def _integer_roots_monic_cubic(b: int, c: int, d: int) -> list[int]:
    """All integer roots of y^3 + b y^2 + c y + d, without factoring.

    The real line splits into at most three monotone pieces at the critical
    points of the cubic; binary search finds the integer root on each piece.
    """

    def q(y: int) -> int:
        return ((y + b) * y + c) * y + d

    bound = 1 + max(abs(b), abs(c), abs(d))

    def search(lo: int, hi: int, increasing: bool) -> int | None:
        lo, hi = max(lo, -bound), min(hi, bound)
        if lo > hi:
            return None
        qlo, qhi = q(lo), q(hi)
        if qlo == 0:
            return lo
        if qhi == 0:
            return hi
        if increasing and (qlo > 0 or qhi < 0):
            return None
        if not increasing and (qlo < 0 or qhi > 0):
            return None
        while hi - lo > 1:
            mid = (lo + hi) // 2
            v = q(mid)
            if v == 0:
                return mid
            if (v < 0) == increasing:
                lo = mid
            else:
                hi = mid
        return None

    roots = set()
    disc = b * b - 3 * c
    if disc <= 0:
        # strictly monotone increasing apart from a possible flat point
        r = search(-bound, bound, True)
        if r is not None:
            roots.add(r)
    else:
        rt = isqrt(disc)
        # integer brackets strictly outside / inside the critical interval
        e1 = (-b - rt) // 3 - 1
        m1 = (-b - rt) // 3 + 1
        m2 = (-b + rt) // 3
        e2 = (-b + rt) // 3 + 2
        for lo, hi, inc in ((-bound, e1, True), (m1, m2, False), (e2, bound, True)):
            r = search(lo, hi, inc)
            if r is not None:
                roots.add(r)
        # the two integers the brackets may skip
        for y in (e1 + 1, m2 + 1):
            if q(y) == 0:
                roots.add(y)
    return sorted(roots)


def _rational_roots_monic_cubic(p2: Fraction, p1: Fraction, p0: Fraction) -> list[Fraction]:
    """Rational roots of x^3 + p2 x^2 + p1 x + p0 over Q."""
    scale = _lcm([p2.denominator, p1.denominator, p0.denominator])
    b = int(p2 * scale)
    c = int(p1 * scale * scale)
    d = int(p0 * scale ** 3)
    return [Fraction(y, scale) for y in _integer_roots_monic_cubic(b, c, d)]


def _trunc(p: UniPoly, order: int) -> UniPoly:
    return UniPoly.from_coeffs(p.coeffs[:order])


def _series_inverse(p: UniPoly, order: int) -> UniPoly:
    """1/p modulo x^order; p(0) must be nonzero."""
    inv = UniPoly.of(1 / p.coeff(0))
    prec = 1
    two = UniPoly.of(2)
    while prec < order:
        prec = min(2 * prec, order)
        inv = _trunc(inv * (two - _trunc(p, prec) * inv), prec)
    return inv


def _lift_cubic_root(
    a2: UniPoly, a4: UniPoly, a6: UniPoly, x0: Fraction, order: int
) -> UniPoly:
    """Newton-lift a simple root x0 of the cubic at the origin to a series
    root modulo x^order."""
    x = UniPoly.of(x0)
    prec = 1
    while prec < order:
        prec = min(2 * prec, order)
        b2, b4, b6 = _trunc(a2, prec), _trunc(a4, prec), _trunc(a6, prec)
        value = _trunc(((x + b2) * x + b4) * x + b6, prec)
        slope = _trunc((3 * x + 2 * b2) * x + b4, prec)
        x = _trunc(x - value * _series_inverse(slope, prec), prec)
    return x


def two_torsion_sections(model: WeierstrassModel) -> tuple[HomPoly, ...]:
    """All sections x(s, t) of degree 2w with x^3 + a2 x^2 + a4 x + a6 = 0.

    These are the x-coordinates of the two-torsion sections of the
    fibration that are rational over the base.  When a6 = 0 the cubic
    splits off x = 0 and the rest is an exact-square test; otherwise
    candidate sections are Newton lifts of the rational roots above a
    regular base point, verified exactly.
    """
    inv = invariants(model)  # rejects degenerate models
    w = model.weight
    vars = model.vars
    found: list[HomPoly] = []
    if model.a6.is_zero:
        found.append(HomPoly.zero(vars, 2 * w))
        disc = model.a2 * model.a2 - 4 * model.a4
        root = form_sqrt(disc)
        if root is not None:
            # disc is nonzero here, else delta = 16 a4^2 (a2^2 - 4 a4) = 0
            half = Fraction(1, 2)
            found.append((-model.a2 + root) * half)
            found.append((-model.a2 - root) * half)
    else:
        delta_aff = inv.delta.as_unipoly()
        s0 = _regular_base_point(delta_aff)
        a2s = model.a2.as_unipoly().shift(s0)
        a4s = model.a4.as_unipoly().shift(s0)
        a6s = model.a6.as_unipoly().shift(s0)
        order = 2 * w + 1
        for x0 in _rational_roots_monic_cubic(a2s.coeff(0), a4s.coeff(0), a6s.coeff(0)):
            series = _lift_cubic_root(a2s, a4s, a6s, x0, order)
            candidate = series.shift(-s0)
            if candidate.degree > 2 * w:
                continue
            section = homogenize(candidate, vars, 2 * w)
            if model.rhs_at(section).is_zero:
                found.append(section)
    unique = {f.coeffs: f for f in found}
    return tuple(unique[k] for k in sorted(unique))


def _regular_base_point(delta_aff: UniPoly) -> Fraction:
    """A rational base point where the affine discriminant does not vanish."""
    k = 0
    while True:
        for cand in ((Fraction(k),) if k == 0 else (Fraction(k), Fraction(-k))):
            if delta_aff(cand) != 0:
                return cand
        k += 1
