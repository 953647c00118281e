"""Unit tests for the exact polynomial kernel.

sympy appears here only as the independent cross-check oracle for
resultants, discriminants and squarefree parts; the package itself never
imports it.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from ellsurf.exactpoly import (
    BiHomPoly,
    DegreeMismatch,
    DegreeTooLow,
    ExactDivisionError,
    HomPoly,
    ParseError,
    UniPoly,
    discriminant_form,
    discriminant_univ,
    divexact_form,
    form_discriminant,
    gcd_form,
    gcd_poly,
    homogenize,
    multiplicity_in,
    parse_hompoly,
    parse_rational,
    refine_against,
    resultant,
    squarefree_split,
    tensor_forms,
)

_X = sp.symbols("x")


def _to_sympy(p: UniPoly):
    return sp.Poly([sp.Rational(c) for c in reversed(p.coeffs)] or [0], _X, domain="QQ")


small_rational = st.fractions(
    min_value=-9, max_value=9, max_denominator=4
)


@st.composite
def unipolys(draw, max_degree=5, allow_zero=True):
    deg = draw(st.integers(min_value=-1 if allow_zero else 0, max_value=max_degree))
    if deg < 0:
        return UniPoly.zero()
    coeffs = [draw(small_rational) for _ in range(deg)]
    lead = draw(small_rational.filter(lambda c: c != 0))
    return UniPoly.from_coeffs(coeffs + [lead])


class TestUniPolyRing:
    @given(p=unipolys(), q=unipolys(), r=unipolys())
    def test_ring_laws(self, p, q, r):
        assert p + q == q + p
        assert p * q == q * p
        assert (p + q) * r == p * r + q * r

    @given(p=unipolys(), q=unipolys(allow_zero=False))
    def test_division_identity(self, p, q):
        quo, rem = p.divmod(q)
        assert quo * q + rem == p
        assert rem.is_zero or rem.degree < q.degree

    @given(p=unipolys(), c=small_rational)
    def test_shift_evaluates(self, p, c):
        shifted = p.shift(c)
        for x in (Fraction(0), Fraction(1), Fraction(-2, 3)):
            assert shifted(x) == p(x + c)


class TestGcd:
    def test_gcd_of_zeros_is_zero(self):
        assert gcd_poly(UniPoly.zero(), UniPoly.zero()).is_zero

    @given(p=unipolys(allow_zero=False))
    def test_gcd_with_zero(self, p):
        assert gcd_poly(p, UniPoly.zero()) == p.monic()

    @given(
        p=unipolys(max_degree=3, allow_zero=False),
        q=unipolys(max_degree=3, allow_zero=False),
        g=unipolys(max_degree=2, allow_zero=False),
    )
    @settings(max_examples=60)
    def test_common_factor_detected(self, p, q, g):
        d = gcd_poly(p * g, q * g)
        assert not d.is_zero
        assert d.leading == 1
        (p * g).divexact(d)  # no remainder
        d.divexact(gcd_poly(d, g.monic()))  # g | d up to the p,q part

    @given(p=unipolys(allow_zero=False), q=unipolys(allow_zero=False))
    @settings(max_examples=60)
    def test_against_sympy(self, p, q):
        ours = gcd_poly(p, q)
        theirs = sp.gcd(_to_sympy(p), _to_sympy(q)).monic()
        assert _to_sympy(ours) == theirs


class TestResultantDiscriminant:
    def test_frozen_values(self):
        assert discriminant_univ(UniPoly.of(0, -4, 0, 1)) == 256
        assert discriminant_univ(UniPoly.of(1, 0, 0, 0, 1)) == 256

    def test_short_cubic_convention(self):
        f, g = Fraction(-4), Fraction(4)
        cubic = UniPoly.of(g, f, 0, 1)
        assert discriminant_univ(cubic) == -4 * f**3 - 27 * g**2

    def test_degree_too_low(self):
        with pytest.raises(DegreeTooLow):
            discriminant_univ(UniPoly.of(3, 1))
        with pytest.raises(DegreeTooLow):
            discriminant_univ(UniPoly.constant(5))

    @given(p=unipolys(max_degree=4, allow_zero=False), q=unipolys(max_degree=4, allow_zero=False))
    @settings(max_examples=60)
    def test_resultant_against_sylvester_determinant(self, p, q):
        # independent oracle: build the classical Sylvester matrix here and
        # let sympy evaluate its determinant (sympy's own `resultant` uses a
        # different sign convention when both leading signs conspire)
        m, n = p.degree, q.degree
        if m == 0 or n == 0:
            ours = resultant(p, q)
            base = p.coeffs[0] if m == 0 else q.coeffs[0]
            other = n if m == 0 else m
            assert ours == base**other
            return
        size = m + n
        rows = []
        for i in range(n):
            rows.append(
                [0] * i
                + [sp.Rational(c) for c in reversed(p.coeffs)]
                + [0] * (size - i - m - 1)
            )
        for i in range(m):
            rows.append(
                [0] * i
                + [sp.Rational(c) for c in reversed(q.coeffs)]
                + [0] * (size - i - n - 1)
            )
        assert sp.Rational(resultant(p, q)) == sp.Matrix(rows).det()

    @given(
        p=unipolys(max_degree=3, allow_zero=False),
        q=unipolys(max_degree=3, allow_zero=False),
        r=unipolys(max_degree=3, allow_zero=False),
    )
    @settings(max_examples=60)
    def test_resultant_multiplicative(self, p, q, r):
        assert resultant(p * q, r) == resultant(p, r) * resultant(q, r)

    @given(p=unipolys(max_degree=5, allow_zero=False), c=small_rational)
    @settings(max_examples=60)
    def test_discriminant_shift_invariant(self, p, c):
        if p.degree < 2:
            return
        assert discriminant_univ(p.shift(c)) == discriminant_univ(p)

    def test_form_discriminant_degree_drop(self):
        # declared degree 4 on an actual cubic multiplies disc by lc^2
        q = UniPoly.of(-1, 0, 4, 4)
        assert discriminant_univ(q) == -176
        assert discriminant_form(q, 4) == 16 * -176
        # drop of two or more kills it
        assert discriminant_form(UniPoly.of(1, 1), 4) == 0
        assert discriminant_form(UniPoly.of(3, 1), 2) == 1 * 1
        with pytest.raises(DegreeMismatch):
            discriminant_form(UniPoly.of(1, 0, 0, 1), 2)


class TestSquarefree:
    def test_two_hundred_random_products_reconstruct(self):
        rng = random.Random(20260819)
        for _ in range(200):
            n_factors = rng.randint(1, 3)
            p = UniPoly.constant(Fraction(rng.choice([1, 2, -3, 5]), rng.choice([1, 2])))
            for _ in range(n_factors):
                deg = rng.randint(1, 2)
                coeffs = [Fraction(rng.randint(-5, 5)) for _ in range(deg)] + [
                    Fraction(rng.choice([1, 2, 3, -1]))
                ]
                p = p * (UniPoly.from_coeffs(coeffs) ** rng.randint(1, 3))
            split = squarefree_split(p)
            assert split.reconstruct() == p
            for f, _m in split.factors:
                assert f.leading == 1
                assert gcd_poly(f, f.derivative()).degree == 0

    @given(p=unipolys(max_degree=4, allow_zero=False))
    @settings(max_examples=60)
    def test_squarefree_part_matches_sympy(self, p):
        if p.degree == 0:
            return
        ours = UniPoly.constant(1)
        for f, _m in squarefree_split(p).factors:
            ours = ours * f
        theirs = _to_sympy(p).div(_to_sympy(gcd_poly(p, p.derivative())))[0].monic()
        assert _to_sympy(ours.monic()).as_expr() == theirs.as_expr()

    def test_form_split_keeps_second_variable_factor(self):
        F = HomPoly.of(("s", "t"), [0, 0, 2, 0, -2])
        split = squarefree_split(F)
        assert split.unit == 2
        assert split.reconstruct() == F
        factor_texts = {(str(f), m) for f, m in split.factors}
        assert factor_texts == {("t", 2), ("s^2 - t^2", 1)}

    def test_refine_against_uniform_powers(self):
        rng = random.Random(7)
        x = UniPoly.of(0, 1)
        for _ in range(50):
            roots = rng.sample(range(-6, 7), k=4)
            delta = UniPoly.constant(1)
            for r in roots:
                delta = delta * (x - UniPoly.constant(r)) ** rng.randint(1, 3)
            q = UniPoly.constant(1)
            for r in roots[:2]:
                q = q * (x - UniPoly.constant(r)) ** rng.randint(0, 3)
            q = q * UniPoly.of(1, 0, 1)
            split = refine_against(squarefree_split(delta), q)
            assert split.reconstruct() == delta
            for f, _m in split.factors:
                v = multiplicity_in(q, f)
                # uniform: no further subfactor divides q more often
                extra = gcd_poly(f, q.divexact(f**v))
                assert extra.degree == 0

    def test_refine_against_zero_is_identity(self):
        split = squarefree_split(UniPoly.of(0, 0, 1))
        assert refine_against(split, UniPoly.zero()) == split


class TestHomPoly:
    def test_arithmetic_and_degree_guards(self):
        a = HomPoly.of(("s", "t"), [1, 2, 3])
        b = HomPoly.of(("s", "t"), [0, 1, 0])
        assert (a + b).coeffs == (Fraction(1), Fraction(3), Fraction(3))
        with pytest.raises(DegreeMismatch):
            a + HomPoly.of(("s", "t"), [1, 1])
        with pytest.raises(DegreeMismatch):
            a + HomPoly.of(("u", "v"), [1, 1, 1])

    def test_swap_is_an_involution_and_reverses(self):
        a = HomPoly.of(("s", "t"), [1, 2, 3, 4])
        assert a.swap().coeffs == (4, 3, 2, 1)
        assert a.swap().swap() == a

    def test_homogenize_round_trip(self):
        p = UniPoly.of(1, 0, -2)
        F = homogenize(p, ("s", "t"), 4)
        assert F.second_var_multiplicity() == 2
        assert F.as_unipoly() == p
        with pytest.raises(DegreeMismatch):
            homogenize(p, ("s", "t"), 1)

    def test_substitute_composes_degrees(self):
        F = HomPoly.of(("s", "t"), [1, 0, -1])  # s^2 - t^2
        sq_s = HomPoly.of(("u", "v"), [1, 0, 0])
        sq_t = HomPoly.of(("u", "v"), [0, 0, 1])
        G = F.substitute(sq_s, sq_t)  # u^4 - v^4
        assert G == HomPoly.of(("u", "v"), [1, 0, 0, 0, -1])

    def test_evaluate_matches_text_round_trip(self):
        F = HomPoly.of(("s", "t"), [2, Fraction(-1, 2), 0, 1])
        assert parse_hompoly(str(F), ("s", "t")) == F
        assert F(2, 3) == 2 * 8 + Fraction(-1, 2) * 4 * 3 + 27

    def test_gcd_and_division_of_forms(self):
        s_min_t = HomPoly.of(("s", "t"), [1, -1])
        t_ = HomPoly.of(("s", "t"), [0, 1])
        F = s_min_t**2 * t_ * 3
        G = s_min_t * t_**2 * HomPoly.of(("s", "t"), [5])
        d = gcd_form(F, G)
        assert d == s_min_t * t_
        assert divexact_form(F, d) == s_min_t * 3
        with pytest.raises(ExactDivisionError):
            divexact_form(F, HomPoly.of(("s", "t"), [1, 1]))

    def test_form_discriminant_conventions(self):
        quad = HomPoly.of(("s", "t"), [1, 0, -1])
        assert form_discriminant(quad) == 4
        double = HomPoly.of(("s", "t"), [0, 0, 1, 0, 0])  # s^2 t^2
        assert form_discriminant(double) == 0


class TestBiHomPoly:
    def test_tensor_and_coefficient_extraction(self):
        p = HomPoly.of(("s", "t"), [1, 2])
        q = HomPoly.of(("u", "v"), [3, 0, -1])
        B = tensor_forms(p, q)
        assert B.deg1 == 1 and B.deg2 == 2
        assert B.pair1_coefficient(0) == q * 1
        assert B.pair2_coefficient(2) == p * -1
        assert B(1, 1, 2, 1) == p(1, 1) * q(2, 1)

    def test_swap_pairs_transposes(self):
        p = HomPoly.of(("s", "t"), [1, 2])
        q = HomPoly.of(("u", "v"), [3, 0, -1])
        B = tensor_forms(p, q)
        assert B.swap_pairs() == tensor_forms(q, p)

    def test_substitute_pair2(self):
        p = HomPoly.of(("s", "t"), [1, 0])
        q = HomPoly.of(("u", "v"), [1, 0, -1])  # u^2 - v^2
        B = tensor_forms(p, q)
        uu = HomPoly.of(("a", "b"), [1, 0, 0])
        vv = HomPoly.of(("a", "b"), [0, 0, 1])
        C = B.substitute_pair2(uu, vv)
        assert C.pair1_coefficient(0) == HomPoly.of(("a", "b"), [1, 0, 0, 0, -1])


class TestParsing:
    def test_rationals(self):
        assert parse_rational(" -3/4 ") == Fraction(-3, 4)
        with pytest.raises(ParseError):
            parse_rational("3/0")

    def test_positions_reported(self):
        with pytest.raises(ParseError) as err:
            parse_hompoly("s^2 + w*t", ("s", "t"))
        assert err.value.line == 1
        assert err.value.col == 7

    def test_homogeneity_enforced(self):
        with pytest.raises(ParseError):
            parse_hompoly("s^2 + t", ("s", "t"))
        with pytest.raises(ParseError):
            parse_hompoly("s^2 - t^2", ("s", "t"), degree=4)

    def test_zero_form_needs_degree(self):
        assert parse_hompoly("0", ("s", "t"), degree=3).is_zero
        with pytest.raises(ParseError):
            parse_hompoly("0", ("s", "t"))

    def test_cancelling_terms_keep_declared_degree(self):
        F = parse_hompoly("s*t - s*t", ("s", "t"))
        assert F.is_zero and F.degree == 2
