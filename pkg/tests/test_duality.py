"""Tests for the surface constructions: covers, twists, isogenies, the
correspondence tower, quadruple covers and the pinned-star refibration.

Structural identities are checked exactly; fiber-configuration claims are
checked on random instances drawn through the genericity predicates of
``corpus`` (squarefreeness and coprimality of discriminant factors), so
resampling never conditions on the expected counts.
"""

import random
from fractions import Fraction

import pytest

from corpus import (
    full_torsion_tower_generic,
    random_form,
    sample_correspondence_triple,
    sample_cover_parameters,
    sample_full_torsion_forms,
    sample_generic_quadruple,
    sample_isogeny_pair,
    sample_rational_surface,
    sample_refiber_quadruple,
    sample_three_lines_params,
    separable,
    star_chain_profile,
    three_lines_generic,
)
from ellsurf import duality as du
from ellsurf.elliptic import (
    DegenerateModel,
    WeierstrassModel,
    fiber_configuration,
    invariants,
    two_torsion_sections,
)
from ellsurf.exactpoly import (
    DegreeMismatch,
    HomPoly,
    UniPoly,
    homogenize,
    tensor_forms,
)
from ellsurf.hermite_aj import NormalizationViolated, UnitViolation

ST = ("s", "t")
UV = ("U", "V")
uv = ("u", "v")


def places_with_label(cfg, label):
    return {p.place for p in cfg.places if p.kodaira.label == label}


def label_product(cfg, label):
    # places are squarefree pieces, so same-type places with identical
    # valuation patterns can arrive merged; the product is stable
    total = None
    for p in cfg.places:
        if p.kodaira.label == label:
            total = p.place if total is None else total * p.place
    return total


# ---------------------------------------------------------------------------
# rational surface data, base change, twist


def test_rational_surface_gates():
    f4 = HomPoly.of(ST, (1, 0, 0, 0, 1))
    g6 = HomPoly.of(ST, (1, 0, 0, 0, 0, 0, 1))
    with pytest.raises(DegreeMismatch):
        du.RESData(f4, HomPoly.of(ST, (1, 0, 0, 1)))
    st = HomPoly.of(ST, (0, 1, 0))
    with pytest.raises(DegenerateModel):
        du.RESData(-3 * st**2, 2 * st**3)
    r = du.RESData(f4, g6)
    assert r.model().weight == 1
    assert r.reduced_discriminant() == 4 * f4**3 + 27 * g6**2


def test_rational_surface_generic_configuration():
    rng = random.Random(201)
    for _ in range(5):
        r = sample_rational_surface(rng)
        cfg = fiber_configuration(r.model())
        assert cfg.summary() == {"I1": 12}
        assert cfg.euler_total == 12


def test_base_change_unit_gates():
    r = du.RESData(HomPoly.of(ST, (1, 0, 0, 0, 1)), HomPoly.of(ST, (1, 0, 0, 0, 0, 0, 1)))
    for d0, d_inf in ((1, 5), (5, 1), (2, Fraction(1, 2))):
        with pytest.raises(UnitViolation):
            du.base_change_k3(r, d0, d_inf)


def test_base_change_singular_branch_fiber():
    # discriminant -108 s^12 + 108 t^12 vanishes exactly over [1:1]
    f_bad = HomPoly.of(ST, (-3, 0, 0, 0, 0))
    g_bad = HomPoly.of(ST, (0, 0, 0, 0, 0, 0, 2))
    r = du.RESData(f_bad, g_bad)
    with pytest.raises(du.SingularBranchFiber) as err:
        du.base_change_k3(r, 0, 0)
    assert "[1:1]" in str(err.value)


def test_base_change_cover_geometry():
    # the model is the pullback of (f, g) along a fixed degree-two map
    # that sends its ramification points to [d0:1] and [1:d_inf] and the
    # diagonal point [1:1] to itself
    rng = random.Random(232)
    r = sample_rational_surface(rng)
    d0, d_inf = Fraction(3), Fraction(-2)
    h_first = HomPoly.of(uv, (1 - d0, 0, d0 * (1 - d_inf)))
    h_second = HomPoly.of(uv, (d_inf * (1 - d0), 0, 1 - d_inf))
    assert h_first(0, 1) == d0 * h_second(0, 1)
    assert h_second(1, 0) == d_inf * h_first(1, 0)
    assert h_first(1, 1) == h_second(1, 1) != 0
    disc = r.reduced_discriminant()
    if all(disc(a, b) != 0 for a, b in ((3, 1), (1, -2), (1, 1))):
        expected = WeierstrassModel(
            HomPoly.zero(uv, 4),
            r.f.substitute(h_first, h_second),
            r.g.substitute(h_first, h_second),
            2,
        )
        assert du.base_change_k3(r, d0, d_inf) == expected


def test_base_change_generic_configuration():
    rng = random.Random(202)
    for _ in range(5):
        r = sample_rational_surface(rng)
        d0, d_inf = sample_cover_parameters(rng, r)
        model = du.base_change_k3(r, d0, d_inf)
        assert model.weight == 2
        cfg = fiber_configuration(model)
        assert cfg.summary() == {"I1": 24}
        assert cfg.euler_total == 24


def test_twist_gates_and_places():
    r = du.RESData(HomPoly.of(ST, (1, 0, 0, 0, 1)), HomPoly.of(ST, (1, 0, 0, 0, 0, 0, 1)))
    with pytest.raises(UnitViolation):
        du.twist_model(r, 2, Fraction(1, 2))
    rng = random.Random(203)
    for _ in range(5):
        surf = sample_rational_surface(rng)
        while True:
            d0, d_inf = sample_cover_parameters(rng, surf)
            if d0 != 0 and d_inf != 0:
                break
        model = du.twist_model(surf, d0, d_inf)
        assert model.weight == 2
        cfg = fiber_configuration(model)
        assert cfg.summary() == {"I0*": 2, "I1": 12}
        assert cfg.euler_total == 24
        expected = HomPoly.of(ST, (1, -d0)) * HomPoly.of(
            ST, (1, Fraction(-1, 1) / d_inf)
        )
        assert label_product(cfg, "I0*") == expected


def test_twist_preserves_j_invariant():
    rng = random.Random(204)
    r = sample_rational_surface(rng)
    d0, d_inf = sample_cover_parameters(rng, r)
    base = invariants(r.model())
    twisted = invariants(du.twist_model(r, d0, d_inf))
    assert base.c4**3 * twisted.delta == twisted.c4**3 * base.delta


# ---------------------------------------------------------------------------
# the two-torsion normal form and its isogeny dual


def test_alternate_pair_gates():
    trace = HomPoly.of(ST, (1, 0, 0, 0, 1))
    norm = HomPoly.of(ST, tuple([1] + [0] * 7 + [1]))
    with pytest.raises(DegreeMismatch):
        du.AlternatePair(trace, trace)
    with pytest.raises(DegenerateModel):
        du.AlternatePair(trace, HomPoly.zero(ST, 8))
    with pytest.raises(du.MissingFactorization):
        du.AlternatePair(trace, norm, split=(trace, trace))
    pair = du.AlternatePair(trace, norm)
    assert pair.weight == 2
    assert pair.model().a2 == -trace
    assert pair.model().a4 == norm


def test_isogeny_dual_square_is_multiplication_by_four():
    rng = random.Random(205)
    for _ in range(10):
        pair = sample_isogeny_pair(rng)
        again = du.two_isogeny_dual(du.two_isogeny_dual(pair))
        assert again.trace == 4 * pair.trace
        assert again.norm == 16 * pair.norm


def test_isogeny_swaps_place_sets():
    rng = random.Random(206)
    for _ in range(6):
        pair = sample_isogeny_pair(rng)
        dual = du.two_isogeny_dual(pair)
        cfg = fiber_configuration(pair.model())
        cfg_dual = fiber_configuration(dual.model())
        assert cfg.summary() == {"I1": 8, "I2": 8}
        assert cfg_dual.summary() == {"I1": 8, "I2": 8}
        assert cfg.euler_total == cfg_dual.euler_total == 24
        assert places_with_label(cfg, "I2") == places_with_label(cfg_dual, "I1")
        assert places_with_label(cfg, "I1") == places_with_label(cfg_dual, "I2")
        # the norm is a separable product, never a square, so the only
        # rational two-torsion section is x = 0
        assert two_torsion_sections(pair.model()) == (HomPoly.zero(ST, 4),)


# ---------------------------------------------------------------------------
# the quadric double cover and the ruling swap


def test_ruling_swap_reading_identity():
    # the bidegree-(4,2) branch form has two equal readings: degree-four
    # coefficients against u^4, u^2 v^2, v^4, or degree-two coefficients
    # against the monomials of the first ruling
    rng = random.Random(207)
    for _ in range(8):
        pair = sample_isogeny_pair(rng)
        data = du.quadric_double_cover(pair)
        u_sq = HomPoly.of(uv, (1, 0, 0))
        v_sq = HomPoly.of(uv, (0, 0, 1))
        total = None
        for j in range(5):
            power = HomPoly.of(
                ("s", "t"), tuple(1 if k == 4 - j else 0 for k in range(5))
            )
            term = tensor_forms(power, data.swap.coeffs[j].substitute(u_sq, v_sq))
            total = term if total is None else total + term
        assert total == data.branch


def test_ruling_swap_degree_gate():
    bad = HomPoly.of(ST, (1, 0, 1))
    good = HomPoly.of(ST, (1, 0, 0, 0, 1))
    with pytest.raises(DegreeMismatch):
        du.ruling_swap(bad, good, good)


def test_quadric_cover_needs_split():
    pair = du.AlternatePair(
        HomPoly.of(ST, (1, 0, 0, 0, 1)), HomPoly.of(ST, tuple([1] + [0] * 7 + [1]))
    )
    with pytest.raises(du.MissingFactorization):
        du.quadric_double_cover(pair)


def test_quadric_cover_swapping_rulings_flips_split():
    rng = random.Random(208)
    pair = sample_isogeny_pair(rng)
    left, right = pair.split
    flipped = du.quadric_double_cover(
        du.AlternatePair(pair.trace, pair.norm, split=(right, left))
    )
    data = du.quadric_double_cover(pair)
    v_lin = HomPoly.of(uv, (0, 1))
    u_lin = HomPoly.of(uv, (1, 0))
    assert data.branch.substitute_pair2(v_lin, u_lin) == flipped.branch


def test_quadric_cover_jacobian_is_base_change():
    # the (u^2, v^2) substitution is the degree-two base change at (0, 0)
    rng = random.Random(209)
    for _ in range(5):
        pair = sample_isogeny_pair(rng)
        data = du.quadric_double_cover(pair)
        f, g = data.swap.f, data.swap.g
        try:
            res = du.RESData(f.rename(ST), g.rename(ST))
        except DegenerateModel:
            continue
        disc = res.reduced_discriminant()
        if disc(0, 1) == 0 or disc(1, 0) == 0 or disc(1, 1) == 0:
            continue
        assert data.jacobian == du.base_change_k3(res, 0, 0)


def test_ruling_swap_jacobian_configuration():
    rng = random.Random(210)
    done = 0
    while done < 5:
        pair = sample_isogeny_pair(rng)
        data = du.quadric_double_cover(pair)
        disc = 4 * data.swap.f**3 + 27 * data.swap.g**2
        if disc.is_zero or not separable(disc):
            continue
        if disc(0, 1) == 0 or disc(1, 0) == 0:
            continue
        model = data.swap.jacobian_model()
        cfg = fiber_configuration(model)
        assert cfg.summary() == {"I0*": 2, "I1": 12}
        assert label_product(cfg, "I0*") == HomPoly.of(UV, (0, 1, 0))
        done += 1


# ---------------------------------------------------------------------------
# moving the section lines


def test_two_param_family_identities():
    rng = random.Random(211)
    for _ in range(6):
        pair = sample_isogeny_pair(rng)
        left, right = pair.split
        d0, d_inf = Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4))
        if d0 * d_inf == 1:
            continue
        fam = du.two_param_family(pair.trace, left, right, d0, d_inf)
        # discriminant of the model equals 16 times the reduced form
        assert invariants(fam.model).delta == 16 * fam.reduced_discriminant
        # the branch quartic in x recovers the deformation-invariant factor
        combo = fam.model.a2 * fam.model.a2 - 4 * fam.model.a4
        fixed = (pair.trace * pair.trace - 4 * left * right).rename(("s", "t"))
        assert combo == (d0 * d_inf - 1) ** 2 * fixed


def test_two_param_invariant_places():
    # the nodal places of the fixed factor do not move with (d0, d_inf)
    rng = random.Random(212)
    pair = sample_isogeny_pair(rng)
    left, right = pair.split
    reference = None
    for d0, d_inf in ((0, 0), (2, 3), (-1, 4), (Fraction(1, 2), -2)):
        fam = du.two_param_family(pair.trace, left, right, d0, d_inf)
        try:
            cfg = fiber_configuration(fam.model)
        except DegenerateModel:
            continue
        fixed_places = places_with_label(cfg, "I1")
        if reference is None:
            reference = fixed_places
        else:
            assert fixed_places == reference


def test_two_param_gates():
    quartic = HomPoly.of(ST, (1, 0, 0, 0, 1))
    with pytest.raises(UnitViolation):
        du.two_param_family(quartic, quartic, quartic, 2, Fraction(1, 2))
    with pytest.raises(DegreeMismatch):
        du.two_param_family(HomPoly.of(ST, (1, 0, 1)), quartic, quartic, 0, 0)
    with pytest.raises(UnitViolation):
        du.moduli_involution(quartic, quartic, quartic, 3, Fraction(1, 3))


def test_involution_normal_forms():
    rng = random.Random(213)
    for _ in range(8):
        pair = sample_isogeny_pair(rng)
        left, right = pair.split
        # at the base point the move just flips the trace
        assert du.moduli_involution(pair.trace, left, right, 0, 0) == (
            -pair.trace,
            left,
            right,
        )
        d0, d_inf = Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4))
        if d0 * d_inf == 1:
            continue
        once = du.moduli_involution(pair.trace, left, right, d0, d_inf)
        twice = du.moduli_involution(*once, d0, d_inf)
        scale = (d0 * d_inf - 1) ** 2
        assert twice == (scale * pair.trace, scale * left, scale * right)
        # the branch combination scales by the square of the same factor
        combo = once[0] * once[0] - 4 * once[1] * once[2]
        fixed = pair.trace * pair.trace - 4 * left * right
        assert combo == scale * fixed


# ---------------------------------------------------------------------------
# the correspondence tower


def test_correspondence_gates():
    alpha = HomPoly.of(UV, (1, 2, 3))
    gamma = HomPoly.of(UV, (4, 1, 5))
    # breaks d2 == g0: reading the curve against the other ruling would
    # give different coefficients
    delta = HomPoly.of(UV, (9, 3, 6))
    with pytest.raises(NormalizationViolated):
        du.correspondence_surfaces(alpha, gamma, delta)
    with pytest.raises(DegreeMismatch):
        du.correspondence_surfaces(HomPoly.of(UV, (1, 2)), gamma, delta)


def test_correspondence_branch_routes_agree():
    rng = random.Random(214)
    for _ in range(8):
        alpha, gamma, delta = sample_correspondence_triple(rng)
        table = du.correspondence_surfaces(alpha, gamma, delta)
        for key in (
            "branch_cover1_cover2",
            "branch_cover1_quot2",
            "branch_quot1_cover2",
            "branch_quot1_quot2",
        ):
            first, second = table[key]
            assert first == second
        g_q2, a_q2, d_q2 = table["cad"]
        assert (g_q2, a_q2, d_q2) == (
            gamma.rename(UV),
            alpha.rename(UV),
            delta.rename(UV),
        )


def test_correspondence_tower_duals():
    # on the first ruling the listed model is the cover side and its dual
    # the quotient; on the second ruling the roles are mirrored
    rng = random.Random(215)
    alpha, gamma, delta = sample_correspondence_triple(rng)
    table = du.correspondence_surfaces(alpha, gamma, delta)
    for base_key in ("cover1", "quot1", "rat1"):
        base = table[base_key]
        dual = table[base_key + "_dual"]
        assert dual.a2 == -2 * base.a2
        assert dual.a4 == base.a2 * base.a2 - 4 * base.a4
    for base_key in ("cover2", "quot2", "rat2"):
        base = table[base_key + "_dual"]
        dual = table[base_key]
        assert dual.a2 == -2 * base.a2
        assert dual.a4 == base.a2 * base.a2 - 4 * base.a4


def test_correspondence_tower_configurations():
    rng = random.Random(216)
    for _ in range(5):
        alpha, gamma, delta = sample_correspondence_triple(rng)
        table = du.correspondence_surfaces(alpha, gamma, delta)
        for key in ("cover1", "cover2"):
            cfg = fiber_configuration(table[key])
            assert cfg.summary() == {"I1": 8, "I2": 8}
            assert cfg.euler_total == 24
        for key in ("quot1", "quot2"):
            cfg = fiber_configuration(table[key])
            assert cfg.summary() == {"I0*": 2, "I1": 4, "I2": 4}
            assert cfg.euler_total == 24
        for key in ("rat1", "rat2"):
            model = table[key]
            assert model.weight == 1
            cfg = fiber_configuration(model)
            assert cfg.summary() == {"I1": 4, "I2": 4}
            assert cfg.euler_total == 12


# ---------------------------------------------------------------------------
# the full two-torsion tower


def test_full_torsion_gates():
    quartic = HomPoly.of(ST, (1, 0, 0, 0, 1))
    with pytest.raises(DegreeMismatch):
        du.full_torsion_surfaces(quartic, HomPoly.of(ST, (1, 0, 1)))
    with pytest.raises(du.DegenerateInput):
        du.full_torsion_surfaces(quartic, HomPoly.zero(ST, 4))
    with pytest.raises(du.DegenerateInput):
        du.full_torsion_surfaces(quartic, quartic)


def test_full_torsion_structure():
    rng = random.Random(217)
    for _ in range(8):
        trace, diff = sample_full_torsion_forms(rng)
        tor = du.full_torsion_surfaces(trace, diff)
        assert (tor["f"].degree, tor["g"].degree) == (2, 3)
        for key in ("branch_4cover", "branch_cover", "branch_quot"):
            first, second = tor[key]
            assert first == second
        trace_c = trace.rename(("s", "t"))
        diff_c = diff.rename(("s", "t"))
        assert 4 * tor["alt"].a4 == trace_c**2 - diff_c**2
        assert tor["alt"].a2 == -trace_c
        assert tor["alt_dual"].a4 == diff_c**2
        assert tor["alt_dual"].a2 == 2 * trace_c


def test_full_torsion_tower_matches_subfamilies():
    # the five tower models are the four shared subfamily constructions
    # applied to the reconstructed pair, plus the untwisted weight-one one
    rng = random.Random(218)
    trace, diff = sample_full_torsion_forms(rng)
    tor = du.full_torsion_surfaces(trace, diff)
    f, g = tor["f"], tor["g"]
    assert tor["jac_4cover"] == du.subfamily_models("cover4", f, g)
    assert tor["jac_cover"] == du.subfamily_models("cover2", f, g)
    assert tor["jac_quot_twisted"] == du.subfamily_models("twist", f, g)
    assert tor["res_quot"] == du.subfamily_models("rational", f, g)


def test_full_torsion_configurations():
    rng = random.Random(219)
    done = 0
    while done < 5:
        trace, diff = sample_full_torsion_forms(rng)
        tor = du.full_torsion_surfaces(trace, diff)
        cfg_alt = fiber_configuration(tor["alt"])
        assert cfg_alt.summary() == {"I2": 12}
        assert cfg_alt.euler_total == 24
        if not full_torsion_tower_generic(tor["f"], tor["g"]):
            continue
        assert fiber_configuration(tor["jac_4cover"]).summary() == {"I1": 24}
        assert fiber_configuration(tor["jac_cover"]).summary() == {"I0*": 2, "I1": 12}
        assert fiber_configuration(tor["jac_quot_twisted"]).summary() == {
            "I0*": 3,
            "I1": 6,
        }
        cfg_res = fiber_configuration(tor["res_quot"])
        assert cfg_res.summary() == {"I0*": 1, "I1": 6}
        assert cfg_res.euler_total == 12
        assert fiber_configuration(tor["res_cover"]).summary() == {"I1": 12}
        done += 1


# ---------------------------------------------------------------------------
# four bilinear curves


def test_quadruple_pair_eliminant_identity():
    # product identity forced by the 2x2 minors of four vectors
    rng = random.Random(220)
    for _ in range(10):
        quad = du.BilinearQuadruple.of(
            tuple(tuple(rng.randint(-9, 9) for _ in range(4)) for _ in range(4))
        )
        b = quad.pair_form(0, 1) * quad.pair_form(2, 3)
        c = quad.pair_form(0, 2) * quad.pair_form(1, 3)
        d = quad.pair_form(0, 3) * quad.pair_form(1, 2)
        assert b - c == -1 * d


def test_quadruple_genericity_gates():
    base = ((1, 2, 3, 5), (2, -1, 1, 4), (0, 1, 1, -3), (1, 1, -2, 1))
    with pytest.raises(du.GenericityViolated) as err:
        du.bilinear_quadruple_surface(
            du.BilinearQuadruple.of(((1, 2, 2, 4),) + base[1:])
        )
    assert "reducible" in str(err.value)
    with pytest.raises(du.GenericityViolated) as err:
        du.bilinear_quadruple_surface(
            du.BilinearQuadruple.of((base[0], (2, 4, 6, 10)) + base[2:])
        )
    assert "share a component" in str(err.value)
    # curves 0 and 1 meeting at a double point
    tangent = ((1, 0, 0, 1), (0, -1, 1, -2)) + base[2:]
    with pytest.raises(du.GenericityViolated) as err:
        du.bilinear_quadruple_surface(du.BilinearQuadruple.of(tangent))
    assert "tangent" in str(err.value)
    # curves 0, 1, 2 sharing the point (s, U) = (0, 1)
    triple = ((1, 1, 0, -1), (2, 1, 1, -1), (1, 1, 1, -1), base[3])
    with pytest.raises(du.GenericityViolated) as err:
        du.bilinear_quadruple_surface(du.BilinearQuadruple.of(triple))
    assert "0, 1 and 2 meet in a point" in str(err.value)


def test_quadruple_cover_configuration_and_torsion():
    rng = random.Random(221)
    for _ in range(5):
        quad = sample_generic_quadruple(rng)
        surface = du.bilinear_quadruple_surface(quad)
        cfg = fiber_configuration(surface.model)
        assert cfg.summary() == {"I2": 12}
        assert cfg.euler_total == 24
        b, c = surface.torsion_factors
        sections = two_torsion_sections(surface.model)
        assert len(sections) == 3
        assert b in sections and c in sections


# ---------------------------------------------------------------------------
# three concurrent lines and a cubic


def test_three_lines_parameter_gates():
    with pytest.raises(du.ParameterConstraintViolated):
        du.ThreeLinesCubicParams.of(1, 1, 0, 1, 0, 0, 0, 0, 0, 0)
    with pytest.raises(du.ParameterConstraintViolated):
        du.ThreeLinesCubicParams.of(0, 1, 0, 0, 0, 0, 0, 0, 0, 0)
    with pytest.raises(du.ParameterConstraintViolated):
        du.ThreeLinesCubicParams.of(0, 1, 0, 1, 0, 0, -1, 0, 0, 0)


def test_three_lines_discriminant_shape():
    # delta = 16 (t+mu)^6 (t+nu)^6 q(t) with q monic-degree six up to the
    # factor (c1+d2)^2 c1^2 d2^2; d2 = 0 kills the lead and sharpens the
    # fiber at infinity
    rng = random.Random(222)
    done = 0
    while done < 8:
        params = sample_three_lines_params(rng)
        deficit, finite = star_chain_profile(params)
        if params.d2 == 0:
            assert deficit > 6
            done += 1
            continue
        assert deficit == 6
        assert finite.degree == 6
        expected_lead = (
            16 * (params.c1 + params.d2) ** 2 * params.c1**2 * params.d2**2
        )
        assert finite.coeff(6) == expected_lead
        done += 1


def test_three_lines_generic_configuration():
    rng = random.Random(223)
    done = 0
    while done < 5:
        params = sample_three_lines_params(rng)
        if params.d2 == 0 or not three_lines_generic(params):
            continue
        if star_chain_profile(params)[0] != 6:
            continue
        model = du.three_lines_cubic_model(params)
        cfg = fiber_configuration(model)
        assert cfg.summary() == {"I0*": 3, "I1": 6}
        assert cfg.euler_total == 24
        done += 1


def test_three_lines_sharpening_chain():
    rng = random.Random(224)
    cases = (
        (dict(d2=0), 7, {"I1*": 1, "I0*": 2, "I1": 5}),
        (dict(d2=0, e2=0), 8, {"I2*": 1, "I0*": 2, "I1": 4}),
        (dict(d2=0, e2=0, e1=0, d1=0), 9, {"I3*": 1, "I0*": 2, "I1": 3}),
    )
    for fixed, level, expected in cases:
        done = 0
        while done < 4:
            params = sample_three_lines_params(rng, **fixed)
            if star_chain_profile(params)[0] != level:
                continue
            if not three_lines_generic(params):
                continue
            cfg = fiber_configuration(du.three_lines_cubic_model(params))
            assert cfg.summary() == expected
            done += 1


def test_three_lines_last_step_needs_vanishing_d1():
    # with d1 != 0 the star at infinity stays one step lower
    rng = random.Random(225)
    done = 0
    while done < 4:
        params = sample_three_lines_params(rng, d2=0, e2=0, e1=0)
        if params.d1 == 0:
            continue
        deficit, _ = star_chain_profile(params)
        assert deficit == 8
        if not three_lines_generic(params):
            continue
        cfg = fiber_configuration(du.three_lines_cubic_model(params))
        assert cfg.summary() == {"I2*": 1, "I0*": 2, "I1": 4}
        done += 1


def test_normalization_roundtrip():
    rng = random.Random(226)
    done = 0
    while done < 10:
        params = sample_three_lines_params(rng)
        if params.c1 <= 0:
            continue
        sq, lin, cst = du.general_form_coefficients(params)
        back = du.normalize_three_i0star(params.mu, params.nu, sq, lin, cst)
        assert back == params
        done += 1


def test_normalization_mirror_branch():
    rng = random.Random(227)
    done = 0
    while done < 10:
        params = sample_three_lines_params(rng)
        if params.c1 >= 0:
            continue
        sq, lin, cst = du.general_form_coefficients(params)
        back = du.normalize_three_i0star(params.mu, params.nu, sq, lin, cst)
        assert back.c1 > 0
        assert du.three_lines_cubic_model(back) == du.three_lines_cubic_model(params)
        done += 1


def test_normalization_shifted_roundtrip():
    # forward-shift the image so the normalizer must find and undo it
    params = du.ThreeLinesCubicParams.of(0, 1, 2, 1, -1, 3, 2, 1, -2, 1)
    sq, lin, cst = du.general_form_coefficients(params)
    sq_f, lin_f, cst_f = du.shift_cubic_term(sq, lin, cst, -5)
    assert cst_f[0] != 0
    back = du.normalize_three_i0star(0, 1, sq_f, lin_f, cst_f)
    assert back == params
    shift_form = homogenize(
        5 * UniPoly.of(0, 1) * UniPoly.of(0, 1, 1), ("t", "h"), 4
    )
    shifted_model = du.star_triple_model(0, 1, sq_f, lin_f, cst_f)
    assert shifted_model.shift_x(shift_form) == du.three_lines_cubic_model(params)


def test_normalization_error_gates():
    with pytest.raises(du.NoRationalCubicRoot):
        du.normalize_three_i0star(0, 1, (1, 0), (0, 0, 0), (1, 0, 0, 7))
    with pytest.raises(du.NonSquareDiscriminant):
        du.normalize_three_i0star(0, 1, (1, 0), (-1, 0, 0), (0, 0, 0, 0))
    with pytest.raises(du.ParameterConstraintViolated):
        du.normalize_three_i0star(0, 0, (1, 0), (0, 0, 0), (0, 0, 0, 0))
    with pytest.raises(du.ParameterConstraintViolated):
        du.normalize_three_i0star(0, 1, (0, 5), (0, 1, 2), (0, 1, 2, 3))


# ---------------------------------------------------------------------------
# the refibration of a quadruple cover


def test_refibration_generic_draw_fails_square_gate():
    quad = du.BilinearQuadruple.of(
        ((1, 2, 3, 5), (2, -1, 1, 4), (0, 1, 1, -3), (1, 1, -2, 1))
    )
    with pytest.raises(du.NonSquareDiscriminant):
        du.refibration_jacobian(quad)


def test_refibration_chart_gate():
    quad = du.BilinearQuadruple.of(
        ((1, 2, 3, 5), (2, -1, 1, 4), (0, 1, 1, -3), (1, 1, -2, 1))
    )
    with pytest.raises(du.ParameterConstraintViolated):
        du.refibration_jacobian(quad, 3, 3)


def test_refibration_matches_full_torsion_route():
    rng = random.Random(228)
    for _ in range(5):
        quad = sample_refiber_quadruple(rng)
        surface = du.bilinear_quadruple_surface(quad)
        b, c = surface.torsion_factors
        rj = du.refibration_jacobian(quad)
        tor = du.full_torsion_surfaces(b + c, b - c)
        assert rj.f == tor["f"]
        assert rj.g == tor["g"]
        assert (rj.params.mu, rj.params.nu) == (0, 1)
        other = du.refibration_jacobian(quad, 2, 5)
        assert (other.f, other.g) == (rj.f, rj.g)
        assert (other.params.mu, other.params.nu) == (2, 5)


def test_refibration_star_configuration():
    rng = random.Random(229)
    done = 0
    while done < 3:
        quad = sample_refiber_quadruple(rng)
        rj = du.refibration_jacobian(quad)
        if not three_lines_generic(rj.params):
            continue
        if star_chain_profile(rj.params)[0] != 6:
            continue
        cfg = fiber_configuration(rj.model)
        assert cfg.summary() == {"I0*": 3, "I1": 6}
        done += 1


# ---------------------------------------------------------------------------
# the shared subfamily tower


def test_subfamily_gates():
    f = HomPoly.of(UV, (2, -1, 3))
    g = HomPoly.of(UV, (1, 0, -2, 1))
    with pytest.raises(ValueError):
        du.subfamily_models("bogus", f, g)
    with pytest.raises(DegreeMismatch):
        du.subfamily_models("twist", g, g)
    with pytest.raises(DegenerateModel):
        du.subfamily_models("twist", HomPoly.of(UV, (-3, 0, 0)), HomPoly.of(UV, (2, 0, 0, 0)))


def test_subfamily_configurations_and_places():
    rng = random.Random(230)
    done = 0
    while done < 5:
        f = random_form(rng, UV, 2, -6, 6)
        g = random_form(rng, UV, 3, -6, 6)
        if (4 * f**3 + 27 * g**2).is_zero:
            continue
        if not full_torsion_tower_generic(f, g):
            continue
        cover4 = du.subfamily_models("cover4", f, g)
        assert fiber_configuration(cover4).summary() == {"I1": 24}
        cover2 = du.subfamily_models("cover2", f, g)
        cfg2 = fiber_configuration(cover2)
        assert cfg2.summary() == {"I0*": 2, "I1": 12}
        assert label_product(cfg2, "I0*") == HomPoly.of(uv, (1, 0, -1))
        twist = du.subfamily_models("twist", f, g)
        cfg_t = fiber_configuration(twist)
        assert cfg_t.summary() == {"I0*": 3, "I1": 6}
        u_q = HomPoly.var_power(UV, 0, 1)
        v_q = HomPoly.var_power(UV, 1, 1)
        assert label_product(cfg_t, "I0*") == u_q * v_q * (u_q - v_q)
        rational = du.subfamily_models("rational", f, g)
        assert rational.weight == 1
        cfg_r = fiber_configuration(rational)
        assert cfg_r.summary() == {"I0*": 1, "I1": 6}
        assert cfg_r.euler_total == 12
        assert label_product(cfg_r, "I0*") == HomPoly.of(UV, (1, -1))
        done += 1


# ---------------------------------------------------------------------------
# the public chart-restriction helper


def test_line_restriction_roundtrip():
    rng = random.Random(231)
    for degree in (2, 3):
        for _ in range(10):
            form = random_form(rng, UV, degree, -9, 9)
            mu, nu = Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4))
            if mu == nu:
                continue
            # recover the restriction x -> form(x + mu, x + nu) exactly
            # through interpolation, then invert it
            xs = [Fraction(k) for k in range(degree + 1)]
            values = [form(x + mu, x + nu) for x in xs]
            poly = _interpolate(xs, values)
            recovered = du.form_from_line_restriction(poly, mu, nu, degree, UV)
            assert recovered == form


def _interpolate(xs, values):
    total = UniPoly.zero()
    for i, (xi, vi) in enumerate(zip(xs, values)):
        term = UniPoly.of(vi)
        for j, xj in enumerate(xs):
            if i == j:
                continue
            term = term * UniPoly.of(-xj, 1) * Fraction(1, (xi - xj))
        total = total + term
    return total


def test_line_restriction_gates():
    p = UniPoly.of(1, 2, 1)
    with pytest.raises(du.ParameterConstraintViolated):
        du.form_from_line_restriction(p, 3, 3, 2, UV)
    with pytest.raises(DegreeMismatch):
        du.form_from_line_restriction(UniPoly.of(1, 1, 1, 1), 0, 1, 2, UV)
