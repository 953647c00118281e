"""Scenario-driven verification harness and command-line entry point.

A scenario is a small text file that declares one check: a verification
family, its explicit inputs (binary forms, rationals, quartic curves, or
lattice expressions), an optional trial count for randomized families,
and the expected outcome (fiber counts, lattice invariants, an identity
holding, or a specific error).  ``verify`` runs a selection of scenarios
and renders a report as aligned text or as JSON; the JSON form carries no
timing data and is byte-stable for a fixed seed, so runs can be diffed.

Randomized families re-sample rejected draws using genericity predicates
(squarefreeness and coprimality of specific discriminant factors), never
the expected answer, so resampling cannot bias a check.
"""

from __future__ import annotations

import argparse
import fnmatch
import hashlib
import json
import random
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable

from . import duality as du
from . import lattice as la
from .elliptic import (
    DegenerateModel,
    FiberConfiguration,
    KodairaType,
    fiber_configuration,
    invariants,
    two_torsion_sections,
)
from .exactpoly import (
    DegreeMismatch,
    HomPoly,
    ParseError,
    UniPoly,
    discriminant_form,
    divexact_form,
    form_discriminant,
    homogenize,
    parse_hompoly,
    parse_rational,
    tensor_forms,
)
from .hermite_aj import (
    QuarticCurve,
    abel_jacobi,
    correspondence_22,
    correspondence_polys,
    discr_relation_check,
    double_quadric_from_quartic,
    exchange_constraint,
    j_invariant_22,
    j_invariant_quartic,
    jacobian_quartic,
)

DEFAULT_TRIALS = 100

_KINDS = (
    "fiber-config",
    "lattice-identity",
    "hermite-identity",
    "construction-roundtrip",
    "table-consistency",
)

_NAME_RE = re.compile(r"^[a-z0-9][a-z0-9-]*$")
_IDENT_RE = re.compile(r"^[A-Za-z_]\w*$")

_FIRST = ("s", "t")
_SECOND = ("U", "V")
_COVER = ("u", "v")


class _CheckFailure(Exception):
    """An expectation did not hold; carries extra artifact detail."""

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.details = details or {}


# ---------------------------------------------------------------------------
# scenario files


@dataclass
class Scenario:
    name: str
    kind: str
    family: str | None
    trials: int | None
    polys: dict[str, HomPoly] = field(default_factory=dict)
    rats: dict[str, Fraction] = field(default_factory=dict)
    quartics: dict[str, QuarticCurve] = field(default_factory=dict)
    lattices: dict[str, la.GramLattice] = field(default_factory=dict)
    expect_fibers: dict[str, int] | None = None
    expect_euler: int | None = None
    expect_error: str | None = None
    expect_match: bool | None = None
    expect_invariants: list[tuple[str, object]] = field(default_factory=list)
    expect_pass: bool = False


_POLY_RE = re.compile(
    r"^poly\s+(?P<name>\w+)\s+on\s+(?P<v1>[A-Za-z_]\w*)\s*,\s*"
    r"(?P<v2>[A-Za-z_]\w*)\s+deg\s+(?P<deg>\d+)\s*=\s*(?P<expr>.+)$"
)
_ASSIGN_RE = re.compile(r"^(?P<key>\w+)\s+(?P<name>\w+)\s*=\s*(?P<expr>.+)$")
_FIBER_ITEM_RE = re.compile(r"^\s*(\d+)\s*\*\s*([IV0-9*]+)\s*$")
_LATTICE_TERM_RE = re.compile(
    r"\s*(?P<atom><-?2>|[A-Z][A-Za-z0-9]*)\s*"
    r"(?:\(\s*(?P<scale>-?\d+)\s*\))?\s*(?:\^\s*(?P<power>\d+))?\s*$"
)


def _parse_int(text: str, line: int, what: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {text.strip()!r}", line, 1)


def _parse_lattice_expr(text: str, line: int) -> la.GramLattice:
    summands: list[la.GramLattice] = []
    for piece in text.split("+"):
        m = _LATTICE_TERM_RE.fullmatch(piece)
        if m is None:
            raise ParseError(f"bad lattice term {piece.strip()!r}", line, 1)
        atom = m.group("atom")
        if atom == "P0":
            base = la.two_param_polarization(0)
        elif atom == "P1":
            base = la.two_param_polarization(1)
        else:
            try:
                base = la.standard_lattice(atom)
            except la.UnknownLattice as exc:
                raise ParseError(str(exc), line, 1) from None
        scale = m.group("scale")
        if scale is not None:
            if int(scale) == 0:
                raise ParseError("lattice scale must be nonzero", line, 1)
            base = la.rescale(base, int(scale))
        power = int(m.group("power") or 1)
        if power < 1:
            raise ParseError("lattice power must be positive", line, 1)
        summands.extend([base] * power)
    return summands[0] if len(summands) == 1 else la.direct_sum(*summands)


def _parse_fiber_multiset(text: str, line: int) -> dict[str, int]:
    counts: dict[str, int] = {}
    for item in text.split("+"):
        m = _FIBER_ITEM_RE.fullmatch(item)
        if m is None:
            raise ParseError(f"bad fiber item {item.strip()!r}", line, 1)
        count, label = int(m.group(1)), m.group(2)
        try:
            KodairaType.parse(label)
        except Exception:
            raise ParseError(f"unknown fiber label {label!r}", line, 1) from None
        if label in counts:
            raise ParseError(f"fiber label {label} listed twice", line, 1)
        if count < 1:
            raise ParseError("fiber counts must be positive", line, 1)
        counts[label] = count
    return counts


def _parse_expect(rest: str, line: int, sc: Scenario) -> None:
    head, _, tail = rest.partition(" ")
    tail = tail.strip()

    def once(flag: bool, what: str) -> None:
        if flag:
            raise ParseError(f"duplicate expectation {what!r}", line, 1)

    if head == "pass":
        once(sc.expect_pass, "pass")
        sc.expect_pass = True
    elif head == "error":
        once(sc.expect_error is not None, "error")
        if not _IDENT_RE.fullmatch(tail):
            raise ParseError(f"bad error name {tail!r}", line, 1)
        sc.expect_error = tail
    elif head == "fibers":
        once(sc.expect_fibers is not None, "fibers")
        sc.expect_fibers = _parse_fiber_multiset(tail, line)
    elif head == "euler":
        once(sc.expect_euler is not None, "euler")
        sc.expect_euler = _parse_int(tail, line, "euler number")
    elif head in ("match", "mismatch"):
        once(sc.expect_match is not None, head)
        sc.expect_match = head == "match"
    elif head in ("det", "length", "parity"):
        once(any(k == head for k, _ in sc.expect_invariants), head)
        value = _parse_int(tail, line, head)
        if head == "parity" and value not in (0, 1):
            raise ParseError("parity must be 0 or 1", line, 1)
        sc.expect_invariants.append((head, value))
    elif head == "signature":
        once(any(k == "signature" for k, _ in sc.expect_invariants), head)
        parts = tail.split(",")
        if len(parts) != 2:
            raise ParseError("signature expects 'plus,minus'", line, 1)
        sig = tuple(_parse_int(p, line, "signature entry") for p in parts)
        sc.expect_invariants.append(("signature", sig))
    elif head in ("even", "odd"):
        once(any(k == "even" for k, _ in sc.expect_invariants), head)
        sc.expect_invariants.append(("even", head == "even"))
    else:
        raise ParseError(f"unknown expectation {head!r}", line, 1)


def parse_scenario(text: str, source: str = "<scenario>") -> Scenario:
    """Parse one scenario file into a fully typed :class:`Scenario`.

    Raises :class:`ParseError` (with line/column) for grammar problems and
    :class:`DegreeMismatch` when a polynomial is not homogeneous of its
    declared degree.
    """
    name: str | None = None
    kind: str | None = None
    family: str | None = None
    trials: int | None = None
    sc = Scenario(name="", kind="", family=None, trials=None)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        line = line.strip()
        key = line.split(None, 1)[0]
        rest = line[len(key):].strip() if len(line) > len(key) else ""

        if key == "name":
            if name is not None:
                raise ParseError("duplicate name line", lineno, col)
            if not _NAME_RE.fullmatch(rest):
                raise ParseError(f"bad scenario name {rest!r}", lineno, col)
            name = rest
        elif key == "kind":
            if kind is not None:
                raise ParseError("duplicate kind line", lineno, col)
            if rest not in _KINDS:
                raise ParseError(f"unknown kind {rest!r}", lineno, col)
            kind = rest
        elif key == "family":
            if family is not None:
                raise ParseError("duplicate family line", lineno, col)
            if not _NAME_RE.fullmatch(rest):
                raise ParseError(f"bad family name {rest!r}", lineno, col)
            family = rest
        elif key == "trials":
            if trials is not None:
                raise ParseError("duplicate trials line", lineno, col)
            trials = _parse_int(rest, lineno, "trials")
            if trials < 1:
                raise ParseError("trials must be positive", lineno, col)
        elif key == "poly":
            m = _POLY_RE.match(line)
            if m is None:
                raise ParseError(
                    "expected 'poly <name> on <v1>,<v2> deg <n> = <terms>'",
                    lineno,
                    1,
                )
            pname = m.group("name")
            if pname in sc.polys:
                raise ParseError(f"duplicate poly {pname!r}", lineno, col)
            vars = (m.group("v1"), m.group("v2"))
            if vars[0] == vars[1]:
                raise ParseError("the two variables must differ", lineno, col)
            declared = int(m.group("deg"))
            try:
                form = parse_hompoly(m.group("expr"), vars, declared, line=lineno)
            except ParseError as exc:
                message = str(exc)
                if "homogeneous" in message or "declared degree" in message:
                    raise DegreeMismatch(f"{source}:{lineno}: {message}") from None
                raise
            sc.polys[pname] = form
        elif key in ("rat", "quartic", "lattice"):
            m = _ASSIGN_RE.match(line)
            if m is None or m.group("key") != key:
                raise ParseError(f"expected '{key} <name> = <value>'", lineno, col)
            vname, expr = m.group("name"), m.group("expr")
            if key == "rat":
                if vname in sc.rats:
                    raise ParseError(f"duplicate rat {vname!r}", lineno, col)
                sc.rats[vname] = parse_rational(expr, line=lineno)
            elif key == "quartic":
                if vname in sc.quartics:
                    raise ParseError(f"duplicate quartic {vname!r}", lineno, col)
                parts = expr.split(",")
                if len(parts) != 5:
                    raise ParseError(
                        "quartic expects five comma-separated coefficients",
                        lineno,
                        1,
                    )
                coeffs = [parse_rational(p, line=lineno) for p in parts]
                sc.quartics[vname] = QuarticCurve.of(*coeffs)
            else:
                if vname in sc.lattices:
                    raise ParseError(f"duplicate lattice {vname!r}", lineno, col)
                sc.lattices[vname] = _parse_lattice_expr(expr, lineno)
        elif key == "expect":
            _parse_expect(rest, lineno, sc)
        else:
            raise ParseError(f"unknown directive {key!r}", lineno, col)

    if name is None:
        raise ParseError(f"{source}: missing name line", 1, 1)
    if kind is None:
        raise ParseError(f"{source}: missing kind line", 1, 1)
    sc.name, sc.kind, sc.family, sc.trials = name, kind, family, trials
    _validate_scenario(sc, source)
    return sc


def _validate_scenario(sc: Scenario, source: str) -> None:
    def bad(message: str) -> ParseError:
        return ParseError(f"{source}: scenario {sc.name!r}: {message}", 1, 1)

    has_outcome = (
        sc.expect_pass
        or sc.expect_error is not None
        or sc.expect_fibers is not None
        or sc.expect_match is not None
        or bool(sc.expect_invariants)
    )
    if not has_outcome:
        raise bad("no expectation declared")
    if sc.expect_error is not None and (
        sc.expect_pass
        or sc.expect_fibers is not None
        or sc.expect_match is not None
        or sc.expect_invariants
    ):
        raise bad("'expect error' excludes every other expectation")

    if sc.kind == "lattice-identity":
        if sc.family is not None:
            raise bad("lattice-identity scenarios take no family")
        if not sc.lattices:
            raise bad("lattice-identity needs at least one lattice")
        if sc.expect_match is not None and len(sc.lattices) < 2:
            raise bad("match/mismatch needs at least two lattices")
        if sc.expect_pass or sc.expect_fibers is not None:
            raise bad("lattice-identity takes match/mismatch or invariants")
        return

    if sc.expect_match is not None or sc.expect_invariants:
        raise bad("lattice expectations are only for lattice-identity")
    if sc.family is None:
        raise bad("this kind needs a family line")
    fam = _FAMILIES.get(sc.family)
    if fam is None:
        raise bad(f"unknown family {sc.family!r}")
    if fam.kind != sc.kind:
        raise bad(f"family {sc.family!r} belongs to kind {fam.kind!r}")

    if sc.kind == "fiber-config":
        if sc.expect_error is None and sc.expect_fibers is None:
            raise bad("fiber-config needs 'expect fibers' (or an error)")
        if sc.expect_pass:
            raise bad("fiber-config states its expectation with 'fibers'")
    else:
        if sc.expect_fibers is not None or sc.expect_euler is not None:
            raise bad("fiber expectations are only for fiber-config")
        if sc.expect_error is None and not sc.expect_pass:
            raise bad("this kind needs 'expect pass' or 'expect error'")

    for pname in fam.needs_polys:
        if pname not in sc.polys:
            raise bad(f"family {sc.family!r} needs poly {pname!r}")
    for rname in fam.needs_rats:
        if rname not in sc.rats:
            raise bad(f"family {sc.family!r} needs rat {rname!r}")
    for qname in fam.needs_quartics:
        if qname not in sc.quartics:
            raise bad(f"family {sc.family!r} needs quartic {qname!r}")
    if sc.family == "star-chain" and sc.rats["level"] not in (7, 8, 9):
        raise bad("star-chain level must be 7, 8 or 9")
    if sc.family == "alternate-pair":
        if sc.polys["trace"].degree != 4 or sc.polys["norm"].degree != 8:
            raise bad("alternate-pair needs trace of degree 4, norm of degree 8")


def load_scenario(path: str) -> Scenario:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_scenario(handle.read(), source=path)


def bundled_scenarios() -> list[Scenario]:
    """All scenarios shipped inside the package, sorted by name."""
    root = resources.files(__package__).joinpath("scenarios")
    out = []
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".scn"):
            out.append(parse_scenario(entry.read_text("utf-8"), source=entry.name))
    return sorted(out, key=lambda sc: sc.name)


# ---------------------------------------------------------------------------
# samplers: every acceptance gate below is a genericity predicate on
# discriminant factors, never a comparison with the expected answer


def _random_form(rng: random.Random, vars, degree: int, lo=-9, hi=9) -> HomPoly:
    while True:
        coeffs = tuple(Fraction(rng.randint(lo, hi)) for _ in range(degree + 1))
        if any(coeffs):
            return HomPoly.of(vars, coeffs)


def _separable(form: HomPoly) -> bool:
    return not form.is_zero and form_discriminant(form) != 0


def _sample_rational_surface(rng: random.Random) -> du.RESData:
    while True:
        f = _random_form(rng, _FIRST, 4)
        g = _random_form(rng, _FIRST, 6)
        try:
            r = du.RESData(f, g)
        except ValueError:
            continue
        if _separable(r.reduced_discriminant()):
            return r


def _sample_cover_parameters(rng: random.Random, r: du.RESData):
    disc = r.reduced_discriminant()
    while True:
        d0 = Fraction(rng.randint(-9, 9))
        d_inf = Fraction(rng.randint(-9, 9))
        if (1 - d0) * (1 - d_inf) * (1 - d0 * d_inf) == 0:
            continue
        if disc(d0, 1) == 0 or disc(1, d_inf) == 0 or disc(1, 1) == 0:
            continue
        return d0, d_inf


def _sample_isogeny_pair(rng: random.Random) -> du.AlternatePair:
    while True:
        trace = _random_form(rng, _FIRST, 4, -6, 6)
        left = _random_form(rng, _FIRST, 4, -6, 6)
        right = _random_form(rng, _FIRST, 4, -6, 6)
        norm = left * right
        complement = trace * trace - 4 * norm
        if _separable(norm * complement):
            return du.AlternatePair(trace, norm, split=(left, right))


def _sample_correspondence_triple(rng: random.Random):
    while True:
        d0, a0, g0, a1, a2, g2 = (Fraction(rng.randint(-6, 6)) for _ in range(6))
        gamma = HomPoly.of(_SECOND, (g2, a2, g0))
        alpha = HomPoly.of(_SECOND, (a2, a1, a0))
        delta = HomPoly.of(_SECOND, (g0, a0, d0))
        prod = gamma * delta
        disc = alpha * alpha - 4 * prod
        if prod.is_zero or disc.is_zero:
            continue
        if not _separable(prod * disc):
            continue
        if (prod * disc)(0, 1) == 0 or (prod * disc)(1, 0) == 0:
            continue
        return alpha, gamma, delta


def _sample_full_torsion_forms(rng: random.Random):
    while True:
        trace = _random_form(rng, _FIRST, 4, -6, 6)
        difference = _random_form(rng, _FIRST, 4, -6, 6)
        product = (trace * trace - difference * difference) * difference
        if not product.is_zero and _separable(product):
            return trace, difference


def _reduced_pair_generic(f: HomPoly, g: HomPoly) -> bool:
    disc = 4 * f**3 + 27 * g**2
    if not _separable(disc):
        return False
    return disc.coeffs[0] != 0 and disc(0, 1) != 0 and disc(1, 1) != 0


def _sample_reduced_pair(rng: random.Random):
    while True:
        f = _random_form(rng, _SECOND, 2)
        g = _random_form(rng, _SECOND, 3)
        if _reduced_pair_generic(f, g):
            return f, g


def _sample_generic_quadruple(rng: random.Random) -> du.BilinearQuadruple:
    while True:
        rows = tuple(
            tuple(Fraction(rng.randint(-5, 5)) for _ in range(4)) for _ in range(4)
        )
        try:
            quad = du.BilinearQuadruple.of(rows)
            surface = du.bilinear_quadruple_surface(quad)
        except du.GenericityViolated:
            continue
        b, c = surface.torsion_factors
        if _separable(b * c * (b - c)):
            return quad


def _interpolated_row(base, x1, x2, lam1, lam2):
    # row of a bilinear curve meeting ``base`` over s = x1 and s = x2
    r1, r2, r3, r4 = base
    a1, b1 = lam1 * (r1 * x1 + r2), lam1 * (r3 * x1 + r4)
    a2, b2 = lam2 * (r1 * x2 + r2), lam2 * (r3 * x2 + r4)
    p1 = (a1 - a2) / (x1 - x2)
    p3 = (b1 - b2) / (x1 - x2)
    return (p1, a1 - p1 * x1, p3, b1 - p3 * x1)


def _sample_refiber_quadruple(rng: random.Random) -> du.BilinearQuadruple:
    # pairs (0, 3) and (1, 2) meet over rational s values, so the
    # refibration's rationality gates always pass
    while True:
        row0 = tuple(Fraction(rng.randint(-5, 5)) for _ in range(4))
        row1 = tuple(Fraction(rng.randint(-5, 5)) for _ in range(4))
        xs = rng.sample(range(-6, 7), 4)
        lams = [Fraction(rng.randint(1, 4)) for _ in range(4)]
        try:
            row3 = _interpolated_row(
                row0, Fraction(xs[0]), Fraction(xs[1]), lams[0], lams[1]
            )
            row2 = _interpolated_row(
                row1, Fraction(xs[2]), Fraction(xs[3]), lams[2], lams[3]
            )
            quad = du.BilinearQuadruple.of((row0, row1, row2, row3))
            surface = du.bilinear_quadruple_surface(quad)
        except du.GenericityViolated:
            continue
        b, c = surface.torsion_factors
        if _separable(b * c * (b - c)):
            return quad


def _sample_three_lines_params(rng: random.Random, **fixed) -> du.ThreeLinesCubicParams:
    names = ("mu", "nu", "c0", "c1", "d0", "d1", "d2", "e0", "e1", "e2")
    while True:
        draw = {key: Fraction(rng.randint(-5, 5)) for key in names}
        draw.update({k: Fraction(v) for k, v in fixed.items()})
        try:
            return du.ThreeLinesCubicParams.of(**draw)
        except du.ParameterConstraintViolated:
            continue


def _star_chain_profile(params: du.ThreeLinesCubicParams):
    """(infinity multiplicity, finite discriminant factor) of the model."""
    model = du.three_lines_cubic_model(params)
    delta = invariants(model).delta
    stars = homogenize(
        (UniPoly.of(params.mu, 1) ** 6) * (UniPoly.of(params.nu, 1) ** 6),
        delta.vars,
        12,
    )
    finite = divexact_form(delta, stars).as_unipoly()
    return 12 - finite.degree, finite


def _finite_factor_generic(params: du.ThreeLinesCubicParams, finite: UniPoly) -> bool:
    """Separable nodal factor avoiding both pinned star places."""
    if finite.is_zero or discriminant_form(finite, finite.degree) == 0:
        return False
    return finite(-params.mu) != 0 and finite(-params.nu) != 0


def _sample_chain_params(rng: random.Random, level: int, fixed: dict):
    while True:
        params = _sample_three_lines_params(rng, **fixed)
        try:
            deficit, finite = _star_chain_profile(params)
        except DegenerateModel:
            continue
        if deficit == level and _finite_factor_generic(params, finite):
            return params


def _random_quartic(rng: random.Random, lo=-9, hi=9) -> QuarticCurve:
    return QuarticCurve.of(*(Fraction(rng.randint(lo, hi)) for _ in range(5)))


# ---------------------------------------------------------------------------
# fiber-configuration families


def _fiber_table(cfg: FiberConfiguration) -> list[dict]:
    return [
        {
            "factor": p.place.text(),
            "v_c4": p.v_c4,
            "v_c6": p.v_c6,
            "v_delta": p.v_delta,
            "type": p.kodaira.label,
            "count": p.degree,
        }
        for p in cfg.places
    ]


def _fmt_multiset(counts: dict[str, int]) -> str:
    return " + ".join(f"{n}*{label}" for label, n in sorted(counts.items()))


def _check_configuration(
    sc: Scenario, cfg: FiberConfiguration, context: str
) -> None:
    got = cfg.summary()
    if got != sc.expect_fibers:
        raise _CheckFailure(
            f"{context}: fiber counts {_fmt_multiset(got)} "
            f"instead of {_fmt_multiset(sc.expect_fibers)}",
            {"fiber_table": _fiber_table(cfg)},
        )
    if sc.expect_euler is not None and cfg.euler_total != sc.expect_euler:
        raise _CheckFailure(
            f"{context}: Euler number {cfg.euler_total} "
            f"instead of {sc.expect_euler}",
            {"fiber_table": _fiber_table(cfg)},
        )


def _fiber_suite(sc, rng, trials, build) -> dict:
    first = None
    for k in range(trials):
        for tag, model in build(sc, rng):
            cfg = fiber_configuration(model)
            _check_configuration(sc, cfg, f"trial {k} ({tag})")
            if first is None:
                first = {
                    "instance": tag,
                    "weight": cfg.weight,
                    "euler": cfg.euler_total,
                    "places": _fiber_table(cfg),
                }
    return {"trials": trials, "first_instance": first}


def _fiber_family(build) -> Callable:
    def runner(sc, rng, trials):
        return _fiber_suite(sc, rng, trials, build)

    return runner


def _build_rational_base(sc, rng):
    return [("rational elliptic surface", _sample_rational_surface(rng).model())]


def _build_base_change(sc, rng):
    r = _sample_rational_surface(rng)
    d0, d_inf = _sample_cover_parameters(rng, r)
    return [(f"cover at ({d0}, {d_inf})", du.base_change_k3(r, d0, d_inf))]


def _build_twist(sc, rng):
    r = _sample_rational_surface(rng)
    d0, d_inf = _sample_cover_parameters(rng, r)
    return [(f"twist at ({d0}, {d_inf})", du.twist_model(r, d0, d_inf))]


def _build_torsion_pair(sc, rng):
    return [("trace/norm member", _sample_isogeny_pair(rng).model())]


def _build_alternate_pair(sc, rng):
    pair = du.AlternatePair(sc.polys["trace"], sc.polys["norm"])
    return [("declared trace/norm member", pair.model())]


def _build_three_lines(sc, rng):
    params = _sample_chain_params(rng, 6, {})
    return [("three-lines cubic", du.three_lines_cubic_model(params))]


def _build_star_chain(sc, rng):
    level = int(sc.rats["level"])
    fixed = {7: {"d2": 0}, 8: {"d2": 0, "e2": 0}, 9: {"d2": 0, "e2": 0, "e1": 0, "d1": 0}}
    params = _sample_chain_params(rng, level, fixed[level])
    return [(f"sharpened chain, level {level}", du.three_lines_cubic_model(params))]


def _build_correspondence(keys):
    def build(sc, rng):
        alpha, gamma, delta = _sample_correspondence_triple(rng)
        table = du.correspondence_surfaces(alpha, gamma, delta)
        return [(key, table[key]) for key in keys]

    return build


def _build_subfamily(kind):
    def build(sc, rng):
        f, g = _sample_reduced_pair(rng)
        return [(f"{kind} member", du.subfamily_models(kind, f, g))]

    return build


def _build_full_torsion_alt(sc, rng):
    trace, difference = _sample_full_torsion_forms(rng)
    table = du.full_torsion_surfaces(trace, difference)
    return [("full-torsion member", table["alt"])]


def _build_refibered_pencil(sc, rng):
    while True:
        quad = _sample_refiber_quadruple(rng)
        rj = du.refibration_jacobian(quad)
        try:
            deficit, finite = _star_chain_profile(rj.params)
        except DegenerateModel:
            continue
        if deficit == 6 and _finite_factor_generic(rj.params, finite):
            return [("refibered pencil", rj.model)]


def _run_quadruple_cover(sc, rng, trials):
    first = None
    for k in range(trials):
        quad = _sample_generic_quadruple(rng)
        surface = du.bilinear_quadruple_surface(quad)
        cfg = fiber_configuration(surface.model)
        _check_configuration(sc, cfg, f"trial {k} (quadruple cover)")
        sections = two_torsion_sections(surface.model)
        b, c = surface.torsion_factors
        if len(sections) != 3 or not {b, c} <= set(sections):
            raise _CheckFailure(
                f"trial {k}: two-torsion does not split into both branch factors"
            )
        if first is None:
            first = {
                "instance": "quadruple cover",
                "weight": cfg.weight,
                "euler": cfg.euler_total,
                "places": _fiber_table(cfg),
            }
    return {"trials": trials, "first_instance": first, "torsion_sections": 3}


# ---------------------------------------------------------------------------
# polynomial-identity families


def _run_coupling_product(sc, rng, trials):
    anchors = tuple(Fraction(a) for a in (-2, -1, 0, 1, 2, 3))
    witness = None
    for k in range(trials):
        h = _random_quartic(rng)
        p = h.poly()
        polys = correspondence_polys(h)
        if not (polys.pairing.is_symmetric and polys.cofactor.is_symmetric):
            raise _CheckFailure(f"trial {k}: coupling data lost symmetry")
        if polys.pairing.diagonal() != p:
            raise _CheckFailure(f"trial {k}: pairing diagonal differs from the quartic")
        second = p.derivative().derivative()
        expected_diag = Fraction(1, 3) * (p * second) - Fraction(1, 4) * (
            p.derivative() * p.derivative()
        )
        if polys.cofactor_diagonal != expected_diag:
            raise _CheckFailure(f"trial {k}: cofactor diagonal formula failed")
        for x0 in anchors:
            lhs = (
                polys.pairing.at_second(x0) ** 2
                + polys.cofactor.at_second(x0) * UniPoly.of(-x0, 1) ** 2
            )
            if lhs != p * p(x0):
                raise _CheckFailure(
                    f"trial {k}: product identity failed at anchor {x0}",
                    {"quartic": _frs(h.coeffs)},
                )
        if witness is None:
            witness = {"quartic": _frs(h.coeffs)}
    return {"trials": trials, "anchors": [str(a) for a in anchors], "first_instance": witness}


def _run_discriminant_relation(sc, rng, trials):
    witness = None
    for k in range(trials):
        h = _random_quartic(rng)
        dp, dq, g = discr_relation_check(h)
        if dq != g * g * dp:
            raise _CheckFailure(
                f"trial {k}: resolvent discriminant is not g^2 times the quartic one",
                {"quartic": _frs(h.coeffs)},
            )
        if dp != jacobian_quartic(h).discriminant:
            raise _CheckFailure(
                f"trial {k}: quartic discriminant differs from -4f^3 - 27g^2",
                {"quartic": _frs(h.coeffs)},
            )
        if witness is None:
            witness = {"quartic": _frs(h.coeffs), "disc": str(dp)}
    return {"trials": trials, "first_instance": witness}


def _sample_two_point_curve(rng):
    while True:
        x0 = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        w0 = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        px = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        pw = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if w0 == 0 or px == x0:
            continue
        a2, a3, a4 = (Fraction(rng.randint(-9, 9)) for _ in range(3))
        rhs0 = w0**2 - (a2 * x0**2 + a3 * x0**3 + a4 * x0**4)
        rhs1 = pw**2 - (a2 * px**2 + a3 * px**3 + a4 * px**4)
        a1 = (rhs1 - rhs0) / (px - x0)
        a0 = rhs0 - a1 * x0
        return QuarticCurve.of(a0, a1, a2, a3, a4), (x0, -w0), (px, pw)


def _run_pointwise_map(sc, rng, trials):
    witness = None
    for k in range(trials):
        h, base, point = _sample_two_point_curve(rng)
        if not abel_jacobi(h, base, base).is_infinity:
            raise _CheckFailure(f"trial {k}: the base point did not map to the origin")
        img = abel_jacobi(h, base, point)
        if not img.is_infinity and not jacobian_quartic(h).contains(img.xi, img.eta):
            raise _CheckFailure(
                f"trial {k}: image is off the reduced cubic",
                {"quartic": _frs(h.coeffs), "image": [str(img.xi), str(img.eta)]},
            )
        if witness is None:
            witness = {
                "quartic": _frs(h.coeffs),
                "image": "infinity" if img.is_infinity else [str(img.xi), str(img.eta)],
            }
    return {"trials": trials, "first_instance": witness}


def _run_pointwise_anchor(sc, rng, trials):
    h = sc.quartics["curve"]
    base = (sc.rats["base_x"], sc.rats["base_w"])
    point = (sc.rats["point_x"], sc.rats["point_w"])
    expected = (sc.rats["image_xi"], sc.rats["image_eta"])
    if not abel_jacobi(h, base, base).is_infinity:
        raise _CheckFailure("the base point did not map to the origin")
    img = abel_jacobi(h, base, point)
    if img.is_infinity or (img.xi, img.eta) != expected:
        got = "infinity" if img.is_infinity else f"({img.xi}, {img.eta})"
        raise _CheckFailure(f"image {got} instead of ({expected[0]}, {expected[1]})")
    if not jacobian_quartic(h).contains(img.xi, img.eta):
        raise _CheckFailure("image is off the reduced cubic")
    return {"image": [str(img.xi), str(img.eta)]}


def _run_fiberwise_j(sc, rng, trials):
    witness = None
    for k in range(trials):
        while True:
            h = _random_quartic(rng, -6, 6)
            if h.discriminant() != 0:
                break
        xi = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        b = correspondence_22(h, xi)
        if j_invariant_quartic(h) != j_invariant_22(b):
            raise _CheckFailure(
                f"trial {k}: the two j-invariants differ",
                {"quartic": _frs(h.coeffs), "xi": str(xi)},
            )
        if witness is None:
            witness = {
                "quartic": _frs(h.coeffs),
                "xi": str(xi),
                "j": f"{j_invariant_quartic(h)}",
            }
    return {"trials": trials, "first_instance": witness}


def _run_quartic_double_cover(sc, rng, trials):
    data = double_quadric_from_quartic(
        sc.rats["a0"],
        sc.rats["a1"],
        sc.rats["a2"],
        sc.rats["xi"],
        sc.rats["c0"],
        sc.rats["c_inf"],
    )
    corr = data.correspondence
    first = ("S", "T")
    s_sq = HomPoly.var_power(first, 0, 1) ** 2
    s_t = HomPoly.var_power(first, 0, 1) * HomPoly.var_power(first, 1, 1)
    t_sq = HomPoly.var_power(first, 1, 1) ** 2
    quadric = (
        tensor_forms(s_sq, corr.gamma)
        + tensor_forms(s_t, corr.alpha)
        + tensor_forms(t_sq, corr.delta)
    )
    if data.quadric != quadric:
        raise _CheckFailure("the quadric is not assembled from the coupling triple")
    line0, line_inf = data.line_factors
    u, v = data.ruling_factors
    if data.branch != tensor_forms(line0 * line_inf, u * v) * data.quadric:
        raise _CheckFailure("branch form does not factor as lines times the quadric")
    if (data.branch.deg1, data.branch.deg2) != (4, 4):
        raise _CheckFailure("branch form is not of bidegree (4, 4)")
    if exchange_constraint(data.params) != 0:
        raise _CheckFailure("the exchange constraint does not vanish")
    return {"branch_bidegree": [4, 4]}


# ---------------------------------------------------------------------------
# round-trip families


def _run_isogeny_square(sc, rng, trials):
    for k in range(trials):
        trace = _random_form(rng, _FIRST, 4)
        norm = _random_form(rng, _FIRST, 8)
        pair = du.AlternatePair(trace, norm)
        again = du.two_isogeny_dual(du.two_isogeny_dual(pair))
        if again.trace != 4 * trace or again.norm != 16 * norm:
            raise _CheckFailure(
                f"trial {k}: double dual is not multiplication by four"
            )
    return {"trials": trials, "scaling": ["4", "16"]}


def _run_isogeny_place_swap(sc, rng, trials):
    first = None
    for k in range(trials):
        pair = _sample_isogeny_pair(rng)
        dual = du.two_isogeny_dual(pair)
        cfg = fiber_configuration(pair.model())
        cfg_dual = fiber_configuration(dual.model())
        if cfg.euler_total != cfg_dual.euler_total:
            raise _CheckFailure(f"trial {k}: Euler numbers differ across the isogeny")
        mine = {label: _label_places(cfg, label) for label in ("I1", "I2")}
        theirs = {label: _label_places(cfg_dual, label) for label in ("I1", "I2")}
        if mine["I2"] != theirs["I1"] or mine["I1"] != theirs["I2"]:
            raise _CheckFailure(
                f"trial {k}: the isogeny did not swap the two sets of places"
            )
        if first is None:
            first = {
                "summary": cfg.summary(),
                "dual_summary": cfg_dual.summary(),
            }
    return {"trials": trials, "first_instance": first}


def _label_places(cfg: FiberConfiguration, label: str) -> set:
    return {p.place for p in cfg.places if p.kodaira.label == label}


def _run_involution_square(sc, rng, trials):
    for k in range(trials):
        trace = _random_form(rng, _FIRST, 4)
        left = _random_form(rng, _FIRST, 4)
        right = _random_form(rng, _FIRST, 4)
        if du.moduli_involution(trace, left, right, 0, 0) != (-trace, left, right):
            raise _CheckFailure(f"trial {k}: base-point normal form failed")
        while True:
            d0 = Fraction(rng.randint(-9, 9))
            d_inf = Fraction(rng.randint(-9, 9))
            if d0 * d_inf != 1:
                break
        once = du.moduli_involution(trace, left, right, d0, d_inf)
        twice = du.moduli_involution(*once, d0, d_inf)
        scale = (d0 * d_inf - 1) ** 2
        if twice != (scale * trace, scale * left, scale * right):
            raise _CheckFailure(
                f"trial {k}: involution square is not the fixed scalar "
                f"(d0*d_inf - 1)^2"
            )
        combo = once[0] * once[0] - 4 * once[1] * once[2]
        fixed = trace * trace - 4 * left * right
        if combo != scale * fixed:
            raise _CheckFailure(
                f"trial {k}: branch combination scaled by the wrong factor"
            )
    return {"trials": trials, "scalar": "(d0*d_inf - 1)^2"}


def _run_normalize_roundtrip(sc, rng, trials):
    seen_mirror = 0
    for k in range(trials):
        params = _sample_three_lines_params(rng)
        sq, lin, cst = du.general_form_coefficients(params)
        back = du.normalize_three_i0star(params.mu, params.nu, sq, lin, cst)
        if params.c1 > 0:
            if back != params:
                raise _CheckFailure(f"trial {k}: normalization lost the parameters")
        else:
            # documented sign branch: with c1 < 0 the positive square root
            # is taken unless it collides with the shifted quadratic
            # coefficient (exactly at d2 = 0), where the parameters come
            # back verbatim; the model agrees either way
            seen_mirror += 1
            if params.d2 == 0:
                if back != params:
                    raise _CheckFailure(
                        f"trial {k}: collision branch altered the parameters"
                    )
            elif back.c1 != -params.c1:
                raise _CheckFailure(f"trial {k}: mirror branch chose the wrong sign")
            if du.three_lines_cubic_model(back) != du.three_lines_cubic_model(params):
                raise _CheckFailure(f"trial {k}: mirror branch changed the model")
    return {"trials": trials, "mirror_branch_trials": seen_mirror}


def _run_refibration_match(sc, rng, trials):
    for k in range(trials):
        quad = _sample_refiber_quadruple(rng)
        surface = du.bilinear_quadruple_surface(quad)
        b, c = surface.torsion_factors
        rj = du.refibration_jacobian(quad)
        tor = du.full_torsion_surfaces(b + c, b - c)
        if rj.f != tor["f"] or rj.g != tor["g"]:
            raise _CheckFailure(
                f"trial {k}: refibration pair differs from the torsion-tower pair"
            )
        if (rj.params.mu, rj.params.nu) != (0, 1):
            raise _CheckFailure(f"trial {k}: default chart is not (0, 1)")
        other = du.refibration_jacobian(quad, 2, 5)
        if (other.f, other.g) != (rj.f, rj.g):
            raise _CheckFailure(f"trial {k}: the reduced pair depends on the chart")
    return {"trials": trials}


# ---------------------------------------------------------------------------
# table-consistency families


def _run_correspondence_routes(sc, rng, trials):
    branch_keys = (
        "branch_cover1_cover2",
        "branch_cover1_quot2",
        "branch_quot1_cover2",
        "branch_quot1_quot2",
    )
    for k in range(trials):
        alpha, gamma, delta = _sample_correspondence_triple(rng)
        table = du.correspondence_surfaces(alpha, gamma, delta)
        for key in branch_keys:
            one, other = table[key]
            if one != other:
                raise _CheckFailure(f"trial {k}: the two readings of {key} differ")
        if table["cad"] != (
            gamma.rename(_SECOND),
            alpha.rename(_SECOND),
            delta.rename(_SECOND),
        ):
            raise _CheckFailure(
                f"trial {k}: the quotient triple is not the input triple"
            )
        for key in ("cover1", "quot1", "rat1"):
            base, dual = table[key], table[key + "_dual"]
            if dual.a2 != -2 * base.a2 or dual.a4 != base.a2**2 - 4 * base.a4:
                raise _CheckFailure(f"trial {k}: {key} dual relation failed")
        for key in ("cover2", "quot2", "rat2"):
            base, dual = table[key + "_dual"], table[key]
            if dual.a2 != -2 * base.a2 or dual.a4 != base.a2**2 - 4 * base.a4:
                raise _CheckFailure(
                    f"trial {k}: {key} dual relation failed on the mirrored side"
                )
    return {"trials": trials, "branch_pairs": list(branch_keys)}


def _run_extraction_identity(sc, rng, trials):
    u_sq = HomPoly.of(_COVER, (1, 0, 0))
    v_sq = HomPoly.of(_COVER, (0, 0, 1))
    u_lin = HomPoly.of(_COVER, (1, 0))
    v_lin = HomPoly.of(_COVER, (0, 1))
    for k in range(trials):
        pair = _sample_isogeny_pair(rng)
        data = du.quadric_double_cover(pair)
        total = None
        for j in range(5):
            power = HomPoly.of(
                _FIRST, tuple(1 if i == 4 - j else 0 for i in range(5))
            )
            term = tensor_forms(power, data.swap.coeffs[j].substitute(u_sq, v_sq))
            total = term if total is None else total + term
        if total != data.branch:
            raise _CheckFailure(f"trial {k}: the two branch readings differ")
        left, right = pair.split
        flipped = du.quadric_double_cover(
            du.AlternatePair(pair.trace, pair.norm, split=(right, left))
        )
        if data.branch.substitute_pair2(v_lin, u_lin) != flipped.branch:
            raise _CheckFailure(
                f"trial {k}: swapping rulings does not flip the split"
            )
        f, g = data.swap.f, data.swap.g
        try:
            res = du.RESData(f.rename(_FIRST), g.rename(_FIRST))
        except ValueError:
            continue
        disc = res.reduced_discriminant()
        if disc(0, 1) == 0 or disc(1, 0) == 0 or disc(1, 1) == 0:
            continue
        if data.jacobian != du.base_change_k3(res, 0, 0):
            raise _CheckFailure(
                f"trial {k}: jacobian differs from the degree-two base change"
            )
    return {"trials": trials}


def _run_torsion_tower(sc, rng, trials):
    stages = (
        ("cover4", "jac_4cover"),
        ("cover2", "jac_cover"),
        ("twist", "jac_quot_twisted"),
        ("rational", "res_quot"),
    )
    for k in range(trials):
        trace, difference = _sample_full_torsion_forms(rng)
        table = du.full_torsion_surfaces(trace, difference)
        f, g = table["f"], table["g"]
        for kind, key in stages:
            if du.subfamily_models(kind, f, g) != table[key]:
                raise _CheckFailure(
                    f"trial {k}: subfamily {kind!r} differs from tower entry {key!r}"
                )
        for key in ("branch_4cover", "branch_cover", "branch_quot"):
            one, other = table[key]
            if one != other:
                raise _CheckFailure(f"trial {k}: the two readings of {key} differ")
        alt, alt_dual = table["alt"], table["alt_dual"]
        checks = (
            alt.a2 == -1 * trace,
            4 * alt.a4 == trace * trace - difference * difference,
            alt_dual.a2 == 2 * trace,
            alt_dual.a4 == difference * difference,
        )
        if not all(checks):
            raise _CheckFailure(f"trial {k}: the isogenous pair lost its normal form")
    return {"trials": trials, "stages": [kind for kind, _ in stages]}


def _run_deformation_discriminant(sc, rng, trials):
    for k in range(trials):
        trace = _random_form(rng, _FIRST, 4)
        left = _random_form(rng, _FIRST, 4)
        right = _random_form(rng, _FIRST, 4)
        while True:
            d0 = Fraction(rng.randint(-9, 9))
            d_inf = Fraction(rng.randint(-9, 9))
            if d0 * d_inf != 1:
                break
        fam = du.two_param_family(trace, left, right, d0, d_inf)
        inv = invariants(fam.model)
        if inv.delta != 16 * fam.reduced_discriminant:
            raise _CheckFailure(
                f"trial {k}: model discriminant is not 16 times the reduced one"
            )
        scale = (d0 * d_inf - 1) ** 2
        fixed = trace * trace - 4 * left * right
        if fam.model.a2**2 - 4 * fam.model.a4 != scale * fixed:
            raise _CheckFailure(
                f"trial {k}: branch combination scaled by the wrong factor"
            )
        once = du.moduli_involution(trace, left, right, d0, d_inf)
        combo = once[0] * once[0] - 4 * once[1] * once[2]
        if combo != scale * fixed:
            raise _CheckFailure(
                f"trial {k}: involution moved the branch combination"
            )
    return {"trials": trials, "scalar": "(d0*d_inf - 1)^2"}


# ---------------------------------------------------------------------------
# lattice identities


def _lattice_profile(lat: la.GramLattice) -> dict:
    profile = {
        "rank": lat.rank,
        "determinant": la.determinant(lat),
        "signature": list(la.signature(lat)),
        "even": lat.is_even,
    }
    inv = la.two_elementary_invariants(lat)
    if inv.is_two_elementary:
        profile["length"] = inv.length
        profile["parity"] = inv.parity
    return profile


def _run_lattice(sc: Scenario) -> dict:
    names = list(sc.lattices)
    profiles = {name: _lattice_profile(sc.lattices[name]) for name in names}
    artifacts: dict = {"lattices": profiles}

    for key, value in sc.expect_invariants:
        for name in names:
            profile = profiles[name]
            if key == "det" and profile["determinant"] != value:
                raise _CheckFailure(
                    f"lattice {name}: determinant {profile['determinant']} "
                    f"instead of {value}",
                    artifacts,
                )
            if key == "signature" and tuple(profile["signature"]) != value:
                raise _CheckFailure(
                    f"lattice {name}: signature {tuple(profile['signature'])} "
                    f"instead of {value}",
                    artifacts,
                )
            if key == "length":
                if profile.get("length") != value:
                    raise _CheckFailure(
                        f"lattice {name}: discriminant-group length "
                        f"{profile.get('length')} instead of {value}",
                        artifacts,
                    )
            if key == "parity" and profile.get("parity") != value:
                raise _CheckFailure(
                    f"lattice {name}: parity {profile.get('parity')} "
                    f"instead of {value}",
                    artifacts,
                )
            if key == "even" and profile["even"] != value:
                kind = "even" if value else "odd"
                raise _CheckFailure(f"lattice {name} is not {kind}", artifacts)

    if sc.expect_match is not None:
        pairs = {}
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                verdict = la.nikulin_equivalent(sc.lattices[a], sc.lattices[b])
                pairs[f"{a}~{b}"] = verdict
                if verdict != sc.expect_match:
                    word = "equivalent" if sc.expect_match else "inequivalent"
                    artifacts["pairs"] = pairs
                    raise _CheckFailure(
                        f"lattices {a} and {b} should be {word}", artifacts
                    )
        artifacts["pairs"] = pairs
    return artifacts


# ---------------------------------------------------------------------------
# the family registry


@dataclass(frozen=True)
class Family:
    kind: str
    runner: Callable
    randomized: bool = True
    needs_polys: tuple[str, ...] = ()
    needs_rats: tuple[str, ...] = ()
    needs_quartics: tuple[str, ...] = ()


_FAMILIES: dict[str, Family] = {
    # fiber configurations
    "rational-base": Family("fiber-config", _fiber_family(_build_rational_base)),
    "base-change": Family("fiber-config", _fiber_family(_build_base_change)),
    "quadratic-twist": Family("fiber-config", _fiber_family(_build_twist)),
    "torsion-pair": Family("fiber-config", _fiber_family(_build_torsion_pair)),
    "alternate-pair": Family(
        "fiber-config",
        _fiber_family(_build_alternate_pair),
        randomized=False,
        needs_polys=("trace", "norm"),
    ),
    "quadruple-cover": Family("fiber-config", _run_quadruple_cover),
    "three-lines": Family("fiber-config", _fiber_family(_build_three_lines)),
    "star-chain": Family(
        "fiber-config", _fiber_family(_build_star_chain), needs_rats=("level",)
    ),
    "correspondence-cover": Family(
        "fiber-config", _fiber_family(_build_correspondence(("cover1", "cover2")))
    ),
    "correspondence-quotient": Family(
        "fiber-config", _fiber_family(_build_correspondence(("quot1", "quot2")))
    ),
    "correspondence-rational": Family(
        "fiber-config", _fiber_family(_build_correspondence(("rat1", "rat2")))
    ),
    "tower-fourfold-cover": Family(
        "fiber-config", _fiber_family(_build_subfamily("cover4"))
    ),
    "tower-double-cover": Family(
        "fiber-config", _fiber_family(_build_subfamily("cover2"))
    ),
    "tower-twisted-quotient": Family(
        "fiber-config", _fiber_family(_build_subfamily("twist"))
    ),
    "tower-rational-quotient": Family(
        "fiber-config", _fiber_family(_build_subfamily("rational"))
    ),
    "full-torsion-alternate": Family(
        "fiber-config", _fiber_family(_build_full_torsion_alt)
    ),
    "refibered-pencil": Family(
        "fiber-config", _fiber_family(_build_refibered_pencil)
    ),
    # polynomial identities
    "coupling-product": Family("hermite-identity", _run_coupling_product),
    "discriminant-relation": Family("hermite-identity", _run_discriminant_relation),
    "pointwise-map": Family("hermite-identity", _run_pointwise_map),
    "pointwise-map-anchor": Family(
        "hermite-identity",
        _run_pointwise_anchor,
        randomized=False,
        needs_quartics=("curve",),
        needs_rats=(
            "base_x",
            "base_w",
            "point_x",
            "point_w",
            "image_xi",
            "image_eta",
        ),
    ),
    "fiberwise-j": Family("hermite-identity", _run_fiberwise_j),
    "quartic-double-cover": Family(
        "hermite-identity",
        _run_quartic_double_cover,
        randomized=False,
        needs_rats=("a0", "a1", "a2", "xi", "c0", "c_inf"),
    ),
    # round trips
    "isogeny-square": Family("construction-roundtrip", _run_isogeny_square),
    "isogeny-place-swap": Family("construction-roundtrip", _run_isogeny_place_swap),
    "involution-square": Family("construction-roundtrip", _run_involution_square),
    "normalize-roundtrip": Family("construction-roundtrip", _run_normalize_roundtrip),
    "refibration-match": Family("construction-roundtrip", _run_refibration_match),
    # cross-route tables
    "correspondence-routes": Family("table-consistency", _run_correspondence_routes),
    "extraction-identity": Family("table-consistency", _run_extraction_identity),
    "torsion-tower": Family("table-consistency", _run_torsion_tower),
    "deformation-discriminant": Family(
        "table-consistency", _run_deformation_discriminant
    ),
}


# ---------------------------------------------------------------------------
# running and reporting


@dataclass
class Report:
    name: str
    kind: str
    family: str | None
    status: str  # pass | fail | error
    trials: int | None
    detail: str | None
    error: dict | None  # {"type", "message", "expected"}
    artifacts: dict
    wall_time: float

    @property
    def ok(self) -> bool:
        return self.status == "pass" or (
            self.status == "error" and bool(self.error and self.error["expected"])
        )


def _scenario_rng(seed: int, name: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}/{name}".encode()).hexdigest()
    return random.Random(int(digest[:16], 16))


def run(scenario: Scenario, seed: int, trials_override: int | None = None) -> Report:
    """Run one scenario and return its report."""
    rng = _scenario_rng(seed, scenario.name)
    started = time.perf_counter()
    if scenario.kind == "lattice-identity":
        trials = None
        task = lambda: _run_lattice(scenario)  # noqa: E731
    else:
        family = _FAMILIES[scenario.family]
        if family.randomized:
            trials = trials_override or scenario.trials or DEFAULT_TRIALS
        else:
            trials = None
        task = lambda: family.runner(scenario, rng, trials or 1)  # noqa: E731

    status, detail, error, artifacts = "pass", None, None, {}
    try:
        artifacts = task()
    except _CheckFailure as failure:
        status, detail = "fail", str(failure)
        artifacts = failure.details
    except Exception as exc:  # module errors become per-scenario reports
        status = "error"
        error = {
            "type": type(exc).__name__,
            "message": str(exc),
            "expected": type(exc).__name__ == scenario.expect_error,
        }
    else:
        if scenario.expect_error is not None:
            status = "fail"
            detail = (
                f"expected error {scenario.expect_error} but the run completed"
            )
    wall = time.perf_counter() - started
    return Report(
        name=scenario.name,
        kind=scenario.kind,
        family=scenario.family,
        status=status,
        trials=trials,
        detail=detail,
        error=error,
        artifacts=artifacts or {},
        wall_time=wall,
    )


def run_suite(
    scenarios: list[Scenario], seed: int, trials_override: int | None = None
) -> list[Report]:
    ordered = sorted(scenarios, key=lambda sc: sc.name)
    return [run(sc, seed, trials_override) for sc in ordered]


def _jsonify(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = list(value)
        if isinstance(value, (set, frozenset)):
            items = sorted(items, key=str)
        return [_jsonify(v) for v in items]
    if isinstance(value, HomPoly):
        return value.text()
    if isinstance(value, UniPoly):
        return value.text("x")
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return str(value)


def emit_json(reports: list[Report], seed: int) -> str:
    """Byte-stable JSON report: no timing data, sorted keys."""
    payload = {
        "schema_version": 1,
        "seed": seed,
        "counts": {
            "pass": sum(1 for r in reports if r.status == "pass"),
            "fail": sum(1 for r in reports if r.status == "fail"),
            "error": sum(1 for r in reports if r.status == "error"),
        },
        "ok": all(r.ok for r in reports),
        "scenarios": [
            {
                "name": r.name,
                "kind": r.kind,
                "family": r.family,
                "status": r.status,
                "trials": r.trials,
                "detail": r.detail,
                "error": r.error,
                "artifacts": _jsonify(r.artifacts),
            }
            for r in reports
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _render_columns(rows: list[list[str]], indent: str) -> list[str]:
    if not rows:
        return []
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return [
        indent + "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        for row in rows
    ]


def emit_text(reports: list[Report], seed: int) -> str:
    lines = [f"ellsurf verify: {len(reports)} scenarios, seed {seed}"]
    rows = []
    for r in reports:
        mark = r.status
        if r.status == "error" and r.error and r.error["expected"]:
            mark = "error*"
        note = ""
        if r.trials is not None:
            note = f"trials {r.trials}"
        rows.append(
            [
                f"[{mark}]",
                r.name,
                r.kind,
                note,
                f"{1000 * r.wall_time:.1f} ms",
            ]
        )
    lines.extend(_render_columns(rows, "  "))
    lines.append("")

    for r in reports:
        extras = []
        if r.detail:
            extras.append(f"detail: {r.detail}")
        if r.error is not None:
            qualifier = "expected" if r.error["expected"] else "unexpected"
            extras.append(
                f"{qualifier} error {r.error['type']}: {r.error['message']}"
            )
        table = (r.artifacts or {}).get("first_instance")
        places = table.get("places") if isinstance(table, dict) else None
        if r.artifacts.get("fiber_table"):
            places = r.artifacts["fiber_table"]
        if extras or places:
            lines.append(f"{r.name}:")
            for extra in extras:
                lines.append(f"  {extra}")
            if places:
                header = ["place", "v(c4)", "v(c6)", "v(delta)", "type", "count"]
                body = [
                    [
                        p["factor"],
                        "-" if p["v_c4"] is None else str(p["v_c4"]),
                        "-" if p["v_c6"] is None else str(p["v_c6"]),
                        str(p["v_delta"]),
                        p["type"],
                        str(p["count"]),
                    ]
                    for p in places
                ]
                lines.extend(_render_columns([header] + body, "  "))
            lines.append("")

    counts = (
        sum(1 for r in reports if r.status == "pass"),
        sum(1 for r in reports if r.status == "fail"),
        sum(1 for r in reports if r.status == "error"),
    )
    total = sum(r.wall_time for r in reports)
    lines.append(
        f"{counts[0]} passed, {counts[1]} failed, {counts[2]} errors"
        f" in {total:.2f} s"
    )
    lines.append("ok" if all(r.ok for r in reports) else "NOT OK")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry point


def _collect(args) -> list[Scenario]:
    chosen: list[Scenario] = []
    if args.all or args.filter:
        bundled = bundled_scenarios()
        if args.filter:
            bundled = [
                sc for sc in bundled if fnmatch.fnmatchcase(sc.name, args.filter)
            ]
        chosen.extend(bundled)
    for path in args.scenario or ():
        chosen.append(load_scenario(path))
    names = [sc.name for sc in chosen]
    for name in names:
        if names.count(name) > 1:
            raise ParseError(f"duplicate scenario name {name!r}", 1, 1)
    return chosen


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="ellsurf",
        description="scenario-driven verification of the ellsurf toolkit",
    )
    sub = parser.add_subparsers(dest="command")
    verify = sub.add_parser("verify", help="run verification scenarios")
    verify.add_argument("--all", action="store_true", help="run every bundled scenario")
    verify.add_argument(
        "--scenario",
        action="append",
        metavar="PATH",
        help="run a scenario file (repeatable)",
    )
    verify.add_argument(
        "--filter", metavar="GLOB", help="run bundled scenarios matching a glob"
    )
    verify.add_argument(
        "--format", choices=("text", "json"), default="text", help="report format"
    )
    verify.add_argument("--seed", type=int, default=0, help="root seed (default 0)")
    verify.add_argument(
        "--trials", type=int, help="override the trial count of randomized scenarios"
    )

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command != "verify":
        parser.print_usage(sys.stderr)
        return 2
    if not (args.all or args.scenario or args.filter):
        print("error: select scenarios with --all, --scenario or --filter", file=sys.stderr)
        return 2
    if args.trials is not None and args.trials < 1:
        print("error: --trials must be positive", file=sys.stderr)
        return 2

    try:
        scenarios = _collect(args)
    except (ParseError, DegreeMismatch, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not scenarios:
        print("error: the selection matched no scenarios", file=sys.stderr)
        return 2

    reports = run_suite(scenarios, args.seed, args.trials)
    if args.format == "json":
        sys.stdout.write(emit_json(reports, args.seed))
    else:
        sys.stdout.write(emit_text(reports, args.seed))
    return 0 if all(r.ok for r in reports) else 1


def _frs(values) -> list[str]:
    return [str(v) for v in values]


if __name__ == "__main__":
    sys.exit(main())
