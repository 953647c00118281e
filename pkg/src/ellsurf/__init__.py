"""ellsurf: exact-arithmetic toolkit for elliptic fibrations over P^1,
Jacobians of quartic and bidegree-(2,2) genus-one curves, and integral
lattice invariants, with a scenario-driven verification CLI."""

__version__ = "0.1.0"

from . import cli, duality, elliptic, exactpoly, hermite_aj, lattice  # noqa: F401
