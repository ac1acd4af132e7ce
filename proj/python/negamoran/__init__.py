"""Exact nega-P numeral systems, restricted cylinders and Moran-set dimensions."""

from fractions import Fraction

from . import _negamoran
from ._negamoran import (
    CapExceeded,
    complement_even,
    contract_blocks,
    dimension,
    expand_blocks,
    extrema,
    solve_moran,
    verify,
)

__all__ = [
    "CapExceeded",
    "complement_even",
    "contract_blocks",
    "cover",
    "cylinder",
    "dimension",
    "eval_word",
    "expand_blocks",
    "extrema",
    "measure",
    "solve_moran",
    "verify",
]


def eval_word(system, digits, s, P="uniform"):
    """Exact value of a digit word such as "113(12)" in the given system."""
    return Fraction(_negamoran.eval_word(system, digits, s, P))


def cylinder(spec, s, u=0, P="uniform"):
    lo, hi = _negamoran.cylinder(spec, s, u, P)
    return Fraction(lo), Fraction(hi)


def cover(n, s, u, P="uniform", cap=1_000_000):
    return [(tuple(base), Fraction(lo), Fraction(hi)) for base, lo, hi in _negamoran.cover(n, s, u, P, cap)]


def measure(n, s, u, P="uniform", cap=1_000_000):
    r = _negamoran.measure(n, s, u, P, cap)
    for key in ("lambda_over", "lambda_under", "V"):
        r[key] = Fraction(r[key])
    for row in r["rows"]:
        row["measure"] = Fraction(row["measure"])
        row["bound"] = Fraction(row["bound"])
    return r
