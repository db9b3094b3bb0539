"""Candidate and effective poles of zeta functions.

A pole ``s0`` of a normalized expression is read off from the binomials
``1 - L^(-v) T^N`` left in its denominator after cancellation, with
``s0 = -v/N``. The reported order is the number of such binomials. It is an
upper bound: the coefficient ring has zero divisors that a free model of it
cannot see.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .model import StratifiedModel
from .zeta import NormalZeta, ZetaExpr, zeta_normalize


@dataclass(frozen=True)
class PoleReport:
    candidates: frozenset
    effective: dict = field(default_factory=dict)
    upper_bound: bool = True

    def __post_init__(self):
        stray = set(self.effective) - set(self.candidates)
        if stray:
            raise ValueError(f"effective poles {sorted(stray)} are not candidates")

    def to_json(self) -> dict:
        return {
            "candidates": [str(x) for x in sorted(self.candidates)],
            "effective": {str(k): v for k, v in sorted(self.effective.items())},
            "order_is_upper_bound": self.upper_bound,
        }


def candidate_poles(model: StratifiedModel) -> frozenset:
    return frozenset(-D.v / D.N for D in model.divisors if D.N > 0)


def effective_poles(z: "ZetaExpr | NormalZeta") -> dict[Fraction, int]:
    return dict(sorted(zeta_normalize(z).pole_multiset().items()))


def pole_order_at_most(z: "ZetaExpr | NormalZeta", s0, m: int) -> bool:
    return effective_poles(z).get(Fraction(s0), 0) <= m


def pole_report(model: StratifiedModel, z: "ZetaExpr | NormalZeta") -> PoleReport:
    return PoleReport(candidate_poles(model), effective_poles(z))


@dataclass(frozen=True)
class PoleComparison:
    naive_poles: frozenset
    dlt_poles: frozenset
    subset: bool
    equals_intersection_with_unit_interval: bool

    def to_json(self) -> dict:
        return {
            "naive_poles": [str(x) for x in sorted(self.naive_poles)],
            "dlt_poles": [str(x) for x in sorted(self.dlt_poles)],
            "subset": self.subset,
            "equals_intersection_with_unit_interval": self.equals_intersection_with_unit_interval,
        }


def compare_pole_sets(z_naive, z_dlt) -> PoleComparison:
    """Weak form: dlt poles are naive poles. Strong form: they are exactly the naive poles in [-1, 0]."""
    naive = frozenset(effective_poles(z_naive))
    dlt = frozenset(effective_poles(z_dlt))
    in_unit = frozenset(p for p in naive if -1 <= p <= 0)
    return PoleComparison(naive, dlt, dlt <= naive, dlt == in_unit)
