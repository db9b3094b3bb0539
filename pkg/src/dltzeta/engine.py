"""Evaluate the zeta-function and stringy formulas from a stratified model.

All motivic formulas share one shape::

    prefactor * sum_J  multiplier(J) * payload(J) * prod_{i in J} factor(N_i, v_i)

and differ only in the four switches of :func:`evaluate_formula`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

import sympy

from .model import ModelError, StratifiedModel, check
from .ring import MotiveExpr
from .zeta import GLOBAL, NAIVE, NormalZeta, ZetaExpr, ZetaFactor, ZetaTerm, local_factor, zeta_normalize

s = sympy.Symbol("s")

__all__ = [
    "evaluate_formula",
    "compute_naive_zeta",
    "compute_dlt_zeta",
    "compute_global_zeta",
    "compute_zeta",
    "compute_topological_zeta",
    "topological_poles",
    "compute_stringy_motive",
    "compute_generalized_stringy",
    "generalized_stringy_euler",
    "validate_global_minimality",
    "local_factor",
    "s",
]


def _Lm1() -> MotiveExpr:
    return MotiveExpr.lefschetz(1) - 1


def evaluate_formula(
    model: StratifiedModel,
    *,
    prefactor: bool,
    style: str,
    deep_multiplier: bool,
    skip_empty: bool,
) -> ZetaExpr:
    """Generic evaluator behind every motivic formula.

    prefactor        multiply by L^(-d)
    style            factor style, ``naive`` or ``global``
    deep_multiplier  extra (L-1)^(|J|-1) per stratum
    skip_empty       drop J = {} from the sum
    """
    data = {D.id: D for D in model.divisors}
    terms = []
    for S in sorted(model.strata, key=lambda S: (len(S.J), sorted(S.J))):
        if skip_empty and not S.J:
            continue
        coef = S.payload
        if prefactor and model.d:
            coef = coef.shift(-model.d)
        if deep_multiplier and len(S.J) > 1:
            coef = coef * _Lm1() ** (len(S.J) - 1)
        factors = tuple(ZetaFactor(data[i].N, data[i].v, style) for i in S.J)
        terms.append(ZetaTerm(coef, factors))
    return ZetaExpr(tuple(terms))


def _require(model: StratifiedModel, kinds: tuple[str, ...]) -> None:
    if model.kind not in kinds:
        raise ModelError([f"kind: expected one of {kinds}, got {model.kind!r}"])
    check(model)


def compute_naive_zeta(model: StratifiedModel) -> ZetaExpr:
    _require(model, ("naive",))
    return evaluate_formula(model, prefactor=True, style=NAIVE, deep_multiplier=False, skip_empty=False)


def compute_dlt_zeta(model: StratifiedModel) -> ZetaExpr:
    _require(model, ("dlt",))
    return evaluate_formula(model, prefactor=True, style=NAIVE, deep_multiplier=False, skip_empty=False)


def compute_global_zeta(model: StratifiedModel) -> ZetaExpr:
    _require(model, ("global_naive", "global_dlt"))
    return evaluate_formula(model, prefactor=False, style=GLOBAL, deep_multiplier=True, skip_empty=True)


def compute_zeta(model: StratifiedModel) -> ZetaExpr:
    if model.kind == "naive":
        return compute_naive_zeta(model)
    if model.kind == "dlt":
        return compute_dlt_zeta(model)
    return compute_global_zeta(model)


# -- Euler specialization

def _stratum_euler(model: StratifiedModel, euler: Mapping | None, chi: Mapping | None) -> dict[frozenset, Fraction]:
    out = {}
    chi = {frozenset(k): Fraction(v) for k, v in (chi or {}).items()}
    for S in model.strata:
        if S.J in chi:
            out[S.J] = chi[S.J]
            continue
        try:
            out[S.J] = S.payload.substitute(1, euler or {})
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"stratum {sorted(S.J)}: payload not specializable at L=1 ({exc})") from None
    for J, value in chi.items():
        out.setdefault(J, value)
    return out


def compute_topological_zeta(
    model: StratifiedModel,
    euler: Mapping[str, object] | None = None,
    chi: Mapping | None = None,
) -> sympy.Expr:
    """sum_J chi(J) prod_{i in J} 1/(N_i s + v_i), reduced over Q(s).

    ``chi`` gives Euler numbers per stratum directly; otherwise the payload is
    specialized at ``L = 1`` with symbol values taken from ``euler``.
    """
    if model.is_global:
        raise ModelError(["kind: topological specialization is defined for naive and dlt models"])
    check(model)
    data = {D.id: D for D in model.divisors}
    total = sympy.Integer(0)
    for J, value in _stratum_euler(model, euler, chi).items():
        if not value:
            continue
        term = sympy.Rational(value.numerator, value.denominator)
        for i in J:
            D = data[i]
            term = term / (sympy.Rational(D.N.numerator, D.N.denominator) * s + sympy.Rational(D.v.numerator, D.v.denominator))
        total += term
    return sympy.cancel(sympy.together(total))


def topological_poles(expr: sympy.Expr) -> dict[Fraction, int]:
    """Poles of a reduced rational function in ``s`` with their orders."""
    _, den = sympy.fraction(sympy.cancel(expr))
    if not den.has(s):
        return {}
    roots = sympy.roots(sympy.Poly(den, s))
    out = {}
    for root, mult in roots.items():
        if not root.is_Rational:
            raise ValueError(f"non-rational pole {root}")
        out[Fraction(int(root.p), int(root.q))] = int(mult)
    return out


# -- stringy motives

def compute_stringy_motive(
    log_discrepancies: Mapping[str, object],
    strata: Mapping,
) -> NormalZeta:
    """Stringy motive sum_J [E^0_J] prod_{i in J} (L-1)/(L^(a_i) - 1) of a klt pair."""
    a = {name: Fraction(value) for name, value in log_discrepancies.items()}
    bad = sorted(name for name, value in a.items() if value <= 0)
    if bad:
        raise ValueError(f"log discrepancies must be positive (klt); offending divisors {bad}")
    terms = []
    for J, payload in strata.items():
        J = frozenset(J)
        unknown = J - set(a)
        if unknown:
            raise KeyError(f"stratum mentions unknown divisor(s) {sorted(unknown)}")
        terms.append(ZetaTerm(payload, tuple(ZetaFactor(0, a[i], NAIVE) for i in J)))
    return zeta_normalize(ZetaExpr(tuple(terms)))


def _check_generalized(model: StratifiedModel) -> None:
    _require(model, ("dlt",))
    problems = []
    for D in model.divisors:
        if D.N <= 0:
            problems.append(f"divisor {D.id}: coefficient N must be positive, got {D.N}")
        if D.v != 0:
            problems.append(f"divisor {D.id}: v must be 0, got {D.v}")
    if problems:
        raise ModelError(problems)


def compute_generalized_stringy(model: StratifiedModel, drop_prefactor: bool = False) -> NormalZeta:
    """Stringy motive of a pair without strictly lc singularities.

    Evaluates the dlt zeta function of the dlt modification at ``s = 1``.
    With ``drop_prefactor`` the overall ``L^(-d)`` is removed.
    """
    _check_generalized(model)
    z = zeta_normalize(compute_dlt_zeta(model)).at_s(1)
    if drop_prefactor and model.d:
        z = NormalZeta({k: c.shift(model.d) for k, c in z.numerator.items()}, z.denominator, z.lattice)
    return z


def generalized_stringy_euler(
    model: StratifiedModel,
    euler: Mapping[str, object] | None = None,
    chi: Mapping | None = None,
) -> Fraction:
    _check_generalized(model)
    data = {D.id: D for D in model.divisors}
    total = Fraction(0)
    for J, value in _stratum_euler(model, euler, chi).items():
        term = value
        for i in J:
            term /= data[i].N
        total += term
    return total


def validate_global_minimality(model: StratifiedModel) -> bool:
    """True iff mu_i / N_i takes a single value over all divisors."""
    ratios = {D.v / D.N for D in model.divisors if D.N}
    return len(ratios) <= 1 and all(D.N for D in model.divisors)
