"""Hand-derived models used in tests, scripts and the shipped data files."""

from __future__ import annotations

from fractions import Fraction

from .model import DivisorDatum, StratifiedModel, StratumDatum
from .ring import MotiveExpr, parse_motive_expr


def _m(text: str, r: int = 1) -> MotiveExpr:
    return parse_motive_expr(text, r)


def _strata(pairs) -> tuple:
    return tuple(StratumDatum(frozenset(J), _m(t) if isinstance(t, str) else t) for J, t in pairs)


def line_model() -> StratifiedModel:
    """f = x on A^1; the identity is already a log resolution."""
    return StratifiedModel(
        "naive", 1, 1, (DivisorDatum("x", 1, 1),), _strata([((), "L - 1"), (("x",), "1")])
    )


def projective_space_class(m: int) -> MotiveExpr:
    total = MotiveExpr.zero()
    for i in range(m + 1):
        total = total + MotiveExpr.lefschetz(i)
    return total


def hypersurface_euler(n: int, d: int) -> Fraction:
    """Euler number of a smooth degree-d hypersurface in P^(n-1)."""
    return Fraction((1 - d) ** n - 1, d) + n


def cone_naive_model(n: int, d: int, kind: str = "naive") -> StratifiedModel:
    """Blow-up of the origin for a general homogeneous f of degree d in n variables.

    Exceptional divisor E = P^(n-1) with (N, v) = (d, n); strict transform D
    with (1, 1); D meets E along the smooth hypersurface [H] in P^(n-1).
    Uses [A^n \\ D] = L^n - 1 - (L-1)[H] since D is the affine cone over H.
    """
    H = MotiveExpr.symbol("H")
    Lm1 = MotiveExpr.lefschetz(1) - 1
    strata = _strata(
        [
            ((), MotiveExpr.lefschetz(n) - 1 - Lm1 * H),
            (("D",), Lm1 * H),
            (("E",), projective_space_class(n - 1) - H),
            (("D", "E"), H),
        ]
    )
    divisors = (DivisorDatum("D", 1, 1), DivisorDatum("E", d, n))
    return StratifiedModel(kind, n, 1, divisors, strata)


def cone_dlt_model(n: int, d: int) -> StratifiedModel:
    """dlt model of (A^n, D_red) for the cone.

    For d < n the pair is plt and the model is A^n itself; the payload of D
    is its stringy motive, kept as the symbol [sigma_D]. For d >= n the
    blow-up of the origin is a dlt modification with snc strata, so the
    payloads are the raw classes.
    """
    if d >= n:
        return cone_naive_model(n, d, kind="dlt")
    H = MotiveExpr.symbol("H")
    Lm1 = MotiveExpr.lefschetz(1) - 1
    strata = _strata(
        [
            ((), MotiveExpr.lefschetz(n) - 1 - Lm1 * H),
            (("D",), MotiveExpr.symbol("sigma_D")),
        ]
    )
    return StratifiedModel("dlt", n, 1, (DivisorDatum("D", 1, 1),), strata)


def cone_euler(n: int, d: int) -> dict[str, Fraction]:
    """Euler numbers of the symbols in the cone models.

    chi_st of the cone D = chi(D minus 0) + chi(H) / (n - d), the exceptional
    divisor of the cone having log discrepancy n - d.
    """
    chi_H = hypersurface_euler(n, d)
    out = {"H": chi_H}
    if d < n:
        out["sigma_D"] = chi_H / (n - d)
    return out


def cusp_model() -> StratifiedModel:
    """Minimal embedded resolution of x^2 + y^3 (three point blow-ups).

    E1 (2,2) and E2 (3,3) each meet only E3 (6,5); the strict transform C
    (1,1) meets E3 once. E3^0 = P^1 minus 3 points, E1^0 = E2^0 = A^1,
    C^0 = C minus a point = G_m, and the complement of the cusp in A^2 has
    class L^2 - L.
    """
    divisors = (
        DivisorDatum("E1", 2, 2),
        DivisorDatum("E2", 3, 3),
        DivisorDatum("E3", 6, 5),
        DivisorDatum("C", 1, 1),
    )
    strata = _strata(
        [
            ((), "L^2 - L"),
            (("E1",), "L"),
            (("E2",), "L"),
            (("E3",), "L - 2"),
            (("C",), "L - 1"),
            (("E1", "E3"), "1"),
            (("E2", "E3"), "1"),
            (("C", "E3"), "1"),
        ]
    )
    return StratifiedModel("naive", 2, 1, divisors, strata)


def global_single_model() -> StratifiedModel:
    return StratifiedModel(
        "global_naive", 0, 1, (DivisorDatum("E1", 1, 1),), _strata([(("E1",), "[E1]")])
    )


def global_pair_model(N=(1, 1), mu=(1, 1), kind: str = "global_naive") -> StratifiedModel:
    divisors = (DivisorDatum("E1", N[0], mu[0]), DivisorDatum("E2", N[1], mu[1]))
    strata = _strata([(("E1",), "[E1]"), (("E2",), "[E2]"), (("E1", "E2"), "[E12]")])
    return StratifiedModel(kind, 0, 1, divisors, strata)
