from fractions import Fraction

import pytest
from hypothesis import strategies as st

from dltzeta.ring import MotiveExpr
from dltzeta.zeta import ZetaExpr, ZetaFactor, ZetaTerm

# Lines collected by the acceptance module, echoed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


SYMBOLS = ("A", "B", "C")


@st.composite
def motives(draw, r=1, max_terms=4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = Fraction(draw(st.integers(-3 * r, 3 * r)), r)
        mono = tuple(
            (name, k)
            for name in SYMBOLS
            if (k := draw(st.integers(0, 2)))
        )
        terms[(e, mono)] = draw(st.integers(-4, 4))
    return MotiveExpr(terms, r)


FACTOR_DATA = [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2), (2, 3), (Fraction(1, 2), 1)]


@st.composite
def factors(draw, data=FACTOR_DATA, style="naive"):
    N, v = draw(st.sampled_from(data))
    return ZetaFactor(N, v, style)


@st.composite
def zeta_exprs(draw, data=FACTOR_DATA, style="naive", max_terms=3):
    terms = []
    for _ in range(draw(st.integers(1, max_terms))):
        coef = draw(motives(max_terms=2))
        fs = draw(st.lists(factors(data, style), max_size=2))
        t = draw(st.integers(0, 1))
        terms.append(ZetaTerm(coef, tuple(fs), t))
    return ZetaExpr(tuple(terms))


@pytest.fixture
def Lm1():
    return MotiveExpr.lefschetz(1) - 1


@st.composite
def naive_models(draw, kind="naive", integral=True, max_divisors=3):
    from itertools import combinations

    from dltzeta.model import DivisorDatum, StratifiedModel, StratumDatum

    data = [(N, v) for N, v in FACTOR_DATA if N > 0 and (not integral or Fraction(N).denominator == 1)]
    k = draw(st.integers(0, max_divisors))
    divisors = tuple(DivisorDatum(f"E{i}", *draw(st.sampled_from(data))) for i in range(k))
    names = [D.id for D in divisors]
    subsets = [frozenset(c) for m in range(k + 1) for c in combinations(names, m)]
    chosen = [S for S in subsets if S and draw(st.booleans())]
    strata = [StratumDatum(frozenset(), draw(motives(max_terms=2)))]
    strata += [StratumDatum(S, draw(motives(max_terms=2))) for S in chosen]
    return StratifiedModel(kind, draw(st.integers(0, 3)), 1, divisors, tuple(strata))
