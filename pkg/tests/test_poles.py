from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dltzeta import catalog, engine, toric
from dltzeta.model import DivisorDatum, StratifiedModel, StratumDatum
from dltzeta.poles import (
    PoleReport,
    candidate_poles,
    compare_pole_sets,
    effective_poles,
    pole_order_at_most,
    pole_report,
)
from dltzeta.ring import L, MotiveExpr
from dltzeta.zeta import NormalZeta, ZetaExpr, local_factor, zeta_normalize

from conftest import naive_models, zeta_exprs

LINE = engine.compute_naive_zeta(catalog.line_model())


def test_candidates():
    assert candidate_poles(catalog.line_model()) == {-1}
    assert candidate_poles(catalog.cone_naive_model(3, 2)) == {-1, Fraction(-3, 2)}
    m = StratifiedModel("naive", 1, 1, (DivisorDatum("E", 0, 1),), (StratumDatum(frozenset(), MotiveExpr.one()),))
    assert candidate_poles(m) == frozenset()


def test_effective_examples():
    assert effective_poles(LINE) == {-1: 1}
    assert effective_poles(engine.compute_zeta(catalog.cone_naive_model(3, 2))) == {-1: 1, Fraction(-3, 2): 1}
    z = ZetaExpr.of(L() - 1, [local_factor(1, 1), local_factor(2, 2)])
    assert effective_poles(z) == {-1: 2}


def test_order_certificates():
    assert pole_order_at_most(LINE, -1, 1)
    assert not pole_order_at_most(LINE, -1, 0)
    assert pole_order_at_most(LINE, Fraction(-7, 3), 0)


def test_report_rejects_stray_poles():
    with pytest.raises(ValueError):
        PoleReport(frozenset({Fraction(-1)}), {Fraction(-2): 1})
    assert pole_report(catalog.line_model(), LINE).to_json()["order_is_upper_bound"] is True


def test_comparisons():
    naive = engine.compute_zeta(catalog.cone_naive_model(3, 2))
    dlt = engine.compute_zeta(catalog.cone_dlt_model(3, 2))
    cmp = compare_pole_sets(naive, dlt)
    assert cmp.subset and cmp.equals_intersection_with_unit_interval
    same = compare_pole_sets(engine.compute_zeta(catalog.cone_naive_model(3, 3)), engine.compute_zeta(catalog.cone_dlt_model(3, 3)))
    assert same.subset and same.equals_intersection_with_unit_interval
    synthetic = ZetaExpr.of(1, [local_factor(2, 1)])
    assert not compare_pole_sets(LINE, synthetic).subset


TOPOLOGICAL_CASES = [
    (catalog.line_model(), None),
    (catalog.cusp_model(), None),
    *[(catalog.cone_naive_model(n, d), catalog.cone_euler(n, d)) for n, d in [(3, 2), (4, 2), (2, 3), (3, 3)]],
    *[(catalog.cone_dlt_model(n, d), catalog.cone_euler(n, d)) for n, d in [(3, 2), (4, 3), (2, 2)]],
    (toric.model_from_monomial((2, 3)), None),
    (toric.model_from_monomial((1, 1), toric.star_subdivide(toric.orthant_fan(2), [0, 1])), None),
]


@pytest.mark.parametrize("model, euler", TOPOLOGICAL_CASES)
def test_topological_poles_within_motivic(model, euler):
    top = engine.topological_poles(engine.compute_topological_zeta(model, euler))
    mot = effective_poles(engine.compute_zeta(model))
    assert set(top) <= set(mot)
    assert all(top[p] <= mot[p] for p in top)


@settings(max_examples=60, deadline=None)
@given(naive_models())
def test_effective_within_candidates(model):
    z = engine.compute_naive_zeta(model)
    assert set(effective_poles(z)) <= candidate_poles(model)
    assert all(m >= 1 for m in effective_poles(z).values())


@settings(max_examples=60, deadline=None)
@given(naive_models())
def test_dlt_poles_in_unit_interval(model):
    # restrict to v <= N so every candidate lies in [-1, 0]
    model = StratifiedModel(
        "dlt", model.d, 1,
        tuple(DivisorDatum(D.id, D.N, min(D.v, D.N)) for D in model.divisors),
        model.strata,
    )
    assert all(-1 <= p <= 0 for p in effective_poles(engine.compute_dlt_zeta(model)))


@settings(max_examples=60, deadline=None)
@given(zeta_exprs(), st.randoms(), st.sampled_from([(1, 1), (2, 3), (1, 0), (3, 1)]))
def test_effective_poles_invariances(z, rnd, binomial):
    base = effective_poles(z)
    order = list(range(len(z.terms)))
    rnd.shuffle(order)
    assert effective_poles(z.reordered(order)) == base
    nz = zeta_normalize(z)
    N, v = map(Fraction, binomial)
    k = int(N * nz.lattice)
    padded = {}
    for e, c in nz.numerator.items():
        padded[e] = padded.get(e, MotiveExpr.zero()) + c
        padded[e + k] = padded.get(e + k, MotiveExpr.zero()) - c * L(-v)
    widened = NormalZeta(padded, nz.denominator + ((N, v),), nz.lattice)
    assert effective_poles(widened) == base
