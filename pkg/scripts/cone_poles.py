"""Pole sets of the naive and dlt zeta functions for cones over smooth hypersurfaces."""

from __future__ import annotations

import argparse

from dltzeta import catalog, engine
from dltzeta.poles import compare_pole_sets, effective_poles


def fmt(poles) -> str:
    return "{" + ", ".join(f"{p} (<= {m})" for p, m in sorted(poles.items())) + "}"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--max-d", type=int, default=5)
    args = ap.parse_args()
    print(f"{'n':>2} {'d':>2}  {'naive poles':<28} {'dlt poles':<28} subset  strong  top(dlt)")
    for n in range(2, args.max_n + 1):
        for d in range(2, args.max_d + 1):
            naive = engine.compute_zeta(catalog.cone_naive_model(n, d))
            dlt_model = catalog.cone_dlt_model(n, d)
            dlt = engine.compute_zeta(dlt_model)
            cmp = compare_pole_sets(naive, dlt)
            top = engine.topological_poles(engine.compute_topological_zeta(dlt_model, catalog.cone_euler(n, d)))
            print(
                f"{n:>2} {d:>2}  {fmt(effective_poles(naive)):<28} {fmt(effective_poles(dlt)):<28} "
                f"{str(cmp.subset):<7} {str(cmp.equals_intersection_with_unit_interval):<7} "
                f"{sorted(map(str, top))}"
            )


if __name__ == "__main__":
    main()
