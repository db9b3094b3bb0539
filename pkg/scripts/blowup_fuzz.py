"""Randomized star-subdivision campaign for monomial zeta functions."""

from __future__ import annotations

import argparse
import time

from dltzeta.toric import fuzz_invariance


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=500)
    ap.add_argument("--max-steps", type=int, default=4)
    ap.add_argument("--dims", default="2,3")
    ap.add_argument("--monomial", default=None, help="fixed exponent vector, e.g. 2,3; random if omitted")
    args = ap.parse_args()
    a = [int(x) for x in args.monomial.split(",")] if args.monomial else None
    dims = tuple(int(x) for x in args.dims.split(","))
    t0 = time.perf_counter()
    cases = fuzz_invariance(a, range(args.seeds), max_steps=args.max_steps, dims=dims)
    failures = [c for c in cases if not c.passed]
    for c in failures:
        print(f"FAIL seed={c.seed} a={c.a} chain={list(c.chain)}")
    print(f"{len(cases) - len(failures)}/{len(cases)} invariant in {time.perf_counter() - t0:.1f}s")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
