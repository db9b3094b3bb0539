"""Compare closed-form monomial zeta functions with jet counts over F_p."""

from __future__ import annotations

import argparse
import itertools
import random
import time

from dltzeta import engine, jets, toric


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="2,3")
    ap.add_argument("--max-exp", type=int, default=3)
    ap.add_argument("--budget", type=int, default=10**6)
    ap.add_argument("--subdivisions", type=int, default=1, help="random star subdivisions applied to the model")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    bad = 0
    for a in itertools.product(range(1, args.max_exp + 1), repeat=2):
        f = jets.parse_polynomial(f"x^{a[0]}*y^{a[1]}")
        fan, _ = toric.random_chain(toric.orthant_fan(2), args.subdivisions, rng)
        z = engine.compute_naive_zeta(toric.model_from_monomial(a, fan))
        for p in map(int, args.primes.split(",")):
            depth = jets.max_depth(p, 2, args.budget)
            t0 = time.perf_counter()
            ok = jets.specialize_series(z, p, {}, depth) == jets.igusa_series(f, p, depth)
            bad += not ok
            print(f"a={a} p={p} depth={depth} {'MATCH' if ok else 'MISMATCH'} ({time.perf_counter() - t0:.2f}s)")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
