"""Write the example model files under data/."""

from __future__ import annotations

import argparse
from pathlib import Path

from dltzeta import catalog
from dltzeta.model import DivisorDatum, StratifiedModel, StratumDatum, save_model
from dltzeta.ring import parse_motive_expr
from dltzeta.toric import model_from_monomial

CONES = [(3, 2), (4, 2), (4, 3), (2, 2), (2, 3), (3, 3)]


def stringy_example() -> StratifiedModel:
    # one exceptional divisor with coefficient N = 2 over a point
    return StratifiedModel(
        "dlt", 2, 1,
        (DivisorDatum("E", 2, 0),),
        (StratumDatum(frozenset(), parse_motive_expr("[X_minus_pt]")),
         StratumDatum(frozenset({"E"}), parse_motive_expr("[sigma]"))),
    )


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    out = Path(ap.parse_args().out)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "line.json": catalog.line_model(),
        "cusp.json": catalog.cusp_model(),
        "toric_id.json": model_from_monomial((2, 3)),
        "global_single.json": catalog.global_single_model(),
        "global_minimal.json": catalog.global_pair_model((1, 2), (1, 2), kind="global_dlt"),
        "global_nonminimal.json": catalog.global_pair_model((1, 2), (1, 3), kind="global_dlt"),
        "stringy_example.json": stringy_example(),
    }
    for n, d in CONES:
        files[f"cone_n{n}_d{d}.json"] = catalog.cone_naive_model(n, d)
        files[f"cone_n{n}_d{d}_dlt.json"] = catalog.cone_dlt_model(n, d)
    for name, model in files.items():
        save_model(model, out / name)
        print(out / name)


if __name__ == "__main__":
    main()
