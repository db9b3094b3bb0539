"""Combinatorial stratified models and their JSON file format.

A model lists the boundary divisors ``E_i`` with their data ``(N_i, v_i)``
and assigns a ring expression to each stratum ``E^0_J``. What the payload
means depends on ``kind``:

``naive``        raw class [E^0_J] of a log resolution
``dlt``          stringy motive of the open stratum of a dlt model
``global_naive`` class of the etale cover of E^0_J (v stores mu_i)
``global_dlt``   stringy motive of that cover

Subsets J not listed carry payload 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping

from .parsing import ParseError
from .ring import MotiveExpr

KINDS = ("naive", "dlt", "global_naive", "global_dlt")


class ModelError(ValueError):
    """Raised when a model file cannot be parsed or fails validation."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class DivisorDatum:
    id: str
    N: Fraction
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "N", Fraction(self.N))
        object.__setattr__(self, "v", Fraction(self.v))


@dataclass(frozen=True)
class StratumDatum:
    J: frozenset
    payload: MotiveExpr

    def __post_init__(self):
        object.__setattr__(self, "J", frozenset(self.J))


@dataclass(frozen=True)
class StratifiedModel:
    kind: str
    d: int
    r: int
    divisors: tuple
    strata: tuple
    fan: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "divisors", tuple(self.divisors))
        object.__setattr__(self, "strata", tuple(self.strata))

    @property
    def is_global(self) -> bool:
        return self.kind.startswith("global")

    def divisor(self, name: str) -> DivisorDatum:
        for D in self.divisors:
            if D.id == name:
                return D
        raise KeyError(name)

    def payload(self, J: Iterable[str]) -> MotiveExpr:
        J = frozenset(J)
        for S in self.strata:
            if S.J == J:
                return S.payload
        return MotiveExpr.zero(self.r)

    def replace_divisor(self, name: str, N=None, v=None) -> "StratifiedModel":
        divisors = tuple(
            DivisorDatum(D.id, D.N if N is None else N, D.v if v is None else v) if D.id == name else D
            for D in self.divisors
        )
        return StratifiedModel(self.kind, self.d, self.r, divisors, self.strata, self.fan)

    def with_kind(self, kind: str) -> "StratifiedModel":
        return StratifiedModel(kind, self.d, self.r, self.divisors, self.strata, self.fan)


def validate(model: StratifiedModel) -> list[str]:
    """Return a list of violations; empty iff the model is well formed."""
    out: list[str] = []
    kind = getattr(model, "kind", None)
    if kind not in KINDS:
        out.append(f"kind: unknown kind {kind!r}")
    d = getattr(model, "d", None)
    if not isinstance(d, int) or isinstance(d, bool) or d < 0:
        out.append(f"dimension: must be a nonnegative integer, got {d!r}")
    r = getattr(model, "r", None)
    r_ok = isinstance(r, int) and not isinstance(r, bool) and r >= 1
    if not r_ok:
        out.append(f"r: must be a positive integer, got {r!r}")

    ids: set[str] = set()
    for idx, D in enumerate(getattr(model, "divisors", ()) or ()):
        where = f"divisors[{idx}]"
        try:
            name, N, v = D.id, Fraction(D.N), Fraction(D.v)
        except (AttributeError, TypeError, ValueError, ZeroDivisionError):
            out.append(f"{where}: malformed divisor {D!r}")
            continue
        if name in ids:
            out.append(f"{where}.id: duplicate divisor id {name!r}")
        ids.add(name)
        if N < 0 or v < 0:
            out.append(f"{where}: N and v must be nonnegative")
        if N == 0 and v == 0:
            out.append(f"{where}: forbidden (0,0) pair")
        if kind in ("global_naive", "global_dlt") and (N <= 0 or N.denominator != 1):
            out.append(f"{where}.N: global models need positive integer N, got {N}")

    seen: set[frozenset] = set()
    for idx, S in enumerate(getattr(model, "strata", ()) or ()):
        where = f"strata[{idx}]"
        try:
            J = frozenset(S.J)
            payload = S.payload
        except (AttributeError, TypeError):
            out.append(f"{where}: malformed stratum {S!r}")
            continue
        if J in seen:
            out.append(f"{where}.J: duplicate subset {sorted(J)}")
        seen.add(J)
        unknown = J - ids
        if unknown:
            out.append(f"{where}.J: unknown divisor id(s) {sorted(unknown)}")
        if not isinstance(payload, MotiveExpr):
            out.append(f"{where}.class: payload is not a ring expression")
        elif r_ok and r % payload.minimal_r():
            out.append(f"{where}.class: L-exponent denominators do not divide r={r}")

    if kind in ("naive", "dlt") and frozenset() not in seen:
        out.append("strata: the empty stratum J=[] is required")
    if kind in ("global_naive", "global_dlt") and frozenset() in seen:
        out.append("strata: the empty stratum J=[] is not allowed in global models")
    return out


def check(model: StratifiedModel) -> StratifiedModel:
    problems = validate(model)
    if problems:
        raise ModelError(problems)
    return model


# -- JSON

def model_to_json(model: StratifiedModel) -> dict:
    data = {
        "kind": model.kind,
        "dimension": model.d,
        "r": model.r,
        "divisors": [{"id": D.id, "N": str(D.N), "v": str(D.v)} for D in model.divisors],
        "strata": [
            {"J": sorted(S.J), "class": str(S.payload)}
            for S in sorted(model.strata, key=lambda S: (len(S.J), sorted(S.J)))
        ],
    }
    if model.fan is not None:
        data["fan"] = model.fan
    return data


def model_from_json(data: Mapping) -> StratifiedModel:
    problems: list[str] = []
    if not isinstance(data, Mapping):
        raise ModelError(["top level: expected a JSON object"])
    for key in ("kind", "r", "divisors", "strata"):
        if key not in data:
            problems.append(f"{key}: missing field")
    if problems:
        raise ModelError(problems)
    kind = data["kind"]
    d = data.get("dimension", 0)
    r = data["r"]
    if not isinstance(r, int) or r < 1:
        raise ModelError([f"r: must be a positive integer, got {r!r}"])

    divisors = []
    for idx, entry in enumerate(data["divisors"]):
        try:
            divisors.append(DivisorDatum(str(entry["id"]), Fraction(str(entry["N"])), Fraction(str(entry["v"]))))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            problems.append(f"divisors[{idx}]: {exc!s}")

    strata = []
    seen: set[frozenset] = set()
    for idx, entry in enumerate(data["strata"]):
        try:
            J = entry["J"]
            text = entry["class"]
        except (KeyError, TypeError):
            problems.append(f"strata[{idx}]: needs fields 'J' and 'class'")
            continue
        if len(set(J)) != len(J):
            problems.append(f"strata[{idx}].J: repeated divisor id")
        key = frozenset(J)
        if key in seen:
            problems.append(f"strata[{idx}].J: duplicate subset {sorted(key)}")
            continue
        seen.add(key)
        try:
            payload = MotiveExpr.parse(str(text), r)
        except ParseError as exc:
            problems.append(f"strata[{idx}].class: {exc}")
            continue
        strata.append(StratumDatum(key, payload))
    if problems:
        raise ModelError(problems)
    model = StratifiedModel(kind, d, r, tuple(divisors), tuple(strata), data.get("fan"))
    return check(model)


def load_model(path) -> StratifiedModel:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ModelError([f"io: {exc}"]) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError([f"json: {exc}"]) from exc
    return model_from_json(data)


def save_model(model: StratifiedModel, path) -> None:
    Path(path).write_text(json.dumps(model_to_json(model), indent=2) + "\n")
