"""Brute-force jet counting over F_p: the independent oracle.

``X_n`` is the set of level-n jets ``gamma = (x_1(t), ..., x_d(t)) mod t^(n+1)``
with ``ord_t f(gamma) = n``. Jets are enumerated degree by degree: once all
coefficients up to ``t^j`` are fixed, the ``t^j`` coefficient of ``f(gamma)``
is determined, so a nonzero value at ``j < n`` discards the whole subtree.
Nothing else is shortcut; in particular no Hensel lifting is used.
"""

from __future__ import annotations

import itertools
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .engine import compute_zeta
from .model import StratifiedModel
from .parsing import parse_expression
from .zeta import NormalZeta, ZetaExpr, zeta_normalize

DEFAULT_BUDGET = 10**8
_CHUNK = 4096


class BudgetExceeded(ValueError):
    pass


def enumeration_budget() -> int:
    value = os.environ.get("DLTZETA_BUDGET")
    return int(value) if value else DEFAULT_BUDGET


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial in ``nvars`` variables, terms as (exponent tuple, coefficient)."""

    variables: tuple
    terms: tuple

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __str__(self) -> str:
        parts = []
        for exps, c in self.terms:
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, exps) if k
            )
            parts.append(f"{c}*{mono}" if mono and c != 1 else (mono or str(c)))
        return " + ".join(parts) or "0"


_LETTERS = ("x", "y", "z", "w")
_INDEXED = re.compile(r"^x(\d+)$")


def parse_polynomial(text: str, dim: int | None = None, variables: Sequence[str] | None = None) -> IntPoly:
    """Parse an integer polynomial in ``x1..xd`` (or ``x, y, z, w``)."""
    expr = parse_expression(text, 1, poly_mode=True)
    names = expr.symbols()
    if variables is None:
        if names and all(_INDEXED.match(n) for n in names):
            top = max(int(_INDEXED.match(n).group(1)) for n in names)
            n = max(top, dim or 0)
            variables = tuple(f"x{i}" for i in range(1, n + 1))
        elif names <= set(_LETTERS):
            top = max((_LETTERS.index(n) + 1 for n in names), default=0)
            n = max(top, dim or 0)
            if n > len(_LETTERS):
                raise ValueError("use x1..xd for more than four variables")
            variables = _LETTERS[:n]
        else:
            raise ValueError(f"cannot order variables {sorted(names)}; use x1..xd")
    variables = tuple(variables)
    if dim is not None and len(variables) != dim:
        raise ValueError(f"polynomial has {len(variables)} variables, expected {dim}")
    unknown = names - set(variables)
    if unknown:
        raise ValueError(f"unknown variable(s) {sorted(unknown)}")
    index = {v: i for i, v in enumerate(variables)}
    terms = []
    for (_, mono), c in expr.sorted_items():
        exps = [0] * len(variables)
        for name, k in mono:
            exps[index[name]] = k
        terms.append((tuple(exps), c))
    return IntPoly(variables, tuple(sorted(terms)))


# -- reference enumerator (tiny cases only)

def _series_mul(a, b, n, p):
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(n + 1 - i):
                out[i + j] = (out[i + j] + x * b[j]) % p
    return out


def _evaluate_series(f: IntPoly, coeffs, n: int, p: int) -> list[int]:
    total = [0] * (n + 1)
    for exps, c in f.terms:
        acc = [1] + [0] * n
        for var, k in enumerate(exps):
            for _ in range(k):
                acc = _series_mul(acc, coeffs[var], n, p)
        for i in range(n + 1):
            total[i] = (total[i] + c * acc[i]) % p
    return total


def count_jets_bruteforce(f: IntPoly, p: int, n: int) -> int:
    """Plain enumeration of all p^(d(n+1)) jets."""
    d = f.nvars
    count = 0
    for flat in itertools.product(range(p), repeat=d * (n + 1)):
        coeffs = [flat[i * (n + 1):(i + 1) * (n + 1)] for i in range(d)]
        value = _evaluate_series(f, coeffs, n, p)
        if not any(value[:n]) and value[n]:
            count += 1
    return count


# -- pruned enumeration

class _Plan:
    """Product tree of truncated series needed to evaluate ``f``."""

    def __init__(self, f: IntPoly, p: int):
        self.p = p
        self.d = f.nvars
        self.products: list[tuple[int, int]] = []  # node index -> (left, right)
        self.const = 0
        self.monomials: list[tuple[int, int]] = []  # (node, coefficient mod p)
        cache: dict[tuple, int] = {}
        for i in range(self.d):
            e = [0] * self.d
            e[i] = 1
            cache[tuple(e)] = i
        self.nnodes = self.d
        for exps, c in f.terms:
            c %= p
            if not c:
                continue
            if not any(exps):
                self.const = (self.const + c) % p
                continue
            self.monomials.append((self._node(tuple(exps), cache), c))
        self.choices = np.array(list(itertools.product(range(p), repeat=self.d)), dtype=np.int64)

    def _node(self, exps: tuple, cache: dict) -> int:
        if exps in cache:
            return cache[exps]
        # peel one factor off the last variable with positive exponent
        i = max(k for k, e in enumerate(exps) if e)
        rest = list(exps)
        rest[i] -= 1
        unit = [0] * self.d
        unit[i] = 1
        left = self._node(tuple(rest), cache)
        right = cache[tuple(unit)]
        node = self.nnodes
        self.nnodes += 1
        self.products.append((left, right))
        cache[exps] = node
        return node

    def extend(self, S: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Append degree j = S.shape[2] in all p^d ways; return new state and c_j."""
        rows, _, j = S.shape
        k = len(self.choices)
        new = np.zeros((rows * k, self.nnodes, j + 1), dtype=np.int64)
        new[:, :, :j] = np.repeat(S, k, axis=0)
        new[:, : self.d, j] = np.tile(self.choices, (rows, 1))
        for offset, (a, b) in enumerate(self.products):
            node = self.d + offset
            new[:, node, j] = (new[:, a, : j + 1] * new[:, b, j::-1]).sum(axis=1) % self.p
        c = np.full(rows * k, self.const if j == 0 else 0, dtype=np.int64)
        for node, coef in self.monomials:
            c += coef * new[:, node, j]
        return new, c % self.p


def _descend(plan: _Plan, S: np.ndarray, depth: int, counts: list[int]) -> None:
    new, c = plan.extend(S)
    j = S.shape[2]
    counts[j] += int(np.count_nonzero(c))
    if j == depth:
        return
    survivors = new[c == 0]
    for start in range(0, len(survivors), _CHUNK):
        _descend(plan, survivors[start:start + _CHUNK], depth, counts)


def _check_budget(p: int, d: int, depth: int, budget: int | None) -> None:
    budget = enumeration_budget() if budget is None else budget
    size = p ** (d * (depth + 1))
    if size > budget:
        raise BudgetExceeded(f"p^(d(n+1)) = {p}^{d * (depth + 1)} exceeds the enumeration budget {budget}")


@dataclass(frozen=True)
class JetCountTable:
    f: IntPoly
    p: int
    counts: dict

    def series(self) -> list[Fraction]:
        d = self.f.nvars
        return [Fraction(self.counts[n], self.p ** ((n + 1) * d)) for n in sorted(self.counts)]


def count_jet_table(
    f: IntPoly, p: int, depth: int, *, partitions: int = 1, workers: int = 1, budget: int | None = None
) -> JetCountTable:
    """#X_n for n = 0..depth in one pruned pass.

    The level-0 survivors are split into ``partitions`` blocks that are
    counted independently (on ``workers`` threads) and summed.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    _check_budget(p, f.nvars, depth, budget)
    plan = _Plan(f, p)
    root = np.zeros((1, plan.nnodes, 0), dtype=np.int64)
    level0, c0 = plan.extend(root)
    counts = [0] * (depth + 1)
    counts[0] = int(np.count_nonzero(c0))
    if depth > 0:
        survivors = level0[c0 == 0]
        blocks = np.array_split(survivors, max(1, partitions))

        def run(block):
            local = [0] * (depth + 1)
            for start in range(0, len(block), _CHUNK):
                _descend(plan, block[start:start + _CHUNK], depth, local)
            return local

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(run, blocks))
        else:
            results = [run(b) for b in blocks]
        for local in results:
            for n in range(1, depth + 1):
                counts[n] += local[n]
    return JetCountTable(f, p, {n: counts[n] for n in range(depth + 1)})


def count_jets(f: IntPoly, p: int, n: int, *, budget: int | None = None) -> int:
    return count_jet_table(f, p, n, budget=budget).counts[n]


def igusa_series(f: IntPoly, p: int, depth: int, **kwargs) -> list[Fraction]:
    """c_n = #X_n * p^(-(n+1)d) for n = 0..depth."""
    return count_jet_table(f, p, depth, **kwargs).series()


def max_depth(p: int, d: int, budget: int | None = None) -> int:
    budget = enumeration_budget() if budget is None else budget
    n = -1
    while p ** (d * (n + 2)) <= budget:
        n += 1
    return n


# -- specialization of the closed form

def _rational_series_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = len(a)
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        if x:
            for j in range(n - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def specialize_series(
    z: "ZetaExpr | NormalZeta", p: int, symbol_counts: Mapping[str, object] | None, depth: int
) -> list[Fraction]:
    """Coefficients of T^0..T^depth after ``L -> p`` and ``[S] -> #S(F_p)``."""
    nz = zeta_normalize(z)
    if nz.lattice != 1 or any(N.denominator != 1 or v.denominator != 1 for N, v in nz.denominator):
        raise ValueError("fractional exponents cannot be specialized at L = p")
    if any(c.minimal_r() != 1 for c in nz.numerator.values()):
        raise ValueError("fractional powers of L cannot be specialized at L = p")
    counts = {k: Fraction(v) for k, v in (symbol_counts or {}).items()}
    series = [Fraction(0)] * (depth + 1)
    for k, c in nz.numerator.items():
        if k <= depth:
            series[k] += c.substitute(p, counts)
    P = Fraction(p)
    for N, v in nz.denominator:
        N, v = int(N), int(v)
        if N == 0:
            scale = 1 - P ** (-v)
            series = [x / scale for x in series]
            continue
        geo = [Fraction(0)] * (depth + 1)
        j = 0
        while j * N <= depth:
            geo[j * N] = P ** (-j * v)
            j += 1
        series = _rational_series_mul(series, geo)
    return series


@dataclass(frozen=True)
class OracleResult:
    closed_form: list
    jet_counts: list
    p: int
    depth: int

    @property
    def match(self) -> bool:
        return self.closed_form == self.jet_counts

    def first_mismatch(self) -> int | None:
        for n, (a, b) in enumerate(zip(self.closed_form, self.jet_counts)):
            if a != b:
                return n
        return None


def oracle_compare(
    model: StratifiedModel,
    f: IntPoly,
    p: int,
    depth: int,
    symbol_counts: Mapping[str, object] | None = None,
    **kwargs,
) -> OracleResult:
    if model.is_global:
        raise ValueError("the jet oracle applies to local (naive or dlt) models")
    if f.nvars != model.d:
        raise ValueError(f"polynomial has {f.nvars} variables but the model has dimension {model.d}")
    closed = specialize_series(compute_zeta(model), p, symbol_counts, depth)
    jets = igusa_series(f, p, depth, **kwargs)
    return OracleResult(closed, jets, p, depth)


def oracle_check(model, f, p, depth, symbol_counts=None, **kwargs) -> bool:
    return oracle_compare(model, f, p, depth, symbol_counts, **kwargs).match
