"""Smooth fans supported on the positive orthant and monomial zeta functions.

A smooth fan refining the orthant is a toric log resolution of a monomial
``f = x^a``. Star subdivision at a cone inserts the ray through the sum of
its generators, which is the blow-up of the corresponding closed stratum.
Torus orbits give exact stratum classes ``(L-1)^(d - dim cone)``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .engine import compute_naive_zeta, compute_stringy_motive
from .model import DivisorDatum, StratifiedModel, StratumDatum
from .ring import MotiveExpr
from .zeta import zeta_normalize


class FanError(ValueError):
    pass


@dataclass(frozen=True)
class Fan:
    d: int
    rays: tuple
    cones: frozenset

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in u) for u in self.rays))
        object.__setattr__(self, "cones", frozenset(frozenset(c) for c in self.cones))

    def maximal_cones(self) -> list[frozenset]:
        return sorted((c for c in self.cones if not any(c < o for o in self.cones)), key=sorted)

    def subdividable_cones(self) -> list[frozenset]:
        return sorted((c for c in self.cones if len(c) >= 2), key=lambda c: (len(c), sorted(c)))

    def to_json(self) -> dict:
        return {
            "rays": [list(u) for u in self.rays],
            "cones": sorted(sorted(c) for c in self.cones if c),
        }

    @classmethod
    def from_json(cls, data) -> "Fan":
        rays = [tuple(u) for u in data["rays"]]
        if not rays:
            raise FanError("fan without rays")
        cones = {frozenset()}
        for c in data["cones"]:
            c = frozenset(c)
            for k in range(len(c) + 1):
                cones.update(frozenset(x) for x in itertools.combinations(sorted(c), k))
        return cls(len(rays[0]), tuple(rays), frozenset(cones))


def _det(rows: Sequence[Sequence[int]]) -> int:
    # fraction-free Bareiss elimination
    m = [list(r) for r in rows]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def fan_problems(fan: Fan) -> list[str]:
    """Check smoothness, face closure and that the support is the orthant."""
    out = []
    d = fan.d
    if len(set(fan.rays)) != len(fan.rays):
        out.append("rays: duplicate ray")
    for i, u in enumerate(fan.rays):
        if len(u) != d or any(x < 0 for x in u) or not any(u):
            out.append(f"rays[{i}]: must be a nonzero vector in the orthant")
        elif math.gcd(*u) != 1:
            out.append(f"rays[{i}]: not primitive")
    for c in fan.cones:
        if any(i >= len(fan.rays) for i in c):
            out.append(f"cone {sorted(c)}: unknown ray index")
            return out
        for i in c:
            if c - {i} not in fan.cones:
                out.append(f"cone {sorted(c)}: face {sorted(c - {i})} missing")
    maximal = fan.maximal_cones()
    for c in maximal:
        if len(c) != d:
            out.append(f"cone {sorted(c)}: maximal cone is not full dimensional")
        elif abs(_det([fan.rays[i] for i in sorted(c)])) != 1:
            out.append(f"cone {sorted(c)}: not unimodular")
    if out:
        return out
    # every wall is shared by two maximal cones unless it lies in a coordinate hyperplane
    walls: dict[frozenset, int] = {}
    for c in maximal:
        for i in c:
            walls[c - {i}] = walls.get(c - {i}, 0) + 1
    for w, count in walls.items():
        on_boundary = any(all(fan.rays[i][k] == 0 for i in w) for k in range(d))
        if count != (1 if on_boundary else 2):
            out.append(f"wall {sorted(w)}: support is not the orthant")
    return out


def orthant_fan(d: int) -> Fan:
    if d < 1:
        raise FanError("dimension must be at least 1")
    rays = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    cones = frozenset(frozenset(c) for k in range(d + 1) for c in itertools.combinations(range(d), k))
    return Fan(d, rays, cones)


def star_subdivide(fan: Fan, cone: Iterable[int]) -> Fan:
    tau = frozenset(cone)
    if tau not in fan.cones:
        raise FanError(f"{sorted(tau)} is not a cone of the fan")
    if len(tau) < 2:
        raise FanError("star subdivision needs a cone of dimension at least 2")
    u0 = tuple(sum(fan.rays[i][k] for i in tau) for k in range(fan.d))
    assert math.gcd(*u0) == 1, "barycentric ray of a smooth cone is primitive"
    new = len(fan.rays)
    kept = {c for c in fan.cones if not tau <= c}
    added = {c | {new} for c in kept if (c | tau) in fan.cones}
    return Fan(fan.d, fan.rays + (u0,), frozenset(kept | added))


def divisor_data(u: Sequence[int], a: Sequence[int]) -> tuple[Fraction, Fraction]:
    """(N, v) of the toric divisor of ray ``u`` for the monomial ``x^a``."""
    if len(u) != len(a):
        raise ValueError("ray and exponent vector differ in length")
    return Fraction(sum(x * y for x, y in zip(u, a))), Fraction(sum(u))


def _check_monomial(a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if any(x < 0 for x in a) or not any(a):
        raise ValueError(f"exponent vector {a} must be nonnegative and nonzero")
    return a


def ray_name(index: int) -> str:
    return f"R{index}"


def model_from_monomial(a: Sequence[int], fan: Fan | None = None) -> StratifiedModel:
    """Naive snc model of ``x^a`` on the toric resolution given by ``fan``.

    Divisors are the rays with ``N > 0`` together with exceptional rays
    (``N = 0`` but not a coordinate axis). Coordinate hyperplanes with
    ``N = 0`` would contribute the factor 1 and are folded into payloads.
    """
    a = _check_monomial(a)
    fan = fan or orthant_fan(len(a))
    if fan.d != len(a):
        raise ValueError("fan dimension does not match the monomial")
    problems = fan_problems(fan)
    if problems:
        raise FanError("; ".join(problems))
    d = fan.d
    data = {i: divisor_data(u, a) for i, u in enumerate(fan.rays)}
    in_index = {i for i, (N, v) in data.items() if N > 0 or v > 1}
    Lm1 = MotiveExpr.lefschetz(1) - 1
    payloads: dict[frozenset, MotiveExpr] = {}
    for c in fan.cones:
        J = frozenset(ray_name(i) for i in c if i in in_index)
        payloads[J] = payloads.get(J, MotiveExpr.zero()) + Lm1 ** (d - len(c))
    divisors = tuple(DivisorDatum(ray_name(i), *data[i]) for i in sorted(in_index))
    strata = tuple(
        StratumDatum(J, p) for J, p in sorted(payloads.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
        if not p.is_zero() or not J
    )
    return StratifiedModel("naive", d, 1, divisors, strata, fan.to_json())


def orbit_class_sum(fan: Fan) -> MotiveExpr:
    """Sum of the orbit classes, i.e. the class of the toric variety of ``fan``.

    This is L^d only for the orthant itself; each star subdivision of a
    k-cone tau adds [V(tau)] (L + ... + L^(k-1)).
    """
    Lm1 = MotiveExpr.lefschetz(1) - 1
    total = MotiveExpr.zero()
    for c in fan.cones:
        total = total + Lm1 ** (fan.d - len(c))
    return total


def weighted_orbit_sum(fan: Fan):
    """Orbit classes weighted by (L-1)/(L^(v_i)-1) per ray, v_i = <u_i, 1>.

    This is the stringy motive of A^d computed on the resolution, so it
    equals L^d for every smooth refinement of the orthant.
    """
    a = {ray_name(i): sum(u) for i, u in enumerate(fan.rays)}
    Lm1 = MotiveExpr.lefschetz(1) - 1
    strata = {tuple(ray_name(i) for i in sorted(c)): Lm1 ** (fan.d - len(c)) for c in fan.cones}
    return compute_stringy_motive(a, strata)


def monomial_zeta(a: Sequence[int], fan: Fan | None = None):
    return zeta_normalize(compute_naive_zeta(model_from_monomial(a, fan)))


def verify_subdivision_invariance(a: Sequence[int], fan: Fan, cone: Iterable[int], perturb_v: int = 0) -> bool:
    """Compare the normalized zeta functions before and after one star subdivision.

    ``perturb_v`` adds to v of the new ray; nonzero values give a control
    that must fail.
    """
    before = monomial_zeta(a, fan)
    finer = star_subdivide(fan, cone)
    model = model_from_monomial(a, finer)
    if perturb_v:
        name = ray_name(len(finer.rays) - 1)
        D = model.divisor(name)
        model = model.replace_divisor(name, v=D.v + perturb_v)
    after = zeta_normalize(compute_naive_zeta(model))
    return before == after


def random_chain(fan: Fan, steps: int, rng: random.Random) -> tuple[Fan, list[frozenset]]:
    chain = []
    for _ in range(steps):
        cone = rng.choice(fan.subdividable_cones())
        chain.append(cone)
        fan = star_subdivide(fan, cone)
    return fan, chain


@dataclass(frozen=True)
class FuzzCase:
    seed: int
    a: tuple
    chain: tuple
    passed: bool


def fuzz_invariance(a: Sequence[int] | None, seeds: Iterable[int], max_steps: int = 4, dims=(2, 3)) -> list[FuzzCase]:
    """Random chains of star subdivisions; each case compares the final zeta with the identity fan's.

    When ``a`` is None a monomial with entries in 0..3 is drawn per seed.
    """
    cases = []
    for seed in seeds:
        rng = random.Random(seed)
        if a is None:
            d = rng.choice(list(dims))
            mono = tuple(rng.randint(0, 3) for _ in range(d))
            while not any(mono):
                mono = tuple(rng.randint(0, 3) for _ in range(d))
        else:
            mono = _check_monomial(a)
        base = orthant_fan(len(mono))
        fan, chain = random_chain(base, rng.randint(1, max_steps), rng)
        passed = monomial_zeta(mono, base) == monomial_zeta(mono, fan)
        cases.append(FuzzCase(seed, mono, tuple(tuple(sorted(c)) for c in chain), passed))
    return cases
