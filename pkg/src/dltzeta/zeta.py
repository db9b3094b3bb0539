"""Zeta expressions: sums of products of local factors, and their normal form.

Every expression is rational in ``T = L^(-s)``. Internally ``T = U^M`` for a
lattice index ``M`` so that rational multiplicities ``N`` become integer
powers of ``U``. Denominators are always products of binomials
``1 - L^(-v) T^N`` and are kept as a multiset of ``(N, v)`` pairs.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .ring import MotiveExpr

Rational = Union[int, Fraction, str]
Poly = dict  # U-exponent -> MotiveExpr, no zero entries

NAIVE = "naive"
GLOBAL = "global"
STYLES = (NAIVE, GLOBAL)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _frac(x: Rational) -> Fraction:
    return Fraction(x)


@dataclass(frozen=True, order=True)
class ZetaFactor:
    """One local factor.

    ``naive``:  (L-1) L^(-N s - v) / (1 - L^(-N s - v))
    ``global``:       L^(-N s - v) / (1 - L^(-N s - v))
    """

    N: Fraction
    v: Fraction
    style: str = NAIVE

    def __post_init__(self):
        object.__setattr__(self, "N", _frac(self.N))
        object.__setattr__(self, "v", _frac(self.v))
        if self.style not in STYLES:
            raise ValueError(f"unknown factor style {self.style!r}")
        if self.N < 0 or self.v < 0:
            raise ValueError(f"factor data must be nonnegative, got (N, v) = ({self.N}, {self.v})")
        if self.N == 0 and self.v == 0:
            raise ValueError("forbidden (0,0) pair")

    @property
    def binomial(self) -> tuple[Fraction, Fraction]:
        return (self.N, self.v)


def local_factor(N: Rational, v: Rational, style: str = NAIVE) -> ZetaFactor:
    return ZetaFactor(_frac(N), _frac(v), style)


@dataclass(frozen=True)
class ZetaTerm:
    coefficient: MotiveExpr
    factors: tuple = ()
    t_exp: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))
        object.__setattr__(self, "t_exp", _frac(self.t_exp))
        if self.t_exp < 0:
            raise ValueError("negative power of T")


@dataclass(frozen=True)
class ZetaExpr:
    """A formal sum of terms ``coefficient * T^t_exp * prod(factors)``."""

    terms: tuple = ()

    def __post_init__(self):
        terms = tuple(t for t in self.terms if not t.coefficient.is_zero())
        object.__setattr__(self, "terms", terms)
        styles = {f.style for t in terms for f in t.factors}
        if len(styles) > 1:
            raise ValueError("all factors of one expression must share a style")

    @classmethod
    def of(cls, coefficient: MotiveExpr | int = 1, factors: Iterable[ZetaFactor] = (), t_exp: Rational = 0) -> "ZetaExpr":
        if isinstance(coefficient, int):
            coefficient = MotiveExpr.constant(coefficient)
        return cls((ZetaTerm(coefficient, tuple(factors), _frac(t_exp)),))

    @property
    def style(self) -> str | None:
        for t in self.terms:
            for f in t.factors:
                return f.style
        return None

    @property
    def lattice(self) -> int:
        M = 1
        for t in self.terms:
            M = _lcm(M, t.t_exp.denominator)
            for f in t.factors:
                M = _lcm(M, f.N.denominator)
        return M

    def __add__(self, other: "ZetaExpr") -> "ZetaExpr":
        if not isinstance(other, ZetaExpr):
            return NotImplemented
        return ZetaExpr(self.terms + other.terms)

    def __mul__(self, other) -> "ZetaExpr":
        if isinstance(other, (MotiveExpr, int)):
            return ZetaExpr(tuple(ZetaTerm(t.coefficient * other, t.factors, t.t_exp) for t in self.terms))
        if not isinstance(other, ZetaExpr):
            return NotImplemented
        return ZetaExpr(
            tuple(
                ZetaTerm(a.coefficient * b.coefficient, a.factors + b.factors, a.t_exp + b.t_exp)
                for a in self.terms
                for b in other.terms
            )
        )

    __rmul__ = __mul__

    def __neg__(self) -> "ZetaExpr":
        return self * -1

    def __sub__(self, other: "ZetaExpr") -> "ZetaExpr":
        return self + (-other)

    def reordered(self, order: Iterable[int]) -> "ZetaExpr":
        return ZetaExpr(tuple(self.terms[i] for i in order))


# -- polynomials in U with motive coefficients

def _padd(P: Poly, k: int, c: MotiveExpr) -> None:
    v = P.get(k)
    v = c if v is None else v + c
    if v.is_zero():
        P.pop(k, None)
    else:
        P[k] = v


def _poly_sum(A: Poly, B: Poly) -> Poly:
    out = dict(A)
    for k, c in B.items():
        _padd(out, k, c)
    return out


def _poly_mul_binomial(P: Poly, N: int, v: Fraction) -> Poly:
    """P * (1 - L^(-v) U^N)."""
    out = dict(P)
    for k, c in P.items():
        _padd(out, k + N, -c.shift(-v))
    return out


def _poly_mul(A: Poly, B: Poly, max_deg: int | None = None) -> Poly:
    out: Poly = {}
    for i, a in A.items():
        for j, b in B.items():
            if max_deg is not None and i + j > max_deg:
                continue
            _padd(out, i + j, a * b)
    return out


def _div_laurent_binomial(c: MotiveExpr, v: Fraction) -> MotiveExpr | None:
    """Exact quotient c / (1 - L^(-v)) for v > 0, or None."""
    if c.is_zero():
        return c
    by_mono: dict[tuple, dict[Fraction, int]] = {}
    for (e, mono), a in c.items():
        by_mono.setdefault(mono, {})[e] = a
    R = v.denominator
    for (e, _), _a in c.items():
        R = _lcm(R, e.denominator)
    step = int(v * R)
    out: dict = {}
    for mono, coeffs in by_mono.items():
        ints = {int(e * R): a for e, a in coeffs.items()}
        lo, hi = min(ints), max(ints)
        if hi - lo < step:
            return None
        q: dict[int, int] = {}
        for E in range(hi, lo + step - 1, -1):
            val = ints.get(E, 0) + q.get(E + step, 0)
            if val:
                q[E] = val
        for E in range(lo, lo + step):
            if ints.get(E, 0) + q.get(E + step, 0):
                return None
        for E, a in q.items():
            out[(Fraction(E, R), mono)] = a
    return MotiveExpr._raw(out, _lcm(c.r, v.denominator))


def _poly_div_binomial(P: Poly, N: int, v: Fraction) -> Poly | None:
    """Exact quotient P / (1 - L^(-v) U^N), or None when it does not exist."""
    if not P:
        return {}
    if N == 0:
        out = {}
        for k, c in P.items():
            q = _div_laurent_binomial(c, v)
            if q is None:
                return None
            out[k] = q
        return out
    lo, hi = min(P), max(P)
    if hi - lo < N:
        return None
    Q: Poly = {}
    for j in range(lo, hi - N + 1):
        acc = P.get(j)
        prev = Q.get(j - N)
        if prev is not None:
            shifted = prev.shift(-v)
            acc = shifted if acc is None else acc + shifted
        if acc is not None and not acc.is_zero():
            Q[j] = acc
    for j in range(hi - N + 1, hi + 1):
        acc = P.get(j)
        prev = Q.get(j - N)
        if prev is not None:
            shifted = prev.shift(-v)
            acc = shifted if acc is None else acc + shifted
        if acc is not None and not acc.is_zero():
            return None
    return Q


def _binomial_order(key: tuple[Fraction, Fraction]):
    # trial division tries large binomials first
    N, v = key
    return (-N, -v)


@dataclass(frozen=True, eq=False)
class NormalZeta:
    """``numerator(U) / prod(1 - L^(-v) T^N)`` with ``T = U^lattice``.

    ``numerator`` maps U-exponents to motive coefficients. Equality is
    mathematical (cross-multiplication in the free coefficient domain).
    """

    numerator: Mapping[int, MotiveExpr]
    denominator: tuple = ()
    lattice: int = 1

    def __post_init__(self):
        num = {int(k): c for k, c in self.numerator.items() if not c.is_zero()}
        object.__setattr__(self, "numerator", num)
        den = tuple(sorted((_frac(N), _frac(v)) for N, v in self.denominator))
        for N, v in den:
            if (N * self.lattice).denominator != 1:
                raise ValueError(f"binomial T^{N} does not fit lattice {self.lattice}")
        object.__setattr__(self, "denominator", den)

    # -- inspection
    def is_zero(self) -> bool:
        return not self.numerator

    def is_s_free(self) -> bool:
        return set(self.numerator) <= {0} and all(N == 0 for N, _ in self.denominator)

    @property
    def r(self) -> int:
        r = 1
        for c in self.numerator.values():
            r = _lcm(r, c.minimal_r())
        for _, v in self.denominator:
            r = _lcm(r, v.denominator)
        return r

    def pole_multiset(self) -> Counter:
        """Counter of ``-v/N`` over the s-dependent denominator binomials."""
        return Counter(-v / N for N, v in self.denominator if N > 0)

    def constant(self) -> MotiveExpr:
        if self.denominator or set(self.numerator) - {0}:
            raise ValueError("expression is not a plain motive")
        return self.numerator.get(0, MotiveExpr.zero())

    # -- arithmetic helpers
    def _rescaled(self, M: int) -> dict:
        f = M // self.lattice
        return {k * f: c for k, c in self.numerator.items()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, NormalZeta):
            return NotImplemented
        M = _lcm(self.lattice, other.lattice)
        a_den, b_den = Counter(self.denominator), Counter(other.denominator)
        common = a_den & b_den
        a_extra, b_extra = a_den - common, b_den - common
        lhs = self._rescaled(M)
        for (N, v), m in b_extra.items():
            for _ in range(m):
                lhs = _poly_mul_binomial(lhs, int(N * M), v)
        rhs = other._rescaled(M)
        for (N, v), m in a_extra.items():
            for _ in range(m):
                rhs = _poly_mul_binomial(rhs, int(N * M), v)
        return lhs == rhs

    __hash__ = None

    def structurally_equal(self, other: "NormalZeta") -> bool:
        return (
            self.lattice == other.lattice
            and self.denominator == other.denominator
            and self.numerator == other.numerator
        )

    def at_s(self, s0: Rational) -> "NormalZeta":
        """Specialize ``T = L^(-s0)``; the result is s-free."""
        s0 = _frac(s0)
        num = MotiveExpr.zero()
        for k, c in self.numerator.items():
            num = num + c.shift(-s0 * Fraction(k, self.lattice))
        den = []
        for N, v in self.denominator:
            w = v + N * s0
            if w == 0:
                raise ZeroDivisionError(f"binomial (1 - L^-{v} T^{N}) vanishes at s = {s0}")
            den.append((Fraction(0), w))
        neg = [(N, w) for N, w in den if w < 0]
        numerator = {0: num} if not num.is_zero() else {}
        # 1/(1 - L^w) with w > 0 equals -L^-w/(1 - L^-w)
        for _, w in neg:
            numerator = {k: -c.shift(w) for k, c in numerator.items()}
        den = [(N, abs(w)) for N, w in den]
        return _reduce(numerator, Counter(den), 1)

    # -- output
    def __str__(self) -> str:
        return format_zeta(self)

    def __repr__(self) -> str:
        return f"NormalZeta({format_zeta(self)!r})"

    def to_json(self) -> dict:
        return {
            "lattice": self.lattice,
            "r": self.r,
            "numerator": [
                {"t": str(Fraction(k, self.lattice)), "coefficient": str(c)}
                for k, c in sorted(self.numerator.items())
            ],
            "denominator": [{"N": str(N), "v": str(v)} for N, v in self.denominator],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "NormalZeta":
        M = int(data["lattice"])
        r = int(data.get("r", 1))
        num: dict[int, MotiveExpr] = {}
        for entry in data["numerator"]:
            k = Fraction(entry["t"]) * M
            if k.denominator != 1:
                raise ValueError(f"T-exponent {entry['t']} off lattice {M}")
            num[int(k)] = MotiveExpr.parse(entry["coefficient"], r)
        den = [(Fraction(d["N"]), Fraction(d["v"])) for d in data["denominator"]]
        return cls(num, tuple(den), M)


def _t_power(k: int, M: int) -> str:
    e = Fraction(k, M)
    if e == 0:
        return ""
    if e == 1:
        return "T"
    return f"T^{e}" if e.denominator == 1 else f"T^({e})"


def _binomial_str(N: Fraction, v: Fraction) -> str:
    parts = []
    if v:
        parts.append(f"L^(-{v})")
    if N:
        parts.append("T" if N == 1 else (f"T^{N}" if N.denominator == 1 else f"T^({N})"))
    return f"(1 - {'*'.join(parts)})"


def format_zeta(z: NormalZeta) -> str:
    if not z.numerator:
        num = "0"
    else:
        pieces = []
        for k, c in sorted(z.numerator.items()):
            t = _t_power(k, z.lattice)
            cs = str(c)
            if not t:
                pieces.append(f"({cs})")
            elif cs == "1":
                pieces.append(t)
            else:
                pieces.append(f"({cs})*{t}")
        num = " + ".join(pieces)
    if not z.denominator:
        return num
    den = "*".join(_binomial_str(N, v) for N, v in z.denominator)
    return f"[{num}] / [{den}]"


# -- normalization

def _term_numerator(term: ZetaTerm, M: int) -> Poly:
    coef = term.coefficient
    u = int(term.t_exp * M)
    shift = Fraction(0)
    naive = 0
    for f in term.factors:
        u += int(f.N * M)
        shift -= f.v
        if f.style == NAIVE:
            naive += 1
    coef = coef.shift(shift)
    if naive:
        coef = coef * (MotiveExpr.lefschetz(1) - 1) ** naive
    return {u: coef} if not coef.is_zero() else {}


def _reduce(num: Poly, den: Counter, M: int) -> NormalZeta:
    """Cancel denominator binomials dividing the numerator; shrink the lattice."""
    den = +den
    if not num:
        return NormalZeta({}, (), 1)
    for key in sorted(den, key=_binomial_order):
        N, v = key
        while den[key] > 0:
            q = _poly_div_binomial(num, int(N * M), v)
            if q is None:
                break
            num = q
            den[key] -= 1
    den = +den
    g = M
    for k in num:
        g = math.gcd(g, k)
    for N, _ in den:
        g = math.gcd(g, int(N * M))
    if g > 1:
        num = {k // g: c for k, c in num.items()}
        M //= g
    return NormalZeta(num, tuple(den.elements()), M)


def zeta_normalize(z: "ZetaExpr | NormalZeta") -> NormalZeta:
    """Bring ``z`` over a common binomial denominator and cancel exactly."""
    if isinstance(z, NormalZeta):
        return _reduce(dict(z.numerator), Counter(z.denominator), z.lattice)
    M = z.lattice
    common: Counter = Counter()
    per_term = []
    for term in z.terms:
        mult = Counter(f.binomial for f in term.factors)
        per_term.append((term, mult))
        common |= mult
    total: Poly = {}
    for term, mult in per_term:
        P = _term_numerator(term, M)
        for (N, v), m in (common - mult).items():
            for _ in range(m):
                P = _poly_mul_binomial(P, int(N * M), v)
        total = _poly_sum(total, P)
    return _reduce(total, common, M)


# -- series

def _geometric(N: int, v: Fraction, max_deg: int, lead: MotiveExpr, start: int) -> Poly:
    """sum_{j >= start} lead * L^(-j v) U^(j N), truncated at max_deg."""
    out: Poly = {}
    j = start
    while j * N <= max_deg:
        _padd(out, j * N, lead.shift(-j * v))
        j += 1
    return out


def zeta_series(z: "ZetaExpr | NormalZeta", depth: int) -> list[MotiveExpr]:
    """Coefficients of ``T^(k/M)`` for ``k = 0 .. depth*M``."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if isinstance(z, ZetaExpr) and any(f.N == 0 for t in z.terms for f in t.factors):
        z = zeta_normalize(z)
    if isinstance(z, NormalZeta):
        M = z.lattice
        max_deg = depth * M
        if any(N == 0 for N, _ in z.denominator):
            raise ValueError("s-free denominator left after cancellation; series coefficients are not Laurent polynomials")
        acc: Poly = dict(z.numerator)
        one = MotiveExpr.one()
        for N, v in z.denominator:
            acc = _poly_mul(acc, _geometric(int(N * M), v, max_deg, one, 0), max_deg)
    else:
        M = z.lattice
        max_deg = depth * M
        acc = {}
        Lm1 = MotiveExpr.lefschetz(1) - 1
        one = MotiveExpr.one()
        for term in z.terms:
            u0 = int(term.t_exp * M)
            if u0 > max_deg:
                continue
            P: Poly = {u0: term.coefficient}
            for f in term.factors:
                lead = Lm1 if f.style == NAIVE else one
                P = _poly_mul(P, _geometric(int(f.N * M), f.v, max_deg, lead, 1), max_deg)
            acc = _poly_sum(acc, P)
    zero = MotiveExpr.zero()
    return [acc.get(k, zero) for k in range(max_deg + 1)]


def substitute_series(coefficients: Iterable[MotiveExpr], L_value, symbols=None) -> list[Fraction]:
    return [c.substitute(L_value, symbols) for c in coefficients]
