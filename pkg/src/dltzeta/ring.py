"""Exact arithmetic in the coefficient ring of motivic zeta functions.

The ring is modelled as ``Z[L^(1/r), L^(-1/r)][symbols]``: class symbols such
as ``[E]`` are free commuting indeterminates, so no scissor relations are
imposed. Equality is therefore decidable and every cancellation we perform
is also valid in the true Grothendieck ring.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from sympy import integer_nthroot

from .parsing import parse_expression

Monomial = tuple  # sorted tuple of (name, power) pairs
TermKey = tuple  # (Fraction L-exponent, Monomial)
Rational = Union[int, Fraction]

_ONE_MONO: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    powers = dict(a)
    for name, k in b:
        powers[name] = powers.get(name, 0) + k
    return tuple(sorted(powers.items()))


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class MotiveExpr:
    """Immutable sparse element ``sum c * L^e * [S1]^k1 ...`` with integer ``c``.

    ``r`` is the extension index: every L-exponent lies in ``(1/r) Z``.
    Equality and hashing look only at the term map, which is canonical.
    """

    __slots__ = ("_terms", "r")

    def __init__(self, terms: Mapping[TermKey, int] | None = None, r: int = 1):
        if r < 1:
            raise ValueError("extension index r must be positive")
        clean: dict[TermKey, int] = {}
        for (e, mono), c in (terms or {}).items():
            e = Fraction(e)
            if (e * r).denominator != 1:
                raise ValueError(f"L-exponent {e} is not in (1/{r})Z")
            if c:
                clean[(e, tuple(sorted(mono)))] = clean.get((e, tuple(sorted(mono))), 0) + int(c)
        self._terms = {k: v for k, v in clean.items() if v}
        self.r = r

    @classmethod
    def _raw(cls, terms: dict[TermKey, int], r: int) -> "MotiveExpr":
        # trusted constructor: keys already canonical, no zero coefficients
        obj = object.__new__(cls)
        obj._terms = terms
        obj.r = r
        return obj

    # -- constructors
    @classmethod
    def constant(cls, c: int, r: int = 1) -> "MotiveExpr":
        return cls._raw({(Fraction(0), _ONE_MONO): c} if c else {}, r)

    @classmethod
    def zero(cls, r: int = 1) -> "MotiveExpr":
        return cls._raw({}, r)

    @classmethod
    def one(cls, r: int = 1) -> "MotiveExpr":
        return cls.constant(1, r)

    @classmethod
    def lefschetz(cls, exponent: Rational = 1, r: int = 1) -> "MotiveExpr":
        e = Fraction(exponent)
        return cls._raw({(e, _ONE_MONO): 1}, _lcm(r, e.denominator))

    @classmethod
    def symbol(cls, name: str, r: int = 1) -> "MotiveExpr":
        return cls._raw({(Fraction(0), ((name, 1),)): 1}, r)

    @classmethod
    def parse(cls, text: str, r: int = 1) -> "MotiveExpr":
        return parse_expression(text, r)

    # -- inspection
    @property
    def terms(self) -> dict[TermKey, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[TermKey, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def symbols(self) -> set[str]:
        return {name for (_, mono) in self._terms for name, _ in mono}

    def l_exponents(self) -> set[Fraction]:
        return {e for e, _ in self._terms}

    def is_unit_monomial(self) -> bool:
        """True for ``+-L^e``, the only invertible elements."""
        if len(self._terms) != 1:
            return False
        ((_, mono), c), = self._terms.items()
        return not mono and c in (1, -1)

    def minimal_r(self) -> int:
        r = 1
        for e, _ in self._terms:
            r = _lcm(r, e.denominator)
        return r

    def with_r(self, r: int) -> "MotiveExpr":
        if r % self.minimal_r():
            raise ValueError(f"cannot express with index r={r}")
        return MotiveExpr._raw(self._terms, r)

    # -- ring operations
    @staticmethod
    def _coerce(x) -> "MotiveExpr":
        if isinstance(x, MotiveExpr):
            return x
        if isinstance(x, int):
            return MotiveExpr.constant(x)
        return NotImplemented

    def __add__(self, other) -> "MotiveExpr":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for k, c in small.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return MotiveExpr._raw(out, _lcm(self.r, other.r))

    __radd__ = __add__

    def __neg__(self) -> "MotiveExpr":
        return MotiveExpr._raw({k: -c for k, c in self._terms.items()}, self.r)

    def __sub__(self, other) -> "MotiveExpr":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "MotiveExpr":
        return (-self) + other

    def __mul__(self, other) -> "MotiveExpr":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[TermKey, int] = {}
        for (e1, m1), c1 in self._terms.items():
            for (e2, m2), c2 in other._terms.items():
                k = (e1 + e2, _mono_mul(m1, m2))
                v = out.get(k, 0) + c1 * c2
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return MotiveExpr._raw(out, _lcm(self.r, other.r))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MotiveExpr":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_unit_monomial():
                raise ValueError("only +-L^e can be raised to a negative power")
            ((e, _), c), = self._terms.items()
            return MotiveExpr._raw({(e * k, _ONE_MONO): c if k % 2 else 1}, self.r)
        result = MotiveExpr.one(self.r)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exponent: Rational) -> "MotiveExpr":
        """Multiply by ``L^exponent``."""
        e = Fraction(exponent)
        if not e:
            return self
        return MotiveExpr._raw(
            {(k + e, m): c for (k, m), c in self._terms.items()}, _lcm(self.r, e.denominator)
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MotiveExpr.constant(other)
        if not isinstance(other, MotiveExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- specialization
    def substitute(self, L_value: Rational, symbols: Mapping[str, Rational] | None = None) -> Fraction:
        """Evaluate under ``L -> L_value`` and ``[S] -> symbols[S]``, exactly."""
        symbols = symbols or {}
        missing = self.symbols() - set(symbols)
        if missing:
            raise KeyError(f"no value for symbol(s) {sorted(missing)}")
        L_value = Fraction(L_value)
        roots: dict[int, Fraction] = {}
        total = Fraction(0)
        for (e, mono), c in self._terms.items():
            q = e.denominator
            if q not in roots:
                roots[q] = _rational_root(L_value, q)
            base = roots[q]
            if base == 0 and e.numerator < 0:
                raise ZeroDivisionError("negative power of L at L=0")
            value = Fraction(c) * base ** e.numerator
            for name, k in mono:
                value *= Fraction(symbols[name]) ** k
            total += value
        return total

    # -- printing
    def sorted_items(self) -> list[tuple[TermKey, int]]:
        return sorted(self._terms.items(), key=lambda kv: (-kv[0][0], kv[0][1]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (e, mono), c in self.sorted_items():
            factors = [f"[{name}]" if k == 1 else f"[{name}]^{k}" for name, k in mono]
            if e == 1:
                factors.append("L")
            elif e:
                factors.append(f"L^{e}" if e.denominator == 1 and e > 0 else f"L^({e})")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MotiveExpr({str(self)!r}, r={self.r})"


def _rational_root(x: Fraction, q: int) -> Fraction:
    if q == 1:
        return x
    if x < 0 and q % 2 == 0:
        raise ValueError(f"{x}^(1/{q}) is not real")
    sign = -1 if x < 0 else 1
    num, exact_n = integer_nthroot(abs(x.numerator), q)
    den, exact_d = integer_nthroot(x.denominator, q)
    if not (exact_n and exact_d):
        raise ValueError(f"{x}^(1/{q}) is irrational")
    return Fraction(sign * num, den)


# Function-style surface.

def parse_motive_expr(text: str, r: int = 1) -> MotiveExpr:
    return parse_expression(text, r)


def mot_add(a: MotiveExpr, b: MotiveExpr) -> MotiveExpr:
    return a + b


def mot_mul(a: MotiveExpr, b: MotiveExpr) -> MotiveExpr:
    return a * b


def mot_substitute(a: MotiveExpr, L_value: Rational, symbols: Mapping[str, Rational] | None = None) -> Fraction:
    return a.substitute(L_value, symbols)


def L(exponent: Rational = 1) -> MotiveExpr:
    return MotiveExpr.lefschetz(exponent)


def sym(name: str) -> MotiveExpr:
    return MotiveExpr.symbol(name)


def msum(items: Iterable[MotiveExpr]) -> MotiveExpr:
    total = MotiveExpr.zero()
    for x in items:
        total = total + x
    return total
