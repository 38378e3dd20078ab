"""Sparse Laurent polynomials over Z and their Delta-adic truncations.

``LaurentPoly`` is the group ring of the free abelian group ``Z^r``.  The
augmentation ideal ``Delta`` is generated by ``x_i - 1``; membership in
``Delta^m`` is decided by substituting ``x_i = 1 + t_i`` and truncating at
total degree ``m``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Mapping

ExpVec = tuple[int, ...]


def _clean(terms: Iterable[tuple[ExpVec, int]]) -> dict[ExpVec, int]:
    out: dict[ExpVec, int] = {}
    for mono, c in terms:
        if c:
            out[mono] = out.get(mono, 0) + c
    return {m: c for m, c in out.items() if c}


def _grlex_key(mono: ExpVec):
    return (-sum(mono), tuple(-e for e in mono))


def _render_terms(items, var: str, signed_exps: bool) -> str:
    if not items:
        return "0"
    parts = []
    for mono, c in items:
        factors = []
        for i, e in enumerate(mono):
            if e == 1:
                factors.append(f"{var}{i + 1}")
            elif e:
                factors.append(f"{var}{i + 1}^{e}")
        body = "*".join(factors)
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if not parts:
            parts.append(text if c > 0 else f"-{text}")
        else:
            parts.append(f"+ {text}" if c > 0 else f"- {text}")
    return " ".join(parts)


class LaurentPoly:
    __slots__ = ("rank", "terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[ExpVec, int] | Iterable[tuple[ExpVec, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        self.terms = _clean((tuple(m), c) for m, c in items)
        for mono in self.terms:
            if len(mono) != rank:
                raise ValueError(f"exponent vector {mono} does not have length {rank}")
        self.rank = rank
        self._hash = None

    @classmethod
    def zero(cls, rank: int) -> "LaurentPoly":
        return cls(rank)

    @classmethod
    def constant(cls, rank: int, c: int) -> "LaurentPoly":
        return cls(rank, {(0,) * rank: c})

    @classmethod
    def monomial(cls, exps: Iterable[int], coeff: int = 1) -> "LaurentPoly":
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff})

    @classmethod
    def variable(cls, i: int, rank: int) -> "LaurentPoly":
        return cls.monomial(tuple(int(j == i - 1) for j in range(rank)))

    def _same(self, other: "LaurentPoly"):
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(self.rank, other)
        self._same(other)
        return LaurentPoly(self.rank, list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.rank, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(self.rank, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.rank, {m: c * other for m, c in self.terms.items()})
        self._same(other)
        out: dict[ExpVec, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(m1, m2))
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly(self.rank, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of Laurent polynomials are not defined here")
        result = LaurentPoly.constant(self.rank, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(self.rank, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def shift(self, exps: ExpVec) -> "LaurentPoly":
        """Multiply by the monomial ``x^exps``."""
        return LaurentPoly(self.rank, {tuple(a + b for a, b in zip(m, exps)): c
                                       for m, c in self.terms.items()})

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def sorted_terms(self) -> list[tuple[ExpVec, int]]:
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def __str__(self) -> str:
        return _render_terms(self.sorted_terms(), "x", True)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r}, rank={self.rank})"

    def truncate(self, m: int) -> "TruncatedSeries":
        return TruncatedSeries.from_laurent(self, m)

    @classmethod
    def parse(cls, text: str, rank: int) -> "LaurentPoly":
        return parse_laurent(text, rank)


def augmentation(p: LaurentPoly) -> int:
    return p.augmentation()


def monomial(v: Iterable[int]) -> LaurentPoly:
    return LaurentPoly.monomial(v)


def in_aug_power(p: LaurentPoly, m: int) -> bool:
    """True iff ``p`` lies in the ``m``-th power of the augmentation ideal."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return True
    return TruncatedSeries.from_laurent(p, m).is_zero()


# -- truncated power series in t_i = x_i - 1 ----------------------------------------


@lru_cache(maxsize=4096)
def _binomial_series(a: int, m: int) -> tuple[int, ...]:
    """Coefficients of ``(1 + t)^a`` below degree ``m`` (``a`` may be negative)."""
    coeffs = []
    c = 1
    for j in range(m):
        coeffs.append(c)
        c = c * (a - j) // (j + 1)
    return tuple(coeffs)


def _mono_series(exps: ExpVec, m: int) -> dict[ExpVec, int]:
    out: dict[ExpVec, int] = {(): 1}
    for a in exps:
        series = _binomial_series(a, m)
        nxt: dict[ExpVec, int] = {}
        for mono, c in out.items():
            deg = sum(mono)
            for j in range(m - deg):
                coeff = series[j]
                if coeff:
                    key = mono + (j,)
                    nxt[key] = nxt.get(key, 0) + c * coeff
        out = nxt
    return out


class TruncatedSeries:
    """An element of ``Z[t_1..t_r] / (t)^m``, the image of ``x_i = 1 + t_i``."""

    __slots__ = ("rank", "bound", "terms", "_hash")

    def __init__(self, rank: int, bound: int, terms: Mapping[ExpVec, int] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        cleaned = _clean((tuple(mo), c) for mo, c in items)
        for mono in cleaned:
            if len(mono) != rank or any(e < 0 for e in mono):
                raise ValueError(f"bad series monomial {mono}")
        self.terms = {mo: c for mo, c in cleaned.items() if sum(mo) < bound}
        self.rank = rank
        self.bound = bound
        self._hash = None

    @classmethod
    def zero(cls, rank: int, bound: int) -> "TruncatedSeries":
        return cls(rank, bound)

    @classmethod
    def from_laurent(cls, p: LaurentPoly, m: int) -> "TruncatedSeries":
        out: dict[ExpVec, int] = {}
        for mono, c in p.terms.items():
            for key, coeff in _mono_series(mono, m).items():
                out[key] = out.get(key, 0) + c * coeff
        return cls(p.rank, m, out)

    def _same(self, other):
        if self.rank != other.rank or self.bound != other.bound:
            raise ValueError("truncated series of different shapes")

    def __add__(self, other):
        self._same(other)
        return TruncatedSeries(self.rank, self.bound,
                               list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        return TruncatedSeries(self.rank, self.bound, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedSeries(self.rank, self.bound, {k: c * other for k, c in self.terms.items()})
        self._same(other)
        out: dict[ExpVec, int] = {}
        for m1, c1 in self.terms.items():
            d1 = sum(m1)
            for m2, c2 in other.terms.items():
                if d1 + sum(m2) < self.bound:
                    key = tuple(a + b for a, b in zip(m1, m2))
                    out[key] = out.get(key, 0) + c1 * c2
        return TruncatedSeries(self.rank, self.bound, out)

    __rmul__ = __mul__

    def shift(self, exps: ExpVec) -> "TruncatedSeries":
        """Multiply by the image of the monomial ``x^exps``."""
        if not any(exps):
            return self
        return self * TruncatedSeries(self.rank, self.bound, _mono_series(tuple(exps), self.bound))

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.rank, self.bound, self.terms) == (other.rank, other.bound, other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, self.bound, frozenset(self.terms.items())))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def homogeneous(self, degree: int) -> dict[ExpVec, int]:
        return {mo: c for mo, c in self.terms.items() if sum(mo) == degree}

    def order(self) -> int | None:
        """Lowest degree with a nonzero coefficient, or None for zero."""
        return min((sum(mo) for mo in self.terms), default=None)

    def __str__(self) -> str:
        items = sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), tuple(-e for e in kv[0])))
        return _render_terms(items, "t", False)

    def __repr__(self) -> str:
        return f"TruncatedSeries({str(self)!r}, rank={self.rank}, bound={self.bound})"


# -- parsing -------------------------------------------------------------------------

_TERM_RE = re.compile(r"\s*([+-])?\s*(\d+)?\s*(\*)?\s*((?:[a-z]\d+(?:\^-?\d+)?\s*\*?\s*)*)")
_FACTOR_RE = re.compile(r"([a-z])(\d+)(?:\^(-?\d+))?")


def parse_laurent(text: str, rank: int) -> LaurentPoly:
    """Parse the rendering produced by ``str(LaurentPoly)``."""
    text = text.strip()
    if text == "0":
        return LaurentPoly.zero(rank)
    terms: list[tuple[ExpVec, int]] = []
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse Laurent polynomial at position {pos}: {text!r}")
        sign, digits, _, factors = m.groups()
        if not digits and not factors.strip():
            raise ValueError(f"empty term at position {pos}: {text!r}")
        coeff = int(digits) if digits else 1
        if sign == "-":
            coeff = -coeff
        exps = [0] * rank
        for var, idx, exp in _FACTOR_RE.findall(factors):
            i = int(idx)
            if not 1 <= i <= rank:
                raise ValueError(f"variable {var}{i} out of range for rank {rank}")
            exps[i - 1] += int(exp) if exp else 1
        terms.append((tuple(exps), coeff))
        pos = m.end()
    return LaurentPoly(rank, terms)
