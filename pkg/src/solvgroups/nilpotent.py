"""Normal words in free metabelian-nilpotent groups ``MN(r,k)``.

Every element is written as ``z1^a1 ... zr^ar`` times a product of powers of
basic commutators of weights ``2..k``.  On the commutator subgroup the
abelianized Fox derivatives are additive, and the lowest-degree part of the
derivatives of an element of ``gamma_m`` lies in the span of the leading
parts of the weight-``m`` basic commutators; peeling off one weight at a time
yields the exponents.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .laurent import TruncatedSeries
from .linalg import solve_integer
from .magnus import abelian_fox, abelianization, eq
from .tags import GroupTag
from .words import Word, basic_commutators, invert, multiply, power


def _monomials(rank: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for combo in itertools.combinations_with_replacement(range(rank), degree):
        exps = [0] * rank
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    return out


def _derivs(w: Word, bound: int) -> list[TruncatedSeries]:
    return [p.truncate(bound) for p in abelian_fox(w)]


def _leading(derivs: list[TruncatedSeries], degree: int, monos) -> list[int]:
    return [a.terms.get(mono, 0) for a in derivs for mono in monos]


@lru_cache(maxsize=None)
def _basis(rank: int, weight: int, bound: int):
    words = basic_commutators(rank, weight)
    derivs = [_derivs(b, bound) for b in words]
    monos = _monomials(rank, weight - 1)
    columns = [_leading(d, weight - 1, monos) for d in derivs]
    matrix = [list(row) for row in zip(*columns)]
    return words, derivs, monos, matrix


def collect(w: Word, group: GroupTag) -> tuple[list[int], list[tuple[Word, int]]]:
    """Exponent vector and ``[(basic commutator, exponent), ...]`` of ``w``."""
    if not group.is_nilpotent:
        raise ValueError(f"{group} is not metabelian-nilpotent")
    r, k = group.rank, group.cls
    ab = abelianization(w)
    head = multiply(*(Word.gen(i + 1, r, a) for i, a in enumerate(ab))) if r else Word.identity(r)
    rest = _derivs(multiply(invert(head), w), k)
    factors: list[tuple[Word, int]] = []
    for weight in range(2, k + 1):
        words, derivs, monos, matrix = _basis(r, weight, k)
        if not words:
            continue
        target = _leading(rest, weight - 1, monos)
        if not any(target):
            continue
        coeffs = solve_integer(matrix, target)
        if coeffs is None:
            raise ArithmeticError(f"weight-{weight} layer not in the span of basic commutators")
        for b, bd, n in zip(words, derivs, coeffs):
            if n:
                factors.append((b, n))
                rest = [a - t * n for a, t in zip(rest, bd)]
    if any(not a.is_zero() for a in rest):
        raise ArithmeticError("collection left a nonzero remainder")
    return ab, factors


def normal_word(w: Word, group: GroupTag) -> Word:
    """A word equal to ``w`` in ``group``, built from the collected form."""
    ab, factors = collect(w, group)
    r = group.rank
    pieces = [Word.gen(i + 1, r, a) for i, a in enumerate(ab)]
    pieces += [power(b, n) for b, n in factors]
    out = multiply(*pieces) if pieces else Word.identity(r)
    assert eq(out, w, group)
    return out
