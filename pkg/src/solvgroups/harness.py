"""Equation builders, solution checks and bounded searches.

Searches enumerate words over an alphabet of ``n`` symbols as reduced words
in the variables ``x1..xn`` (the symbolic form) and then substitute the
alphabet words.  Everything is deterministic: words come in length-lex order
with letter order ``x1, x1^-1, x2, x2^-1, ...`` and tuples in order of total
length, then lexicographically.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .groupring import GroupRingElem, module_exponent
from .linalg import determinant
from .magnus import abelianization, apply_hom, eq, in_derived, is_identity, Homomorphism
from .tags import BudgetExceeded, Family, GroupTag
from .words import (Word, build_w, left_normed, substitute, to_template)


class TestElementViolation(ValueError):
    """A constructed test-element candidate turned out to be trivial."""

    __test__ = False


@dataclass(frozen=True)
class Equation:
    """``lhs(x_1..x_n) = rhs`` over ``group``; ``rhs`` has no variables."""

    lhs: Word
    rhs: Word
    group: GroupTag
    n_vars: int = 0

    def __post_init__(self):
        if self.rhs.has_variables:
            raise ValueError("right-hand side must be variable-free")
        used = self.lhs.variables()
        n = self.n_vars or max(used, default=0)
        if used - set(range(1, n + 1)):
            raise ValueError(f"lhs uses variables outside x1..x{n}")
        object.__setattr__(self, "n_vars", n)

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"

    def to_json(self) -> dict:
        return {"lhs": str(self.lhs), "rhs": str(self.rhs), "group": str(self.group),
                "variables": self.n_vars}


def _vars(rank: int, *indices: int) -> list[Word]:
    return [Word.var(i, rank) for i in indices]


def build_eq1(group: GroupTag) -> Equation:
    r = group.rank
    if r < 2:
        raise ValueError("equation (x2,x1,x1,x2) = (z2,z1,z1,z2) needs rank >= 2")
    x1, x2 = _vars(r, 1, 2)
    z1, z2 = Word.gen(1, r), Word.gen(2, r)
    return Equation(left_normed(x2, x1, x1, x2), left_normed(z2, z1, z1, z2), group, 2)


def build_eq3(g: Word, f: Word, group: GroupTag) -> Equation:
    """``(f(x), g(x), g(x), f(x)) = (f, g, g, f)``."""
    gx, fx = to_template(g), to_template(f)
    return Equation(left_normed(fx, gx, gx, fx), left_normed(f, g, g, f), group, group.rank)


def build_eq12(g: Word, f: Word, u_template: Word, group: GroupTag) -> Equation:
    """``u(g(x), f(x)) = u(g, f)`` for a two-variable template ``u``."""
    if u_template.variables() - {1, 2}:
        raise ValueError("u_template may only use x1 and x2")
    if u_template.constants():
        raise ValueError("u_template must not contain constants")
    template = u_template.with_rank(group.rank)
    lhs = substitute(template, {1: to_template(g), 2: to_template(f)})
    rhs = substitute(template, {1: g, 2: f})
    return Equation(lhs, rhs, group, group.rank)


def check_solution(E: Equation, assignment: Sequence[Word]) -> bool:
    if len(assignment) < E.n_vars:
        raise ValueError(f"arity mismatch: need {E.n_vars} values, got {len(assignment)}")
    value = substitute(E.lhs, list(assignment))
    return eq(value, E.rhs, E.group)


# -- enumeration ------------------------------------------------------------------


def enumerate_words(n_symbols: int, max_len: int, rank: int = 0) -> Iterator[Word]:
    """Reduced words in ``x1..xn`` of length ``<= max_len``, length-lex."""
    letters = [(i, s) for i in range(1, n_symbols + 1) for s in (1, -1)]
    level: list[tuple[tuple[int, int], ...]] = [()]
    yield Word((), rank)
    for _ in range(max_len):
        nxt = []
        for seq in level:
            for i, s in letters:
                if seq and seq[-1] == (i, -s):
                    continue
                nxt.append(seq + ((i, s),))
        for seq in nxt:
            yield Word(((-i, s) for i, s in seq), rank)
        level = nxt


def _alphabet_words(alphabet: Sequence[Word], max_len: int) -> list[tuple[int, Word, Word]]:
    rank = alphabet[0].rank
    seen = set()
    out = []
    for sym in enumerate_words(len(alphabet), max_len, rank):
        concrete = substitute(sym, list(alphabet)) if sym else Word.identity(rank)
        if concrete in seen:
            continue
        seen.add(concrete)
        out.append((len(sym), sym, concrete))
    return out


def candidate_tuples(n_vars: int, alphabet: Sequence[Word], max_len: int
                     ) -> Iterator[tuple[tuple[Word, ...], tuple[Word, ...]]]:
    """Yield ``(symbolic, concrete)`` assignments in the documented order."""
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    if not alphabet:
        raise ValueError("empty alphabet")
    words = _alphabet_words(alphabet, max_len)
    by_len: dict[int, list] = {}
    for length, sym, concrete in words:
        by_len.setdefault(length, []).append((sym, concrete))
    for total in range(n_vars * max_len + 1):
        for comp in itertools.product(range(max_len + 1), repeat=n_vars):
            if sum(comp) != total or any(c not in by_len for c in comp):
                continue
            for combo in itertools.product(*(by_len[c] for c in comp)):
                yield tuple(s for s, _ in combo), tuple(c for _, c in combo)


@dataclass
class SearchResult:
    equation: Equation
    bound: int
    hits: list[tuple[Word, ...]] = field(default_factory=list)
    symbolic: list[tuple[Word, ...]] = field(default_factory=list)
    candidates: int = 0
    truncated: bool = False

    def to_json(self) -> dict:
        return {"equation": self.equation.to_json(), "bound": self.bound,
                "hits": [[str(w) for w in hit] for hit in self.hits],
                "candidates": self.candidates, "bounded": True, "truncated": self.truncated}


def bounded_search(E: Equation, alphabet: Sequence[Word], max_len: int,
                   budget: int = 100_000, strict: bool = False) -> SearchResult:
    """All assignments of words of length ``<= max_len`` over ``alphabet`` solving ``E``.

    When more than ``budget`` candidates would be needed the result is
    flagged ``truncated`` (or :class:`BudgetExceeded` is raised with ``strict``).
    """
    result = SearchResult(E, max_len)
    for sym, concrete in candidate_tuples(E.n_vars, alphabet, max_len):
        if result.candidates >= budget:
            if strict:
                raise BudgetExceeded(f"search budget of {budget} candidates exhausted")
            result.truncated = True
            break
        result.candidates += 1
        if check_solution(E, concrete):
            result.hits.append(concrete)
            result.symbolic.append(sym)
    return result


# -- test elements and congruences -----------------------------------------------


def lemma22_applies(group: GroupTag) -> bool:
    if group.rank != 2:
        return False
    if group.family is Family.METABELIAN:
        return True
    return group.family is Family.METABELIAN_NILPOTENT and group.cls >= 4


def lemma22_check(assignment: Sequence[Word], group: GroupTag) -> bool:
    """Both ``g_i`` are congruent to ``z_i^(+-1)`` modulo the commutator subgroup."""
    if not lemma22_applies(group):
        raise ValueError(f"the congruence is only established for M(2) and MN(2,k>=4), not {group}")
    if len(assignment) != 2:
        raise ValueError("expected a pair (g1, g2)")
    for i, g in enumerate(assignment):
        target = [0] * group.rank
        target[i] = 1
        ab = abelianization(g)
        if ab != target and ab != [-e for e in target]:
            return False
    return True


def example51_template() -> Word:
    """``u(x, y) = w(3;2;1;1)(x, y) w(2;2;1;2)(x, y)`` with ``x = x1, y = x2``."""
    x, y = _vars(0, 1, 2)
    return build_w(3, 2, 1, 1, x, y) * build_w(2, 2, 1, 2, x, y)


def example51_u() -> Word:
    return substitute(example51_template(), [Word.gen(1, 2), Word.gen(2, 2)])


def lemma53_exponent(m: int, level: GroupTag) -> GroupRingElem:
    """``(1 - z1^m)(1 - z2^m)`` in ``Z[level]`` with representative words."""
    z1m = GroupRingElem.embed(Word.gen(1, level.rank, m), level)
    z2m = GroupRingElem.embed(Word.gen(2, level.rank, m), level)
    return (1 - z1m) * (1 - z2m)


def lemma53_u(v: Word, m: int, group: GroupTag) -> Word:
    """``v^((1 - z1^m)(1 - z2^m))`` for ``v`` in the last derived term of ``S(2,d)``."""
    if group.family is not Family.SOLVABLE or group.rank != 2 or group.cls < 2:
        raise ValueError(f"expected S(2,d) with d >= 2, got {group}")
    if m < 1:
        raise ValueError("m must be positive")
    d = group.cls
    if not in_derived(v, group, d - 1):
        raise ValueError(f"{v} is not in the derived term of index {d - 1}")
    if is_identity(v, group):
        raise ValueError("v must be nontrivial")
    u = module_exponent(v, lemma53_exponent(m, group.solvable_quotient(d - 1)), group)
    if is_identity(u, group):
        raise TestElementViolation(f"u = v^((1-z1^{m})(1-z2^{m})) is trivial in {group}")
    return u


def random_word(rng: random.Random, rank: int, max_len: int) -> Word:
    """A random reduced word of length uniform in ``0..max_len``."""
    length = rng.randint(0, max_len)
    letters: list[tuple[int, int]] = []
    while len(letters) < length:
        gen, sign = rng.randint(1, rank), rng.choice((1, -1))
        if letters and letters[-1] == (gen, -sign):
            continue
        letters.append((gen, sign))
    return Word(letters, rank)


@dataclass
class SamplingReport:
    samples: int
    seed: int
    fixed: int = 0
    automorphic: int = 0
    refutations: list[list[str]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"samples": self.samples, "seed": self.seed, "fixed": self.fixed,
                "fixed_and_unimodular": self.automorphic, "refutations": self.refutations}


def test_element_sampling_check(u: Word, group: GroupTag, samples: int, seed: int,
                                max_len: int = 2) -> SamplingReport:
    """Sample endomorphisms fixing ``u`` and look for non-automorphisms.

    A fixing endomorphism whose abelianized matrix is not unimodular refutes
    the test-element property; finding none is evidence only.
    """
    if is_identity(u, group):
        raise ValueError("u must be nontrivial")
    rng = random.Random(seed)
    report = SamplingReport(samples, seed)
    r = group.rank
    for _ in range(samples):
        images = tuple(random_word(rng, r, max_len) for _ in range(r))
        phi = Homomorphism(group, group, images)
        if not eq(apply_hom(phi, u), u, group):
            continue
        report.fixed += 1
        if abs(determinant([abelianization(w) for w in images])) == 1:
            report.automorphic += 1
        else:
            report.refutations.append([str(w) for w in images])
    return report


test_element_sampling_check.__test__ = False
