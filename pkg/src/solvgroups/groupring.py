"""The integral group ring ``Z[G]`` over canonical group elements.

Keys are canonical elements (see :mod:`solvgroups.magnus`); anything hashable
with ``*`` and ``inverse()`` works.  An element may carry representative
words for its keys, which is what lets :func:`module_exponent` turn a ring
element back into a concrete word.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .tags import GroupTag
from .words import Word, conjugate, invert, multiply


class GroupRingElem:
    __slots__ = ("level", "terms", "reps", "_hash")

    def __init__(self, level: GroupTag, terms: Mapping | Iterable = (), reps: Mapping | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict = {}
        for key, c in items:
            if c:
                out[key] = out.get(key, 0) + c
        self.terms = {k: c for k, c in out.items() if c}
        self.level = level
        self.reps = {k: w for k, w in reps.items() if k in self.terms} if reps else {}
        self._hash = None

    @classmethod
    def zero(cls, level: GroupTag) -> "GroupRingElem":
        return cls(level)

    @classmethod
    def one(cls, level: GroupTag) -> "GroupRingElem":
        from .magnus import identity
        e = identity(level)
        return cls(level, {e: 1}, {e: Word.identity(level.rank)})

    @classmethod
    def scalar(cls, level: GroupTag, c: int) -> "GroupRingElem":
        return cls.one(level) * c

    @classmethod
    def embed(cls, g, level: GroupTag | None = None, coeff: int = 1) -> "GroupRingElem":
        """Embed a group element given as a Word (canonicalized) or a canonical key."""
        from .magnus import canon
        if isinstance(g, Word):
            if level is None:
                raise ValueError("embedding a word needs a level")
            key = canon(g, level)
            return cls(level, {key: coeff}, {key: g})
        if level is None:
            raise ValueError("embedding a canonical element needs a level")
        return cls(level, {g: coeff})

    def _same(self, other: "GroupRingElem"):
        if self.level != other.level:
            raise ValueError(f"level mismatch: {self.level} vs {other.level}")

    def _merged_reps(self, other: "GroupRingElem") -> dict:
        reps = dict(other.reps)
        reps.update(self.reps)
        return reps

    def __add__(self, other):
        if isinstance(other, int):
            other = GroupRingElem.scalar(self.level, other)
        self._same(other)
        return GroupRingElem(self.level, list(self.terms.items()) + list(other.terms.items()),
                             self._merged_reps(other))

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElem(self.level, {k: -c for k, c in self.terms.items()}, self.reps)

    def __sub__(self, other):
        if isinstance(other, int):
            other = GroupRingElem.scalar(self.level, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElem(self.level, {k: c * other for k, c in self.terms.items()}, self.reps)
        self._same(other)
        out: dict = {}
        reps: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = k1 * k2
                out[key] = out.get(key, 0) + c1 * c2
                if key not in reps and k1 in self.reps and k2 in other.reps:
                    reps[key] = multiply(self.reps[k1], other.reps[k2])
        return GroupRingElem(self.level, out, reps)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined in the group ring")
        result = GroupRingElem.one(self.level)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupRingElem.scalar(self.level, other)
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return self.level == other.level and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"GroupRingElem({self.level}, {len(self.terms)} terms)"

    def is_zero(self) -> bool:
        return not self.terms

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def left_act(self, g, g_word: Word | None = None) -> "GroupRingElem":
        """Multiply every key on the left by the group element ``g``."""
        reps = {}
        out = {}
        for k, c in self.terms.items():
            key = g * k
            out[key] = c
            if g_word is not None and k in self.reps:
                reps[key] = multiply(g_word, self.reps[k])
        return GroupRingElem(self.level, out, reps)

    def sorted_terms(self):
        from .magnus import sort_key
        return sorted(self.terms.items(), key=lambda kv: sort_key(kv[0]))


def left_act(g, a: GroupRingElem) -> GroupRingElem:
    return a.left_act(g)


def module_exponent(v: Word, a: GroupRingElem, group: GroupTag) -> Word:
    """The word ``v^a = prod (v^w)^c`` over the terms ``c*w`` of ``a``.

    ``v`` must lie in the last nontrivial derived term of ``group`` (an
    abelian normal subgroup, so the order of the factors is irrelevant) and
    ``a`` must live over the quotient by that term.  Every key of ``a`` needs
    a representative word; build ``a`` from :meth:`GroupRingElem.embed` with
    words to get them.
    """
    from .magnus import in_derived

    d = group.derived_length
    if not in_derived(v, group, d - 1):
        raise ValueError(f"{v} does not lie in the derived term of index {d - 1} of {group}")
    expected = group.solvable_quotient(max(d - 1, 1))
    if a.level != expected:
        raise ValueError(f"level mismatch: exponent over {a.level}, expected {expected}")
    factors = []
    for key, c in a.sorted_terms():
        rep = a.reps.get(key)
        if rep is None:
            raise ValueError("group ring element has a key without a representative word")
        piece = conjugate(v, rep)
        factors.append(piece if c > 0 else invert(piece))
        factors[-1:] = [factors[-1]] * abs(c)
    if not factors:
        return Word.identity(v.rank)
    return multiply(*factors)
