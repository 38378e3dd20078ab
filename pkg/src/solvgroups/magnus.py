"""Fox calculus and the iterated Magnus embedding.

An element of the free solvable group ``S(r,d)`` is represented by its
canonical form:

* level 1 (``S(r,1) = Z^r``): the exponent-sum vector, an :class:`AbelianElem`;
* level ``d >= 2``: the pair (image in ``S(r,d-1)``, Fox derivatives
  ``d w / d z_i`` mapped into ``Z[S(r,d-1)]``), a :class:`MagnusElem`.

``S(r,d-1)`` is ``F / F^(d-1)`` and the kernel of the Magnus embedding of
``F / (F^(d-1))'`` is trivial, so the derivatives alone decide equality.
Free metabelian groups are the ``d = 2`` case.  In ``MN(r,k)`` the
derivatives are only kept modulo ``Delta^k`` (:class:`TruncatedSeries`).

Fox derivatives are left derivatives: ``D(uv) = D(u) + u D(v)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groupring import GroupRingElem
from .laurent import LaurentPoly, TruncatedSeries, in_aug_power
from .tags import Family, GroupTag
from .words import Word, substitute


class AbelianElem(tuple):
    """Exponent vector of an element of ``Z^r``; multiplication adds vectors."""

    __slots__ = ()
    level = 1

    @property
    def rank(self) -> int:
        return len(self)

    def __mul__(self, other: "AbelianElem") -> "AbelianElem":
        return AbelianElem(a + b for a, b in zip(self, other))

    def inverse(self) -> "AbelianElem":
        return AbelianElem(-a for a in self)

    def is_identity(self) -> bool:
        return not any(self)

    def __repr__(self):
        return f"AbelianElem({list(self)})"


def _act(g, coeff):
    if isinstance(coeff, TruncatedSeries):
        return coeff.shift(g)
    return coeff.left_act(g)


class MagnusElem:
    """Pair ``(image, derivs)``; ``derivs[i]`` is the i-th Fox derivative."""

    __slots__ = ("image", "derivs", "_hash")

    def __init__(self, image, derivs: Sequence):
        self.image = image
        self.derivs = tuple(derivs)
        self._hash = None

    @property
    def level(self) -> int:
        return self.image.level + 1

    @property
    def rank(self) -> int:
        return len(self.derivs)

    def __eq__(self, other):
        if not isinstance(other, MagnusElem):
            return NotImplemented
        if self is other:
            return True
        if hash(self) != hash(other):
            return False
        return self.image == other.image and self.derivs == other.derivs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.image, self.derivs))
        return self._hash

    def __mul__(self, other: "MagnusElem") -> "MagnusElem":
        if self.level != other.level or self.rank != other.rank:
            raise ValueError("canonical elements of different groups")
        return MagnusElem(self.image * other.image,
                          [a + _act(self.image, b) for a, b in zip(self.derivs, other.derivs)])

    def inverse(self) -> "MagnusElem":
        inv = self.image.inverse()
        return MagnusElem(inv, [-_act(inv, a) for a in self.derivs])

    def is_identity(self) -> bool:
        return all(a.is_zero() for a in self.derivs) and _is_identity(self.image)

    def __repr__(self):
        return f"MagnusElem(level={self.level}, rank={self.rank})"


def _is_identity(elem) -> bool:
    return elem.is_identity()


CanonicalElem = AbelianElem | MagnusElem


# -- construction ---------------------------------------------------------------------


def _level_of(group: GroupTag) -> int:
    if group.is_nilpotent:
        raise ValueError(f"{group} has no solvable level")
    return group.cls


def identity(group: GroupTag):
    """Identity element of ``group`` (or of the level named by a solvable tag)."""
    r = group.rank
    if group.is_nilpotent:
        zero = TruncatedSeries.zero(r, group.cls)
        return MagnusElem(AbelianElem((0,) * r), [zero] * r)
    return _identity_at(r, group.cls)


def _identity_at(r: int, level: int):
    if level == 1:
        return AbelianElem((0,) * r)
    tag = GroupTag.solvable(r, level - 1)
    return MagnusElem(_identity_at(r, level - 1), [GroupRingElem.zero(tag)] * r)


def _require_constants(w: Word, rank: int):
    if w.has_variables:
        raise ValueError(f"word {w} contains variables")
    if w.rank != rank:
        raise ValueError(f"rank mismatch: word has rank {w.rank}, group has rank {rank}")


def _prefixes(w: Word, r: int, level: int) -> list:
    """Canonical forms at ``level`` of every unit-letter prefix of ``w`` (identity first)."""
    if level == 1:
        cur = [0] * r
        out = [AbelianElem(cur)]
        for gen, sign in w.unit_letters():
            cur[gen - 1] += sign
            out.append(AbelianElem(cur))
        return out
    lower = _prefixes(w, r, level - 1)
    tag = GroupTag.solvable(r, level - 1)
    acc: list[dict] = [{} for _ in range(r)]
    out = [_identity_at(r, level)]
    for step, (gen, sign) in enumerate(w.unit_letters()):
        key = lower[step] if sign > 0 else lower[step + 1]
        d = acc[gen - 1]
        c = d.get(key, 0) + sign
        if c:
            d[key] = c
        else:
            del d[key]
        out.append(MagnusElem(lower[step + 1], [GroupRingElem(tag, dict(a)) for a in acc]))
    return out


def _fox_dicts(w: Word, r: int, level: int):
    lower = _prefixes(w, r, level)
    acc: list[dict] = [{} for _ in range(r)]
    for step, (gen, sign) in enumerate(w.unit_letters()):
        key = lower[step] if sign > 0 else lower[step + 1]
        d = acc[gen - 1]
        d[key] = d.get(key, 0) + sign
    return lower[-1], acc


def fox_derivative(w: Word, i: int, level: GroupTag) -> GroupRingElem:
    """``d w / d z_i`` with values in ``Z[level]`` (``level`` a solvable or metabelian tag)."""
    r = level.rank
    _require_constants(w, r)
    if not 1 <= i <= r:
        raise ValueError(f"generator index {i} out of range for rank {r}")
    _, acc = _fox_dicts(w, r, _level_of(level))
    return GroupRingElem(level, acc[i - 1])


def fox_derivatives(w: Word, level: GroupTag) -> list[GroupRingElem]:
    r = level.rank
    _require_constants(w, r)
    _, acc = _fox_dicts(w, r, _level_of(level))
    return [GroupRingElem(level, a) for a in acc]


def abelian_fox(w: Word) -> list[LaurentPoly]:
    """Fox derivatives mapped into the Laurent ring of the abelianization."""
    if w.has_variables:
        raise ValueError(f"word {w} contains variables")
    r = w.rank
    cur = [0] * r
    acc: list[dict] = [{} for _ in range(r)]
    for gen, sign in w.unit_letters():
        if sign > 0:
            key = tuple(cur)
            cur[gen - 1] += 1
        else:
            cur[gen - 1] -= 1
            key = tuple(cur)
        d = acc[gen - 1]
        d[key] = d.get(key, 0) + sign
    return [LaurentPoly(r, a) for a in acc]


def to_laurent(a: GroupRingElem) -> LaurentPoly:
    """Identify ``Z[S(r,1)]`` with Laurent polynomials."""
    if a.level.is_nilpotent or a.level.cls != 1:
        raise ValueError("only the abelian group ring is a Laurent ring")
    return LaurentPoly(a.level.rank, {tuple(k): c for k, c in a.terms.items()})


def canon(w: Word, group: GroupTag):
    """Canonical form of ``w`` in ``group``."""
    r = group.rank
    _require_constants(w, r)
    if group.is_nilpotent:
        ab = abelianization(w)
        return MagnusElem(AbelianElem(ab), [p.truncate(group.cls) for p in abelian_fox(w)])
    d = group.cls
    if d == 1:
        return AbelianElem(abelianization(w))
    image, acc = _fox_dicts(w, r, d - 1)
    tag = GroupTag.solvable(r, d - 1)
    return MagnusElem(image, [GroupRingElem(tag, a) for a in acc])


def project(elem, level: int):
    """Image of a solvable canonical form in ``S(r, level)``."""
    while elem.level > level:
        elem = elem.image
    if elem.level != level:
        raise ValueError(f"cannot project a level-{elem.level} element to level {level}")
    return elem


def mul(a, b):
    return a * b


def inv(a):
    return a.inverse()


def conj(a, t):
    """``a^t = t^-1 a t`` on canonical forms."""
    return t.inverse() * a * t


def check_invariant(elem) -> bool:
    """The fundamental identity ``sum D_i (z_i - 1) = image - 1`` at every level."""
    if isinstance(elem, AbelianElem):
        return True
    if not isinstance(elem.image, (AbelianElem, MagnusElem)):
        return False
    r = elem.rank
    if isinstance(elem.derivs[0], TruncatedSeries):
        bound = elem.derivs[0].bound
        total = TruncatedSeries.zero(r, bound)
        for i, a in enumerate(elem.derivs):
            e = tuple(int(j == i) for j in range(r))
            total = total + (a.shift(e) - a)
        target = (LaurentPoly.monomial(elem.image) - 1).truncate(bound)
        return total == target
    tag = elem.derivs[0].level
    total = GroupRingElem.zero(tag)
    for i, a in enumerate(elem.derivs):
        zi = canon(Word.gen(i + 1, r), tag)
        total = total + a * (GroupRingElem.embed(zi, tag) - 1)
    if total != GroupRingElem.embed(elem.image, tag) - 1:
        return False
    return check_invariant(elem.image)


# -- word problem ---------------------------------------------------------------------


def abelianization(w: Word) -> list[int]:
    if w.has_variables:
        raise ValueError(f"word {w} contains variables")
    exps = [0] * w.rank
    for gen, exp in w.letters:
        exps[gen - 1] += exp
    return exps


def is_identity(w: Word, group: GroupTag) -> bool:
    _require_constants(w, group.rank)
    if any(abelianization(w)):
        return False
    if group.is_nilpotent:
        return all(in_aug_power(p, group.cls) for p in abelian_fox(w))
    if group.cls == 1:
        return True
    return canon(w, group).is_identity()


def eq(u: Word, v: Word, group: GroupTag) -> bool:
    _require_constants(u, group.rank)
    _require_constants(v, group.rank)
    if u == v:
        return True
    if abelianization(u) != abelianization(v):
        return False
    return canon(u, group) == canon(v, group)


def in_derived(w: Word, group: GroupTag, s: int) -> bool:
    """``w`` lies in the ``s``-th derived subgroup of ``group``."""
    if s < 0 or s > group.derived_length:
        raise ValueError(f"derived index {s} out of range for {group}")
    if s == 0:
        return True
    if s >= group.derived_length:
        return is_identity(w, group)
    return is_identity(w, group.solvable_quotient(s))


def in_gamma(w: Word, c: int) -> bool:
    """``w`` lies in the ``c``-th lower central term of the free metabelian group."""
    if c < 1:
        raise ValueError("c must be positive")
    if c == 1:
        return True
    if any(abelianization(w)):
        return False
    return all(in_aug_power(p, c - 1) for p in abelian_fox(w))


def sort_key(elem):
    """Total order on canonical forms, used for deterministic rendering."""
    if isinstance(elem, AbelianElem):
        return (1, tuple(elem))
    if isinstance(elem, MagnusElem):
        derivs = []
        for a in elem.derivs:
            if isinstance(a, TruncatedSeries):
                derivs.append(tuple(sorted(a.terms.items())))
            else:
                derivs.append(tuple(sorted((sort_key(k), c) for k, c in a.terms.items())))
        return (elem.level, sort_key(elem.image), tuple(derivs))
    raise TypeError(f"not a canonical element: {elem!r}")


def to_json(elem):
    """Deterministic nested rendering of a canonical form."""
    if isinstance(elem, AbelianElem):
        return {"level": 1, "exponents": list(elem)}
    first = elem.derivs[0]
    if isinstance(first, TruncatedSeries):
        return {"exponents": list(elem.image), "truncation": first.bound,
                "derivs": [str(a) for a in elem.derivs]}
    if elem.level == 2:
        derivs = [str(to_laurent(a)) for a in elem.derivs]
    else:
        derivs = [[[c, to_json(k)] for k, c in a.sorted_terms()] for a in elem.derivs]
    return {"level": elem.level, "image": to_json(elem.image), "derivs": derivs}


def render(elem) -> str:
    """Human-readable rendering; nested levels fall back to compact JSON."""
    import json

    if isinstance(elem, AbelianElem):
        return str(list(elem))
    first = elem.derivs[0]
    if isinstance(first, TruncatedSeries) or elem.level == 2:
        data = to_json(elem)
        head = data.get("exponents") or data["image"]["exponents"]
        lines = [f"abelianization: {head}"]
        lines += [f"d{i + 1}: {text}" for i, text in enumerate(data["derivs"])]
        return "\n".join(lines)
    return json.dumps(to_json(elem), separators=(",", ":"))


# -- homomorphisms --------------------------------------------------------------------


@dataclass(frozen=True)
class Homomorphism:
    """``z_i -> images[i-1]`` from ``source`` to ``target``."""

    source: GroupTag
    target: GroupTag
    images: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.source.rank:
            raise ValueError(f"need {self.source.rank} images, got {len(self.images)}")
        for w in self.images:
            if w.rank != self.target.rank or w.has_variables:
                raise ValueError(f"image {w} is not a word of {self.target}")

    @classmethod
    def identity(cls, group: GroupTag) -> "Homomorphism":
        return cls(group, group, tuple(Word.gen(i, group.rank) for i in range(1, group.rank + 1)))

    def __call__(self, w: Word) -> Word:
        return apply_hom(self, w)


def apply_hom(phi: Homomorphism, w: Word) -> Word:
    _require_constants(w, phi.source.rank)
    from .words import to_template
    return substitute(to_template(w), phi.images)


def compose_hom(phi: Homomorphism, psi: Homomorphism) -> Homomorphism:
    """``phi o psi``: apply ``psi`` first."""
    if psi.target.rank != phi.source.rank:
        raise ValueError("ranks do not compose")
    return Homomorphism(psi.source, phi.target, tuple(apply_hom(phi, w) for w in psi.images))


def hom_eq(phi: Homomorphism, psi: Homomorphism, group: GroupTag) -> bool:
    return all(eq(a, b, group) for a, b in zip(phi.images, psi.images))
