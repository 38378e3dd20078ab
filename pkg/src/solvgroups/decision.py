"""Retract decisions and retraction synthesis for cyclic and two-generated subgroups.

Retractions carry a membership certificate: the image of each ``z_i`` as a
word in variables ``x1, x2, ...`` standing for the subgroup generators.  The
concrete images are obtained by substitution, so they lie in the subgroup
by construction, and every ``Retract`` report is verified before it is
returned.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .harness import Equation, build_eq3, build_eq12, candidate_tuples, check_solution, \
    enumerate_words, example51_template
from .linalg import (ext_gcd, invariant_factors, inverse_unimodular, is_primitive,
                     is_rank2_direct_summand, unimodular_completion)
from .magnus import Homomorphism, abelianization, apply_hom, eq, is_identity
from .nilpotent import normal_word
from .tags import Family, GroupTag
from .words import Word, conjugate, invert, multiply, power, substitute, to_template


class Status(str, enum.Enum):
    RETRACT = "Retract"
    NOT_VERBALLY_CLOSED = "NotVerballyClosed"
    UNDECIDED = "Undecided"


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Retraction:
    """Endomorphism ``z_i -> certificate[i](gens)`` with image in ``gp(gens)``."""

    gens: tuple[Word, ...]
    certificate: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        object.__setattr__(self, "certificate", tuple(self.certificate))
        for w in self.certificate:
            if w.constants():
                raise ValueError(f"certificate word {w} is not a word in the subgroup generators")
            if w.variables() - set(range(1, len(self.gens) + 1)):
                raise ValueError(f"certificate word {w} uses an unknown generator")

    @property
    def images(self) -> tuple[Word, ...]:
        return tuple(substitute(c, list(self.gens)) if c else Word.identity(self.gens[0].rank)
                     for c in self.certificate)

    def homomorphism(self, group: GroupTag) -> Homomorphism:
        return Homomorphism(group, group, self.images)

    def to_json(self) -> dict:
        return {"images": [str(w) for w in self.images],
                "certificate": [str(w) for w in self.certificate],
                "generators": [str(g) for g in self.gens]}


@dataclass
class DecisionReport:
    status: Status
    group: GroupTag
    retraction: Retraction | None = None
    witness: dict | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"status": self.status.value, "group": str(self.group),
                "retraction": self.retraction.to_json() if self.retraction else None,
                "witness": self.witness, "notes": list(self.notes)}


def verify_retraction(rho, gens: Sequence[Word], group: GroupTag) -> bool:
    """``rho`` fixes every generator of the subgroup.

    ``rho`` must be a :class:`Retraction`; a bare :class:`Homomorphism` has
    no proof that its images lie in the subgroup.
    """
    if not isinstance(rho, Retraction):
        raise TypeError("verify_retraction needs a membership certificate (a Retraction)")
    if tuple(rho.gens) != tuple(gens):
        raise ValueError("certificate was issued for different generators")
    if len(rho.certificate) != group.rank:
        raise ValueError(f"need {group.rank} images, got {len(rho.certificate)}")
    phi = rho.homomorphism(group)
    return all(eq(apply_hom(phi, g), g, group) for g in gens)


def _aux(i: int, rank: int, exp: int = 1) -> Word:
    return Word.var(i, rank, exp)


# -- cyclic subgroups -----------------------------------------------------------------


def cyclic_witness(h: Word, group: GroupTag) -> dict:
    """The equation ``x1^k1 ... xr^kr h'(x) = h`` with its solution and certificate."""
    r = group.rank
    k = abelianization(h)
    head = multiply(*(Word.gen(i + 1, r, e) for i, e in enumerate(k)))
    tail = multiply(invert(head), h)  # h' lies in the commutator subgroup
    lhs = multiply(to_template(head), to_template(tail))
    equation = Equation(lhs, h, group, r)
    d = ext_gcd(k)[0]
    return {"equation": equation.to_json(),
            "solution": [f"z{i}" for i in range(1, r + 1)],
            "certificate": {"exponents": k, "gcd": d,
                            "reason": "h in commutator subgroup" if d == 0 else f"gcd {d} > 1"}}


def cyclic_decide(h: Word, group: GroupTag) -> DecisionReport:
    if is_identity(h, group):
        raise ValueError("the trivial subgroup is excluded: h must be nontrivial")
    k = abelianization(h)
    if not is_primitive(k):
        report = DecisionReport(Status.NOT_VERBALLY_CLOSED, group, witness=cyclic_witness(h, group))
        report.notes.append("abelianized image of h is not primitive; the witness equation is "
                            "solved by (z1..zr) in G but only by powers h^(d*s) in H")
        return report
    _, l = ext_gcd(k)
    rho = Retraction((h,), tuple(_aux(1, group.rank, li) for li in l))
    if not verify_retraction(rho, (h,), group):
        raise AssertionError("cyclic retraction failed verification")
    report = DecisionReport(Status.RETRACT, group, retraction=rho)
    report.notes.append(f"primitive abelianized image {k}; z_i -> h^l_i with l = {l}")
    return report


# -- two-generated subgroups ----------------------------------------------------------


@dataclass
class NecessaryCondition:
    holds: bool
    matrix: list[list[int]]
    invariant_factors: list[int]

    def to_json(self) -> dict:
        return {"holds": self.holds, "matrix": self.matrix,
                "invariant_factors": self.invariant_factors}


def two_gen_necessary(g: Word, f: Word, group: GroupTag) -> NecessaryCondition:
    A = [abelianization(g), abelianization(f)]
    return NecessaryCondition(is_rank2_direct_summand(A), A, invariant_factors(A))


def _cyclic_generator(g: Word, f: Word, group: GroupTag):
    """A word ``h`` in ``g, f`` with ``gp(g, f) = gp(h)``, if the subgroup is visibly cyclic."""
    r = group.rank
    if not eq(multiply(g, f), multiply(f, g), group):
        return None
    a, b = abelianization(g), abelianization(f)
    pivot = next((i for i in range(r) if a[i] or b[i]), None)
    if pivot is None:
        return None
    p, q = a[pivot], b[pivot]
    d, (x, y) = ext_gcd([p, q])
    p, q = p // d, q // d
    h_cert = multiply(_aux(1, r, x), _aux(2, r, y))
    h = substitute(h_cert, [g, f])
    if eq(power(h, p), g, group) and eq(power(h, q), f, group):
        return h, h_cert, (p, q)
    return None


def retraction_synthesis_nilpotent(g: Word, f: Word, group: GroupTag) -> Retraction:
    """Retraction onto ``gp(g, f)`` in ``MN(r,k)``.

    ``g, f`` extend to a basis ``y`` of the group; ``rho = alpha pi alpha^-1``
    where ``alpha: z_i -> y_i`` and ``pi`` kills ``z_3..z_r``.  The inverse
    of ``alpha`` is found by successive correction along the lower central
    series.
    """
    if not group.is_nilpotent:
        raise ValueError(f"{group} is not metabelian-nilpotent")
    r, k = group.rank, group.cls
    A = [abelianization(g), abelianization(f)]
    if not is_rank2_direct_summand(A):
        raise PreconditionError("abelianized generators do not span a rank-2 direct summand")
    C = unimodular_completion(A)
    ys = [g, f] + [multiply(*(Word.gen(j + 1, r, e) for j, e in enumerate(row))) for row in C[2:]]
    Cinv = inverse_unimodular(C)
    beta = [multiply(*(Word.gen(j + 1, r, e) for j, e in enumerate(row))) for row in Cinv]
    for _ in range(k + 1):
        theta = [substitute(to_template(b), ys) for b in beta]
        errs = [normal_word(multiply(Word.gen(i + 1, r, -1), t), group) for i, t in enumerate(theta)]
        if all(is_identity(c, group) for c in errs):
            break
        beta = [normal_word(multiply(b, substitute(to_template(invert(c)), beta)), group)
                for b, c in zip(beta, errs)]
    else:
        raise AssertionError("inverse automorphism did not converge")
    kill = [_aux(1, r), _aux(2, r)] + [Word.identity(r)] * (r - 2)
    cert = tuple(substitute(to_template(b), kill) for b in beta)
    rho = Retraction((g, f), cert)
    if not verify_retraction(rho, (g, f), group):
        raise AssertionError("synthesized retraction failed verification")
    return rho


def _abelian_candidate(g: Word, f: Word, group: GroupTag) -> Retraction:
    r = group.rank
    C = unimodular_completion([abelianization(g), abelianization(f)])
    Cinv = inverse_unimodular(C)
    cert = tuple(multiply(_aux(1, r, row[0]), _aux(2, r, row[1])) for row in Cinv)
    return Retraction((g, f), cert)


def retraction_from_solution(g: Word, f: Word, h: Sequence[Word], t: Word,
                             group: GroupTag) -> Retraction:
    """``z_i -> h_i^(t^-1)`` from a solution with ``g(h) = g^t`` and ``f(h) = f^t``.

    ``h`` and ``t`` are words in ``x1 = g`` and ``x2 = f``.
    """
    r = group.rank
    if len(h) != r:
        raise ValueError(f"need {r} components, got {len(h)}")
    gens = [g, f]
    concrete = [substitute(w, gens) if w else Word.identity(r) for w in h]
    tc = substitute(t, gens) if t else Word.identity(r)
    phi = Homomorphism(group, group, concrete)
    if not eq(apply_hom(phi, g), conjugate(g, tc), group):
        raise PreconditionError("g(h_1..h_r) != g^t")
    if not eq(apply_hom(phi, f), conjugate(f, tc), group):
        raise PreconditionError("f(h_1..h_r) != f^t")
    tinv = invert(t.with_rank(r))
    cert = tuple(conjugate(w.with_rank(r), tinv) for w in h)
    rho = Retraction((g, f), cert)
    if not verify_retraction(rho, (g, f), group):
        raise AssertionError("retraction from solution failed verification")
    return rho


def conjugator_search(g: Word, f: Word, h: Sequence[Word], group: GroupTag,
                      bound: int) -> Word | None:
    """First ``t`` (length-lex over ``x1, x2``) in ``H'`` with ``g(h) = g^t, f(h) = f^t``."""
    r = group.rank
    gens = [g, f]
    concrete = [substitute(w, gens) if w else Word.identity(r) for w in h]
    phi = Homomorphism(group, group, concrete)
    gh, fh = apply_hom(phi, g), apply_hom(phi, f)
    if abelianization(gh) != abelianization(g) or abelianization(fh) != abelianization(f):
        return None
    for t in enumerate_words(2, bound, r):
        exps = {1: 0, 2: 0}
        for gen, e in t.letters:
            exps[-gen] += e
        if exps[1] or exps[2]:
            continue
        tc = substitute(t, gens) if t else Word.identity(r)
        if eq(gh, conjugate(g, tc), group) and eq(fh, conjugate(f, tc), group):
            return t
    return None


@dataclass(frozen=True)
class SearchConfig:
    bound: int = 3
    conjugator_bound: int = 4
    candidates: int = 20_000


def _solution_equation(g: Word, f: Word, group: GroupTag) -> Equation:
    if group.family is Family.SOLVABLE and group.cls == 3:
        return build_eq12(g, f, example51_template(), group)
    return build_eq3(g, f, group)


def two_gen_decide(g: Word, f: Word, group: GroupTag,
                   search: SearchConfig = SearchConfig()) -> DecisionReport:
    r = group.rank
    nec = two_gen_necessary(g, f, group)
    if not nec.holds:
        A = nec.matrix
        rank = sum(1 for d in nec.invariant_factors if d)
        if rank < 2:
            if is_identity(g, group) and is_identity(f, group):
                raise ValueError("the trivial subgroup is excluded")
            cyc = _cyclic_generator(g, f, group)
            if cyc is not None:
                h, h_cert, exps = cyc
                report = cyclic_decide(h, group)
                if report.retraction is not None:
                    cert = tuple(substitute(c, [h_cert]) for c in report.retraction.certificate)
                    report.retraction = Retraction((g, f), cert)
                    if not verify_retraction(report.retraction, (g, f), group):
                        raise AssertionError("cyclic reduction produced an invalid retraction")
                report.notes.insert(0, f"gp(g, f) is cyclic, generated by h = {h} "
                                       f"(g = h^{exps[0]}, f = h^{exps[1]})")
                return report
        report = DecisionReport(Status.NOT_VERBALLY_CLOSED, group,
                                witness={"certificate": nec.to_json()})
        report.notes.append("abelianized image is not a rank-2 direct summand (invariant factors "
                            f"{nec.invariant_factors}); a noncyclic verbally closed two-generated "
                            "subgroup must map onto one")
        return report

    if group.is_nilpotent:
        rho = retraction_synthesis_nilpotent(g, f, group)
        report = DecisionReport(Status.RETRACT, group, retraction=rho)
        report.notes.append("free factor synthesis: basis completion, inverse automorphism along "
                            "the lower central series, projection onto the first two factors")
        return report

    rho = _abelian_candidate(g, f, group)
    if verify_retraction(rho, (g, f), group):
        report = DecisionReport(Status.RETRACT, group, retraction=rho)
        report.notes.append("the abelian projection onto span(g, f) lifts to a retraction")
        return report

    equation = _solution_equation(g, f, group)
    alphabet = [g, f]
    seen = 0
    exhausted = False
    for sym, concrete in candidate_tuples(r, alphabet, search.bound):
        if seen >= search.candidates:
            exhausted = True
            break
        seen += 1
        if any(abelianization(apply_hom(Homomorphism(group, group, concrete), w))
               != abelianization(w) for w in (g, f)):
            continue
        if not check_solution(equation, concrete):
            continue
        t = conjugator_search(g, f, sym, group, search.conjugator_bound)
        if t is None:
            continue
        rho = retraction_from_solution(g, f, sym, t, group)
        report = DecisionReport(Status.RETRACT, group, retraction=rho)
        report.notes.append(f"solution h = ({', '.join(map(str, sym))}) of {equation.lhs} = "
                            f"{equation.rhs} in H with conjugator t = {t}")
        return report

    report = DecisionReport(Status.UNDECIDED, group, witness={"certificate": nec.to_json()})
    report.notes.append("necessary condition holds (rank-2 direct summand); retract and verbally "
                        "closed are equivalent here, but no retraction was found within the "
                        f"search bound {search.bound} ({seen} candidates"
                        f"{', budget exhausted' if exhausted else ''})")
    return report
