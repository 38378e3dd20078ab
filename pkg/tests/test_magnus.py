import random

import pytest
import sympy

from solvgroups.harness import random_word
from solvgroups.laurent import LaurentPoly, parse_laurent
from solvgroups.magnus import (Homomorphism, abelian_fox, abelianization, apply_hom, canon,
                               check_invariant, compose_hom, conj, eq, fox_derivative, hom_eq,
                               identity, in_derived, in_gamma, inv, is_identity, mul, project,
                               render, to_json, to_laurent)
from solvgroups.tags import GroupTag
from solvgroups.words import Word, commutator, left_normed, parse_word, substitute

M2, M3 = GroupTag.metabelian(2), GroupTag.metabelian(3)
S21, S22, S23, S33 = (GroupTag.solvable(2, 1), GroupTag.solvable(2, 2), GroupTag.solvable(2, 3),
                      GroupTag.solvable(3, 3))
P = lambda s, r=2: parse_word(s, r)


def _sympy_fox(w: Word, i: int):
    """Abelianized left Fox derivative straight from the product rule."""
    xs = sympy.symbols(f"x1:{w.rank + 1}")
    prefix, total = sympy.Integer(1), sympy.Integer(0)
    for gen, sign in w.unit_letters():
        if sign > 0:
            if gen == i:
                total += prefix
            prefix *= xs[gen - 1]
        else:
            prefix /= xs[gen - 1]
            if gen == i:
                total -= prefix
    return sympy.simplify(total), xs


def _to_sympy(p: LaurentPoly, xs):
    return sum(c * sympy.Mul(*[x ** e for x, e in zip(xs, exps)]) for exps, c in p.terms.items())


def test_fox_examples():
    c = P("(z1,z2)")
    assert to_laurent(fox_derivative(P("z1"), 1, S21)) == LaurentPoly.constant(2, 1)
    assert to_laurent(fox_derivative(c, 1, S21)) == parse_laurent("x1^-1*x2^-1 - x1^-1", 2)
    assert to_laurent(fox_derivative(c, 2, S21)) == parse_laurent("x2^-1 - x1^-1*x2^-1", 2)


def test_fox_against_sympy():
    rng = random.Random(21)
    for _ in range(200):
        r = rng.randint(1, 3)
        w = random_word(rng, r, 15)
        for i, d in enumerate(abelian_fox(w), start=1):
            expected, xs = _sympy_fox(w, i)
            assert sympy.simplify(_to_sympy(d, xs) - expected) == 0, (str(w), i)


def test_canon_examples():
    assert canon(Word.identity(2), M2).is_identity()
    assert canon(P("z1*z2*z1^-1*z2^-1*z2*z1"), M2) == canon(P("z1*z2"), M2)
    assert canon(P("z1*z2*z1"), S21) == (2, 1)
    assert render(canon(P("(z1,z2)"), M2)).splitlines()[0] == "abelianization: [0, 0]"


def test_word_problem_examples():
    c = P("(z1,z2)")
    for group in (M2, S23, GroupTag.nilpotent(2, 3)):
        assert is_identity(commutator(c, c), group)
    assert not is_identity(c, M2)
    law = left_normed(left_normed(P("z1*z2", 3), P("z3^2", 3)),
                      left_normed(P("z2*z3^-1", 3), P("z1", 3)))
    assert is_identity(law, M3)
    assert not is_identity(law, S33)


def test_homomorphism_property():
    rng = random.Random(22)
    for group in (M2, S23, GroupTag.nilpotent(3, 4)):
        r = group.rank
        for _ in range(150 if group.cls < 3 else 40):
            u, v = random_word(rng, r, 12), random_word(rng, r, 12)
            a, b = canon(u, group), canon(v, group)
            assert mul(a, b) == canon(u * v, group)
            assert mul(a, inv(a)) == identity(group)
            assert mul(a, identity(group)) == a
            assert conj(a, b) == canon(~v * u * v, group)


def test_fundamental_identity_at_every_level():
    rng = random.Random(23)
    for group in (M2, S23, GroupTag.solvable(2, 4), GroupTag.nilpotent(2, 5)):
        for _ in range(30 if group.cls < 4 else 8):
            assert check_invariant(canon(random_word(rng, group.rank, 10), group))


def test_quotient_compatibility():
    rng = random.Random(24)
    for _ in range(60):
        w = random_word(rng, 2, 14)
        elem = canon(w, S23)
        assert project(elem, 2) == canon(w, S22)
        assert project(elem, 1) == canon(w, S21)
        if is_identity(w, S23):
            assert is_identity(w, S22)


def test_nilpotent_quotient_agrees_with_metabelian():
    rng = random.Random(25)
    MN = GroupTag.nilpotent(2, 3)
    for _ in range(80):
        u = random_word(rng, 2, 10)
        if is_identity(u, M2):
            assert is_identity(u, MN)
    deep = left_normed(*(Word.gen(i, 2) for i in (1, 2, 2, 2)))
    assert is_identity(deep, MN) and not is_identity(deep, M2)


def test_derived_and_gamma():
    c = P("(z1,z2)")
    for group in (M2, S23):
        assert in_derived(c, group, 1)
        assert not in_derived(P("z1"), group, 1)
    dd = commutator(c, P("(z1,z2^2)"))
    assert in_derived(dd, S23, 2) and not is_identity(dd, S23)
    assert in_gamma(c, 2) and not in_gamma(c, 3)
    assert in_gamma(P("((z1,z2),z1)"), 3)
    assert not in_gamma(P("z1"), 2)
    with pytest.raises(ValueError):
        in_derived(c, M2, 3)


def test_abelianization():
    assert abelianization(P("(z1,z2)")) == [0, 0]
    assert abelianization(P("z1^2*z2^-1")) == [2, -1]


def test_homomorphisms():
    h = P("z1^2*z2^3")
    ident = Homomorphism.identity(M2)
    phi = Homomorphism(M2, M2, (~h, h))
    assert apply_hom(ident, h) == h
    assert eq(apply_hom(phi, h), h, M2)
    assert hom_eq(compose_hom(phi, ident), phi, M2)
    psi = Homomorphism(M2, M2, (P("z2"), P("z1*z2")))
    w = P("(z1,z2)*z1")
    assert eq(apply_hom(compose_hom(phi, psi), w), apply_hom(phi, apply_hom(psi, w)), M2)


def test_json_is_deterministic():
    w = P("(z1,z2,z1)*z2^3")
    assert to_json(canon(w, S23)) == to_json(canon(w, S23))
    assert to_json(canon(w, M2))["image"]["exponents"] == [0, 3]


def test_variables_rejected():
    with pytest.raises(ValueError):
        canon(P("x1*z1"), M2)
