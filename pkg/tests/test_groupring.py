from solvgroups.groupring import GroupRingElem, left_act, module_exponent
from solvgroups.magnus import canon, eq, is_identity
from solvgroups.tags import GroupTag
from solvgroups.words import Word, commutator, conjugate, invert, multiply, parse_word

S21, S22 = GroupTag.solvable(2, 1), GroupTag.solvable(2, 2)
z1, z2 = Word.gen(1, 2), Word.gen(2, 2)
v = commutator(z1, z2)


def test_ring_examples():
    g = GroupRingElem.embed(parse_word("z1*z2^-1", 2), S21)
    assert g * GroupRingElem.embed(parse_word("z2*z1^-1", 2), S21) == GroupRingElem.one(S21)
    assert (1 - g) * (1 + g) == 1 - g * g
    assert GroupRingElem.embed(Word.identity(2), S21) == GroupRingElem.one(S21)
    assert ((1 - g) * (1 + g)).augmentation() == 0


def test_nonabelian_coefficients():
    a = GroupRingElem.embed(z1, S22)
    b = GroupRingElem.embed(z2, S22)
    assert a * b != b * a
    assert a * b - b * a == GroupRingElem.embed(z1 * z2, S22) - GroupRingElem.embed(z2 * z1, S22)


def test_left_act():
    a = GroupRingElem.embed(z1, S21) - 3
    g = canon(z2, S21)
    assert left_act(canon(Word.identity(2), S21), a) == a
    assert left_act(g, left_act(g.inverse(), a)) == a
    assert left_act(g, GroupRingElem.one(S21)) == GroupRingElem.embed(z2, S21)


def test_module_exponent():
    one, zero = GroupRingElem.one(S21), GroupRingElem.zero(S21)
    assert eq(module_exponent(v, one, S22), v, S22)
    assert module_exponent(v, zero, S22).is_identity
    a = 1 - GroupRingElem.embed(z1, S21)
    u = module_exponent(v, a, S22)
    assert eq(u, v * invert(conjugate(v, z1)), S22)
    assert not is_identity(u, S22)
    b = (1 - GroupRingElem.embed(z1, S21)) * (1 - GroupRingElem.embed(z2, S21))
    direct = multiply(v, invert(conjugate(v, z1)), invert(conjugate(v, z2)), conjugate(v, z1 * z2))
    assert eq(module_exponent(v, b, S22), direct, S22)
