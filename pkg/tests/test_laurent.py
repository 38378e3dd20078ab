import random

import sympy
from hypothesis import given, strategies as st

from solvgroups.laurent import (LaurentPoly, TruncatedSeries, augmentation, in_aug_power,
                                monomial, parse_laurent)

X1, X2 = LaurentPoly.variable(1, 2), LaurentPoly.variable(2, 2)

polys = st.dictionaries(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), st.integers(-3, 3),
                        max_size=5).map(lambda d: LaurentPoly(2, d))


def test_arithmetic_examples():
    assert ((X1 - 1) + (1 - X1)).is_zero()
    assert (X1 - 1) * monomial([-1, 0]) == 1 - monomial([-1, 0])
    assert (X1 + X2) * (X1 - X2) == X1 ** 2 - X2 ** 2
    assert monomial([0, 0]) == LaurentPoly.constant(2, 1)
    assert monomial([1, 0]) == X1


def test_augmentation():
    assert augmentation(X1 - 1) == 0
    assert augmentation(3 * monomial([1, -1])) == 3
    assert augmentation(LaurentPoly.zero(2)) == 0


def test_in_aug_power_examples():
    assert in_aug_power(X1 - 1, 1) and not in_aug_power(X1 - 1, 2)
    assert not in_aug_power(X1 + 1, 1)
    assert in_aug_power((X1 - 1) * (X2 - 1), 2)
    assert in_aug_power(LaurentPoly.zero(2), 50)
    assert in_aug_power(X1 + 5, 0)


def test_render_and_parse():
    p = parse_laurent("-x1^-1 + x1^-1*x2^-1", 2)
    assert str(p) == "-x1^-1 + x1^-1*x2^-1"
    assert parse_laurent(str(p * p - 3), 2) == p * p - 3
    assert str(LaurentPoly.zero(2)) == "0"


@given(polys, polys, polys)
def test_ring_axioms(p, q, s):
    assert (p + q) * s == p * s + q * s
    assert (p * q) * s == p * (q * s)
    assert p * q == q * p
    assert augmentation(p * q) == augmentation(p) * augmentation(q)


@given(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_monomial_additivity(u, v):
    assert monomial(u) * monomial(v) == monomial([a + b for a, b in zip(u, v)])


def _order_oracle(p: LaurentPoly) -> int | None:
    """Order of ``p`` in the augmentation filtration, computed with sympy."""
    if p.is_zero():
        return None
    t = sympy.symbols("t1:3")
    shift = [-min(e[i] for e in p.terms) for i in range(2)]
    expr = sum(c * sympy.Mul(*[(1 + t[i]) ** (e[i] + shift[i]) for i in range(2)])
               for e, c in p.terms.items())
    poly = sympy.Poly(sympy.expand(expr), *t)
    return min(sum(m) for m in poly.monoms())


def test_in_aug_power_against_sympy():
    rng = random.Random(11)
    for _ in range(150):
        p = LaurentPoly(2, {(rng.randint(-2, 2), rng.randint(-2, 2)): rng.randint(-2, 2)
                            for _ in range(rng.randint(1, 4))})
        for k in range(rng.randint(0, 3)):
            p = p * (monomial([rng.randint(-1, 1), rng.randint(-1, 1)]) - 1)
        order = _order_oracle(p)
        for m in range(6):
            assert in_aug_power(p, m) == (order is None or order >= m), (str(p), m)


def test_truncated_series():
    s = TruncatedSeries.from_laurent(X1 - 1, 3)
    assert s.order() == 1
    assert (s * s * s).is_zero()
    assert s.shift((1, 0)) == TruncatedSeries.from_laurent(X1 * X1 - X1, 3)
    assert (X1 * X2 - 1).truncate(2).homogeneous(1) == {(1, 0): 1, (0, 1): 1}
