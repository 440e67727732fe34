from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hecke_springer.errors import DivisionByZero, NotAComplex, NotDivisible, SubstitutionNotInvertible
from hecke_springer.exact_arith import MultiLaurent, RationalFunction, RationalMatrix, homology_ranks

VARS = ("t", "v")

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
laurents = st.dictionaries(exps, coeffs, max_size=4).map(lambda d: MultiLaurent(VARS, d))
points = st.fixed_dictionaries({"t": st.sampled_from([Fraction(2), Fraction(-3), Fraction(1, 2), Fraction(5, 3)]),
                                "v": st.sampled_from([Fraction(3), Fraction(-2), Fraction(2, 7)])})


@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == MultiLaurent(VARS)


@given(laurents, laurents, st.integers(-3, 3))
def test_substitute_is_multiplicative(f, g, k):
    img = {"t": MultiLaurent.monomial({"v": k}, 2, ("v",))}
    assert (f * g).substitute(img) == f.substitute(img) * g.substitute(img)
    assert (f + g).substitute(img) == f.substitute(img) + g.substitute(img)


@given(laurents, laurents, points)
def test_evaluation_is_a_homomorphism(f, g, pt):
    assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)


def test_substitute_rejects_non_unit_for_negative_power():
    t = MultiLaurent.variable("t")
    with pytest.raises(SubstitutionNotInvertible):
        (t ** -1).substitute({"t": MultiLaurent.variable("v") + 1})


@given(laurents, laurents.filter(lambda x: not x.is_zero()))
def test_exact_div_inverts_multiplication(a, b):
    assert (a * b).exact_div(b) == a


def test_exact_div_failure():
    t = MultiLaurent.variable("t")
    with pytest.raises(NotDivisible):
        (t + 2).exact_div(t + 1)


def test_monomial_inverse():
    x = MultiLaurent.monomial({"t": 2, "v": -1}, Fraction(3, 2), VARS)
    assert x * x.inverse() == MultiLaurent.constant(1, VARS)


@settings(max_examples=40)
@given(laurents, laurents.filter(lambda x: not x.is_zero()), laurents, laurents.filter(lambda x: not x.is_zero()),
       points)
def test_rational_functions_agree_with_evaluation(a, b, c, d, pt):
    if b.evaluate(pt) == 0 or d.evaluate(pt) == 0:
        return
    x, y = RationalFunction(a, b), RationalFunction(c, d)
    assert (x + y).evaluate(pt) == a.evaluate(pt) / b.evaluate(pt) + c.evaluate(pt) / d.evaluate(pt)
    assert (x * y).evaluate(pt) == a.evaluate(pt) * c.evaluate(pt) / (b.evaluate(pt) * d.evaluate(pt))
    # equality by cross-multiplication is an equivalence relation
    scaled = RationalFunction(a * d, b * d)
    assert x == x and scaled == x and x == scaled
    assert (x == y) == (a * d == b * c)


def test_zero_denominator():
    with pytest.raises(DivisionByZero):
        RationalFunction(MultiLaurent.variable("t"), 0)


def test_json_round_trip():
    f = MultiLaurent(VARS, {(1, -2): Fraction(3, 4), (0, 0): -1})
    assert MultiLaurent.from_json(f.to_json()) == f
    r = RationalFunction(f, f + 1)
    assert RationalFunction.from_json(r.to_json()) == r


matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-2, 2), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_rank_nullity(rows):
    m = RationalMatrix.from_rows(rows)
    assert m.rank() + len(m.nullspace()) == m.cols
    assert m.rank() == m.transpose().rank()
    for vec in m.nullspace():
        col = RationalMatrix.from_columns([vec], m.cols)
        assert (m @ col).is_zero()


@given(matrices)
def test_homology_rank_identity(rows):
    # d_out = m, d_in = a basis of its kernel: an exact segment
    m = RationalMatrix.from_rows(rows)
    ker = m.nullspace()
    d_in = RationalMatrix.from_columns(ker, m.cols) if ker else RationalMatrix(m.cols, 0)
    h = homology_ranks(d_in, m)
    assert h + d_in.rank() + m.rank() == m.cols
    assert h == 0
    assert homology_ranks(RationalMatrix(m.cols, 0), m) == len(ker)


def test_not_a_complex():
    one = RationalMatrix.identity(1)
    with pytest.raises(NotAComplex):
        homology_ranks(one, one)
