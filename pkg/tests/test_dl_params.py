from __future__ import annotations

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from hecke_springer import dl_params as dl
from hecke_springer.acceptance import SL2_EXPECTED
from hecke_springer.errors import NotQCommuting, RootOfUnityQ


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_matches_oracle(n):
    for data in dl.eigenvalue_shapes(n, 2):
        classes = dl.enumerate_gln(eigenvalues=data)
        assert len(classes) == dl.oracle_orbit_count(data)
        assert len(set(classes)) == len(classes)
        for c in classes:
            assert c.eigenvalue_data() == data


def test_gap_in_an_orbit_behaves_like_two_orbits():
    gap = {("a", 0): 1, ("a", 2): 1}
    split = {("a", 0): 1, ("b", 0): 1}
    assert len(dl.enumerate_gln(eigenvalues=gap)) == len(dl.enumerate_gln(eigenvalues=split)) == 1
    assert dl.oracle_orbit_count(gap) == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_single_orbit_counts(n):
    chain = {("a", k): 1 for k in range(n)}
    assert len(dl.enumerate_gln(eigenvalues=chain)) == dl.single_orbit_count(n) == 2 ** (n - 1)


def test_repeated_eigenvalue_chain():
    # V_0 = V_1 = 2-dimensional: N : V_0 -> V_1 has rank 0, 1 or 2
    data = {("a", 0): 2, ("a", 1): 2}
    assert len(dl.enumerate_gln(eigenvalues=data)) == 3 == dl.oracle_orbit_count(data)


def test_enumerate_by_budget():
    params = dl.enumerate_gln(2, q=3, eigenvalue_budget=2)
    assert sum(1 for p in params if p.nilpotent_rank()) == 1
    assert all(p.n == 2 for p in params)


def test_stabilizers_are_connected():
    for p in dl.enumerate_gln(3, eigenvalue_budget=2):
        report = dl.stabilizer_report(p)
        assert report["connected"] and report["component_group"] == "trivial"


@pytest.mark.parametrize("q", ["1", "-1", "I", "exp(2*pi*I/5)", "0"])
def test_roots_of_unity_are_refused(q):
    with pytest.raises(RootOfUnityQ):
        dl.check_q(q)


def test_generic_and_exact_q():
    assert dl.check_q(None) is None and dl.check_q("generic") is None
    assert dl.check_q("3/2") == sp.Rational(3, 2)


def test_sl2_table():
    rows = [r for lam, q in dl.sl2_reference_points() for r in dl.sl2_table(lam, q)]
    got = [(r.lambda_descriptor, r.q_descriptor, r.n_stratum, r.component_group, r.geometry_label,
            r.centralizer) for r in rows]
    assert got == SL2_EXPECTED
    assert {r.component_group_gtilde for r in rows} == {"trivial"}


rationals = st.fractions(min_value=-6, max_value=6, max_denominator=5).filter(lambda x: x != 0)


@settings(max_examples=30, deadline=None)
@given(rationals, rationals, st.booleans())
def test_every_point_lands_in_one_regime(lam, q, root):
    lam, q = sp.Rational(lam.numerator, lam.denominator), sp.Rational(q.numerator, q.denominator)
    if root:
        lam = sp.sqrt(q)
    sq, up, down = sp.simplify(lam ** 2), sp.simplify(lam ** 2 - q) == 0, sp.simplify(lam ** -2 - q) == 0
    predicates = {
        "q=1, lambda=+-1": sq == 1 and q == 1,
        "q!=1, lambda=+-1": sq == 1 and q != 1,
        "q=-1, lambda=+-i": sq != 1 and up and down,
        "q!=+-1, lambda=+-sqrt(q)": sq != 1 and up != down,
        "generic": sq != 1 and not up and not down,
    }
    assert sum(predicates.values()) == 1
    assert predicates[dl.sl2_regime(lam, q)]
    assert dl.sl2_table(lam, q)[0].n_stratum == "n=0"


@pytest.mark.parametrize("lam,q,n", [("-1", "2", "zero"), ("sqrt(2)", "2", "upper"), ("I", "-1", "lower"),
                                     ("1", "1", "nonzero"), ("1/sqrt(3)", "3", "lower")])
def test_component_group_is_conjugation_invariant(lam, q, n):
    base = dl.component_group_sl2(lam, q, n)
    s0 = sp.diag(dl._sym(lam), 1 / dl._sym(lam))
    n0 = dict(dl.nilpotent_choices(lam, q))[n]
    for g in (sp.Matrix([[1, 1], [0, 1]]), sp.Matrix([[2, 1], [1, 1]]), sp.Matrix([[0, 1], [-1, 0]])):
        s = g * s0 * g.inv()
        nn = g * n0 * g.inv()
        assert dl.component_group_sl2(lam, q, nn, s=s) == base
        assert dl.component_group_sl2(lam, q, nn, gtilde=True, s=s) == "trivial"


def test_non_commuting_pair_is_rejected():
    with pytest.raises(NotQCommuting):
        dl.component_group_sl2("3", "2", "upper")
    with pytest.raises(NotQCommuting):
        dl.component_group_sl2("sqrt(2)", "2", sp.Matrix([[0, 0], [1, 0]]))
