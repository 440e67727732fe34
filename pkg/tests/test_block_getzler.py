from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from hecke_springer import block_getzler as bg
from hecke_springer.errors import DifferentialNotSquareZero, TruncationTooSmall


def plain(alg, N=6, window=None, **kw):
    return bg.build_bg_complex(alg, "plain", N, alg.max_weight if window is None else window, **kw)


def test_trivial_algebra_matches_bar_oracle():
    # A = k: the cyclic bar complex has one chain per simplicial degree and
    # b alternates between 0 and the identity, so only degree 0 survives
    for normalized in (True, False):
        cx = bg.build_bg_complex(bg.trivial_algebra(), "plain", 6, 0, normalized=normalized)
        assert bg.hh_ranks(cx)["totals"] == {0: 1}


@settings(max_examples=6, deadline=None)
@given(st.sampled_from(["plain", "equivariant", "twisted"]), st.integers(1, 2), st.integers(2, 4))
def test_axioms_hold(mode, rank, window):
    alg = bg.sym_algebra(rank, window)
    cx = bg.build_bg_complex(alg, mode, 4, window, q=3 if mode == "twisted" else None, check=False)
    bg.check_axioms(cx)


def test_odd_generators():
    alg = bg.free_graded_commutative([("e", 1, 1), ("x", 2, 1)], 3)
    alg.check()
    bg.check_axioms(plain(alg, N=4))


def test_rank_one_plain_profile():
    res = bg.hh_ranks(plain(bg.sym_algebra(1, 6), N=8))
    cert = res["certified_degrees"]
    assert cert == list(range(0, 7))
    assert all(res["totals"][d] == 1 for d in cert)
    assert res["slices"][0] == {0: 1}
    for w in range(1, 4):
        assert res["slices"][w] == {2 * w - 1: 1, 2 * w: 1}


def test_connes_operator_on_the_generator_line():
    cx = plain(bg.sym_algebra(1, 6), N=8)
    assert bg.connes_induced_rank(cx, 1, 2) == 1


def test_cyclic_variants():
    cx = plain(bg.sym_algebra(1, 4), N=8)
    neg = bg.cyclic_ranks(cx, "negative")["slices"]
    per = bg.cyclic_ranks(cx, "periodic")["slices"]
    assert neg[0] == {0: 1, 2: 1, 4: 1, 6: 1}
    assert neg[1] == {1: 1}
    assert all(v == 1 for v in per[0].values())
    assert all(not per[w] for w in per if w > 0)


def test_cyclic_refuses_twisted():
    cx = bg.build_bg_complex(bg.sym_algebra(1, 3), "twisted", 4, 3, q=2)
    with pytest.raises(ValueError):
        bg.cyclic_ranks(cx)


@pytest.mark.parametrize("rank", [1, 2])
def test_equivariant_rank_one_in_degree_zero(rank):
    res = bg.hh_ranks(bg.build_bg_complex(bg.sym_algebra(rank, 6), "equivariant", 8, 6))
    assert set(res["slices"]) == set(range(-6, 7))
    assert all(r == {0: 1} for r in res["slices"].values())


def test_equivariant_stabilizes_in_N():
    alg = bg.sym_algebra(1, 4)
    a = bg.hh_ranks(bg.build_bg_complex(alg, "equivariant", 5, 4))
    b = bg.hh_ranks(bg.build_bg_complex(alg, "equivariant", 6, 4))
    assert a["slices"] == b["slices"]


@pytest.mark.parametrize("rank", [1, 2])
def test_twisted_trace(rank):
    res = bg.hh_ranks(bg.build_bg_complex(bg.sym_algebra(rank, 4), "twisted", 6, 4, q=2))
    cert = set(res["certified_degrees"])
    assert {d: r for d, r in res["totals"].items() if r and d in cert} == {0: 1}


def test_kunneth_convolution():
    window = 3
    a = bg.sym_algebra(1, window)
    single = bg.hh_ranks(plain(a, N=7))
    double = bg.hh_ranks(plain(bg.tensor_algebras(a, a, window), N=7))
    cert = set(double["certified_degrees"])
    for w in range(window + 1):
        for d in cert:
            expect = sum(single["slices"][w1].get(d1, 0) * single["slices"][w - w1].get(d - d1, 0)
                         for w1 in range(w + 1) for d1 in range(-1, d + 2))
            assert double["slices"][w].get(d, 0) == expect


def test_window_beyond_truncation():
    with pytest.raises(TruncationTooSmall):
        bg.build_bg_complex(bg.sym_algebra(1, 2), "plain", 4, 3)


def test_dg_example():
    assert bg.dg_cohomology(bg.shifted_dual_numbers(1), 5) == {(0, 0): 1}
    table = bg.dg_cohomology(bg.shifted_dual_numbers(0), 5)
    assert table == {**{(0, w): 1 for w in range(6)}, **{(-1, w): 1 for w in range(1, 6)}}


def test_dg_json_round_trip():
    spec = bg.shifted_dual_numbers(3)
    assert bg.DgAlgebraSpec.from_json(spec.to_json()).to_json() == spec.to_json()


def test_dg_differential_must_square_to_zero():
    spec = bg.DgAlgebraSpec([("a", 0, 1), ("b", 1, 1), ("c", 2, 1)],
                            {"a": [(1, {"b": 1})], "b": [(1, {"c": 1})]})
    with pytest.raises(DifferentialNotSquareZero):
        bg.dg_cohomology(spec, 2)
