from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from hecke_springer import gln_blocks as gb
from hecke_springer.acceptance import BLOCK_CASES
from hecke_springer.errors import BadComposition, DimensionMismatch, DuplicateLabel
from hecke_springer.hecke import HeckeElement, center_element, theta


def make(n, entries):
    return gb.InertialTypeSpec(n, tuple(gb.TypeEntry(*e) for e in entries))


@pytest.mark.parametrize("n,entries,levi,factors", BLOCK_CASES)
def test_hand_listed_types(n, entries, levi, factors):
    desc = gb.block_decompose(make(n, entries))
    assert desc.levi_blocks == levi
    assert desc.hecke_factors == factors
    assert [m for _, m in desc.moduli_factors] == [m for _, m in factors]


def test_trivial_type_gives_principal_block():
    desc = gb.block_decompose(gb.InertialTypeSpec.trivial(4))
    assert desc.hecke_string() == "H_{q}(4)"


def test_validation():
    with pytest.raises(DimensionMismatch):
        gb.validate_type(make(3, [("a", 1, 1, 2)]))
    with pytest.raises(DuplicateLabel):
        gb.validate_type(make(2, [("a", 1, 1, 1), ("a", 1, 1, 1)]))
    with pytest.raises(DimensionMismatch):
        gb.validate_type(make(0, [("a", 0, 1, 1)]))


def test_json_round_trip():
    nu = make(5, [("b", 1, 1, 1), ("a", 2, 1, 2)])
    assert gb.InertialTypeSpec.from_json(nu.to_json()) == nu


def test_small_enumerations():
    assert len(gb.enumerate_types(2, [(1, 1), (1, 2)])) == 3
    assert len(gb.enumerate_types(3, [(1, 1)])) == 3


catalogs = st.lists(st.tuples(st.integers(1, 3), st.integers(1, 3)), min_size=1, max_size=3, unique=True)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6), catalogs)
def test_enumeration_matches_partition_oracle(n, catalog):
    types = gb.enumerate_types(n, catalog)
    assert len(types) == gb.count_types_oracle(n, catalog)
    shapes = [t.shape() for t in types]
    assert len(set(shapes)) == len(shapes)
    for t in types:
        gb.validate_type(t)
        desc = gb.block_decompose(t)
        assert sum(desc.levi_blocks) == n
        assert sum(m for _, m in desc.hecke_factors) == sum(e.multiplicity for e in t.entries)


@pytest.mark.parametrize("source,target", [((1, 1), (2,)), ((1, 2), (3,)), ((2, 1), (3,)),
                                           ((1, 1, 1), (3,)), ((1, 1, 1), (1, 2))])
def test_embedding_relations(source, target):
    report = gb.check_embedding(gb.hecke_embedding(source, target))
    assert all(report.values()), report


@pytest.mark.parametrize("source", [(1, 1), (1, 2), (2, 1)])
def test_source_center_commutes_with_image(source):
    emb = gb.hecke_embedding(source)
    src, tgt = emb.source_datum, emb.target_datum
    lam = (1,) + (0,) * (src.cochar_rank - 1)
    z = emb(center_element(src, lam)) if src.is_dominant(lam) else emb(theta(src, lam))
    for g in emb.generator_images().values():
        assert (z * g - g * z).is_zero()
    assert z.datum == tgt


@pytest.mark.parametrize("n", [1, 2, 3])
def test_transitivity(n):
    for chain in gb.refinement_chains(n):
        assert gb.check_transitivity(chain)


def test_refinement_chain_count():
    # compositions of 3 ordered by coarsening: (1,1,1) < (1,2), (2,1) < (3)
    assert len(gb.refinement_chains(3)) == 6


def test_bad_compositions():
    with pytest.raises(BadComposition):
        gb.hecke_embedding((1, 1), (3,))
    with pytest.raises(BadComposition):
        gb.hecke_embedding((2, 1), (1, 2))
    with pytest.raises(BadComposition):
        gb.hecke_embedding((0, 2))


def test_embedding_fixes_finite_generators():
    emb = gb.hecke_embedding((1, 2), (3,))
    assert emb.reflection_map == {1: 2}
    assert emb(HeckeElement.Ts(emb.source_datum, 1)) == HeckeElement.Ts(emb.target_datum, 2)
