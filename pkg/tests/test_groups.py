from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles as O
from instances import labels
from rtglab import generators as gen
from rtglab import groups as gr

CATALOG = gen.catalog()
SMALL_GROUPS = [G for G in CATALOG if G.order <= 12]


def test_z2_validates():
    G = gr.validate_group([[0, 1], [1, 0]])
    assert G.order == 2 and G.identity == 0 and G.inv == (0, 1)


def test_constant_row_is_rejected():
    with pytest.raises(gr.NotAGroup) as exc:
        gr.validate_group([[0, 1], [1, 1]])
    assert "Latin" in str(exc.value)


def test_non_associative_latin_square_is_rejected():
    # a loop of order 5 that is not a group
    table = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(gr.NotAGroup) as exc:
        gr.validate_group(table)
    a, b, c = exc.value.witness
    assert table[table[a][b]][c] != table[a][table[b][c]]


def test_s3_from_permutation_composition():
    _, mul = O.perm_table(3)
    G = gr.validate_group(mul)
    assert G.order == 6
    assert gr.is_isomorphic(G, gr.symmetric(3))


def test_subgroup_lists():
    assert [H.elements for H in gr.subgroups(gr.cyclic(2))] == [(0,), (0, 1)]
    assert [H.elements for H in gr.subgroups(gr.cyclic(4))] == [(0,), (0, 2), (0, 1, 2, 3)]
    sizes = [H.size for H in gr.subgroups(gr.symmetric(3))]
    assert sizes == [1, 2, 2, 2, 3, 6]


def test_subgroups_respect_the_bound():
    with pytest.raises(gr.OrderTooLarge):
        gr.subgroups(gr.symmetric(4), bound=12)


@pytest.mark.parametrize("G", SMALL_GROUPS, ids=lambda G: G.name)
def test_subgroups_match_subset_search(G):
    mul = [list(r) for r in G.mul]
    assert {frozenset(H.elements) for H in gr.subgroups(G)} == set(O.all_subgroups(mul))


def test_subgroups_sorted_by_size_then_elements():
    for G in CATALOG:
        subs = gr.subgroups(G)
        assert subs == sorted(subs, key=lambda H: (H.size, H.elements))


def test_normal_closure_examples():
    S = gr.symmetric(3)
    assert gr.normal_closure(S, [S.index_of("(12)")]).size == 6
    D = gr.dihedral(4)
    assert labels(D, gr.normal_closure(D, [D.index_of("s")])) == {"e", "s", "r2", "r2s"}
    assert gr.normal_closure(D, [D.identity]).elements == (D.identity,)


def test_normalizer_examples():
    S = gr.symmetric(3)
    H = gr.Subgrp.of([S.identity, S.index_of("(12)")])
    assert labels(S, gr.normalizer(S, H)) == {"e", "(12)"}
    D = gr.dihedral(4)
    K = gr.Subgrp.of([0, D.index_of("s")])
    assert labels(D, gr.normalizer(D, K)) == {"e", "s", "r2", "r2s"}
    A = gr.alternating(4)
    V = next(N for N in gr.normal_subgroups(A) if N.size == 4)
    assert gr.normalizer(A, V).size == 12


def test_quotient_examples():
    S = gr.symmetric(3)
    A3 = next(H for H in gr.subgroups(S) if H.size == 3)
    Q, proj = gr.quotient_group(S, A3)
    assert gr.is_isomorphic(Q, gr.cyclic(2))
    Q1, proj1 = gr.quotient_group(S, S.trivial())
    assert proj1 == tuple(range(6)) and Q1.order == 6
    with pytest.raises(gr.NotNormal) as exc:
        gr.quotient_group(S, gr.Subgrp.of([0, S.index_of("(12)")]))
    g = exc.value.witness
    H = {0, S.index_of("(12)")}
    assert {S.conj(g, h) for h in H} != H


all_pairs = st.sampled_from(SMALL_GROUPS).flatmap(lambda G: st.tuples(st.just(G), st.sampled_from(gr.subgroups(G))))


@given(all_pairs)
def test_normalizer_contains_subgroup(pair):
    G, H = pair
    N = gr.normalizer(G, H)
    assert set(H.elements) <= set(N.elements)
    assert set(N.elements) == O.normalizer([list(r) for r in G.mul], H.elements)


@given(st.sampled_from(SMALL_GROUPS).flatmap(lambda G: st.tuples(st.just(G), st.sets(st.integers(0, G.order - 1), max_size=3))))
def test_normal_closure_is_conjugate_close_fixpoint(pair):
    G, S = pair
    N = gr.normal_closure(G, S)
    assert set(S) <= set(N.elements)
    assert G.is_normal(N)
    assert frozenset(N.elements) == O.conj_close([list(r) for r in G.mul], S)


@given(st.sampled_from(SMALL_GROUPS).flatmap(lambda G: st.tuples(st.just(G), st.sampled_from(gr.normal_subgroups(G)))))
def test_projection_is_a_homomorphism(pair):
    G, N = pair
    Q, proj = gr.quotient_group(G, N)
    for x in range(G.order):
        for y in range(G.order):
            assert proj[G.mul[x][y]] == Q.mul[proj[x]][proj[y]]


@pytest.mark.parametrize("G", CATALOG, ids=lambda G: G.name)
def test_catalog_groups_satisfy_axioms(G):
    e = G.identity
    for x in range(G.order):
        assert G.mul[e][x] == G.mul[x][e] == x
        assert G.mul[x][G.inv[x]] == e
        assert sorted(G.mul[x]) == list(range(G.order))
    assert gr.validate_group(G.mul).mul == G.mul


def test_json_round_trip_is_byte_stable():
    for G in CATALOG:
        s = G.dumps()
        assert gr.group_from_json(json.loads(s)).dumps() == s


def test_small_catalog_isomorphisms():
    assert gr.is_isomorphic(gr.direct_product(gr.cyclic(2), gr.cyclic(3)), gr.cyclic(6))
    assert not gr.is_isomorphic(gr.dihedral(4), gr.quaternion())
    assert gr.alternating(4).order == 12 and gr.symmetric(4).order == 24
