from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles as O
from rtglab import groups as gr
from rtglab import rtg as R
from rtglab.topology import (
    AlexandrovTopology,
    NotATopology,
    NotSurjective,
    final_topology,
    is_continuous,
    is_open_map,
    product_topology,
    separation,
)


def preorder_closure(n, edges):
    rows = [1 << x for x in range(n)]
    for x, y in edges:
        rows[x] |= 1 << y
    changed = True
    while changed:
        changed = False
        for x in range(n):
            acc = rows[x]
            for y in range(n):
                if acc >> y & 1:
                    acc |= rows[y]
            if acc != rows[x]:
                rows[x], changed = acc, True
    return AlexandrovTopology(n, tuple(rows))


@st.composite
def topologies(draw, max_points=5):
    n = draw(st.integers(1, max_points))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    return preorder_closure(n, edges)


@st.composite
def maps(draw, max_points=5):
    TX = draw(topologies(max_points))
    TY = draw(topologies(max_points))
    f = draw(st.lists(st.integers(0, TY.n - 1), min_size=TX.n, max_size=TX.n))
    return f, TX, TY


def nbhds(T):
    return [frozenset(y for y in range(T.n) if T.rows[x] >> y & 1) for x in range(T.n)]


def mask(s):
    return sum(1 << x for x in s)


def test_closure_examples():
    assert AlexandrovTopology.discrete(4).closure(0b0101) == 0b0101
    assert AlexandrovTopology.indiscrete(3).closure(0b001) == 0b111
    S = gr.symmetric(3)
    T = R.coset_topology(S, gr.Subgrp.of([0, S.index_of("(12)")]))
    cl = T.closure(1 << S.identity)
    assert {S.label(x) for x in range(6) if cl >> x & 1} == {"e", "(12)"}
    brute = [V for V in O.opens_from_nbhds(nbhds(T))]
    closed = [frozenset(range(6)) - V for V in brute]
    smallest = frozenset.intersection(*[C for C in closed if S.identity in C])
    assert mask(smallest) == cl


def test_invalid_matrices():
    with pytest.raises(NotATopology):
        AlexandrovTopology.from_matrix([[False, True], [False, True]])
    with pytest.raises(NotATopology):
        # 0 -> 1 -> 2 without 0 -> 2
        AlexandrovTopology.from_matrix([[True, True, False], [False, True, True], [False, False, True]])


def test_sierpinski_pins_the_convention():
    T = AlexandrovTopology.sierpinski()
    assert T.matrix() == [[True, False], [True, True]]
    assert T.is_open(0b01) and not T.is_open(0b10)
    sizes = sorted(bin(r).count("1") for r in product_topology(T, T).rows)
    assert sizes == [1, 2, 2, 4]


def test_product_examples():
    D = AlexandrovTopology.discrete(3)
    assert product_topology(D, D) == AlexandrovTopology.discrete(9)
    I = AlexandrovTopology.indiscrete(2)
    S = AlexandrovTopology.sierpinski()
    P = product_topology(I, S)
    boxes = O.product_opens(2, O.opens_from_nbhds(nbhds(I)), 2, O.opens_from_nbhds(nbhds(S)))
    assert set(O.opens_from_nbhds(nbhds(P))) == set(boxes)


@given(topologies(3), topologies(3))
def test_product_opens_are_unions_of_boxes(T1, T2):
    P = product_topology(T1, T2)
    boxes = O.product_opens(T1.n, O.opens_from_nbhds(nbhds(T1)), T2.n, O.opens_from_nbhds(nbhds(T2)))
    assert set(O.opens_from_nbhds(nbhds(P))) == set(boxes)


def test_final_topology_examples():
    T = AlexandrovTopology.sierpinski()
    assert final_topology(T, [0, 1]) == T
    assert final_topology(AlexandrovTopology.discrete(4), [0, 1, 1, 0]) == AlexandrovTopology.discrete(2)
    with pytest.raises(NotSurjective):
        final_topology(AlexandrovTopology.discrete(2), [0, 0], 2)


def test_final_topology_of_s3_difference_map_is_indiscrete():
    S = gr.symmetric(3)
    T = R.coset_topology(S, gr.Subgrp.of([0, S.index_of("(12)")]))
    sigma = final_topology(product_topology(T, T), R.phi_map(S), 6)
    assert sigma == AlexandrovTopology.indiscrete(6)


@given(topologies(6).flatmap(lambda T: st.tuples(st.just(T), st.integers(1, T.n))).flatmap(
    lambda p: st.tuples(st.just(p[0]), st.permutations(list(range(p[1])) + [0] * (p[0].n - p[1])), st.just(p[1]))
))
def test_final_topology_matches_preimage_definition(args):
    T, f, m = args
    F = final_topology(T, f, m)
    F.validate()
    expected = O.final_nbhds(T.n, O.opens_from_nbhds(nbhds(T)), f, m)
    assert nbhds(F) == expected


@given(maps())
def test_continuity_criteria_agree(args):
    f, TX, TY = args
    fast = is_continuous(f, TX, TY, "nbhd")
    assert fast == is_continuous(f, TX, TY, "opens")
    assert fast == O.continuous(f, O.opens_from_nbhds(nbhds(TX)), O.opens_from_nbhds(nbhds(TY)))


@given(maps())
def test_open_map_matches_image_of_every_open(args):
    f, TX, TY = args
    ty = set(O.opens_from_nbhds(nbhds(TY)))
    brute = all(frozenset(f[x] for x in V) in ty for V in O.opens_from_nbhds(nbhds(TX)))
    assert is_open_map(f, TX, TY) == brute


def test_continuity_examples():
    T = AlexandrovTopology.sierpinski()
    assert is_continuous([0, 1], T, T) and is_open_map([0, 1], T, T)
    assert is_continuous([0, 0], T, AlexandrovTopology.discrete(1))
    assert is_open_map([0, 0], T, AlexandrovTopology.discrete(1))
    S = gr.symmetric(3)
    A3 = next(H for H in gr.subgroups(S) if H.size == 3)
    _, proj = gr.quotient_group(S, A3)
    src = R.coset_topology(S, gr.Subgrp.of([0, S.index_of("(12)")]))
    tgt = AlexandrovTopology.indiscrete(2)
    assert is_continuous(proj, src, tgt) and is_open_map(proj, src, tgt)


@given(topologies(6), st.integers(0, 63), st.integers(0, 63))
def test_closure_axioms(T, a, b):
    A, B = a & T.full, b & T.full
    cl = T.closure
    assert A & ~cl(A) == 0
    assert cl(cl(A)) == cl(A)
    assert cl(A | B) == cl(A) | cl(B)
    assert T.interior(A) == T.full & ~cl(T.full & ~A)
    assert T.is_closed(cl(A)) and T.is_open(T.interior(A))


@given(topologies(6))
def test_separation_flags_are_consistent(T):
    s = separation(T)
    assert s.is_T1 == s.is_hausdorff == s.is_discrete
    if s.is_discrete:
        assert s.is_T0
    if s.is_indiscrete and T.n > 1:
        assert not s.is_T0


def test_separation_examples():
    s = separation(AlexandrovTopology.discrete(3))
    assert (s.is_T0, s.is_T1, s.is_hausdorff, s.is_discrete, s.is_indiscrete) == (True, True, True, True, False)
    s = separation(AlexandrovTopology.indiscrete(2))
    assert (s.is_T0, s.is_T1, s.is_hausdorff, s.is_discrete, s.is_indiscrete) == (False, False, False, False, True)
    S = gr.symmetric(3)
    s = separation(R.coset_topology(S, gr.Subgrp.of([0, S.index_of("(12)")])))
    assert not s.is_T0 and not s.is_T1


@given(topologies(5))
def test_json_round_trip(T):
    assert AlexandrovTopology.from_json(T.to_json()) == T
