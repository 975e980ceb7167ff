from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles as O
from instances import SMALL, d4_reflection, discrete, q8_center, s3_transposition
from rtglab import functions as fn
from rtglab import groups as gr
from rtglab import rtg as R
from rtglab.topology import AlexandrovTopology

instances = st.sampled_from(SMALL)


def table(r):
    return [list(row) for row in r.group.mul]


def test_continuous_function_dimensions():
    assert fn.continuous_functions(discrete(gr.cyclic(4))).dim == 4
    s3 = s3_transposition()
    assert fn.continuous_functions(s3, "tau").dim == 3
    assert fn.continuous_functions(s3, "sigma").same(fn.constants(6))


@given(instances, st.data())
def test_translation_by_identity_is_trivial(r, data):
    f = tuple(Fraction(x) for x in data.draw(st.lists(st.integers(-5, 5), min_size=r.n, max_size=r.n)))
    for side in ("left", "right"):
        assert fn.translate(f, r.group.identity, side, r) == f


def test_translate_conventions():
    s3 = s3_transposition()
    G = s3.group
    f = fn.indicator(6, [G.index_of("(12)")])
    g = G.index_of("(13)")
    right = fn.translate(f, g, "right", s3)
    left = fn.translate(f, g, "left", s3)
    assert [x for x in range(6) if right[x]] == [G.mul[G.index_of("(12)")][G.inv[g]]]
    assert [x for x in range(6) if left[x]] == [G.mul[G.inv[g]][G.index_of("(12)")]]
    with pytest.raises(ValueError):
        fn.translate(f, g, "up", s3)


def test_lc_examples():
    q8 = q8_center()
    assert fn.lc_space(q8).same(fn.continuous_functions(q8))
    assert fn.lc_space(s3_transposition()).same(fn.constants(6))
    d4 = d4_reflection()
    lc = fn.lc_space(d4)
    assert lc.dim == 2
    assert lc.same(fn.continuous_functions(d4, "sigma"))


def test_d_space_examples():
    q8 = q8_center()
    assert fn.d_space(q8).same(fn.continuous_functions(q8))
    s3 = s3_transposition()
    D = fn.d_space(s3)
    # f(y g^-1) continuous in g forces constancy on the double cosets H w H
    H = set(s3.cone.elements)
    assert D.dim == 2
    assert D.contains(fn.indicator(6, H))
    assert not D.contains(fn.indicator(6, s3.cells()[1]))


def test_ap_wap_examples():
    assert all(A.dim == 4 and A.degenerate for A in fn.ap_wap(discrete(gr.cyclic(4))))
    s3 = s3_transposition()
    ap, wap = fn.ap_wap(s3)
    assert ap.dim == wap.dim == 3


def test_fix_examples():
    s3 = s3_transposition()
    assert fn.fix(s3, fn.constants(6)).size == 6
    d4 = d4_reflection()
    assert fn.fix(d4, fn.continuous_functions(d4, "sigma")) == d4.n_of_G
    z5 = discrete(gr.cyclic(5))
    assert fn.fix(z5, fn.continuous_functions(z5)).elements == (0,)


def test_fix_rejects_non_invariant_spaces():
    s3 = s3_transposition()
    with pytest.raises(fn.NotTranslationInvariant) as exc:
        fn.fix(s3, fn.continuous_functions(s3))
    assert exc.value.witness[2] == "left"


def test_separation_examples():
    z4 = discrete(gr.cyclic(4))
    assert fn.separates_points_from_closed(fn.continuous_functions(z4), z4.tau)
    assert not fn.separates_points_from_closed(fn.constants(4), AlexandrovTopology.discrete(4))
    s3 = s3_transposition()
    assert not fn.separates_points_from_closed(fn.lc_space(s3), s3.tau)


@given(instances)
def test_lc_matches_brute_force_and_sigma_functions(r):
    lc = fn.lc_space(r)
    brute = O.lc_brute(table(r), r.cone.elements)
    assert O.same_span([list(v) for v in lc.basis], brute, r.n)
    csig = fn.continuous_functions(r, "sigma")
    assert lc.contains_space(csig)
    assert lc.same(csig)


@given(instances)
def test_lc_separation_iff_topological(r):
    assert fn.separates_points_from_closed(fn.lc_space(r), r.tau) == R.is_topological(r)


@given(instances)
def test_fix_of_sigma_functions_is_n_of_g(r):
    N = O.conj_close(table(r), r.cone.elements)
    assert set(fn.fix(r, fn.continuous_functions(r, "sigma")).elements) == N


@given(instances)
def test_d_space_is_double_coset_functions(r):
    mul = table(r)
    H = r.cone.elements
    pairs = [(x, mul[mul[h][x]][k]) for x in range(r.n) for h in H for k in H]
    brute = O.functions_constant_on(r.n, pairs)
    assert O.same_span([list(v) for v in fn.d_space(r).basis], brute, r.n)


@given(instances, st.data())
def test_generated_algebras_have_normal_fix(r, data):
    lc = fn.lc_space(r)
    coeffs = data.draw(st.lists(st.integers(-2, 2), min_size=lc.dim, max_size=lc.dim))
    f = tuple(sum((c * v[x] for c, v in zip(coeffs, lc.basis)), Fraction(0)) for x in range(r.n))
    A = fn.translation_invariant_algebra(r, [f])
    fn.check_translation_invariant(r, A)
    F = fn.fix(r, A)
    assert r.group.is_normal(F)
    assert A.same(fn.fixed_by(r, F))


@given(instances)
def test_d_space_functions_have_continuous_translate_maps(r):
    # g -> R_{g^-1} f constant on τ-cells of g, for f in C(G) and D(G)
    D = fn.d_space(r)
    G = r.group
    for f in D.basis:
        for cell in r.cells():
            maps = {fn.translate(f, G.inv[g], "right", r) for g in cell}
            assert len(maps) == 1
