"""Named instances shared across the test modules."""

from __future__ import annotations

from rtglab import generators as gen
from rtglab import groups as gr
from rtglab import rtg as R


def s3_transposition():
    S = gr.symmetric(3)
    return R.make_rtg(S, [0, S.index_of("(12)")])


def d4_reflection():
    D = gr.dihedral(4)
    return R.make_rtg(D, [0, D.index_of("s")])


def q8_center():
    Q = gr.quaternion()
    return R.make_rtg(Q, [Q.index_of("1"), Q.index_of("-1")])


def discrete(G):
    return R.make_rtg(G, [G.identity])


def labels(G, elements):
    return {G.label(x) for x in elements}


# every instance on groups of order <= 12; hypothesis strategies sample from it
SMALL = tuple(gen.enumerate_instances(12))

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []
