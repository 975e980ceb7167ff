"""Function spaces on a finite right topological group as exact subspaces of C^n.

On a finite model C_0, C_c and C_b all coincide with C(G); only C is exposed.
Every space here is cut out by equality constraints, so bases are computed by
exact elimination over the Gaussian rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg as la
from .groups import Subgrp
from .rtg import RtGroup
from .topology import AlexandrovTopology, _bits, is_continuous_fn

FnVec = tuple


class NotTranslationInvariant(ValueError):
    def __init__(self, f, g: int, side: str):
        super().__init__(f"{side} translate by {g} leaves the subspace")
        self.witness = (tuple(f), g, side)


@dataclass(frozen=True)
class FnSubspace:
    n: int
    basis: tuple[tuple, ...]
    tag: str = ""
    degenerate: bool = False

    @classmethod
    def span(cls, n: int, vectors: Iterable[Sequence], tag: str = "", degenerate: bool = False) -> "FnSubspace":
        rows = la.row_basis([list(v) for v in vectors], n)
        return cls(n, tuple(tuple(la.simplify(x) for x in r) for r in rows), tag, degenerate)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, f: Sequence) -> bool:
        return la.reduced_in_span(self.basis, f)

    def contains_space(self, other: "FnSubspace") -> bool:
        return la.span_contains(self.basis, other.basis, self.n)

    def same(self, other: "FnSubspace") -> bool:
        # RREF is canonical, so equal spans have equal bases
        return self.n == other.n and self.basis == other.basis

    def to_json(self) -> dict:
        return {"tag": self.tag, "dim": self.dim, "basis": [[la.fmt(x) for x in v] for v in self.basis]}


def indicator(n: int, elements: Iterable[int]) -> FnVec:
    s = set(elements)
    return tuple(Fraction(1) if x in s else Fraction(0) for x in range(n))


def constants(n: int) -> FnSubspace:
    return FnSubspace.span(n, [[1] * n], "constants")


def translate(f: Sequence, g: int, side: str, rtg: RtGroup) -> FnVec:
    """(R_g f)(x) = f(xg), (L_g f)(x) = f(gx)."""
    mul = rtg.group.mul
    if side == "right":
        return tuple(f[mul[x][g]] for x in range(len(f)))
    if side == "left":
        return tuple(f[mul[g][x]] for x in range(len(f)))
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def continuous_functions(rtg: RtGroup, which: str = "tau") -> FnSubspace:
    T = _topology(rtg, which)
    return FnSubspace.span(rtg.n, [indicator(rtg.n, c) for c in T.cells()], f"C({which})")


def _topology(rtg: RtGroup, which: str) -> AlexandrovTopology:
    if which == "tau":
        return rtg.tau
    if which == "sigma":
        return rtg.sigma
    raise ValueError(f"unknown topology {which!r}")


def _solve_on_cells(rtg: RtGroup, pairs: Iterable[tuple[int, int]], tag: str, degenerate: bool = False) -> FnSubspace:
    """Functions constant on τ-cells with f(a) = f(b) for every listed pair."""
    ci = rtg.cell_index()
    k = len(rtg.cells())
    rows = set()
    for a, b in pairs:
        i, j = ci[a], ci[b]
        if i != j:
            rows.add((min(i, j), max(i, j)))
    eqs = []
    for i, j in sorted(rows):
        r = [Fraction(0)] * k
        r[i], r[j] = Fraction(1), Fraction(-1)
        eqs.append(r)
    sol = la.nullspace(eqs, k)
    vecs = [tuple(v[ci[x]] for x in range(rtg.n)) for v in sol]
    return FnSubspace.span(rtg.n, vecs, tag, degenerate)


def lc_space(rtg: RtGroup) -> FnSubspace:
    """{f in C(G) : L_g f in C(G) for every g}."""
    G, T = rtg.group, rtg.tau
    pairs = ((G.mul[g][x], G.mul[g][y]) for g in range(G.order) for x in range(G.order) for y in _bits(T.rows[x]))
    return _solve_on_cells(rtg, pairs, "LC")


def d_space(rtg: RtGroup) -> FnSubspace:
    """{f in C(G) : g -> f(y g^-1) is continuous for every y}."""
    G, T = rtg.group, rtg.tau
    inv, mul = G.inv, G.mul
    pairs = (
        (mul[y][inv[x]], mul[y][inv[z]]) for y in range(G.order) for x in range(G.order) for z in _bits(T.rows[x])
    )
    return _solve_on_cells(rtg, pairs, "D")


def ap_wap(rtg: RtGroup) -> tuple[FnSubspace, FnSubspace]:
    """AP(G) and WAP(G).  Right orbits of functions are finite sets, hence
    compact in both senses, so both are all of C(G); flagged degenerate."""
    C = continuous_functions(rtg, "tau")
    return (FnSubspace(C.n, C.basis, "AP", True), FnSubspace(C.n, C.basis, "WAP", True))


def check_translation_invariant(rtg: RtGroup, A: FnSubspace) -> None:
    for f in A.basis:
        for g in range(rtg.n):
            for side in ("left", "right"):
                if not A.contains(translate(f, g, side, rtg)):
                    raise NotTranslationInvariant(f, g, side)


def fix(rtg: RtGroup, A: FnSubspace) -> Subgrp:
    """{g : L_g f = f for all f in A}; A must be left and right translation invariant."""
    check_translation_invariant(rtg, A)
    out = [g for g in range(rtg.n) if all(translate(f, g, "left", rtg) == tuple(f) for f in A.basis)]
    return Subgrp.of(out)


def fixed_by(rtg: RtGroup, F: Subgrp) -> FnSubspace:
    """{f in C(G) : L_y f = f for all y in F}."""
    G = rtg.group
    pairs = ((x, G.mul[y][x]) for y in F.elements for x in range(G.order))
    return _solve_on_cells(rtg, pairs, f"fixed_by{list(F.elements)}")


def separates_points_from_closed(A: FnSubspace, T: AlexandrovTopology) -> bool:
    """Some f in span(A) has f(x) outside f(C) for every closed C not containing x.

    Over an infinite field a generic combination of the basis avoids finitely
    many hyperplanes, and cl({c}) is the smallest closed set holding c, so this
    reduces to: every pair (x, c) with x not in cl({c}) is told apart by some
    basis vector.
    """
    for c in range(T.n):
        cl = T.closure(1 << c)
        for x in range(T.n):
            if cl >> x & 1:
                continue
            if all(f[x] == f[c] for f in A.basis):
                return False
    return True


def is_tau_continuous(rtg: RtGroup, f: Sequence) -> bool:
    return is_continuous_fn(f, rtg.tau)


def translation_invariant_algebra(rtg: RtGroup, generators: Iterable[Sequence]) -> FnSubspace:
    """Smallest left- and right-translation-invariant *-subalgebra containing the generators.

    Such an algebra is the span of the indicators of the classes of
    x ~ y iff h(x) = h(y) for every translate h of every generator (and the
    constants).  The generators should lie in LC(G) for the result to sit in C(G).
    """
    G = rtg.group
    n = G.order
    translates = []
    for f in generators:
        for a in range(n):
            for b in range(n):
                translates.append(tuple(f[G.mul[G.mul[a][x]][b]] for x in range(n)))
    key = {}
    classes: list[list[int]] = []
    for x in range(n):
        sig = tuple(h[x] for h in translates)
        if sig not in key:
            key[sig] = len(classes)
            classes.append([])
        classes[key[sig]].append(x)
    return FnSubspace.span(n, [indicator(n, c) for c in classes], "generated")
