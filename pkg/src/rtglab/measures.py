"""Measures on a finite right topological group.

Borel sets are unions of τ-cells, so a Radon measure is observable only
through its cell masses.  ``Meas`` keeps per-element weights (handy for
convolution) and compares through the canonical cell vector.  Subspaces of
measures are computed in cell coordinates.

Right translate: mu_g = mu o R_g, so mu_g(E) = mu(Eg) and mu_g{y} = mu{yg}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg as la
from .functions import FnSubspace, continuous_functions, d_space, indicator
from .groups import Subgrp
from .rtg import RtGroup, is_sigma_sigma_closed, topological_center
from . import groups as gr
from .topology import _bits, is_continuous_fn


class FNotContinuous(ValueError):
    pass


class MuNotInMC(ValueError):
    pass


class NoSolution(RuntimeError):
    pass


@dataclass(frozen=True)
class Meas:
    weights: tuple

    @classmethod
    def point(cls, n: int, g: int, c=1) -> "Meas":
        w = [Fraction(0)] * n
        w[g] = la.simplify(c)
        return cls(tuple(w))

    @classmethod
    def uniform_on(cls, n: int, elements: Iterable[int]) -> "Meas":
        els = list(elements)
        w = [Fraction(0)] * n
        for x in els:
            w[x] = Fraction(1, len(els))
        return cls(tuple(w))

    @classmethod
    def from_canonical(cls, rtg: RtGroup, cellmass: Sequence) -> "Meas":
        """Spread each cell mass evenly over the cell."""
        w = [Fraction(0)] * rtg.n
        for c, m in zip(rtg.cells(), cellmass):
            for x in c:
                w[x] = la.simplify(m / len(c)) if m != 0 else Fraction(0)
        return cls(tuple(w))

    @property
    def n(self) -> int:
        return len(self.weights)

    def canonical(self, rtg: RtGroup) -> tuple:
        return tuple(la.simplify(sum((self.weights[x] for x in c), Fraction(0))) for c in rtg.cells())

    def radon_equal(self, other: "Meas", rtg: RtGroup) -> bool:
        return self.canonical(rtg) == other.canonical(rtg)

    def total(self):
        return la.simplify(sum(self.weights, Fraction(0)))

    def norm(self, rtg: RtGroup) -> float:
        """Total variation, sum of |cell mass| (irrational in general, hence float)."""
        return sum(float(la.QQi.coerce(m).abs2()) ** 0.5 for m in self.canonical(rtg))

    def scale(self, c) -> "Meas":
        return Meas(tuple(la.simplify(c * w) for w in self.weights))

    def __add__(self, other: "Meas") -> "Meas":
        return Meas(tuple(la.simplify(a + b) for a, b in zip(self.weights, other.weights)))

    def right_translate(self, g: int, rtg: RtGroup) -> "Meas":
        """mu_g = mu o R_g."""
        mul = rtg.group.mul
        return Meas(tuple(self.weights[mul[y][g]] for y in range(self.n)))

    def left_translate(self, g: int, rtg: RtGroup) -> "Meas":
        """_g mu = mu o L_g."""
        mul = rtg.group.mul
        return Meas(tuple(self.weights[mul[g][y]] for y in range(self.n)))

    def integrate(self, f: Sequence):
        return la.simplify(sum((f[x] * m for x, m in enumerate(self.weights)), Fraction(0)))

    def to_json(self) -> dict:
        return {"weights": [la.to_pair(w) for w in self.weights]}

    @classmethod
    def from_json(cls, d: dict) -> "Meas":
        return cls(tuple(la.from_pair(p) for p in d["weights"]))


@dataclass(frozen=True)
class MeasSubspace:
    """Span of canonical (cell-mass) vectors."""

    k: int
    basis: tuple[tuple, ...]
    tag: str = ""
    degenerate: bool = False

    @classmethod
    def span(cls, k: int, vectors: Iterable[Sequence], tag: str = "", degenerate: bool = False) -> "MeasSubspace":
        rows = la.row_basis([list(v) for v in vectors], k)
        return cls(k, tuple(tuple(la.simplify(x) for x in r) for r in rows), tag, degenerate)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, mu: Meas, rtg: RtGroup) -> bool:
        return la.reduced_in_span(self.basis, mu.canonical(rtg))

    def contains_space(self, other: "MeasSubspace") -> bool:
        return la.span_contains(self.basis, other.basis, self.k)

    def same(self, other: "MeasSubspace") -> bool:
        return self.k == other.k and self.basis == other.basis

    def measures(self, rtg: RtGroup) -> list[Meas]:
        return [Meas.from_canonical(rtg, v) for v in self.basis]

    def to_json(self) -> dict:
        return {"tag": self.tag, "dim": self.dim, "basis": [[la.fmt(x) for x in v] for v in self.basis]}


# ---------------------------------------------------------------- action and convolution


def act(f: Sequence, mu: Meas, rtg: RtGroup, check: bool = True) -> tuple:
    """(f.mu)(y) = sum_x f(xy) mu(x)."""
    if check and not is_continuous_fn(f, rtg.tau):
        raise FNotContinuous("f is not τ-continuous")
    mul = rtg.group.mul
    nz = [(x, m) for x, m in enumerate(mu.weights) if m != 0]
    return tuple(la.simplify(sum((f[mul[x][y]] * m for x, m in nz), Fraction(0))) for y in range(rtg.n))


def convolve(mu: Meas, nu: Meas, rtg: RtGroup, check: bool = True) -> Meas:
    """The functional f -> sum_y (f.mu)(y) nu(y), i.e. (mu * nu)(z) = sum_{xy=z} mu(x) nu(y)."""
    if check and not mc_subspace(rtg).contains(mu, rtg):
        raise MuNotInMC("left factor of a convolution must lie in M_C")
    mul = rtg.group.mul
    w = [Fraction(0)] * rtg.n
    for x, a in enumerate(mu.weights):
        if a == 0:
            continue
        for y, b in enumerate(nu.weights):
            if b != 0:
                z = mul[x][y]
                w[z] = w[z] + a * b
    return Meas(tuple(la.simplify(v) for v in w))


# ---------------------------------------------------------------- measure algebras


def _cell_reps(rtg: RtGroup) -> list[int]:
    return [c[0] for c in rtg.cells()]


def _pushes_into(rtg: RtGroup, target_cells: Sequence[int], tag: str) -> MeasSubspace:
    """{mu : f.mu is constant on each class of ``target_cells`` for every f in C(G)}.

    f.mu only sees cell masses: f(hxy) = f(xy) for h in the cone.
    """
    reps = _cell_reps(rtg)
    k = len(reps)
    ci = rtg.cell_index()
    mul = rtg.group.mul
    rows = set()
    # f ranges over cell indicators, so f(x_c y) picks the cell of x_c y
    first: dict[int, int] = {}
    for y in range(rtg.n):
        first.setdefault(target_cells[y], y)
    for y in range(rtg.n):
        z = first[target_cells[y]]
        if z == y:
            continue
        for fc in range(k):
            r = tuple(int(ci[mul[xc][y]] == fc) - int(ci[mul[xc][z]] == fc) for xc in reps)
            if any(r):
                rows.add(r)
    sol = la.nullspace([list(map(Fraction, r)) for r in sorted(rows)], k)
    return MeasSubspace.span(k, sol, tag)


def mc_subspace(rtg: RtGroup) -> MeasSubspace:
    return rtg._cached("M_C", lambda: _pushes_into(rtg, rtg.cell_index(), "M_C"))


def msigma_subspace(rtg: RtGroup) -> MeasSubspace:
    return rtg._cached("M_sigma", lambda: _pushes_into(rtg, rtg.sigma.cell_index(), "M_sigma"))


def mw_subspace(rtg: RtGroup) -> MeasSubspace:
    """Right orbits of measures are finite, hence relatively weakly compact:
    M_W coincides with M_C.  Flagged degenerate."""
    mc = mc_subspace(rtg)
    return MeasSubspace(mc.k, mc.basis, "M_W", True)


def _cell_shift(rtg: RtGroup, g: int) -> list[int]:
    """Cell index of (cell d) * g, for each cell d."""
    ci = rtg.cell_index()
    return [ci[rtg.group.mul[c[0]][g]] for c in rtg.cells()]


def lc_measures(rtg: RtGroup) -> MeasSubspace:
    """{mu in M_C : g -> mu_g is τ-to-norm continuous}: mu_g and mu_g' are
    Radon-equal whenever g' lies in U_g."""

    def compute():
        k = len(rtg.cells())
        G, T = rtg.group, rtg.tau
        rows = set()
        for g in range(G.order):
            pg = _cell_shift(rtg, g)
            for g2 in _bits(T.rows[g]):
                if g2 == g:
                    continue
                pg2 = _cell_shift(rtg, g2)
                # mu_g(cell d) = m[pg[d]]
                for d in range(k):
                    if pg[d] != pg2[d]:
                        r = [0] * k
                        r[pg[d]] += 1
                        r[pg2[d]] -= 1
                        rows.add(tuple(r))
        mc = mc_subspace(rtg)
        # intersect with M_C: solve for combinations of the M_C basis
        B = [list(v) for v in mc.basis]
        eqs = [[sum((r[c] * B[i][c] for c in range(k)), Fraction(0)) for i in range(len(B))] for r in sorted(rows)]
        coeffs = la.nullspace(eqs, len(B)) if B else []
        vecs = [[sum((a[i] * B[i][c] for i in range(len(B))), Fraction(0)) for c in range(k)] for a in coeffs]
        return MeasSubspace.span(k, vecs, "L_C")

    return rtg._cached("L_C", compute)


def lg_measures(rtg: RtGroup) -> MeasSubspace:
    """{f dλ : y -> R_{y^-1} f is norm-continuous into L1}, R_g f(x) = f(xg).

    L1 functions are cell-measurable, i.e. C(G); continuity at y means
    R_{y^-1} f and R_{(hy)^-1} f agree for h in the cone.
    """
    G = rtg.group
    n = G.order
    ci = rtg.cell_index()
    k = len(rtg.cells())
    pairs = set()
    for y in range(n):
        for hy in _bits(rtg.tau.rows[y]):
            a, b = G.inv[y], G.inv[hy]
            for x in range(n):
                i, j = ci[G.mul[x][a]], ci[G.mul[x][b]]
                if i != j:
                    pairs.add((min(i, j), max(i, j)))
    eqs = []
    for i, j in sorted(pairs):
        r = [Fraction(0)] * k
        r[i], r[j] = Fraction(1), Fraction(-1)
        eqs.append(r)
    fs = la.nullspace(eqs, k)
    haar = haar_solver(rtg)[0]
    vecs = [Meas(tuple(v[ci[x]] * haar.weights[x] for x in range(n))).canonical(rtg) for v in fs]
    return MeasSubspace.span(k, vecs, "L_G")


def density_measure(rtg: RtGroup, f: Sequence) -> Meas:
    """f dλ for the Haar measure λ."""
    lam = haar_solver(rtg)[0]
    return Meas(tuple(la.simplify(f[x] * lam.weights[x]) for x in range(rtg.n)))


def l1_ap_d_measures(rtg: RtGroup) -> MeasSubspace:
    """{f dλ : f in AP(G) ∩ D(G)}; AP is all of C(G) finitely."""
    D = d_space(rtg)
    return MeasSubspace.span(len(rtg.cells()), [density_measure(rtg, f).canonical(rtg) for f in D.basis], "L1∩AP∩D")


# ---------------------------------------------------------------- Haar


def haar_solver(rtg: RtGroup) -> tuple[Meas, int]:
    """Right-invariant probability measure from mu(Eg) = mu(E) over all cells E."""

    def compute():
        k = len(rtg.cells())
        rows = set()
        for g in range(rtg.n):
            p = _cell_shift(rtg, g)
            for c in range(k):
                if p[c] != c:
                    i, j = min(c, p[c]), max(c, p[c])
                    rows.add((i, j))
        eqs = []
        for i, j in sorted(rows):
            r = [Fraction(0)] * k
            r[i], r[j] = Fraction(1), Fraction(-1)
            eqs.append(r)
        sol = la.nullspace(eqs, k)
        if not sol:
            raise NoSolution("no right-invariant measure")
        v = sol[0]
        tot = sum(v, Fraction(0))
        if tot == 0:
            raise NoSolution("invariant measure has zero total mass")
        return Meas.from_canonical(rtg, [x / tot for x in v]), len(sol)

    return rtg._cached("haar", compute)


def is_right_invariant(rtg: RtGroup, mu: Meas) -> bool:
    c = mu.canonical(rtg)
    return all(mu.right_translate(g, rtg).canonical(rtg) == c for g in range(rtg.n))


def is_left_invariant_under(rtg: RtGroup, mu: Meas, S: Iterable[int]) -> bool:
    c = mu.canonical(rtg)
    return all(mu.left_translate(g, rtg).canonical(rtg) == c for g in S)


def coset_uniform(rtg: RtGroup) -> Meas:
    return Meas.uniform_on(rtg.n, range(rtg.n))


def lambda_H(rtg: RtGroup, K: Subgrp | Sequence[int]) -> Meas:
    if not isinstance(K, Subgrp):
        K = Subgrp.of(K)
    if not gr.is_subgroup(rtg.group, K.elements):
        from .rtg import NotASubgroup

        raise NotASubgroup(f"{list(K.elements)} is not a subgroup")
    return Meas.uniform_on(rtg.n, K.elements)


def lambda_H_report(rtg: RtGroup, K: Subgrp) -> dict:
    """Membership of λ_K in M_C and M_σ next to the hypotheses that predict it."""
    lam = lambda_H(rtg, K)
    normal = rtg.group.is_normal(K)
    in_center = set(K.elements) <= set(topological_center(rtg).elements)
    ssc = is_sigma_sigma_closed(rtg, K)
    return {
        "normal": normal,
        "inside_center": in_center,
        "sigma_sigma_closed": ssc,
        "in_MC": mc_subspace(rtg).contains(lam, rtg),
        "in_Msigma": msigma_subspace(rtg).contains(lam, rtg),
    }


def check_translates_in_mc(rtg: RtGroup, mu: Meas) -> bool:
    """Whether every right translate of mu lies in M_C.  When it does, mu must
    lie in M_σ; a violation raises AssertionError."""
    mc = mc_subspace(rtg)
    if not mc.contains(mu, rtg):
        raise MuNotInMC("mu is not in M_C")
    ok = all(mc.contains(mu.right_translate(g, rtg), rtg) for g in range(rtg.n))
    if ok and not msigma_subspace(rtg).contains(mu, rtg):
        raise AssertionError("all right translates lie in M_C but mu is not in M_σ")
    return ok


def regular_rep_in_mc(rtg: RtGroup) -> bool:
    """Whether f dλ lies in M_C for every f in C(G)."""
    mc = mc_subspace(rtg)
    return all(mc.contains(density_measure(rtg, f), rtg) for f in continuous_functions(rtg, "tau").basis)


def mc_is_everything(rtg: RtGroup) -> bool:
    return mc_subspace(rtg).dim == len(rtg.cells())


def measure_report(rtg: RtGroup) -> dict:
    haar, dim = haar_solver(rtg)
    return {
        "cells": len(rtg.cells()),
        "M_C": mc_subspace(rtg).dim,
        "M_sigma": msigma_subspace(rtg).dim,
        "M_W": mw_subspace(rtg).dim,
        "L_C": lc_measures(rtg).dim,
        "L_G": lg_measures(rtg).dim,
        "haar_canonical": [la.fmt(x) for x in haar.canonical(rtg)],
        "haar_uniqueness_dim": dim,
    }


def fn_subspace_as_measures(rtg: RtGroup, A: FnSubspace) -> MeasSubspace:
    return MeasSubspace.span(len(rtg.cells()), [density_measure(rtg, f).canonical(rtg) for f in A.basis])


def point_masses(rtg: RtGroup, S: Iterable[int]) -> list[Meas]:
    return [Meas.point(rtg.n, g) for g in S]


def uniform_cell_vector(rtg: RtGroup) -> tuple:
    k = len(rtg.cells())
    return tuple(Fraction(1, k) for _ in range(k))


__all__ = [
    "Meas",
    "MeasSubspace",
    "act",
    "convolve",
    "mc_subspace",
    "msigma_subspace",
    "mw_subspace",
    "lc_measures",
    "lg_measures",
    "haar_solver",
    "lambda_H",
    "check_translates_in_mc",
    "indicator",
]
