"""Haar measure from a decreasing chain of normal subgroups.

A chain G = L_0 > L_1 > ... > L_k = {e} is built up one step at a time:
psi_0 evaluates on the one-point space G/L_0, and psi_{i+1} = psi_i o phi_i
where phi_i averages a function on G/L_{i+1} over L_i/L_{i+1}.

strict  - every L_i σ-closed, every L_i/L_{i+1} a Hausdorff topological group,
          G/L_{i+1} x L_i/L_{i+1} -> G/L_{i+1} jointly continuous
relaxed - Hausdorff and σ-closedness dropped; the rest kept
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import groups as gr
from . import linalg as la
from .groups import GroupTable, Subgrp
from .measures import Meas, haar_solver, msigma_subspace
from .rtg import (
    RtGroup,
    action_continuity,
    is_sigma_closed,
    is_topological,
    make_rtg_from_topology,
    quotient_topology,
    subquotient_topology,
)
from .topology import AlexandrovTopology, is_continuous_fn, separation

STRICT = "strict"
RELAXED = "relaxed"


class PreconditionFailed(ValueError):
    def __init__(self, which: str, witness=None):
        super().__init__(f"{which} (witness {witness!r})")
        self.which = which
        self.witness = witness


class SystemNotCertified(ValueError):
    pass


class NotInvariant(ValueError):
    pass


class MuNotInMSigma(ValueError):
    pass


class ZeroTotalMass(ValueError):
    pass


@dataclass(frozen=True)
class StepCert:
    lower_sigma_closed: bool
    quotient_hausdorff: bool
    quotient_topological: bool
    action_separate: bool
    action_joint: bool

    def ok(self, mode: str) -> bool:
        base = self.quotient_topological and self.action_joint
        if mode == STRICT:
            return base and self.lower_sigma_closed and self.quotient_hausdorff
        return base

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class NormalSystem:
    chain: tuple[Subgrp, ...]
    mode: str
    certificates: tuple[StepCert, ...]

    @property
    def certified(self) -> bool:
        return all(c.ok(self.mode) for c in self.certificates)

    def to_json(self, G: GroupTable | None = None) -> dict:
        lab = (lambda x: G.label(x)) if G is not None else str
        return {
            "mode": self.mode,
            "chain": [[lab(x) for x in L.elements] for L in self.chain],
            "certificates": [c.as_dict() for c in self.certificates],
        }


def certify_step(rtg: RtGroup, L: Subgrp, M: Subgrp) -> StepCert:
    LQ, TL = subquotient_topology(rtg, L, M)
    try:
        top = is_topological(make_rtg_from_topology(LQ, TL))
    except ValueError:
        top = False
    sep, joint = action_continuity(rtg, L, M)
    return StepCert(
        lower_sigma_closed=is_sigma_closed(rtg, M),
        quotient_hausdorff=separation(TL).is_hausdorff,
        quotient_topological=top,
        action_separate=sep,
        action_joint=joint,
    )


def certify(rtg: RtGroup, chain: Sequence[Subgrp], mode: str) -> NormalSystem:
    certs = tuple(certify_step(rtg, chain[i], chain[i + 1]) for i in range(len(chain) - 1))
    return NormalSystem(tuple(chain), mode, certs)


def _chains(G: GroupTable) -> list[tuple[Subgrp, ...]]:
    normals = gr.normal_subgroups(G)
    below: dict[Subgrp, list[Subgrp]] = {
        A: [B for B in normals if B.size < A.size and B.mask & ~A.mask == 0] for A in normals
    }
    out = []
    bottom = G.trivial()

    def walk(path):
        top = path[-1]
        if top == bottom:
            out.append(tuple(path))
            return
        for B in below[top]:
            walk(path + [B])

    walk([G.whole()])
    return out


def find_normal_systems(rtg: RtGroup, mode: str = STRICT) -> list[NormalSystem]:
    if mode not in (STRICT, RELAXED):
        raise ValueError(f"mode must be strict or relaxed, not {mode!r}")
    return list(rtg._cached(("systems", mode), lambda: tuple(_find_systems(rtg, mode))))


def _find_systems(rtg: RtGroup, mode: str) -> list[NormalSystem]:
    step_cache: dict[tuple[int, int], StepCert] = {}
    out = []
    for chain in _chains(rtg.group):
        certs = []
        for i in range(len(chain) - 1):
            key = (chain[i].mask, chain[i + 1].mask)
            if key not in step_cache:
                step_cache[key] = certify_step(rtg, chain[i], chain[i + 1])
            certs.append(step_cache[key])
        ns = NormalSystem(chain, mode, tuple(certs))
        if ns.certified:
            out.append(ns)
    return out


# ---------------------------------------------------------------- averaging operator


@dataclass(frozen=True)
class AveragingOperator:
    """phi : C(G/M) -> C(G/L), phi(f)([s]) = sum over [t] in L/M of f([st]) nu([t]).

    Functions are vectors indexed by quotient elements; ``matrix[a][b]`` is the
    weight of f(b) in phi(f)(a).
    """

    QL: GroupTable
    projL: tuple[int, ...]
    QM: GroupTable
    projM: tuple[int, ...]
    matrix: tuple[tuple[Fraction, ...], ...]

    def __call__(self, f: Sequence) -> tuple:
        return tuple(la.simplify(sum((w * f[b] for b, w in enumerate(row) if w), Fraction(0))) for row in self.matrix)

    def pullback(self, f: Sequence) -> tuple:
        """C(G/L) -> C(G/M), f -> f o (G/M -> G/L)."""
        return tuple(f[self._down[b]] for b in range(self.QM.order))

    @property
    def _down(self) -> list[int]:
        down = [0] * self.QM.order
        for x in range(len(self.projM)):
            down[self.projM[x]] = self.projL[x]
        return down

    def right_translate_M(self, f: Sequence, g: int) -> tuple:
        """(R_g f)([x]) = f([xg]) on G/M."""
        pg = self.projM[g]
        return tuple(f[self.QM.mul[b][pg]] for b in range(self.QM.order))

    def right_translate_L(self, f: Sequence, g: int) -> tuple:
        pg = self.projL[g]
        return tuple(f[self.QL.mul[a][pg]] for a in range(self.QL.order))


def averaging_operator(rtg: RtGroup, L: Subgrp, M: Subgrp, check: bool = True) -> AveragingOperator:
    G = rtg.group
    if M.mask & ~L.mask:
        raise PreconditionFailed("M is not contained in L", list(M.elements))
    for K, name in ((L, "L"), (M, "M")):
        if not G.is_normal(K):
            raise PreconditionFailed(f"{name} is not normal", list(K.elements))
    if check:
        LQ, TL = subquotient_topology(rtg, L, M)
        try:
            ok = is_topological(make_rtg_from_topology(LQ, TL))
        except ValueError:
            ok = False
        if not ok:
            raise PreconditionFailed("L/M is not a topological group", list(L.elements))
    QL, projL = gr.quotient_group(G, L)
    QM, projM = gr.quotient_group(G, M)
    lm = sorted({projM[t] for t in L.elements})
    # Haar measure of the topological group L/M: uniform on its elements
    w = Fraction(1, len(lm))
    rep_of_L = {}
    for x in range(G.order):
        rep_of_L.setdefault(projL[x], projM[x])
    rows = []
    for a in range(QL.order):
        s = rep_of_L[a]
        row = [Fraction(0)] * QM.order
        for t in lm:
            row[QM.mul[s][t]] += w
        rows.append(tuple(row))
    return AveragingOperator(QL, projL, QM, projM, tuple(rows))


def averaging_properties(rtg: RtGroup, phi: AveragingOperator) -> dict:
    """Positivity, retraction, right equivariance and continuity, checked exactly."""
    QM, QL = phi.QM, phi.QL
    positive = all(w >= 0 for row in phi.matrix for w in row)
    retraction = True
    for a in range(QL.order):
        e = tuple(Fraction(int(b == a)) for b in range(QL.order))
        if phi(phi.pullback(e)) != e:
            retraction = False
            break
    equivariant = True
    # equivariance for a generating set gives it for every g
    for g in gr.generators(rtg.group):
        for b in range(QM.order):
            f = tuple(Fraction(int(c == b)) for c in range(QM.order))
            if phi(phi.right_translate_M(f, g)) != phi.right_translate_L(phi(f), g):
                equivariant = False
                break
        if not equivariant:
            break
    TM = _quotient_tau(rtg, phi.projM, QM.order)
    TL = _quotient_tau(rtg, phi.projL, QL.order)
    continuous = all(is_continuous_fn(phi(f), TL) for f in _indicators_of_cells(TM))
    return {"positive": positive, "retraction": retraction, "equivariant": equivariant, "continuous": continuous}


def _quotient_tau(rtg: RtGroup, proj: Sequence[int], m: int) -> AlexandrovTopology:
    from .topology import final_topology

    return final_topology(rtg.tau, proj, m)


def _indicators_of_cells(T: AlexandrovTopology) -> list[tuple]:
    return [tuple(Fraction(int(x in c)) for x in range(T.n)) for c in T.cells()]


# ---------------------------------------------------------------- construction


@dataclass
class HaarLevel:
    subgroup: Subgrp
    quotient: GroupTable
    proj: tuple[int, ...]
    weights: tuple  # psi_i as a weight vector on G/L_i


@dataclass
class HaarState:
    levels: list[HaarLevel] = field(default_factory=list)

    def conditions(self, rtg: RtGroup) -> dict:
        """Positivity, right invariance, consistency with coarser levels, boundedness."""
        positive = all(w >= 0 for lv in self.levels for w in lv.weights)
        bounded = all(sum(lv.weights, Fraction(0)) == 1 for lv in self.levels)
        invariant = True
        for lv in self.levels:
            T = _quotient_tau(rtg, lv.proj, lv.quotient.order)
            cells = T.cells()
            Q = lv.quotient
            base = [sum((lv.weights[x] for x in c), Fraction(0)) for c in cells]
            for g in range(Q.order):
                moved = [sum((lv.weights[Q.mul[x][g]] for x in c), Fraction(0)) for c in cells]
                if moved != base:
                    invariant = False
        consistent = True
        for j, fine in enumerate(self.levels):
            for coarse in self.levels[:j]:
                push = [Fraction(0)] * coarse.quotient.order
                seen = set()
                for x in range(len(fine.proj)):
                    if fine.proj[x] not in seen:
                        seen.add(fine.proj[x])
                        push[coarse.proj[x]] += fine.weights[fine.proj[x]]
                if tuple(push) != tuple(coarse.weights):
                    consistent = False
        return {"positive": positive, "right_invariant": invariant, "consistent": consistent, "bounded": bounded}


def construct_haar(rtg: RtGroup, system: NormalSystem, state: HaarState | None = None) -> Meas:
    if not system.certified:
        raise SystemNotCertified(f"chain is not certified in {system.mode} mode")
    G = rtg.group
    chain = system.chain
    Q0, p0 = gr.quotient_group(G, chain[0])
    levels = [HaarLevel(chain[0], Q0, p0, tuple([Fraction(1)] * Q0.order))]
    w = levels[0].weights
    for i in range(len(chain) - 1):
        phi = averaging_operator(rtg, chain[i], chain[i + 1], check=False)
        # psi_{i+1}(f) = psi_i(phi f), so the new weights are phi^T w
        new = [Fraction(0)] * phi.QM.order
        for a, row in enumerate(phi.matrix):
            if w[a]:
                for b, x in enumerate(row):
                    if x:
                        new[b] += w[a] * x
        w = tuple(new)
        levels.append(HaarLevel(chain[i + 1], phi.QM, phi.projM, w))
    if state is not None:
        state.levels = levels
    last = levels[-1]
    return Meas(tuple(last.weights[last.proj[x]] for x in range(G.order)))


def verify_uniqueness(rtg: RtGroup, mu1: Meas, mu2: Meas) -> bool:
    from .measures import is_right_invariant

    for mu in (mu1, mu2):
        if not is_right_invariant(rtg, mu):
            raise NotInvariant("measure is not right invariant")
    a, b = mu1.canonical(rtg), mu2.canonical(rtg)
    # proportional: every 2x2 minor vanishes
    return all(a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(i + 1, len(a)))


def haar_from_orbit_average(rtg: RtGroup, mu: Meas) -> Meas:
    """Average of the right orbit, normalized.  Finitely the average exists for
    any mu with nonzero mass; the M_σ hypothesis is still enforced."""
    if not msigma_subspace(rtg).contains(mu, rtg):
        raise MuNotInMSigma("mu is not in M_σ")
    tot = mu.total()
    if tot == 0:
        raise ZeroTotalMass("mu(G) = 0")
    acc = Meas(tuple([Fraction(0)] * rtg.n))
    for g in range(rtg.n):
        acc = acc + mu.right_translate(g, rtg)
    return acc.scale(1 / (tot * rtg.n))


def construction_agrees(rtg: RtGroup, system: NormalSystem) -> bool:
    return construct_haar(rtg, system).radon_equal(haar_solver(rtg)[0], rtg)


def quotient_tau(rtg: RtGroup, K: Subgrp) -> AlexandrovTopology:
    return quotient_topology(rtg, K)[2]
