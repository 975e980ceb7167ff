"""Finite right topological groups.

On a finite group every topology making all right translations homeomorphisms
is the partition into right cosets Hx of one subgroup H (the cone, H = U_e).
Everything here is computed from the topology directly; the closed forms in
terms of H (normaliser, normal closure) are kept as separate oracles.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Sequence

from . import groups as gr
from .groups import GroupTable, Subgrp, elements_of, mask_of
from .topology import (
    AlexandrovTopology,
    _bits,
    final_topology,
    is_continuous,
    is_open_map,
    product_topology,
    separation,
)


class NotASubgroup(ValueError):
    pass


class NotRightInvariant(ValueError):
    def __init__(self, witness: tuple[int, int, int]):
        x, y, g = witness
        super().__init__(f"right translation by {g} is not a homeomorphism: y={y} vs U_x for x={x}")
        self.witness = witness


class OracleMismatch(AssertionError):
    pass


def coset_topology(G: GroupTable, K: Subgrp) -> AlexandrovTopology:
    """Partition of G into right cosets Kx."""
    rows = [0] * G.order
    for x in range(G.order):
        if rows[x] == 0:
            c = G.right_coset(K, x)
            for y in _bits(c):
                rows[y] = c
    return AlexandrovTopology(G.order, tuple(rows))


@dataclass(frozen=True)
class SigmaData:
    sigma: AlexandrovTopology
    sigma_sigma: AlexandrovTopology
    n_of_G: Subgrp


@dataclass(frozen=True, eq=False)
class RtGroup:
    group: GroupTable
    tau: AlexandrovTopology
    cone: Subgrp
    name: str = ""
    _lock: threading.RLock = field(default_factory=threading.RLock, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.group.order

    @property
    def ident(self) -> str:
        return self.name or f"{self.group.name}|H={list(self.cone.elements)}"

    def _cached(self, key, compute):
        # at most one computation per key, then read-only
        with self._lock:
            if key not in self._cache:
                self._cache[key] = compute()
            return self._cache[key]

    def sigma_data(self) -> SigmaData:
        return self._cached("sigma", lambda: _compute_sigma(self))

    @property
    def sigma(self) -> AlexandrovTopology:
        return self.sigma_data().sigma

    @property
    def n_of_G(self) -> Subgrp:
        return self.sigma_data().n_of_G

    def with_sigma(self, sigma: AlexandrovTopology) -> "RtGroup":
        """Copy that trusts a precomputed σ (e.g. loaded from a file); verification re-derives it."""
        r = RtGroup(self.group, self.tau, self.cone, self.name)
        sigma_sigma = _final_phi(self.group, sigma)
        r._cache["sigma"] = SigmaData(sigma, sigma_sigma, Subgrp.from_mask(sigma_sigma.closure(1 << self.group.identity)))
        return r

    def cells(self) -> list[tuple[int, ...]]:
        return self._cached("cells", self.tau.cells)

    def cell_index(self) -> tuple[int, ...]:
        return self._cached("cell_index", self.tau.cell_index)

    def to_json(self) -> dict:
        d = {"group": self.group.to_json(), "cone": list(self.cone.elements)}
        if self.name:
            d["name"] = self.name
        return d


# ---------------------------------------------------------------- constructors


def make_rtg(G: GroupTable, H: Subgrp | Sequence[int], name: str = "") -> RtGroup:
    if not isinstance(H, Subgrp):
        H = Subgrp.of(H)
    if not gr.is_subgroup(G, H.elements):
        raise NotASubgroup(f"{list(H.elements)} is not a subgroup of {G.name or 'G'}")
    return RtGroup(G, coset_topology(G, H), H, name)


def make_rtg_from_topology(G: GroupTable, T: AlexandrovTopology, name: str = "") -> RtGroup:
    if T.n != G.order:
        raise ValueError("point count does not match group order")
    for x in range(G.order):
        for g in range(G.order):
            xg = G.mul[x][g]
            translated = mask_of(G.mul[y][g] for y in _bits(T.rows[x]))
            if translated != T.rows[xg]:
                diff = translated ^ T.rows[xg]
                z = (diff & -diff).bit_length() - 1
                y = z if T.rows[xg] >> z & 1 else G.mul[z][G.inv[g]]
                raise NotRightInvariant((x, y, g))
    cone = Subgrp.from_mask(T.rows[G.identity])
    if not gr.is_subgroup(G, cone.elements):
        raise NotASubgroup("U_e is not a subgroup")
    for x in range(G.order):
        if T.rows[x] != G.right_coset(cone, x):
            raise NotRightInvariant((x, x, x))
    return RtGroup(G, T, cone, name)


# ---------------------------------------------------------------- centre and admissibility


def left_translation(G: GroupTable, g: int) -> tuple[int, ...]:
    return tuple(G.mul[g][x] for x in range(G.order))


def right_translation(G: GroupTable, g: int) -> tuple[int, ...]:
    return tuple(G.mul[x][g] for x in range(G.order))


def topological_center(rtg: RtGroup) -> Subgrp:
    G = rtg.group
    return Subgrp.of(g for g in range(G.order) if is_continuous(left_translation(G, g), rtg.tau, rtg.tau))


def topological_center_oracle(rtg: RtGroup) -> Subgrp:
    return gr.normalizer(rtg.group, rtg.cone)


def is_admissible(rtg: RtGroup) -> bool:
    lam = topological_center(rtg)
    return rtg.tau.closure(lam.mask) == rtg.group.all_mask


def multiplication_map(G: GroupTable) -> tuple[int, ...]:
    return tuple(G.mul[x][y] for x in range(G.order) for y in range(G.order))


def phi_map(G: GroupTable) -> tuple[int, ...]:
    """(x, y) -> x^-1 y on the product index x * n + y."""
    return tuple(G.mul[G.inv[x]][y] for x in range(G.order) for y in range(G.order))


def is_topological(rtg: RtGroup) -> bool:
    """Joint continuity of multiplication and continuity of inversion, checked directly."""
    G, T = rtg.group, rtg.tau
    if not is_continuous(multiplication_map(G), product_topology(T, T), T):
        return False
    return is_continuous(G.inv, T, T)


def is_topological_oracle(rtg: RtGroup) -> bool:
    return rtg.group.is_normal(rtg.cone)


# ---------------------------------------------------------------- σ and σσ


def _final_phi(G: GroupTable, T: AlexandrovTopology) -> AlexandrovTopology:
    return final_topology(product_topology(T, T), phi_map(G), G.order)


def _compute_sigma(rtg: RtGroup) -> SigmaData:
    sigma = _final_phi(rtg.group, rtg.tau)
    ss = _final_phi(rtg.group, sigma)
    return SigmaData(sigma, ss, Subgrp.from_mask(ss.closure(1 << rtg.group.identity)))


def sigma_topology(rtg: RtGroup, check: bool = False) -> AlexandrovTopology:
    s = rtg.sigma
    if check and s != sigma_oracle(rtg):
        raise OracleMismatch("generic σ differs from the normal-closure coset partition")
    return s


def sigma_oracle(rtg: RtGroup) -> AlexandrovTopology:
    return coset_topology(rtg.group, gr.normal_closure(rtg.group, rtg.cone.elements))


def sigma_sigma_topology(rtg: RtGroup, check: bool = False) -> SigmaData:
    d = rtg.sigma_data()
    if check:
        N = gr.normal_closure(rtg.group, rtg.cone.elements)
        if d.n_of_G != N or d.sigma_sigma != coset_topology(rtg.group, N):
            raise OracleMismatch("σσ or N(G) differs from the normal-closure oracle")
    return d


def is_sigma_closed(rtg: RtGroup, L: Subgrp) -> bool:
    return rtg.sigma.closure(L.mask) == L.mask


def is_sigma_sigma_closed(rtg: RtGroup, L: Subgrp) -> bool:
    return rtg.sigma_data().sigma_sigma.closure(L.mask) == L.mask


NBHDS_IN_G = "nbhds_in_G"
NBHDS_IN_L = "nbhds_in_L"


def n_of(rtg: RtGroup, L: Subgrp, variant: str = NBHDS_IN_G) -> Subgrp:
    """Intersection of the σ-closed σ-neighbourhoods of e, restricted to L.

    A point x is excluded iff e lies in the interior of the closed set
    complementary to the smallest σ-open set around x.  ``nbhds_in_G`` takes
    interiors and closed sets in (G, σ); ``nbhds_in_L`` in L with the induced σ.
    """
    S = rtg.sigma
    e = rtg.group.identity
    out = []
    if variant == NBHDS_IN_G:
        for x in L.elements:
            comp = S.full & ~S.rows[x]
            if not S.interior(comp) >> e & 1:
                out.append(x)
    elif variant == NBHDS_IN_L:
        pts = list(L.elements)
        SL = S.subspace(pts)
        pe = pts.index(e)
        for k, x in enumerate(pts):
            comp = SL.full & ~SL.rows[k]
            if not SL.interior(comp) >> pe & 1:
                out.append(x)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return Subgrp.of(out)


def intrinsic_sigma_subgroup(rtg: RtGroup, L: Subgrp) -> AlexandrovTopology:
    """σ-topology of (L, τ restricted to L), as a topology on L's sorted elements."""
    G = rtg.group
    pts = list(L.elements)
    pos = {p: k for k, p in enumerate(pts)}
    TL = rtg.tau.subspace(pts)
    phi = tuple(pos[G.mul[G.inv[x]][y]] for x in pts for y in pts)
    return final_topology(product_topology(TL, TL), phi, len(pts))


def induced_sigma_subgroup(rtg: RtGroup, L: Subgrp) -> AlexandrovTopology:
    return rtg.sigma.subspace(list(L.elements))


# ---------------------------------------------------------------- quotients


@dataclass(frozen=True)
class QuotientFlags:
    hausdorff: bool
    k_sigma_closed: bool
    topological: bool
    hausdorff_topological: bool
    k_sigma_sigma_closed: bool
    sigma_commutes: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class QuotientResult:
    rtg: RtGroup
    sigma_quotient: AlexandrovTopology
    projection: tuple[int, ...]
    flags: QuotientFlags


def quotient_rtg(rtg: RtGroup, K: Subgrp) -> QuotientResult:
    Q, proj = gr.quotient_group(rtg.group, K)
    tau_q = final_topology(rtg.tau, proj, Q.order)
    q = make_rtg_from_topology(Q, tau_q, f"{rtg.ident}/K={list(K.elements)}")
    sigma_q = final_topology(rtg.sigma, proj, Q.order)
    hausdorff = separation(tau_q).is_hausdorff
    top = is_topological(q)
    flags = QuotientFlags(
        hausdorff=hausdorff,
        k_sigma_closed=is_sigma_closed(rtg, K),
        topological=top,
        hausdorff_topological=hausdorff and top,
        k_sigma_sigma_closed=is_sigma_sigma_closed(rtg, K),
        sigma_commutes=q.sigma == sigma_q,
    )
    return QuotientResult(q, sigma_q, proj, flags)


# ---------------------------------------------------------------- action maps


def quotient_topology(rtg: RtGroup, M: Subgrp) -> tuple[GroupTable, tuple[int, ...], AlexandrovTopology]:
    Q, proj = gr.quotient_group(rtg.group, M)
    return Q, proj, final_topology(rtg.tau, proj, Q.order)


def action_continuity(rtg: RtGroup, L: Subgrp, M: Subgrp) -> tuple[bool, bool]:
    """(separately, jointly) continuous for G/M x L/M -> G/M, ([x],[y]) -> [xy].

    G/M carries the τ-quotient topology and L/M the subspace topology from it.
    """
    Q, proj, TQ = quotient_topology(rtg, M)
    lpts = sorted({proj[y] for y in L.elements})
    TL = TQ.subspace(lpts)
    m, k = Q.order, len(lpts)
    act = tuple(Q.mul[a][lpts[b]] for a in range(m) for b in range(k))
    joint = is_continuous(act, product_topology(TQ, TL), TQ)
    first = all(is_continuous(tuple(Q.mul[a][lpts[b]] for a in range(m)), TQ, TQ) for b in range(k))
    second = all(is_continuous(tuple(Q.mul[a][lpts[b]] for b in range(k)), TL, TQ) for a in range(m))
    return first and second, joint


def subquotient_topology(rtg: RtGroup, L: Subgrp, M: Subgrp) -> tuple[GroupTable, AlexandrovTopology]:
    """L/M as a group with the subspace topology of (G/M, τ-quotient)."""
    G = rtg.group
    Q, proj, TQ = quotient_topology(rtg, M)
    lpts = sorted({proj[y] for y in L.elements})
    pos = {p: i for i, p in enumerate(lpts)}
    table = [[pos[Q.mul[a][b]] for b in lpts] for a in lpts]
    LQ = gr.validate_group(table, f"{G.name}:L/M")
    return LQ, TQ.subspace(lpts)


# ---------------------------------------------------------------- Namioka base


def check_namioka_base(rtg: RtGroup) -> dict:
    G, T, S = rtg.group, rtg.tau, rtg.sigma
    e = G.identity
    phi_open = is_open_map(phi_map(G), product_topology(T, T), S)
    # the minimal τ-neighbourhood U_e is contained in every base at e
    U = T.rows[e]
    UinvU = G.setmul([G.inv[u] for u in _bits(U)], list(_bits(U)))
    is_nbhd = S.interior(UinvU) >> e & 1 == 1
    # σ-open sets containing e all contain the minimal one, so a base must fit inside it
    base = is_nbhd and UinvU & ~S.rows[e] == 0
    admissible = is_admissible(rtg)
    return {
        "admissible": admissible,
        "phi_open": phi_open,
        "base_at_e": base,
        "UinvU": list(elements_of(UinvU)),
        "sigma_min_nbhd": list(elements_of(S.rows[e])),
        "holds": phi_open and base,
    }


def continuous_homomorphisms(rtg: RtGroup, T: GroupTable) -> list[tuple[int, ...]]:
    """Homomorphisms into T (discrete) that are τ-continuous."""
    disc = AlexandrovTopology.discrete(T.order)
    return [f for f in gr.homomorphisms(rtg.group, T) if is_continuous(f, rtg.tau, disc)]


# ---------------------------------------------------------------- JSON


def rtg_from_json(d: dict) -> RtGroup:
    """{"group", "cone"} or {"group", "topology"}; an optional "sigma" topology
    is trusted as the precomputed σ (verification re-derives it)."""
    G = gr.group_from_json(d["group"])
    name = d.get("name", "")
    if "cone" in d:
        r = make_rtg(G, [int(x) for x in d["cone"]], name)
    elif "topology" in d:
        r = make_rtg_from_topology(G, AlexandrovTopology.from_json(d["topology"]), name)
    else:
        raise ValueError("instance needs a 'cone' or a 'topology'")
    if "sigma" in d:
        r = r.with_sigma(AlexandrovTopology.from_json(d["sigma"]))
    return r
