"""Property registry and suite runner.

Each property has a stable id and maps an instance to a record with status
pass / fail / degenerate-pass / diagnostic.  ``degenerate-pass`` marks facts
that hold only vacuously on finite models; ``diagnostic`` reports data for
statements whose hypotheses are not met.  Neither fails a run.
"""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from . import functions as fn
from . import groups as gr
from . import haar as hr
from . import measures as ms
from . import rtg as R
from .groups import Subgrp
from .linalg import QQi
from .rtg import RtGroup
from .topology import _bits, is_continuous, is_open_map, separation

PASS = "pass"
FAIL = "fail"
DEGENERATE = "degenerate-pass"
DIAGNOSTIC = "diagnostic"
STATUSES = (PASS, FAIL, DEGENERATE, DIAGNOSTIC)

SUITES = ("sigma", "functions", "measures", "haar")


@dataclass(frozen=True)
class Rec:
    status: str
    witness: object = None
    detail: object = None


def ok(cond: bool, witness=None, detail=None) -> Rec:
    return Rec(PASS if cond else FAIL, None if cond else witness, detail)


@dataclass(frozen=True)
class Property:
    id: str
    suite: str
    check: Callable[[RtGroup], Rec]
    doc: str = ""


REGISTRY: list[Property] = []


def prop(pid: str, suite: str):
    def deco(f):
        REGISTRY.append(Property(pid, suite, f, (f.__doc__ or "").strip()))
        return f

    return deco


def properties(suite: str) -> list[Property]:
    if suite == "all":
        return list(REGISTRY)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return [p for p in REGISTRY if p.suite == suite]


def _els(G, m) -> list[str]:
    return [G.label(x) for x in (m.elements if isinstance(m, Subgrp) else gr.elements_of(m))]


def _first_row_diff(A, B):
    for x, (a, b) in enumerate(zip(A.rows, B.rows)):
        if a != b:
            return x
    return None


# ---------------------------------------------------------------- sigma suite


@prop("sigma.oracle", "sigma")
def _sigma_oracle(r: RtGroup) -> Rec:
    """σ (as held by the instance) = generic final topology = coset partition of the normal closure."""
    G = r.group
    generic = R._final_phi(G, r.tau)
    oracle = R.sigma_oracle(r)
    for name, T in (("held", r.sigma), ("generic", generic)):
        if T != oracle:
            x = _first_row_diff(T, oracle)
            return Rec(FAIL, {"which": name, "point": G.label(x), "got": _els(G, T.rows[x]), "expected": _els(G, oracle.rows[x])})
    return Rec(PASS)


@prop("sigma.sigma-sigma", "sigma")
def _sigma_sigma(r: RtGroup) -> Rec:
    """σσ = σ on finite models."""
    d = r.sigma_data()
    return ok(d.sigma_sigma == d.sigma, {"point": r.group.label(_first_row_diff(d.sigma_sigma, d.sigma) or 0)})


@prop("sigma.n-of-g", "sigma")
def _n_of_g(r: RtGroup) -> Rec:
    """N(G) three ways: n_of(G), σσ-closure of e, normal closure of the cone."""
    G = r.group
    a = R.n_of(r, G.whole(), R.NBHDS_IN_G)
    b = r.n_of_G
    c = gr.normal_closure(G, r.cone.elements)
    return ok(a == b == c, {"n_of": _els(G, a), "ss_closure": _els(G, b), "normal_closure": _els(G, c)})


@prop("sigma.n-of-variants", "sigma")
def _n_of_variants(r: RtGroup) -> Rec:
    """N(L) with neighbourhoods taken in G vs in L, over all subgroups; must agree at L = G."""
    G = r.group
    diff = []
    for L in gr.subgroups(G):
        a, b = R.n_of(r, L, R.NBHDS_IN_G), R.n_of(r, L, R.NBHDS_IN_L)
        if a != b:
            if L == G.whole():
                return Rec(FAIL, {"L": _els(G, L), "in_G": _els(G, a), "in_L": _els(G, b)})
            diff.append({"L": _els(G, L), "in_G": _els(G, a), "in_L": _els(G, b)})
    return Rec(DIAGNOSTIC, None, {"disagreements": diff[:5], "count": len(diff)})


@prop("sigma.induced-vs-intrinsic", "sigma")
def _induced_vs_intrinsic(r: RtGroup) -> Rec:
    """σ of (L, τ|L) against σ of G restricted to L, over all subgroups (data)."""
    G = r.group
    diff = [_els(G, L) for L in gr.subgroups(G) if R.intrinsic_sigma_subgroup(r, L) != R.induced_sigma_subgroup(r, L)]
    return Rec(DIAGNOSTIC, None, {"differing_subgroups": diff[:5], "count": len(diff)})


@prop("sigma.coarser", "sigma")
def _si1(r: RtGroup) -> Rec:
    """Every σ-open set is τ-open."""
    return ok(r.sigma.coarser_than(r.tau), {"point": r.group.label(_first_row_diff(r.sigma, r.tau) or 0)})


@prop("sigma.equal-iff-topological", "sigma")
def _si2(r: RtGroup) -> Rec:
    """σ = τ iff multiplication and inversion are continuous iff the cone is normal."""
    eq = r.sigma == r.tau
    top = R.is_topological(r)
    nrm = R.is_topological_oracle(r)
    return ok(eq == top == nrm, {"sigma_eq_tau": eq, "topological": top, "cone_normal": nrm})


@prop("sigma.inverse-continuous", "sigma")
def _si3(r: RtGroup) -> Rec:
    """x -> x^-1 is σ-σ continuous."""
    return ok(is_continuous(r.group.inv, r.sigma, r.sigma))


@prop("center.normalizer", "sigma")
def _center(r: RtGroup) -> Rec:
    """Λ(G) by left-translation continuity equals the normaliser of the cone."""
    G = r.group
    lam, orc = R.topological_center(r), R.topological_center_oracle(r)
    return ok(lam == orc, {"direct": _els(G, lam), "normalizer": _els(G, orc)}, {"admissible": R.is_admissible(r)})


@prop("quotient.hausdorff-iff-sigma-closed", "sigma")
def _q_hausdorff(r: RtGroup) -> Rec:
    """G/K Hausdorff iff K σ-closed, every normal K."""
    for K in gr.normal_subgroups(r.group):
        f = R.quotient_rtg(r, K).flags
        if f.hausdorff != f.k_sigma_closed:
            return Rec(FAIL, {"K": _els(r.group, K), **f.as_dict()})
    return Rec(PASS)


@prop("quotient.hausdorff-topological-iff-sigma-sigma-closed", "sigma")
def _q_hausdorff_topological(r: RtGroup) -> Rec:
    """(G/K, τ) Hausdorff topological iff K σσ-closed, every normal K."""
    for K in gr.normal_subgroups(r.group):
        f = R.quotient_rtg(r, K).flags
        if f.hausdorff_topological != f.k_sigma_sigma_closed:
            return Rec(FAIL, {"K": _els(r.group, K), **f.as_dict()})
    return Rec(PASS)


@prop("quotient.sigma-sigma-closed-normal", "sigma")
def _q_sigma_sigma_closed_normal(r: RtGroup) -> Rec:
    """For τ-closed normal K: (G/K, τ) topological iff K σσ-closed."""
    for K in gr.normal_subgroups(r.group):
        if not r.tau.is_closed(K.mask):
            continue
        f = R.quotient_rtg(r, K).flags
        if f.topological != f.k_sigma_sigma_closed:
            return Rec(FAIL, {"K": _els(r.group, K), **f.as_dict()})
    return Rec(PASS)


@prop("quotient.sigma-commutes", "sigma")
def _q_commute(r: RtGroup) -> Rec:
    """σ of the quotient = quotient of σ, every normal K; for σ-closed K also
    (G/K, τ) = (G/K, σ) iff (G/K, τ) topological."""
    for K in gr.normal_subgroups(r.group):
        q = R.quotient_rtg(r, K)
        if not q.flags.sigma_commutes:
            return Rec(FAIL, {"K": _els(r.group, K), "clause": "sigma_commutes"})
        if q.flags.k_sigma_closed and (q.rtg.tau == q.sigma_quotient) != q.flags.topological:
            return Rec(FAIL, {"K": _els(r.group, K), "clause": "tau_eq_sigma_iff_topological"})
    return Rec(PASS)


@prop("topology.joint-continuity-open", "sigma")
def _namioka(r: RtGroup) -> Rec:
    """Admissible: φ open and {U^-1 U} a σ-base at e.  Otherwise reported."""
    rep = R.check_namioka_base(r)
    if rep["admissible"]:
        return ok(rep["holds"], rep)
    return Rec(DIAGNOSTIC, None, {"phi_open": rep["phi_open"], "base_at_e": rep["base_at_e"]})


@prop("homomorphisms.factor-through-quotient", "sigma")
def _factor(r: RtGroup) -> Rec:
    """Continuous homomorphisms into Z2, Z3 (discrete) are constant on N(G)-cosets."""
    G = r.group
    N = r.n_of_G
    for T in (gr.cyclic(2), gr.cyclic(3)):
        for f in R.continuous_homomorphisms(r, T):
            for nn in N.elements:
                for x in range(G.order):
                    if f[G.mul[nn][x]] != f[x]:
                        return Rec(FAIL, {"target": T.name, "hom": list(f), "n": G.label(nn), "x": G.label(x)})
    return Rec(PASS)


@prop("topology.open-map-discrete-target", "sigma")
def _openmap(r: RtGroup) -> Rec:
    """Continuous surjective homomorphisms onto discrete Z2, Z3 are open (vacuous: targets are discrete)."""
    from .topology import AlexandrovTopology

    for T in (gr.cyclic(2), gr.cyclic(3)):
        D = AlexandrovTopology.discrete(T.order)
        for f in R.continuous_homomorphisms(r, T):
            if len(set(f)) == T.order and not is_open_map(f, r.tau, D):
                return Rec(FAIL, {"target": T.name, "hom": list(f)})
    return Rec(DEGENERATE)


@prop("quotient.metrizable-hausdorff-topological", "sigma")
def _metrizable(r: RtGroup) -> Rec:
    """Hausdorff instances are topological (finite Hausdorff means discrete)."""
    if separation(r.tau).is_hausdorff:
        return ok(R.is_topological(r))
    return Rec(DEGENERATE)


@prop("quotient.by-n-is-topological", "sigma")
def _quotient_by_n(r: RtGroup) -> Rec:
    """G/N(G) is topological with τ-quotient = σ-quotient and continuous action map."""
    N = r.n_of_G
    q = R.quotient_rtg(r, N)
    _, joint = R.action_continuity(r, r.group.whole(), N)
    return ok(
        q.flags.topological and q.rtg.tau == q.sigma_quotient and joint,
        {"topological": q.flags.topological, "tau_eq_sigma": q.rtg.tau == q.sigma_quotient, "action_joint": joint},
    )


# ---------------------------------------------------------------- functions suite


@prop("functions.csigma-in-lc", "functions")
def _csigma_in_lc(r: RtGroup) -> Rec:
    """C(G, σ) ⊆ LC(G)."""
    return ok(fn.lc_space(r).contains_space(fn.continuous_functions(r, "sigma")))


@prop("functions.separation-iff-topological", "functions")
def _separation(r: RtGroup) -> Rec:
    """LC(G) separates points from closed sets iff topological."""
    s = fn.separates_points_from_closed(fn.lc_space(r), r.tau)
    t = R.is_topological(r)
    return ok(s == t, {"separates": s, "topological": t})


@prop("functions.lc-equals-csigma", "functions")
def _lc_equals_csigma(r: RtGroup) -> Rec:
    """LC(G) = C(G, σ)."""
    a, b = fn.lc_space(r), fn.continuous_functions(r, "sigma")
    return ok(a.same(b), {"dim_LC": a.dim, "dim_Csigma": b.dim})


@prop("functions.fix-of-csigma", "functions")
def _fix_csigma(r: RtGroup) -> Rec:
    """Fix(C(G, σ)) = N(G)."""
    F = fn.fix(r, fn.continuous_functions(r, "sigma"))
    return ok(F == r.n_of_G, {"fix": _els(r.group, F), "N": _els(r.group, r.n_of_G)})


def generated_algebras(r: RtGroup) -> list[tuple[str, fn.FnSubspace]]:
    """Translation-invariant subalgebras of C(G) used by the Fix properties."""
    G = r.group
    out = []
    N = r.n_of_G
    for K in gr.normal_subgroups(G):
        if N.mask & ~K.mask == 0:
            cos = [gr.elements_of(G.right_coset(K, x)) for x in range(G.order)]
            out.append((f"cosets{list(K.elements)}", fn.FnSubspace.span(G.order, [fn.indicator(G.order, c) for c in cos])))
    cells = r.sigma.cells()
    f = [Fraction(0)] * G.order
    for k, c in enumerate(cells):
        for x in c:
            f[x] = Fraction(k * k + 1)
    out.append(("generated", fn.translation_invariant_algebra(r, [f])))
    return out


@prop("functions.fix-is-normal", "functions")
def _fix_normal(r: RtGroup) -> Rec:
    """For translation-invariant A: Fix(A) is normal and A = {f : L_y f = f, y in Fix(A)}."""
    G = r.group
    for name, A in generated_algebras(r):
        F = fn.fix(r, A)
        if not G.is_normal(F):
            return Rec(FAIL, {"algebra": name, "fix": _els(G, F), "clause": "normal"})
        if not fn.fixed_by(r, F).same(A):
            return Rec(FAIL, {"algebra": name, "fix": _els(G, F), "clause": "identification"})
    return Rec(PASS)


@prop("functions.wap-d-translate-continuity", "functions")
def _wap_d_translates(r: RtGroup) -> Rec:
    """For f in C(G) ∩ D(G), g -> R_{g^-1} f is constant on τ-cells."""
    G = r.group
    for f in fn.d_space(r).basis:
        for g in range(G.order):
            base = fn.translate(f, G.inv[g], "right", r)
            for g2 in _bits(r.tau.rows[g]):
                if fn.translate(f, G.inv[g2], "right", r) != base:
                    return Rec(FAIL, {"g": G.label(g), "g2": G.label(g2)})
    return Rec(PASS)


@prop("measures.l1-ap-d-in-lg", "functions")
def _l1_ap_d_in_lg(r: RtGroup) -> Rec:
    """{f dλ : f in AP ∩ D} ⊆ 𝓛_G."""
    return ok(ms.lg_measures(r).contains_space(ms.l1_ap_d_measures(r)))


@prop("measures.l1-ap-d-in-lc", "functions")
def _l1_ap_d_in_lc(r: RtGroup) -> Rec:
    """{f dλ : f in AP ∩ D} against 𝓛_C (reported; fails for the chosen 𝓛_C on non-topological groups)."""
    A = ms.l1_ap_d_measures(r)
    return Rec(DIAGNOSTIC, None, {"contained": ms.lc_measures(r).contains_space(A), "dim": A.dim})


@prop("ap-wap.finite-orbits", "functions")
def _apwap(r: RtGroup) -> Rec:
    """AP = WAP = C(G) because orbits are finite."""
    ap, wap = fn.ap_wap(r)
    C = fn.continuous_functions(r, "tau")
    if not (ap.same(C) and wap.same(C)):
        return Rec(FAIL)
    return Rec(DEGENERATE)


@prop("d-space.constants", "functions")
def _d_consts(r: RtGroup) -> Rec:
    """Constants lie in D(G)."""
    return ok(fn.d_space(r).contains_space(fn.constants(r.n)))


# ---------------------------------------------------------------- measures suite


def _rng(r: RtGroup, salt: str) -> random.Random:
    return random.Random(zlib.crc32(f"{r.ident}|{salt}".encode()))


def _random_combo(rng: random.Random, basis, r: RtGroup) -> ms.Meas:
    v = [Fraction(0)] * len(basis[0])
    for b in basis:
        c = QQi(rng.randint(-3, 3), rng.randint(-1, 1)) if rng.random() < 0.3 else Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        v = [vi + c * bi for vi, bi in zip(v, b)]
    return ms.Meas.from_canonical(r, v)


@prop("mc.associative", "measures")
def _assoc(r: RtGroup) -> Rec:
    """(μ□ν)□γ = μ□(ν□γ) on random rational triples in M_C."""
    B = ms.mc_subspace(r).basis
    rng = _rng(r, "assoc")
    for i in range(3):
        a, b, c = (_random_combo(rng, B, r) for _ in range(3))
        lhs = ms.convolve(ms.convolve(a, b, r, False), c, r, False)
        rhs = ms.convolve(a, ms.convolve(b, c, r, False), r, False)
        if not lhs.radon_equal(rhs, r):
            return Rec(FAIL, {"trial": i})
        if not ms.mc_subspace(r).contains(lhs, r):
            return Rec(FAIL, {"trial": i, "clause": "closed"})
    return Rec(PASS)


@prop("mc.identity", "measures")
def _ident(r: RtGroup) -> Rec:
    """δ_e is a two-sided identity on M_C."""
    e = ms.Meas.point(r.n, r.group.identity)
    for mu in ms.mc_subspace(r).measures(r):
        if not (ms.convolve(e, mu, r, False).radon_equal(mu, r) and ms.convolve(mu, e, r, False).radon_equal(mu, r)):
            return Rec(FAIL, {"mu": [str(x) for x in mu.canonical(r)]})
    return Rec(PASS)


@prop("mc.center-point-masses", "measures")
def _l1center(r: RtGroup) -> Rec:
    """δ_g lies in M_C for every g in Λ(G)."""
    mc = ms.mc_subspace(r)
    for g in R.topological_center(r).elements:
        if not mc.contains(ms.Meas.point(r.n, g), r):
            return Rec(FAIL, {"g": r.group.label(g)})
    return Rec(PASS)


@prop("measures.msigma-left-ideal", "measures")
def _msigma_ideal(r: RtGroup) -> Rec:
    """μ in M_C, ν in M_σ implies μ□ν in M_σ (all basis pairs)."""
    msig = ms.msigma_subspace(r)
    for i, mu in enumerate(ms.mc_subspace(r).measures(r)):
        for j, nu in enumerate(msig.measures(r)):
            if not msig.contains(ms.convolve(mu, nu, r, False), r):
                return Rec(FAIL, {"mc_basis": i, "msigma_basis": j})
    return Rec(PASS)


@prop("measures.msigma-right-translation", "measures")
def _msigma_right_translation(r: RtGroup) -> Rec:
    """M_σ and 𝓛_C are closed under right translation."""
    for S in (ms.msigma_subspace(r), ms.lc_measures(r)):
        for mu in S.measures(r):
            for g in range(r.n):
                if not S.contains(mu.right_translate(g, r), r):
                    return Rec(FAIL, {"space": S.tag, "g": r.group.label(g)})
    return Rec(PASS)


@prop("measures.msigma-contains-haar", "measures")
def _msigma_haar(r: RtGroup) -> Rec:
    """M_σ contains the Haar measure."""
    return ok(ms.msigma_subspace(r).contains(ms.haar_solver(r)[0], r))


@prop("measures.mc-all-iff-topological", "measures")
def _mc_all(r: RtGroup) -> Rec:
    """M_C = M(G) iff topological."""
    a, t = ms.mc_is_everything(r), R.is_topological(r)
    return ok(a == t, {"mc_all": a, "topological": t})


@prop("measures.regular-rep-iff-topological", "measures")
def _regrep(r: RtGroup) -> Rec:
    """{f dλ : f in C(G)} ⊆ M_C iff topological."""
    a, t = ms.regular_rep_in_mc(r), R.is_topological(r)
    return ok(a == t, {"contained": a, "topological": t})


@prop("measures.translates-in-mc", "measures")
def _translates_in_mc(r: RtGroup) -> Rec:
    """If every right translate of μ lies in M_C then μ lies in M_σ (M_C basis)."""
    msig = ms.msigma_subspace(r)
    for i, mu in enumerate(ms.mc_subspace(r).measures(r)):
        mc = ms.mc_subspace(r)
        if all(mc.contains(mu.right_translate(g, r), r) for g in range(r.n)) and not msig.contains(mu, r):
            return Rec(FAIL, {"mc_basis": i})
    return Rec(PASS)


@prop("mw.finite-orbits", "measures")
def _mw(r: RtGroup) -> Rec:
    """M_W = M_C because right orbits are finite; 𝓛_C ⊆ M_W."""
    mw, mc, lc = ms.mw_subspace(r), ms.mc_subspace(r), ms.lc_measures(r)
    if not (mw.same(mc) and mw.contains_space(lc)):
        return Rec(FAIL)
    return Rec(DEGENERATE)


@prop("lc.left-ideal", "measures")
def _lc_ideal(r: RtGroup) -> Rec:
    """𝓛_C is a left ideal of M_C."""
    lc = ms.lc_measures(r)
    for i, mu in enumerate(ms.mc_subspace(r).measures(r)):
        for j, nu in enumerate(lc.measures(r)):
            if not lc.contains(ms.convolve(mu, nu, r, False), r):
                return Rec(FAIL, {"mc_basis": i, "lc_basis": j})
    return Rec(PASS)


@prop("measures.mw-in-msigma-admissible", "measures")
def _mw_in_msigma(r: RtGroup) -> Rec:
    """Admissible implies M_W ⊆ M_σ; reported otherwise."""
    inside = ms.msigma_subspace(r).contains_space(ms.mw_subspace(r))
    if R.is_admissible(r):
        return ok(inside)
    return Rec(DIAGNOSTIC, None, {"mw_in_msigma": inside})


@prop("lambda.membership", "measures")
def _lambda_h(r: RtGroup) -> Rec:
    """Normal K inside Λ(G): λ_K in M_C, and in M_σ when K is σσ-closed."""
    lam = set(R.topological_center(r).elements)
    for K in gr.normal_subgroups(r.group):
        if not set(K.elements) <= lam:
            continue
        rep = ms.lambda_H_report(r, K)
        if not rep["in_MC"] or (rep["sigma_sigma_closed"] and not rep["in_Msigma"]):
            return Rec(FAIL, {"K": _els(r.group, K), **rep})
    return Rec(PASS)


@prop("lg-lc.relation", "measures")
def _lglc(r: RtGroup) -> Rec:
    """Containments between 𝓛_G and 𝓛_C (data)."""
    lg, lc = ms.lg_measures(r), ms.lc_measures(r)
    return Rec(DIAGNOSTIC, None, {"dim_LG": lg.dim, "dim_LC": lc.dim, "LC_in_LG": lg.contains_space(lc), "LG_in_LC": lc.contains_space(lg)})


# ---------------------------------------------------------------- haar suite


@prop("haar.unique-probability", "haar")
def _haar_unique(r: RtGroup) -> Rec:
    """Solution space of μ(Eg) = μ(E) is one-dimensional; the normalized solution is a right-invariant probability measure."""
    h, dim = ms.haar_solver(r)
    return ok(dim == 1 and h.total() == 1 and ms.is_right_invariant(r, h) and all(w >= 0 for w in h.weights), {"dim": dim})


@prop("haar.coset-uniform", "haar")
def _haar_oracle(r: RtGroup) -> Rec:
    """The solver's Haar measure is uniform over τ-cells."""
    h = ms.haar_solver(r)[0]
    return ok(h.canonical(r) == ms.uniform_cell_vector(r), {"got": [str(x) for x in h.canonical(r)]})


@prop("haar.left-invariant-center", "haar")
def _haar_left(r: RtGroup) -> Rec:
    """The Haar measure is left invariant under Λ(G)."""
    h = ms.haar_solver(r)[0]
    return ok(ms.is_left_invariant_under(r, h, R.topological_center(r).elements))


@prop("measures.msigma-equivalence", "haar")
def _msigma_equivalence(r: RtGroup) -> Rec:
    """Haar exists iff M_σ ≠ 0 iff M_W ≠ 0 iff 𝓛_C ≠ 0."""
    try:
        ms.haar_solver(r)
        h = True
    except ms.NoSolution:
        h = False
    v = (h, ms.msigma_subspace(r).dim > 0, ms.mw_subspace(r).dim > 0, ms.lc_measures(r).dim > 0)
    return ok(len(set(v)) == 1, dict(zip(("haar", "msigma", "mw", "lc"), v)))


@prop("measures.msigma-orbit-average", "haar")
def _orbit(r: RtGroup) -> Rec:
    """Orbit average of any unit-mass M_σ basis element is the Haar measure."""
    h = ms.haar_solver(r)[0]
    for i, mu in enumerate(ms.msigma_subspace(r).measures(r)):
        t = mu.total()
        if t == 0:
            continue
        avg = hr.haar_from_orbit_average(r, mu.scale(1 / t))
        if not avg.radon_equal(h, r):
            return Rec(FAIL, {"msigma_basis": i})
    return Rec(PASS)


def _systems(r: RtGroup) -> list[hr.NormalSystem]:
    return r._cached("systems", lambda: hr.find_normal_systems(r, hr.STRICT) + hr.find_normal_systems(r, hr.RELAXED))


@prop("haar.construct-equals-solver", "haar")
def _construct(r: RtGroup) -> Rec:
    """Every certified system (strict and relaxed) reproduces the solver's Haar measure."""
    systems = _systems(r)
    for s in systems:
        if not hr.construction_agrees(r, s):
            return Rec(FAIL, s.to_json(r.group))
    return Rec(PASS, None, {"systems": len(systems)})


@prop("haar.psi-conditions", "haar")
def _psi(r: RtGroup) -> Rec:
    """Positivity, right invariance, consistency and boundedness of each ψ level."""
    for s in _systems(r):
        st = hr.HaarState()
        hr.construct_haar(r, s, st)
        c = st.conditions(r)
        if not all(c.values()):
            return Rec(FAIL, {**s.to_json(r.group), "conditions": c})
    return Rec(PASS)


@prop("functions.left-averaging", "haar")
def _left_averaging(r: RtGroup) -> Rec:
    """Averaging operator is a positive, right-equivariant retraction into C(G/L) on every certified step."""
    seen = set()
    for s in _systems(r):
        for L, M in zip(s.chain, s.chain[1:]):
            if (L.mask, M.mask) in seen:
                continue
            seen.add((L.mask, M.mask))
            p = hr.averaging_properties(r, hr.averaging_operator(r, L, M))
            if not all(p.values()):
                return Rec(FAIL, {"L": _els(r.group, L), "M": _els(r.group, M), **p})
    return Rec(PASS)


@prop("strict.iff-trivial-cone", "haar")
def _strict(r: RtGroup) -> Rec:
    """Strict systems exist iff the cone is trivial (finite-model fact)."""
    has = bool(hr.find_normal_systems(r, hr.STRICT))
    return ok(has == (r.cone.size == 1), {"strict_systems": has, "cone": _els(r.group, r.cone)})


@prop("namioka.separate-to-joint", "haar")
def _sep_joint(r: RtGroup) -> Rec:
    """Separate continuity of the step action implies joint continuity (reported if not)."""
    G = r.group
    bad = []
    normals = gr.normal_subgroups(G)
    for L in normals:
        for M in normals:
            if M.mask & ~L.mask or M == L:
                continue
            sep, joint = R.action_continuity(r, L, M)
            if sep and not joint:
                bad.append({"L": _els(G, L), "M": _els(G, M)})
    if bad:
        return Rec(DIAGNOSTIC, None, {"separate_not_joint": bad[:5], "count": len(bad)})
    return Rec(PASS)


# ---------------------------------------------------------------- runner


def run_instance(r: RtGroup, props: Iterable[Property]) -> dict:
    recs = []
    for p in props:
        try:
            rec = p.check(r)
        except Exception as exc:  # a crash is a failure with the exception as witness
            rec = Rec(FAIL, {"exception": f"{type(exc).__name__}: {exc}"})
        d = {"property": p.id, "status": rec.status}
        if rec.witness is not None:
            d["witness"] = rec.witness
        if rec.detail is not None:
            d["detail"] = rec.detail
        recs.append(d)
    return {"instance": r.ident, "group": r.group.name, "cone": list(r.cone.elements), "records": recs}


def summarize(instances: list[dict]) -> dict:
    counts = {s: 0 for s in STATUSES}
    failures = []
    for inst in instances:
        for rec in inst["records"]:
            counts[rec["status"]] += 1
            if rec["status"] == FAIL:
                failures.append({"instance": inst["instance"], "property": rec["property"], "witness": rec.get("witness")})
    return {"counts": counts, "failures": failures, "instances": len(instances)}
