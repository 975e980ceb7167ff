"""Brute-force oracles used to pin the library's answers.

Nothing here imports the library's algorithms.  Groups come in as plain
multiplication tables, topologies as lists of minimal neighbourhoods, and
linear algebra goes through sympy.
"""

from __future__ import annotations

from itertools import combinations, permutations, product

import sympy


def perm_table(n):
    """Multiplication table of S_n on permutation tuples, (p*q)(i) = p(q(i))."""
    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    mul = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return perms, mul


def identity_of(mul):
    return next(e for e in range(len(mul)) if all(mul[e][x] == x for x in range(len(mul))))


def inverse_of(mul):
    e = identity_of(mul)
    return [next(y for y in range(len(mul)) if mul[x][y] == e) for x in range(len(mul))]


def is_closed_subset(mul, S):
    S = set(S)
    return identity_of(mul) in S and all(mul[a][b] in S for a in S for b in S)


def all_subgroups(mul):
    """Every subset closed under products and holding e; usable for order <= 12."""
    n = len(mul)
    out = []
    for mask in range(1 << n):
        S = [x for x in range(n) if mask >> x & 1]
        if S and is_closed_subset(mul, S):
            out.append(frozenset(S))
    return out


def conj_close(mul, S):
    """Fixpoint of: add all conjugates, then close under products."""
    inv = inverse_of(mul)
    cur = set(S) | {identity_of(mul)}
    while True:
        nxt = set(cur)
        nxt |= {mul[mul[g][x]][inv[g]] for g in range(len(mul)) for x in cur}
        nxt |= {mul[a][b] for a in nxt for b in nxt}
        if nxt == cur:
            return frozenset(cur)
        cur = nxt


def normalizer(mul, H):
    inv = inverse_of(mul)
    H = set(H)
    return frozenset(g for g in range(len(mul)) if {mul[mul[g][h]][inv[g]] for h in H} == H)


def right_cosets(mul, H):
    seen, out = set(), []
    for x in range(len(mul)):
        if x not in seen:
            c = frozenset(mul[h][x] for h in H)
            seen |= c
            out.append(c)
    return out


# ---------------------------------------------------------------- topologies as families of open sets


def opens_from_nbhds(U):
    """All open sets, as frozensets, of the topology with minimal neighbourhoods U[x]."""
    n = len(U)
    out = []
    for mask in range(1 << n):
        V = {x for x in range(n) if mask >> x & 1}
        if all(set(U[x]) <= V for x in V):
            out.append(frozenset(V))
    return out


def nbhds_from_opens(n, opens):
    return [frozenset.intersection(*[V for V in opens if x in V]) for x in range(n)]


def subsets(n):
    for mask in range(1 << n):
        yield frozenset(x for x in range(n) if mask >> x & 1)


def final_nbhds(n_src, src_opens, f, m):
    """V open in the target iff its preimage is open; minimal neighbourhoods read off."""
    src = set(src_opens)
    opens = [V for V in subsets(m) if frozenset(x for x in range(n_src) if f[x] in V) in src]
    return nbhds_from_opens(m, opens)


def product_opens(n1, opens1, n2, opens2):
    """Sets W of pairs (index x*n2+a) containing a box around each of their points."""
    boxes = [frozenset(x * n2 + a for x in A for a in B) for A in opens1 for B in opens2]
    out = []
    for W in subsets(n1 * n2):
        if all(any(p in b and b <= W for b in boxes) for p in W):
            out.append(W)
    return out


def continuous(f, opens_x, opens_y):
    ox = set(opens_x)
    return all(frozenset(x for x in range(len(f)) if f[x] in V) in ox for V in opens_y)


def coset_nbhds(mul, H):
    cells = right_cosets(mul, H)
    cell_of = {x: c for c in cells for x in c}
    return [cell_of[x] for x in range(len(mul))]


def sigma_nbhds_brute(mul, H):
    """σ from its definition: V is open iff {(x, y) : x^-1 y in V} is open in the product.

    Enumerates all 2^n candidate sets V.  Product openness is tested with boxes of
    minimal neighbourhoods, which test_topology checks against full box unions.
    """
    n = len(mul)
    inv = inverse_of(mul)
    nb = coset_nbhds(mul, H)
    opens = []
    for V in subsets(n):
        pre = {(x, y) for x in range(n) for y in range(n) if mul[inv[x]][y] in V}
        if all((a, b) in pre for (x, y) in pre for a in nb[x] for b in nb[y]):
            opens.append(V)
    return nbhds_from_opens(n, opens)


# ---------------------------------------------------------------- linear algebra over Q via sympy


def null_basis(rows, ncols):
    if not rows:
        return [sympy.Matrix([[1 if i == j else 0] for i in range(ncols)]) for j in range(ncols)]
    return sympy.Matrix(rows).nullspace()


def span_rank(vectors, ncols):
    vs = [list(v) for v in vectors]
    if not vs:
        return 0
    return sympy.Matrix(vs).rank()


def same_span(a, b, ncols):
    ra, rb = span_rank(a, ncols), span_rank(b, ncols)
    return ra == rb == span_rank(list(a) + list(b), ncols)


def _constant_on_rows(values, cells):
    """Linear rows forcing a function (given as coefficient vectors) to be constant on each cell."""
    rows = []
    for c in cells:
        c = sorted(c)
        for a, b in zip(c, c[1:]):
            rows.append([va - vb for va, vb in zip(values[a], values[b])])
    return rows


def measures_pushing_into(mul, tau_cells, target_cells):
    """Element-level solve: mu with y -> sum_x f(xy) mu(x) constant on target cells for every
    f constant on tau cells.  Returned as cell-mass vectors in the order of tau_cells."""
    n = len(mul)
    rows = []
    for cell in tau_cells:
        f = [1 if x in cell else 0 for x in range(n)]
        coeff = [[f[mul[x][y]] for x in range(n)] for y in range(n)]
        rows += _constant_on_rows(coeff, target_cells)
    sol = null_basis(rows, n)
    return [[sum(v[x] for x in c) for c in tau_cells] for v in sol]


def functions_constant_on(n, pair_lists):
    """Basis of f : G -> Q with f(a) = f(b) for all listed pairs."""
    rows = []
    for a, b in pair_lists:
        if a != b:
            r = [0] * n
            r[a], r[b] = 1, -1
            rows.append(r)
    return [list(v) for v in null_basis(rows, n)]


def lc_brute(mul, H):
    """f in C(G) with every left translate in C(G)."""
    n = len(mul)
    nb = coset_nbhds(mul, H)
    pairs = [(mul[g][x], mul[g][y]) for g in range(n) for x in range(n) for y in nb[x]]
    return functions_constant_on(n, pairs)


def haar_brute(mul, H):
    """Cell masses of every right-invariant measure, mu(Eg) = mu(E) on cells E."""
    n = len(mul)
    cells = right_cosets(mul, H)
    k = len(cells)
    idx = {x: i for i, c in enumerate(cells) for x in c}
    rows = []
    for g in range(n):
        for i, c in enumerate(cells):
            j = idx[mul[next(iter(c))][g]]
            if i != j:
                r = [0] * k
                r[i], r[j] = 1, -1
                rows.append(r)
    return cells, [list(v) for v in null_basis(rows, k)]


def pairs_of(seq):
    return list(combinations(seq, 2))


def cartesian(*xs):
    return list(product(*xs))
