"""Finite groups as multiplication tables.

Elements are dense 0-based indices; subgroups are stored as bitmasks with the
sorted element tuple alongside.  The catalog constructors always put the
identity at index 0.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

DEFAULT_MAX_ORDER = 24
HARD_MAX_ORDER = 64


class NotAGroup(ValueError):
    def __init__(self, reason: str, witness: tuple = ()):
        super().__init__(f"{reason} (witness {witness})" if witness else reason)
        self.reason = reason
        self.witness = witness


class NotNormal(ValueError):
    def __init__(self, witness: int):
        super().__init__(f"subgroup is not normal: conjugation by element {witness} moves it")
        self.witness = witness


class OrderTooLarge(ValueError):
    pass


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True, order=True)
class Subgrp:
    # ordering: by size, then lexicographically on the sorted elements
    size: int
    elements: tuple[int, ...]
    mask: int = field(compare=False)

    @classmethod
    def from_mask(cls, mask: int) -> "Subgrp":
        els = elements_of(mask)
        return cls(len(els), els, mask)

    @classmethod
    def of(cls, elements: Iterable[int]) -> "Subgrp":
        return cls.from_mask(mask_of(elements))

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self) -> str:
        return f"Subgrp{set(self.elements) if self.elements else '{}'}"


@dataclass(frozen=True, eq=False)
class GroupTable:
    order: int
    mul: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]
    name: str = ""
    labels: tuple[str, ...] = ()

    def __eq__(self, other):
        if not isinstance(other, GroupTable):
            return NotImplemented
        return self.mul == other.mul

    def __hash__(self):
        return hash(self.mul)

    def m(self, x: int, y: int) -> int:
        return self.mul[x][y]

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"{self.name or 'group'} has no element labelled {label!r}") from None

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def elem_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul[y][x]
            k += 1
        return k

    @property
    def all_mask(self) -> int:
        return (1 << self.order) - 1

    def whole(self) -> Subgrp:
        return Subgrp.from_mask(self.all_mask)

    def trivial(self) -> Subgrp:
        return Subgrp.of([self.identity])

    def setmul(self, a: Iterable[int], b: Iterable[int]) -> int:
        b = list(b)
        m = 0
        for x in a:
            row = self.mul[x]
            for y in b:
                m |= 1 << row[y]
        return m

    def right_coset(self, h: Subgrp, x: int) -> int:
        """Mask of H x."""
        return self.setmul(h.elements, [x])

    def left_coset(self, h: Subgrp, x: int) -> int:
        """Mask of x H."""
        return self.setmul([x], h.elements)

    def is_normal(self, h: Subgrp) -> bool:
        return all(self.conj(g, x) in h for g in range(self.order) for x in h.elements)

    def to_json(self) -> dict:
        d = {"order": self.order, "mul": [list(r) for r in self.mul]}
        if self.name:
            d["name"] = self.name
        if self.labels:
            d["labels"] = list(self.labels)
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def validate_group(table: Sequence[Sequence[int]], name: str = "", labels: Sequence[str] = ()) -> GroupTable:
    n = len(table)
    if n == 0:
        raise NotAGroup("empty table")
    if n > HARD_MAX_ORDER:
        raise OrderTooLarge(f"order {n} exceeds {HARD_MAX_ORDER}")
    mul = tuple(tuple(int(v) for v in row) for row in table)
    for i, row in enumerate(mul):
        if len(row) != n:
            raise NotAGroup("table is not square", (i,))
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise NotAGroup("entry out of range", (i, j, v))
    full = set(range(n))
    for i in range(n):
        if set(mul[i]) != full:
            raise NotAGroup("Latin square violated in a row", (i,))
        if {mul[j][i] for j in range(n)} != full:
            raise NotAGroup("Latin square violated in a column", (i,))
    e = next((x for x in range(n) if all(mul[x][y] == y and mul[y][x] == y for y in range(n))), None)
    if e is None:
        raise NotAGroup("no identity element")
    for x, y, z in itertools.product(range(n), repeat=3):
        if mul[mul[x][y]][z] != mul[x][mul[y][z]]:
            raise NotAGroup("associativity fails", (x, y, z))
    inv = tuple(mul[x].index(e) for x in range(n))
    if labels and len(labels) != n:
        raise ValueError("labels length mismatch")
    return GroupTable(n, mul, e, inv, name, tuple(labels))


def group_from_json(d: dict) -> GroupTable:
    if "mul" not in d:
        raise ValueError("group JSON needs a 'mul' table")
    g = validate_group(d["mul"], d.get("name", ""), d.get("labels", ()))
    if "order" in d and d["order"] != g.order:
        raise ValueError(f"declared order {d['order']} != table size {g.order}")
    return g


# ---------------------------------------------------------------- subgroups


def closure(G: GroupTable, gens: Iterable[int]) -> int:
    """Mask of the subgroup generated by ``gens`` (finite: submonoid = subgroup)."""
    gens = [g for g in set(gens) if g != G.identity]
    seen = 1 << G.identity
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            row = G.mul[x]
            for g in gens:
                y = row[g]
                if not seen >> y & 1:
                    seen |= 1 << y
                    nxt.append(y)
        frontier = nxt
    return seen


def _check_order(G: GroupTable, bound: int):
    if G.order > bound:
        raise OrderTooLarge(f"order {G.order} exceeds bound {bound}")


def subgroups(G: GroupTable, bound: int = DEFAULT_MAX_ORDER) -> list[Subgrp]:
    _check_order(G, bound)
    found = {1 << G.identity}
    frontier = [1 << G.identity]
    while frontier:
        nxt = []
        for s in frontier:
            els = elements_of(s)
            for g in range(G.order):
                if s >> g & 1:
                    continue
                t = closure(G, els + (g,))
                if t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    return sorted(Subgrp.from_mask(m) for m in found)


def normal_subgroups(G: GroupTable, bound: int = DEFAULT_MAX_ORDER) -> list[Subgrp]:
    return [h for h in subgroups(G, bound) if G.is_normal(h)]


def is_subgroup(G: GroupTable, elements: Iterable[int]) -> bool:
    m = mask_of(elements)
    if not m >> G.identity & 1:
        return False
    return closure(G, elements_of(m)) == m


def normal_closure(G: GroupTable, S: Iterable[int]) -> Subgrp:
    S = list(S)
    for x in S:
        if not 0 <= x < G.order:
            raise IndexError(f"element {x} out of range")
    m = closure(G, S)
    while True:
        conj = {G.conj(g, x) for g in range(G.order) for x in elements_of(m)}
        m2 = closure(G, conj)
        if m2 == m:
            return Subgrp.from_mask(m)
        m = m2


def normalizer(G: GroupTable, H: Subgrp) -> Subgrp:
    return Subgrp.of(g for g in range(G.order) if all(G.conj(g, h) in H for h in H.elements))


def quotient_group(G: GroupTable, N: Subgrp) -> tuple[GroupTable, tuple[int, ...]]:
    """Quotient on left cosets xN; cosets are numbered by their least element."""
    for g in range(G.order):
        if any(G.conj(g, x) not in N for x in N.elements):
            raise NotNormal(g)
    proj = [-1] * G.order
    reps = []
    for x in range(G.order):
        if proj[x] < 0:
            k = len(reps)
            reps.append(x)
            for y in elements_of(G.left_coset(N, x)):
                proj[y] = k
    q = [[proj[G.mul[a][b]] for b in reps] for a in reps]
    labels = ()
    if G.labels:
        labels = tuple(G.labels[r] + ("N" if N.size > 1 else "") for r in reps)
    name = f"{G.name}/{N.size}" if G.name else ""
    return validate_group(q, name, labels), tuple(proj)


def generators(G: GroupTable) -> list[int]:
    """A small generating set, chosen greedily by element index."""
    gens: list[int] = []
    m = 1 << G.identity
    # prefer high-order elements so cyclic groups get one generator
    for x in sorted(range(G.order), key=lambda x: (-G.elem_order(x), x)):
        if not m >> x & 1:
            gens.append(x)
            m = closure(G, gens)
            if m == G.all_mask:
                break
    return gens


def homomorphisms(G: GroupTable, T: GroupTable) -> list[tuple[int, ...]]:
    """All homomorphisms G -> T as image tuples (extension from generators)."""
    gens = generators(G)
    out = []
    for imgs in itertools.product(range(T.order), repeat=len(gens)):
        f = _extend(G, T, gens, imgs)
        if f is not None:
            out.append(f)
    return out


def _extend(G, T, gens, imgs):
    f = {G.identity: T.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, t in zip(gens, imgs):
                y = G.mul[x][g]
                v = T.mul[f[x]][t]
                if y in f:
                    if f[y] != v:
                        return None
                else:
                    f[y] = v
                    nxt.append(y)
        frontier = nxt
    hom = tuple(f[x] for x in range(G.order))
    for x in range(G.order):
        for y in range(G.order):
            if hom[G.mul[x][y]] != T.mul[hom[x]][hom[y]]:
                return None
    return hom


def is_isomorphic(A: GroupTable, B: GroupTable) -> bool:
    if A.order != B.order:
        return False
    if sorted(A.elem_order(x) for x in range(A.order)) != sorted(B.elem_order(x) for x in range(B.order)):
        return False
    gens = generators(A)
    cands = [[y for y in range(B.order) if B.elem_order(y) == A.elem_order(g)] for g in gens]
    for imgs in itertools.product(*cands):
        f = _extend(A, B, gens, imgs)
        if f is not None and len(set(f)) == A.order:
            return True
    return False


# ---------------------------------------------------------------- catalog


def cyclic(n: int) -> GroupTable:
    return validate_group([[(a + b) % n for b in range(n)] for a in range(n)], f"Z{n}", [str(a) for a in range(n)])


def direct_product(A: GroupTable, B: GroupTable, name: str = "") -> GroupTable:
    """Element (a, b) has index a + |A| b."""
    n, m = A.order, B.order
    if A.identity != 0 or B.identity != 0:
        raise ValueError("direct_product expects identity at index 0")
    idx = lambda a, b: a + n * b  # noqa: E731
    table = [[0] * (n * m) for _ in range(n * m)]
    for a1, b1, a2, b2 in itertools.product(range(n), range(m), range(n), range(m)):
        table[idx(a1, b1)][idx(a2, b2)] = idx(A.mul[a1][a2], B.mul[b1][b2])
    labels = [f"({A.label(a)},{B.label(b)})" for b in range(m) for a in range(n)]
    return validate_group(table, name or f"{A.name}x{B.name}", labels)


def _perm_label(p: tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j + 1)
            j = p[j]
        cycles.append("(" + "".join(map(str, c)) + ")")
    return "".join(cycles) or "e"


def permutation_group(perms: Sequence[tuple[int, ...]], name: str) -> GroupTable:
    """Group of permutations with (p*q)(i) = p(q(i)); perms[0] must be the identity."""
    index = {p: k for k, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(len(q)))] for q in perms] for p in perms]
    return validate_group(table, name, [_perm_label(p) for p in perms])


def symmetric(n: int) -> GroupTable:
    return permutation_group(list(itertools.permutations(range(n))), f"S{n}")


def _parity(p) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inv % 2


def alternating(n: int) -> GroupTable:
    return permutation_group([p for p in itertools.permutations(range(n)) if _parity(p) == 0], f"A{n}")


def dihedral(n: int) -> GroupTable:
    """Order 2n.  Element r^k s^j has index k + n j; s r s = r^-1."""

    def mul(a, b):
        k1, j1 = a % n, a // n
        k2, j2 = b % n, b // n
        k = (k1 + (-k2 if j1 else k2)) % n
        return k + n * ((j1 + j2) % 2)

    labels = []
    for j in range(2):
        for k in range(n):
            r = "" if k == 0 else ("r" if k == 1 else f"r{k}")
            labels.append((r + ("s" if j else "")) or "e")
    return validate_group([[mul(a, b) for b in range(2 * n)] for a in range(2 * n)], f"D{n}", labels)


def quaternion() -> GroupTable:
    # basis units 1,i,j,k with sign; index = 2*unit + (sign == -1)
    units = {
        (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
        (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
        (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
        (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1),
    }
    names = ["1", "i", "j", "k"]

    def mul(a, b):
        ua, sa = a // 2, -1 if a % 2 else 1
        ub, sb = b // 2, -1 if b % 2 else 1
        u, s = units[(ua, ub)]
        s *= sa * sb
        return 2 * u + (s == -1)

    labels = [("-" if x % 2 else "") + names[x // 2] for x in range(8)]
    return validate_group([[mul(a, b) for b in range(8)] for a in range(8)], "Q8", labels)
