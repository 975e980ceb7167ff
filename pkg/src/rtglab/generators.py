"""Instance factories: Schreier products, the group catalog, exhaustive
(G, H) enumeration and seeded random draws."""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import groups as gr
from . import linalg as la
from .groups import DEFAULT_MAX_ORDER, GroupTable, OrderTooLarge, Subgrp
from .rtg import RtGroup, make_rtg


class NotAutomorphism(ValueError):
    def __init__(self, index: int, witness: tuple):
        super().__init__(f"acting map #{index} is not an automorphism (witness {witness})")
        self.witness = (index,) + tuple(witness)


class NotClosed(ValueError):
    pass


class NotInvolution(ValueError):
    pass


@dataclass(frozen=True)
class SchreierSpec:
    """A base group A and a list of automorphisms of A (permutations of its
    indices) that is closed under composition; the first should be the identity."""

    base: GroupTable
    acting: tuple[tuple[int, ...], ...]
    name: str = ""


def _compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    return tuple(p[q[i]] for i in range(len(q)))


def check_schreier_spec(spec: SchreierSpec) -> None:
    A = spec.base
    n = A.order
    for k, p in enumerate(spec.acting):
        if sorted(p) != list(range(n)):
            raise NotAutomorphism(k, ("not a bijection",))
        for a in range(n):
            for b in range(n):
                if p[A.mul[a][b]] != A.mul[p[a]][p[b]]:
                    raise NotAutomorphism(k, (a, b))
    acts = set(spec.acting)
    if len(acts) != len(spec.acting):
        raise NotClosed("repeated automorphism")
    if tuple(range(n)) not in acts:
        raise NotClosed("identity automorphism missing")
    for p in spec.acting:
        for q in spec.acting:
            if _compose(p, q) not in acts:
                raise NotClosed(f"composition of {p} and {q} is missing")


def schreier_product(spec: SchreierSpec) -> GroupTable:
    """A x B with (u, e)(v, d) = (u e(v), e d); (u, B[j]) has index u + |A| j."""
    check_schreier_spec(spec)
    A = spec.base
    n, B = A.order, list(spec.acting)
    pos = {p: j for j, p in enumerate(B)}
    N = n * len(B)
    table = [[0] * N for _ in range(N)]
    for j1, eps in enumerate(B):
        for j2, dlt in enumerate(B):
            j = pos[_compose(eps, dlt)]
            for u in range(n):
                row = table[u + n * j1]
                for v in range(n):
                    row[v + n * j2] = A.mul[u][eps[v]] + n * j
    labels = [f"({A.label(u)},{j})" for j in range(len(B)) for u in range(n)]
    name = spec.name or f"{A.name}:{len(B)}"
    return gr.validate_group(table, name, labels)


def unit_automorphism(n: int, u: int) -> tuple[int, ...]:
    """v -> u v on the additive group Z_n."""
    return tuple((u * v) % n for v in range(n))


def unit_group_spec(n: int, units: Sequence[int], name: str = "") -> SchreierSpec:
    acts = [unit_automorphism(n, u) for u in units]
    return SchreierSpec(gr.cyclic(n), tuple(acts), name)


# ---------------------------------------------------------------- involution case formula


def involution_action_formula(
    n: int, u: int, f: Sequence, delta: int, mu: Sequence, gamma: int, v: int, eps: int
):
    """(f_delta . mu_gamma)(v, eps) on Z_n x {1, phi} with phi(v) = u v.

    ``delta``, ``gamma``, ``eps`` are 0 for the identity and 1 for phi.
    f_delta is f on the copy A x {delta} and zero elsewhere; mu_gamma likewise.
    Returns sum_t f(t + gamma(v)) mu(t) when eps = delta o gamma, else 0.
    """
    if (u * u) % n != 1 % n:
        raise NotInvolution(f"{u}^2 is not 1 mod {n}")
    if eps != (delta + gamma) % 2:
        return Fraction(0)
    gv = (u * v) % n if gamma else v % n
    return la.simplify(sum((f[(t + gv) % n] * mu[t] for t in range(n)), Fraction(0)))


def involution_instance(n: int, u: int) -> GroupTable:
    if (u * u) % n != 1 % n:
        raise NotInvolution(f"{u}^2 is not 1 mod {n}")
    units = [1] if u % n == 1 % n else [1, u]
    return schreier_product(unit_group_spec(n, units, f"Z{n}:<{u}>"))


def lift_function(n: int, f: Sequence, delta: int, copies: int = 2) -> tuple:
    return tuple(f[x % n] if x // n == delta else Fraction(0) for x in range(n * copies))


# ---------------------------------------------------------------- catalog


@functools.lru_cache(maxsize=None)
def catalog() -> tuple[GroupTable, ...]:
    """Fixed list of groups of order <= 24, sorted by order (stable within an order)."""
    z = gr.cyclic
    groups = [z(n) for n in range(2, 13)]
    groups += [
        gr.direct_product(z(2), z(2), "Z2^2"),
        gr.symmetric(3),
        gr.direct_product(z(2), z(4), "Z2xZ4"),
        gr.direct_product(gr.direct_product(z(2), z(2)), z(2), "Z2^3"),
        gr.dihedral(4),
        gr.quaternion(),
        gr.direct_product(z(3), z(3), "Z3^2"),
        gr.dihedral(5),
        gr.dihedral(6),
        gr.alternating(4),
        gr.direct_product(z(2), z(6), "Z2xZ6"),
        schreier_product(unit_group_spec(7, [1, 2, 4], "Z7:Z3")),
        gr.symmetric(4),
        involution_instance(12, 5),
    ]
    return tuple(sorted(groups, key=lambda g: g.order))


def catalog_group(name: str) -> GroupTable:
    for g in catalog():
        if g.name == name:
            return g
    raise KeyError(name)


def _check_max(max_order: int) -> None:
    if max_order > DEFAULT_MAX_ORDER:
        raise OrderTooLarge(f"max_order {max_order} exceeds {DEFAULT_MAX_ORDER}")


def instance_name(G: GroupTable, H: Subgrp) -> str:
    return f"{G.name}|H={{{','.join(G.label(x) for x in H.elements)}}}"


@functools.lru_cache(maxsize=None)
def _pairs(max_order: int) -> tuple[tuple[GroupTable, Subgrp], ...]:
    return tuple((G, H) for G in catalog() if G.order <= max_order for H in gr.subgroups(G))


def enumerate_instances(max_order: int = DEFAULT_MAX_ORDER, groups: Sequence[GroupTable] | None = None) -> Iterator[RtGroup]:
    """Every (G, H) with G in the catalog (or ``groups``) and H a subgroup, in a fixed order."""
    _check_max(max_order)
    if groups is None:
        pairs = _pairs(max_order)
    else:
        pairs = tuple((G, H) for G in groups if G.order <= max_order for H in gr.subgroups(G))
    for G, H in pairs:
        yield make_rtg(G, H, instance_name(G, H))


def count_instances(max_order: int = DEFAULT_MAX_ORDER) -> int:
    _check_max(max_order)
    return len(_pairs(max_order))


def random_instance(seed: int, max_order: int = 12) -> RtGroup:
    """Uniform draw over the enumerated catalog, deterministic in the seed."""
    _check_max(max_order)
    pairs = _pairs(max_order)
    G, H = pairs[random.Random(seed).randrange(len(pairs))]
    return make_rtg(G, H, instance_name(G, H))
