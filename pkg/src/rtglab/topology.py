"""Finite (Alexandrov) topologies given by minimal open neighbourhoods.

Convention: ``rows[x]`` is the bitmask of U_x, the smallest open set containing
x, so ``R[x][y]`` is true iff y is in U_x.  A set V is open iff U_x is contained
in V for every x in V.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .groups import elements_of, mask_of


class NotATopology(ValueError):
    pass


class NotSurjective(ValueError):
    pass


def _bits(m: int) -> Iterator[int]:
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


@dataclass(frozen=True)
class AlexandrovTopology:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        self.validate()

    @classmethod
    def _unchecked(cls, n: int, rows: tuple[int, ...]) -> "AlexandrovTopology":
        # for constructions that are reflexive-transitive by design
        t = object.__new__(cls)
        object.__setattr__(t, "n", n)
        object.__setattr__(t, "rows", rows)
        return t

    def validate(self) -> None:
        if len(self.rows) != self.n:
            raise NotATopology("row count does not match point count")
        for x, r in enumerate(self.rows):
            if not r >> x & 1:
                raise NotATopology(f"not reflexive at {x}")
            if r >> self.n:
                raise NotATopology(f"row {x} has bits beyond n")
        for x, r in enumerate(self.rows):
            for y in _bits(r):
                if self.rows[y] & ~r:
                    raise NotATopology(f"not transitive: {y} in U_{x} but U_{y} not inside U_{x}")

    # ------------------------------------------------------------ builders
    @classmethod
    def from_matrix(cls, R: Sequence[Sequence[bool]]) -> "AlexandrovTopology":
        n = len(R)
        return cls(n, tuple(mask_of(y for y in range(n) if R[x][y]) for x in range(n)))

    @classmethod
    def discrete(cls, n: int) -> "AlexandrovTopology":
        return cls(n, tuple(1 << x for x in range(n)))

    @classmethod
    def indiscrete(cls, n: int) -> "AlexandrovTopology":
        return cls(n, tuple([(1 << n) - 1] * n))

    @classmethod
    def from_partition(cls, n: int, blocks: Iterable[Iterable[int]]) -> "AlexandrovTopology":
        rows = [0] * n
        for b in blocks:
            m = mask_of(b)
            for x in _bits(m):
                rows[x] = m
        return cls(n, tuple(rows))

    @classmethod
    def sierpinski(cls) -> "AlexandrovTopology":
        # U_0 = {0}, U_1 = {0, 1}
        return cls(2, (0b01, 0b11))

    # ------------------------------------------------------------ queries
    def matrix(self) -> list[list[bool]]:
        return [[bool(self.rows[x] >> y & 1) for y in range(self.n)] for x in range(self.n)]

    def U(self, x: int) -> int:
        return self.rows[x]

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def up(self, A: int) -> int:
        """Smallest open set containing A."""
        m = 0
        for x in _bits(A):
            m |= self.rows[x]
        return m

    def is_open(self, V: int) -> bool:
        return all(self.rows[x] & ~V == 0 for x in _bits(V))

    def is_closed(self, C: int) -> bool:
        return self.is_open(self.full & ~C)

    def closure(self, A: int) -> int:
        """cl(A) = {y : U_y meets A}."""
        return mask_of(y for y in range(self.n) if self.rows[y] & A)

    def interior(self, A: int) -> int:
        return mask_of(x for x in range(self.n) if self.rows[x] & ~A == 0)

    def is_partition(self) -> bool:
        """Specialization preorder is symmetric (every U_x is a block)."""
        return all(self.rows[y] == r for r in self.rows for y in _bits(r))

    def cells(self) -> list[tuple[int, ...]]:
        """Classes of the symmetric part of the specialization preorder, by least element."""
        seen = 0
        out = []
        for x in range(self.n):
            if seen >> x & 1:
                continue
            block = mask_of(y for y in _bits(self.rows[x]) if self.rows[y] >> x & 1)
            seen |= block
            out.append(elements_of(block))
        return out

    def cell_index(self) -> tuple[int, ...]:
        idx = [0] * self.n
        for k, c in enumerate(self.cells()):
            for x in c:
                idx[x] = k
        return tuple(idx)

    def opens(self) -> Iterator[int]:
        """All open sets (exponential; for brute-force oracles on small spaces)."""
        for V in range(1 << self.n):
            if self.is_open(V):
                yield V

    def coarser_than(self, other: "AlexandrovTopology") -> bool:
        """Every open set of self is open in other, i.e. U^other_x inside U^self_x."""
        return all(o & ~s == 0 for s, o in zip(self.rows, other.rows))

    def subspace(self, points: Sequence[int]) -> "AlexandrovTopology":
        pos = {p: k for k, p in enumerate(points)}
        rows = []
        for p in points:
            rows.append(mask_of(pos[y] for y in _bits(self.rows[p]) if y in pos))
        return AlexandrovTopology(len(points), tuple(rows))

    # ------------------------------------------------------------ serialization
    def to_json(self) -> dict:
        return {"n": self.n, "minnbhd": self.matrix()}

    @classmethod
    def from_json(cls, d: dict) -> "AlexandrovTopology":
        t = cls.from_matrix(d["minnbhd"])
        if t.n != d.get("n", t.n):
            raise NotATopology("declared n does not match matrix size")
        return t

    def render(self, labels: Sequence[str] = ()) -> str:
        lab = (lambda x: labels[x]) if labels else str
        if self.is_partition():
            return " | ".join("{" + ", ".join(lab(x) for x in c) + "}" for c in self.cells())
        lines = []
        for x in range(self.n):
            lines.append(f"U[{lab(x)}] = {{" + ", ".join(lab(y) for y in _bits(self.rows[x])) + "}")
        return "\n".join(lines)


# ---------------------------------------------------------------- constructions


def product_topology(T1: AlexandrovTopology, T2: AlexandrovTopology) -> AlexandrovTopology:
    """Point (x, a) has index x * n2 + a; U_(x,a) = U_x x U_a."""
    n2 = T2.n
    rows = []
    for x in range(T1.n):
        xs = list(_bits(T1.rows[x]))
        for a in range(n2):
            ua = T2.rows[a]
            m = 0
            for x2 in xs:
                m |= ua << (x2 * n2)
            rows.append(m)
    return AlexandrovTopology._unchecked(T1.n * n2, tuple(rows))


def final_topology(T: AlexandrovTopology, f: Sequence[int], m: int | None = None) -> AlexandrovTopology:
    """Quotient topology on {0..m-1} for a surjection f, by per-point saturation."""
    if m is None:
        m = max(f) + 1 if len(f) else 0
    if len(f) != T.n:
        raise ValueError("map length does not match the domain")
    pre = [0] * m
    for x, y in enumerate(f):
        if not 0 <= y < m:
            raise ValueError(f"value {y} out of range")
        pre[y] |= 1 << x
    missing = [y for y in range(m) if pre[y] == 0]
    if missing:
        raise NotSurjective(f"points {missing} have empty preimage")
    rows = []
    for y in range(m):
        V = 1 << y
        while True:
            P = 0
            for z in _bits(V):
                P |= pre[z]
            img = 0
            for x in _bits(T.up(P)):
                img |= 1 << f[x]
            if img == V:
                break
            V = img
        rows.append(V)
    return AlexandrovTopology._unchecked(m, tuple(rows))


def image(f: Sequence[int], A: int) -> int:
    return mask_of(f[x] for x in _bits(A))


def preimage(f: Sequence[int], B: int) -> int:
    return mask_of(x for x, y in enumerate(f) if B >> y & 1)


def is_continuous(f: Sequence[int], TX: AlexandrovTopology, TY: AlexandrovTopology, method: str = "nbhd") -> bool:
    """``nbhd``: f(U_x) inside U_f(x) for all x.  ``opens``: every open preimage is open."""
    if method == "nbhd":
        return all(image(f, TX.rows[x]) & ~TY.rows[f[x]] == 0 for x in range(TX.n))
    if method == "opens":
        return all(TX.is_open(preimage(f, V)) for V in TY.opens())
    raise ValueError(method)


def is_open_map(f: Sequence[int], TX: AlexandrovTopology, TY: AlexandrovTopology) -> bool:
    return all(TY.is_open(image(f, TX.rows[x])) for x in range(TX.n))


def is_continuous_fn(values: Sequence, T: AlexandrovTopology) -> bool:
    """A complex-valued function is continuous iff f(y) = f(x) whenever y is in U_x."""
    return all(values[y] == values[x] for x in range(T.n) for y in _bits(T.rows[x]))


@dataclass(frozen=True)
class Separation:
    is_T0: bool
    is_T1: bool
    is_hausdorff: bool
    is_discrete: bool
    is_indiscrete: bool


def separation(T: AlexandrovTopology) -> Separation:
    t0 = all(not (T.rows[x] >> y & 1 and T.rows[y] >> x & 1) for x in range(T.n) for y in range(x + 1, T.n))
    discrete = all(r == 1 << x for x, r in enumerate(T.rows))
    # finite spaces: T1 (closed points) forces discreteness, and so does Hausdorff
    t1 = all(T.is_closed(1 << x) for x in range(T.n))
    hausdorff = all(T.rows[x] & T.rows[y] == 0 for x in range(T.n) for y in range(x + 1, T.n))
    indiscrete = all(r == T.full for r in T.rows)
    return Separation(t0, t1, hausdorff, discrete, indiscrete)


def continuous_map_of(fn: Callable[[int], int], n: int) -> tuple[int, ...]:
    return tuple(fn(x) for x in range(n))
