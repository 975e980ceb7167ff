"""Check the involution case formula against the generic action on every Z_n ⋊ <u>, n <= 12."""

from __future__ import annotations

from fractions import Fraction

from rtglab import generators as gen
from rtglab import measures as ms
from rtglab import rtg as R


def check(n, u):
    G = gen.involution_instance(n, u)
    r = R.make_rtg(G, [G.identity])
    basis = [[Fraction(int(t == i)) for t in range(n)] for i in range(n)]
    bad = 0
    for f in basis:
        for mu in basis:
            for delta in (0, 1):
                for gamma in (0, 1):
                    acted = ms.act(gen.lift_function(n, f, delta), ms.Meas(gen.lift_function(n, mu, gamma)), r)
                    for v in range(n):
                        for eps in (0, 1):
                            bad += gen.involution_action_formula(n, u, f, delta, mu, gamma, v, eps) != acted[v + n * eps]
    return bad


def main():
    for n in range(2, 13):
        for u in range(2, n):
            if u * u % n == 1:
                print(f"Z{n} ⋊ <{u}>: {check(n, u)} mismatches over {n * n * 16 * n // 2} combinations")


if __name__ == "__main__":
    main()
