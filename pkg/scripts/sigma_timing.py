"""Time the generic σ computation against the normal-closure oracle over the catalog."""

from __future__ import annotations

import argparse
import time

from rtglab import generators as gen
from rtglab import groups as gr
from rtglab import rtg as R


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=24)
    args = ap.parse_args()

    insts = list(gen.enumerate_instances(args.max_order))
    t0 = time.perf_counter()
    mismatches = []
    for r in insts:
        N = gr.normal_closure(r.group, r.cone.elements)
        if r.sigma != R.coset_topology(r.group, N) or r.n_of_G != N:
            mismatches.append(r.ident)
    dt = time.perf_counter() - t0
    print(f"{len(insts)} instances, {dt:.2f}s, {len(mismatches)} mismatches")
    for m in mismatches:
        print("  mismatch:", m)


if __name__ == "__main__":
    main()
