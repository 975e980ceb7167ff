"""List the certified normal systems of one catalog group and the measure each builds."""

from __future__ import annotations

import argparse

from rtglab import generators as gen
from rtglab import groups as gr
from rtglab import haar as hr
from rtglab import measures as ms
from rtglab import rtg as R


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("group", nargs="?", default="D4")
    args = ap.parse_args()

    G = gen.catalog_group(args.group)
    for H in gr.subgroups(G):
        r = R.make_rtg(G, H)
        haar = ms.haar_solver(r)[0]
        print(f"H = {{{', '.join(G.label(x) for x in H.elements)}}}  topological={R.is_topological(r)}")
        for mode in (hr.STRICT, hr.RELAXED):
            for ns in hr.find_normal_systems(r, mode):
                chain = " ⊋ ".join("{" + ",".join(G.label(x) for x in L.elements) + "}" for L in ns.chain)
                ok = hr.construct_haar(r, ns).radon_equal(haar, r)
                print(f"  {mode:7s} {chain}  agrees={ok}")


if __name__ == "__main__":
    main()
