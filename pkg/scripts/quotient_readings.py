"""Compare two readings of the σσ quotient criterion over every (instance, normal K).

strict:  (G/K, τ) Hausdorff topological  <=>  K σσ-closed
literal: (G/K, τ) topological            <=>  K σσ-closed

Prints agreement counts and the first few pairs where the literal reading fails,
split by whether K is τ-closed.
"""

from __future__ import annotations

import argparse
from collections import Counter

from rtglab import generators as gen
from rtglab import groups as gr
from rtglab import rtg as R


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-order", type=int, default=24)
    ap.add_argument("--show", type=int, default=5)
    args = ap.parse_args()

    tally = Counter()
    shown = []
    for r in gen.enumerate_instances(args.max_order):
        G = r.group
        for K in gr.normal_subgroups(G):
            f = R.quotient_rtg(r, K).flags
            closed = r.tau.is_closed(K.mask)
            tally["pairs"] += 1
            tally["strict_ok"] += f.hausdorff_topological == f.k_sigma_sigma_closed
            lit = f.topological == f.k_sigma_sigma_closed
            tally["literal_ok_closed" if closed else "literal_ok_open"] += lit
            tally["closed" if closed else "not_closed"] += 1
            if not lit and len(shown) < args.show:
                shown.append(f"{r.ident}  K={[G.label(x) for x in K.elements]}  τ-closed={closed}  flags={f.as_dict()}")
    print(dict(tally))
    for s in shown:
        print("  literal fails:", s)


if __name__ == "__main__":
    main()
