"""Per-instance dimensions of the measure spaces, with the relation between 𝓛_G and 𝓛_C."""

from __future__ import annotations

import argparse
import csv
import sys

from rtglab import generators as gen
from rtglab import measures as ms
from rtglab import rtg as R


def relation(a, b):
    ab, ba = a.contains_space(b), b.contains_space(a)
    return {(True, True): "equal", (True, False): "L_G ⊋ L_C", (False, True): "L_G ⊊ L_C"}.get((ab, ba), "incomparable")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=12)
    args = ap.parse_args()

    w = csv.writer(sys.stdout)
    w.writerow(["instance", "cells", "topological", "M_C", "M_sigma", "L_C", "L_G", "LG_vs_LC", "L1APD_in_LC"])
    for r in gen.enumerate_instances(args.max_order):
        rep = ms.measure_report(r)
        lc, lg = ms.lc_measures(r), ms.lg_measures(r)
        w.writerow(
            [r.ident, rep["cells"], R.is_topological(r), rep["M_C"], rep["M_sigma"], rep["L_C"], rep["L_G"],
             relation(lg, lc), lc.contains_space(ms.l1_ap_d_measures(r))]
        )


if __name__ == "__main__":
    main()
