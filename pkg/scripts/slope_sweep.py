"""Sweep the weight F + sV and report where the umbrella changes."""

import argparse

from gkz_umbrella.exactmath import fraction_str
from gkz_umbrella.projective import slopes_at_infinity
from gkz_umbrella.slopes import SlopeFamily, filter_pyramids, slopes_along
from gkz_umbrella.umbrella import ToricMatrix


def show(report):
    for iv in report.intervals:
        hi = "inf" if iv.hi is None else fraction_str(iv.hi)
        facets = sorted(sorted(j + 1 for j in F) for F in iv.facets)
        print(f"  s in [{fraction_str(iv.lo)}, {hi}]  facets {facets}")
    flag = " (conjectural)" if report.conjectural else ""
    print(f"  slopes {[fraction_str(s) for s in report.slopes]}{flag}")


def main():
    argparse.ArgumentParser(description=__doc__).parse_args()
    print("running matrix along Var(x4)")
    show(slopes_along(SlopeFamily([[0, 1, 1, 4], [3, 0, 2, 1]], v0={3})))

    M = ToricMatrix.of([[3, 1, 0], [0, 1, 3]], strict=False)
    fam = SlopeFamily(M, vinf={0, 1})
    print("projectivized twisted cubic, x1 and x2 at infinity")
    show(slopes_at_infinity(M, vinf={0, 1}))
    limits = filter_pyramids(slopes_along(fam), fam, mode="limits")
    print("  comparing one-sided limits only:", [fraction_str(s) for s in limits.slopes])


if __name__ == "__main__":
    main()
