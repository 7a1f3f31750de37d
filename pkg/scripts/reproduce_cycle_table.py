"""Print the generic characteristic cycle of the running matrix at three weights."""

import argparse

from gkz_umbrella.multiplicity import char_cycle, nu
from gkz_umbrella.umbrella import compute_umbrella

A = [[0, 1, 1, 4], [3, 0, 2, 1]]
WEIGHTS = [(1, 1, 1, 1), (1, 1, 1, 2), (1, 1, 1, 5)]


def label(face):
    return "{" + ",".join(map(str, face)) + "}" if face else "{}"


def main():
    argparse.ArgumentParser(description=__doc__).parse_args()
    for L in WEIGHTS:
        cyc = char_cycle(A, L)
        cells = "  ".join(f"{label(face)}:{m}" for face, m in cyc.rows())
        facets = sorted(compute_umbrella(A, L).facet_sets(), key=sorted)
        parts = " + ".join(str(nu(A, F)) for F in facets)
        print(f"L={L}  {cells}")
        print(f"    degree {parts} = {cyc.degree(A)}")


if __name__ == "__main__":
    main()
