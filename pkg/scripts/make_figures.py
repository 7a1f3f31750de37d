"""Write SVG drawings of the running-matrix umbrellas."""

import argparse
from pathlib import Path

from gkz_umbrella.plot import render_svg

A = [[0, 1, 1, 4], [3, 0, 2, 1]]
WEIGHTS = [(1, 1, 1, 1), (1, 1, 1, 2), (1, 1, 1, 5), (1, 1, 1, 0), (1, 1, 1, -1)]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="figures", help="output directory")
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for L in WEIGHTS:
        path = out / ("umbrella_" + "_".join(str(x) for x in L) + ".svg")
        path.write_text(render_svg(A, L))
        print(path)


if __name__ == "__main__":
    main()
