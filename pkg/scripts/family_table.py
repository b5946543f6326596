"""Nice/fine status of the genus-6 family (11+7m; 62+35m).

    python scripts/family_table.py --m-max 12
"""

import argparse

from nicepairs.classify import ReductionGraph
from nicepairs.pairs import Pair, dual_reduce, reduce


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--m-max", type=int, default=12)
    args = ap.parse_args()

    gr = ReductionGraph(6)
    print(f"{'m':>3} {'pair':>10} {'reduce':>10} {'dual':>8} nice fine  diagram top")
    for m in range(args.m_max + 1):
        p = (11 + 7 * m, 62 + 35 * m)
        nice = gr.is_nice(p).verdict
        fine = gr.is_fine(p)
        top = " ~ ".join(map(str, fine.witness.top)) if fine.verdict else "-"
        print(f"{m:>3} {str(Pair(*p)):>10} {str(reduce(6, p).target):>10} "
              f"{str(dual_reduce(6, p).target):>8} {nice!s:>4} {fine.verdict!s:>5}  {top}")


if __name__ == "__main__":
    main()
