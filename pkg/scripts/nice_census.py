"""Count nice, fine and coprime pairs on the cone for a range of genera.

Also lists nice pairs that none of the classical congruence/prime-factor
conditions cover.

    python scripts/nice_census.py --g-max 7 --n-max 20
"""

import argparse

from nicepairs.classify import enumerate_cone


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--g-max", type=int, default=7)
    ap.add_argument("--n-max", type=int, default=20)
    ap.add_argument("--show", type=int, default=8, help="new nice pairs to list per genus")
    args = ap.parse_args()

    print(f"{'g':>3} {'pairs':>6} {'coprime':>8} {'nice':>6} {'fine':>6} {'nice, not classical':>20}")
    for g in range(2, args.g_max + 1):
        reps = [r for r in enumerate_cone(g, args.n_max) if r.pair.n >= 2]
        coprime = sum(r.gcd_nd == 1 for r in reps)
        nice = [r for r in reps if r.is_nice]
        fine = sum(r.is_fine for r in reps)
        new = [r.pair for r in nice if not r.newstead_condition]
        print(f"{g:>3} {len(reps):>6} {coprime:>8} {len(nice):>6} {fine:>6} {len(new):>20}")
        if new:
            print("      e.g. " + " ".join(map(str, new[: args.show])))


if __name__ == "__main__":
    main()
