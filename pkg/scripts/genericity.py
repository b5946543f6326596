"""Pass rates of Conditions A and B for seeded random transformations,
as a function of the integer grid the entries are drawn from.

Small grids hit zero rows and proportional rows often; the rates approach 1
as the grid widens.

    python scripts/genericity.py --genus 2 --rank 2 --trials 500
"""

import argparse

from nicepairs.linalg import OmegaMatrix, RationalMatrix, sample_generic_transformation


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--genus", type=int, default=2)
    ap.add_argument("--rank", type=int, default=2)
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    g, n = args.genus, args.rank
    # Vandermonde evaluations: every consecutive g x g block is nonsingular
    omega = OmegaMatrix(RationalMatrix([[x ** i for x in range(1, g * n + 1)] for i in range(g)]))
    print(f"g={g} n={n} d={g * n} omega generic: {omega.generic}")
    print(f"{'bound':>9} {'A rate':>10} {'B rate':>10}")
    for bound in (1, 2, 9, 100, 10**4, 10**6):
        r = sample_generic_transformation(omega, args.seed, args.trials, bound=bound)
        print(f"{bound:>9} {float(r.condition_a_rate):>10.4f} {float(r.condition_b_rate):>10.4f}")


if __name__ == "__main__":
    main()
