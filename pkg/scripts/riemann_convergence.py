"""Deviation of B(G,q) ||phi_k^|| from the Euclidean weighted norm as k grows."""
import argparse

from liehy import TestProfile, load_group, make_grid, riemann_limit_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--group", default="A1")
    ap.add_argument("--grid", type=int, default=32768)
    ap.add_argument("--q", type=float, default=1.5)
    ap.add_argument("--radius", type=float, default=0.4)
    ap.add_argument("--k-list", type=int, nargs="+", default=[1, 2, 4, 8, 16])
    args = ap.parse_args()
    grid = make_grid(load_group(args.group), args.grid)
    rep = riemann_limit_check(grid, TestProfile(radius=args.radius), args.q, args.k_list)
    print(f"Euclidean norm {rep.euclidean_norm:.12f} (tail {rep.euclidean_tail:.1e})")
    if rep.skipped_k:
        print(f"skipped k={rep.skipped_k}; max usable k is {rep.max_usable_k}")
    print(f"{'k':>4} {'quotient':>14} {'deviation':>12}")
    for row in rep.rows:
        print(f"{row['k']:4d} {row['quotient']:14.10f} {row['riemann_deviation']:12.3e}")


if __name__ == "__main__":
    main()
