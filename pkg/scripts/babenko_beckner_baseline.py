"""Torus T1 with Gaussian profiles: the local constant should approach the Babenko-Beckner value."""
import argparse

from liehy import TestProfile, babenko_beckner, estimate_local_constant, load_group, make_grid


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=4096)
    ap.add_argument("--k-max", type=int, default=32)
    ap.add_argument("--q", type=float, nargs="+", default=[1.1, 1.25, 4 / 3, 1.5, 1.75, 1.9])
    args = ap.parse_args()
    grid = make_grid(load_group("T1"), args.grid)
    prof = TestProfile("gaussian_truncated", 0.4)
    print(f"{'q':>8} {'estimate':>12} {'B_q':>12} {'rel':>10}")
    for q in args.q:
        est = estimate_local_constant(grid, prof, q, args.k_max)
        bb = babenko_beckner(q)
        print(f"{q:8.4f} {est:12.8f} {bb:12.8f} {abs(est - bb) / bb:10.2e}")


if __name__ == "__main__":
    main()
