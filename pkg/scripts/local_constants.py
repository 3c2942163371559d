"""Local Hausdorff-Young quotients for each supported group and a few exponents."""
import argparse

from liehy import TestProfile, estimate_local_constant, load_group, make_grid
from liehy.localhy import max_usable_k

SETUPS = {"A1": (1024, 0.4, 16), "A2": (256, 0.3, 2), "B2": (256, 0.2, 2), "G2": (256, 0.1, 1)}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--groups", nargs="+", default=list(SETUPS))
    ap.add_argument("--q", type=float, nargs="+", default=[1.0, 1.25, 1.5, 1.75, 2.0])
    args = ap.parse_args()
    print(f"{'group':>5} {'N':>6} {'k_max':>5} " + " ".join(f"q={q:<8.3g}" for q in args.q))
    for name in args.groups:
        n, radius, k_max = SETUPS[name]
        grid = make_grid(load_group(name), n)
        prof = TestProfile(radius=radius)
        k_max = min(k_max, max_usable_k(grid, prof))
        vals = [estimate_local_constant(grid, prof, q, k_max) for q in args.q]
        print(f"{name:>5} {n:6d} {k_max:5d} " + " ".join(f"{v:10.6f}" for v in vals))


if __name__ == "__main__":
    main()
