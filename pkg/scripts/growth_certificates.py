"""Lower and upper bounds n^(1/p-1/q) K <= C <= n^(1/p-1/q) for the vector-valued constant."""
import argparse

from liehy import (TestProfile, build_translation_set, growth_certificate, load_group,
                   make_grid, scaled_family)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--group", default="A1")
    ap.add_argument("--grid", type=int, default=1024)
    ap.add_argument("--p", type=float, default=1.0)
    ap.add_argument("--q", type=float, default=1.5)
    ap.add_argument("--radius", type=float, default=0.05)
    ap.add_argument("--n-list", type=int, nargs="+", default=[1, 2, 4, 8])
    args = ap.parse_args()
    g = load_group(args.group)
    f = scaled_family(make_grid(g, args.grid), TestProfile(radius=args.radius), 1, args.q)
    print(f"{'n':>4} {'lower':>12} {'upper':>12} {'residual':>10}")
    for n in args.n_list:
        c = growth_certificate(f, build_translation_set(g, n, f.support_radius), args.p, args.q)
        print(f"{n:4d} {c.lower_bound:12.8f} {c.upper_bound:12.8f} {c.residual_max:10.1e}")


if __name__ == "__main__":
    main()
