"""Growth of ||Phi_n|| / n^(1/p') for the character family on A1."""
import argparse

from liehy import character_experiment, load_group, make_grid


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=2048)
    ap.add_argument("--p", type=float, default=1.0)
    ap.add_argument("--q", type=float, default=1.5)
    ap.add_argument("--n-list", type=int, nargs="+", default=[1, 2, 4, 8, 16, 32])
    args = ap.parse_args()
    rep = character_experiment(make_grid(load_group("A1"), args.grid), args.n_list, args.p, args.q)
    head = "n^(1/q')"
    print(f"{'n':>4} {'hat':>12} {head:>12} {'phi':>12}")
    for r in rep.rows:
        print(f"{r['n']:4d} {r['hat_norm']:12.8f} {r['hat_expected']:12.8f} {r['phi_norm']:12.8f}")
    print(f"fitted exponent {rep.exponent:.4f}")


if __name__ == "__main__":
    main()
