"""Command-line driver: ``liehy {plancherel,local-constant,certificate}``.

Reports are deterministic: no timestamps, fixed key order, ordered output
assembly even when items run in parallel. Exit codes: 0 success, 1 tolerance
breach, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction

import numpy as np

from . import __version__
from .errors import LieHYError
from .localhy import (TestProfile, babenko_beckner, closed_form_Kf0, constants,
                      euclidean_weighted_norm, hy_quotients, lq_bound_check, max_usable_k,
                      scaled_family)
from .rootsys import enumerate_dominant_weights, load_group, weyl_dimensions
from .sharpness import build_translation_set, character_experiment, growth_certificate
from .spectral import central_fourier, spectral_norm_direct
from .torus import CentralFunction, make_grid, weyl_integral_norm

EXIT_OK, EXIT_BREACH, EXIT_USAGE = 0, 1, 2

CONVENTION = {
    "coordinates": "fundamental-weight basis for weights, dual basis for the torus",
    "torus_measure": "normalized Haar on [-1/2,1/2)^r",
    "frequency_measure": "Lebesgue measure in fundamental-weight coordinates (V_G = 1)",
    "long_root_length_squared": 2,
    "fourier_norm": "(sum_lam d_lam^2 |gamma_lam|^q')^(1/q')",
}
TOLERANCES = {
    "plancherel": 1e-8,
    "hausdorff_young": 1e-8,
    "lq_bound": 1e-6,
    "character_hat_norm": 1e-10,
    "factorization": 1e-10,
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    group: str = "A1"
    q: float = 1.5
    p: float | None = None
    grid: int = 1024
    cutoff: float | None = None
    profile: str = "smooth_bump"
    radius: float | None = None
    smoothness: int = 2
    k_list: list = field(default_factory=lambda: [1, 2, 4, 8, 16])
    n_list: list = field(default_factory=lambda: [1, 2, 4, 8])
    mode: str = "growth"
    samples: int = 20
    seed: int = 0
    jobs: int = 1
    out: str | None = None
    format: str = "json"

    def validate(self):
        if self.grid < 16 or self.grid & (self.grid - 1):
            raise UsageError("--grid must be a power of two >= 16")
        if self.cutoff is not None and self.cutoff <= 0:
            raise UsageError("--cutoff must be positive")
        if not 1 <= self.q <= 2:
            raise UsageError("--q must lie in [1, 2]")
        if self.p is not None and not 1 <= self.p < self.q:
            raise UsageError("need 1 <= p < q <= 2")
        if self.format not in ("json", "csv"):
            raise UsageError("--format is json or csv")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")
        if any(k < 1 for k in self.k_list) or any(n < 1 for n in self.n_list):
            raise UsageError("k and n lists take positive integers")

    def provenance(self) -> dict:
        d = asdict(self)
        for key in ("out", "jobs", "format"):
            d.pop(key)
        return d


def _number(text: str) -> float:
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a number: {text!r}") from None


def _int_list(text: str) -> list:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise UsageError(f"not an integer list: {text!r}") from None


_PARSERS = {"q": _number, "p": _number, "cutoff": _number, "radius": _number,
            "grid": int, "smoothness": int, "samples": int, "seed": int, "jobs": int,
            "k_list": _int_list, "n_list": _int_list}


def read_config_file(path: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment; dashes and underscores are equivalent."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from None
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in {f.name for f in fields(RunConfig)} or key == "command":
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = _PARSERS.get(key, str)(value)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; flags override it")
    common.add_argument("--group", help="Cartan type such as A1, A2, B2, G2, T1")
    common.add_argument("--q", type=str)
    common.add_argument("--p", type=str)
    common.add_argument("--grid", type=int, help="torus grid points per axis (power of two)")
    common.add_argument("--cutoff", type=str, help="radius of the dominant-weight ball")
    common.add_argument("--profile", choices=["indicator_ball", "smooth_bump", "gaussian_truncated"])
    common.add_argument("--radius", type=str)
    common.add_argument("--smoothness", type=int)
    common.add_argument("--k-list", dest="k_list", type=str)
    common.add_argument("--n-list", dest="n_list", type=str)
    common.add_argument("--samples", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--jobs", type=int)
    common.add_argument("--out")
    common.add_argument("--format", choices=["json", "csv"])
    parser = argparse.ArgumentParser(prog="liehy", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("plancherel", parents=[common], help="q = 2 cross-check on random trig polynomials")
    sub.add_parser("local-constant", parents=[common], help="local Hausdorff-Young table and estimate")
    cert = sub.add_parser("certificate", parents=[common], help="growth certificate or character experiment")
    cert.add_argument("--mode", choices=["growth", "character"])
    return parser


def resolve_config(ns: argparse.Namespace) -> RunConfig:
    values = read_config_file(ns.config) if ns.config else {}
    for f in fields(RunConfig):
        raw = getattr(ns, f.name, None)
        if raw is not None and f.name != "command":
            values[f.name] = _PARSERS[f.name](raw) if f.name in _PARSERS and isinstance(raw, str) else raw
    cfg = RunConfig(command=ns.command, **values)
    cfg.validate()
    return cfg


def _profile(cfg: RunConfig, group) -> TestProfile:
    radius = cfg.radius
    if radius is None:
        cols = np.linalg.norm(group.wg.elements.astype(float), axis=1).max()
        radius = min(0.4, math.floor(0.45 / cols * 1000) / 1000)
    return TestProfile(cfg.profile, radius, cfg.smoothness)


def _header(cfg: RunConfig) -> dict:
    return {"tool": "liehy", "version": __version__, "command": cfg.command,
            "config": cfg.provenance(), "convention": CONVENTION, "tolerances": TOLERANCES}


def _pmap(cfg: RunConfig, fn, items):
    if cfg.jobs == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
        return list(pool.map(fn, items))


# --- subcommands -----------------------------------------------------------

def random_trig_polynomial(grid, cutoff: float, rng) -> CentralFunction:
    """Random combination of characters with ``|lam + delta| <= cutoff``."""
    from .spectral import character_function

    rs = grid.group.rs
    weights = enumerate_dominant_weights(rs, cutoff)
    pick = rng.choice(len(weights), size=min(len(weights), 6), replace=False)
    vals = np.zeros(grid.shape, dtype=complex)
    for i in sorted(pick):
        c = complex(rng.normal(), rng.normal())
        vals += c * character_function(grid, weights[i]).values
    return CentralFunction(grid, vals)


def cmd_plancherel(cfg: RunConfig):
    group = load_group(cfg.group)
    grid = make_grid(group, cfg.grid)
    poly_cut = min(cfg.cutoff or 12.0, 0.25 * cfg.grid)
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.samples)

    def one(s):
        f = random_trig_polynomial(grid, poly_cut, np.random.default_rng(s))
        lhs = weyl_integral_norm(f, 2.0)
        rhs = spectral_norm_direct(central_fourier(f, cfg.cutoff), 2.0)
        return {"l2_norm": lhs, "spectral_norm": rhs, "residual": abs(lhs - rhs) / lhs}

    rows = _pmap(cfg, one, seeds)
    for i, r in enumerate(rows):
        r["index"] = i
    worst = max(rows, key=lambda r: r["residual"])
    ok = worst["residual"] < TOLERANCES["plancherel"]
    report = dict(_header(cfg), status="ok" if ok else "breach", worst=worst, rows=rows)
    return report, rows, ["index", "l2_norm", "spectral_norm", "residual"], ok


def cmd_local_constant(cfg: RunConfig):
    group = load_group(cfg.group)
    grid = make_grid(group, cfg.grid)
    prof = _profile(cfg, group)
    kmax = max_usable_k(grid, prof)
    bad = [k for k in cfg.k_list if k > kmax]
    if bad:
        raise UsageError(f"k={bad} not resolved by N={cfg.grid} for radius {prof.radius}; "
                         f"max usable k is {kmax} (raise --grid or drop k)")
    ks = sorted(cfg.k_list)
    const = constants(group, cfg.q)
    rows = [r for chunk in _pmap(cfg, lambda k: hy_quotients(grid, prof, cfg.q, [k]), ks) for r in chunk]
    euclid, closed = None, None
    if cfg.q > 1:
        eu = euclidean_weighted_norm(group, prof, const.qp)
        for r in rows:
            r["riemann_deviation"] = abs(const.B * r["spectral_norm"] - eu.value) / eu.value
        euclid = {"norm": eu.value, "tail_estimate": eu.tail_estimate,
                  "discretization_estimate": eu.discretization_estimate}
        closed = closed_form_Kf0(group, prof, cfg.q)
    estimate = min(r["quotient"] for r in rows[-2:])
    bound = lq_bound_check(grid, prof, cfg.q, ks[-1])
    dev = [r["riemann_deviation"] for r in rows if r["riemann_deviation"] is not None]
    ok = (all(r["quotient"] <= 1 + TOLERANCES["hausdorff_young"] for r in rows) and bound["holds"])
    report = dict(_header(cfg), status="ok" if ok else "breach",
                  profile=asdict(prof), constants=asdict(const),
                  rows=rows, estimate=estimate, closed_form=closed, euclidean=euclid,
                  babenko_beckner=babenko_beckner(cfg.q), lq_bound=bound,
                  deviations_decreasing=bool(len(dev) < 2 or dev[-1] < dev[-2]),
                  max_usable_k=kmax)
    cols = ["k", "lq_norm", "spectral_norm", "quotient", "riemann_deviation", "spectral_tail"]
    return report, rows, cols, ok


def cmd_certificate(cfg: RunConfig):
    group = load_group(cfg.group)
    grid = make_grid(group, cfg.grid)
    p = 1.0 if cfg.p is None else cfg.p
    if not p < cfg.q:
        raise UsageError("need p < q")
    if cfg.mode == "character":
        rep = character_experiment(grid, cfg.n_list, p, cfg.q)
        ok = all(abs(r["hat_norm"] - r["hat_expected"]) <= TOLERANCES["character_hat_norm"] * r["hat_expected"]
                 for r in rep.rows)
        report = dict(_header(cfg), status="ok" if ok else "breach", **asdict(rep))
        return report, rep.rows, ["n", "hat_norm", "hat_expected", "phi_norm", "ratio"], ok
    prof = _profile(cfg, group) if cfg.radius is not None else TestProfile(cfg.profile, 0.05, cfg.smoothness)
    f = scaled_family(grid, prof, 1, cfg.q)

    def one(n):
        ts = build_translation_set(group, n, f.support_radius)
        return growth_certificate(f, ts, p, cfg.q, asdict(prof), seed=cfg.seed).to_dict()

    try:
        certs = _pmap(cfg, one, sorted(cfg.n_list))
    except LieHYError as exc:
        raise UsageError(str(exc)) from None
    ok = all(c["residual_max"] < TOLERANCES["factorization"]
             and 0 < c["K"] <= 1 + TOLERANCES["hausdorff_young"] for c in certs)
    report = dict(_header(cfg), status="ok" if ok else "breach", certificates=certs)
    return report, certs, ["n", "K", "lower_bound", "upper_bound", "residual_max"], ok


COMMANDS = {"plancherel": cmd_plancherel, "local-constant": cmd_local_constant,
            "certificate": cmd_certificate}


def render(report: dict, rows: list, cols: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow(["" if r.get(c) is None else repr(r[c]) if isinstance(r[c], float) else r[c]
                    for c in cols])
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = resolve_config(ns)
        report, rows, cols, ok = COMMANDS[cfg.command](cfg)
    except (UsageError, LieHYError, TypeError) as exc:
        print(f"liehy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(report, rows, cols, cfg.format)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not ok:
        print(f"liehy: tolerance breach in {cfg.command}", file=sys.stderr)
        return EXIT_BREACH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
