"""Local Hausdorff-Young machinery for central functions with shrinking support.

A fixed Weyl-invariant profile ``f0`` on the Cartan subalgebra (supported
inside the fundamental domain) is rescaled into the central functions

    phi_k(x) = k^sigma f0(k x) A_delta(k x) / A_delta(x),
    sigma = tau |R+| + r / q,   tau = 1 - 2 / q',

whose Hausdorff-Young quotients ``||phi_k^||_{q'} / ||phi_k||_q`` converge,
as ``k -> inf``, to a ratio of weighted Euclidean integrals of ``f0 A_delta``.
The torus ``T_r`` (no roots) reduces everything to the classical dilation
``k^(1/q) f0(k x)``, where the limit for Gaussian profiles is the
Babenko-Beckner constant.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ConfigurationError, DomainError, NyquistError
from .rootsys import Group
from .spectral import (central_fourier, lattice_constant, spectral_norm_direct,
                       spectral_tail)
from .torus import CentralFunction, TorusGrid, compensated_sum, weyl_integral_norm

__all__ = [
    "TestProfile", "ConstantsBundle", "babenko_beckner", "conjugate_exponent",
    "constants", "profile_support", "profile_values", "scaled_family",
    "max_usable_k", "euclidean_weighted_norm", "QuadratureResult",
    "riemann_limit_check", "lq_bound_check", "hy_quotients",
    "estimate_local_constant", "closed_form_Kf0", "LocalReport",
]

PROFILE_KINDS = ("indicator_ball", "smooth_bump", "gaussian_truncated")
# samples across the support diameter of phi_k; grids that are not Weyl-closed
# break the orbit symmetry of the coefficients by aliasing and need more
MIN_SAMPLES_PER_SUPPORT = 16
MIN_SAMPLES_UNCLOSED = 64
# default frequency box (half-width, step) by rank
FREQ_DEFAULTS = {1: (40.0, 1 / 64), 2: (20.0, 0.1)}
SPATIAL_DEFAULTS = {1: 2048, 2: 256}


def conjugate_exponent(q: float) -> float:
    if q == 1:
        return math.inf
    return q / (q - 1)


def babenko_beckner(q: float) -> float:
    """``sqrt(q^(1/q) / q'^(1/q'))``, equal to 1 at both ends of ``[1, 2]``."""
    if not 1 <= q <= 2:
        raise DomainError("Babenko-Beckner constant needs 1 <= q <= 2")
    if q == 1:
        return 1.0
    qp = conjugate_exponent(q)
    return math.sqrt(q ** (1 / q) / qp ** (1 / qp))


@dataclass(frozen=True)
class TestProfile:
    """Radial profile in torus coordinates, Weyl-symmetrised before use.

    ``gaussian_truncated`` is ``exp(-pi |y|^2 / w^2)`` with ``w = radius/4``,
    cut at ``radius``; ``smooth_bump`` is ``cos(pi |y| / (2 radius))`` to the
    power ``smoothness + 1`` (a ``C^smoothness`` bump).
    """

    __test__ = False

    kind: str = "smooth_bump"
    radius: float = 0.4
    smoothness: int = 2

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise ConfigurationError(f"unknown profile kind {self.kind!r}")
        if not 0 < self.radius <= 0.5:
            raise ConfigurationError("profile radius must lie in (0, 1/2]")
        if self.smoothness < 0:
            raise ConfigurationError("smoothness order must be nonnegative")

    def radial(self, s):
        s = np.asarray(s, dtype=float)
        inside = s <= 1.0
        if self.kind == "indicator_ball":
            return inside.astype(float)
        if self.kind == "smooth_bump":
            return np.where(inside, np.cos(0.5 * np.pi * np.minimum(s, 1.0)) ** (self.smoothness + 1), 0.0)
        return np.where(inside, np.exp(-16.0 * np.pi * s * s), 0.0)


def profile_support(group: Group, profile: TestProfile) -> float:
    """Sup-norm radius of the support of the symmetrised profile."""
    cols = np.linalg.norm(group.wg.elements.astype(float), axis=1)
    rad = profile.radius * float(np.max(cols))
    if rad >= 0.5:
        raise ConfigurationError(
            f"profile radius {profile.radius} leaves the fundamental domain for {group.name}; "
            f"use radius < {0.5 / np.max(cols):.4f}")
    return rad


def profile_values(group: Group, profile: TestProfile, y) -> np.ndarray:
    """Weyl-symmetrised profile at Cartan coordinates ``y`` (no periodisation)."""
    y = np.asarray(y, dtype=float)
    acc = np.zeros(y.shape[:-1])
    for m in group.wg.elements:
        acc += profile.radial(np.linalg.norm(y @ m.astype(float), axis=-1) / profile.radius)
    return acc / group.wg.order


def _scaling_exponents(group: Group, q: float):
    qp = conjugate_exponent(q)
    tau = 1.0 if qp == math.inf else 1.0 - 2.0 / qp
    sigma = tau * group.rs.n_positive + group.rank / q
    return qp, tau, sigma


def _dirichlet(t, k: int):
    """``sum_{j<k} exp(2 pi i j t)`` without dividing by small numbers."""
    u = t - np.rint(t)
    den = np.sin(np.pi * u)
    small = np.abs(den) < 1e-14
    ratio = np.where(small, float(k), np.sin(np.pi * k * u) / np.where(small, 1.0, den))
    return np.exp(1j * np.pi * (k - 1) * u) * ratio


def _adelta_ratio(group: Group, x, k: int):
    """``A_delta(k x) / A_delta(x)`` factor by factor."""
    rs = group.rs
    out = np.exp(-2j * np.pi * (k - 1) * (x @ rs.delta.astype(float)))
    for t in np.moveaxis(rs.root_values(x), -1, 0):
        out = out * _dirichlet(t, k)
    return out


def max_usable_k(grid: TorusGrid, profile: TestProfile) -> int:
    """Largest dilation whose support still spans enough grid cells."""
    rad = profile_support(grid.group, profile)
    need = MIN_SAMPLES_PER_SUPPORT if grid.weyl_closed else MIN_SAMPLES_UNCLOSED
    return max(1, int(2 * rad * grid.n / need))


def scaled_family(grid: TorusGrid, profile: TestProfile, k: int, q: float) -> CentralFunction:
    """The central function ``phi_k`` sampled on ``grid``."""
    if k < 1 or int(k) != k:
        raise DomainError("dilation k must be a positive integer")
    k = int(k)
    group = grid.group
    rad = profile_support(group, profile)
    _, _, sigma = _scaling_exponents(group, q)
    x = grid.points
    vals = profile_values(group, profile, k * x).astype(complex)
    if k > 1:
        live = vals != 0
        vals[live] *= k ** sigma * _adelta_ratio(group, x[live], k)
    return CentralFunction(grid, vals, rad / k)


@dataclass(frozen=True)
class ConstantsBundle:
    q: float
    qp: float
    tau: float
    sigma: float
    A: float
    B: float
    C: float
    M_G: float
    V_G: float
    D: float
    B_q: float
    q_is_one: bool = False


def _m_group(group: Group, tau: float, points: int = 129) -> float:
    rs = group.rs
    if rs.n_positive == 0:
        return 1.0
    r = group.rank
    pts = max(9, int(round(points ** (2 / (r + 1)))) | 1) if r > 1 else points
    ax = np.linspace(-0.5, 0.5, pts)
    y = np.stack(np.meshgrid(*[ax] * r, indexing="ij"), axis=-1).reshape(-1, r)
    return float(np.max(np.prod(np.abs(rs.root_values(y)), axis=1))) ** tau


def constants(group: Group, q: float) -> ConstantsBundle:
    """Every scaling constant of the local argument for fixed ``(G, q)``."""
    if not 1 <= q <= 2:
        raise DomainError("q must lie in [1, 2]")
    qp, tau, sigma = _scaling_exponents(group, q)
    rs = group.rs
    order = group.wg.order
    if qp == math.inf:
        a = float(np.prod(rs.root_pairings(rs.delta)))
        v_pow = 1.0
    else:
        a = lattice_constant(rs, order, qp)
        v_pow = 1.0 ** (1 / qp)
    b = v_pow / a
    c = (2 * np.pi) ** (tau * rs.n_positive) * order ** (-1.0 / q)
    m = _m_group(group, tau)
    return ConstantsBundle(q, qp, tau, sigma, a, b, float(c), m, 1.0,
                           float(1.0 / (b * c * m)), babenko_beckner(q), qp == math.inf)


# --- Euclidean side --------------------------------------------------------

@dataclass(frozen=True)
class QuadratureResult:
    value: float
    tail_estimate: float
    discretization_estimate: float

    def __float__(self):
        return float(self.value)


def _spatial_grid(group: Group, profile: TestProfile, m: int | None):
    r = group.rank
    b = profile_support(group, profile)
    m = m or SPATIAL_DEFAULTS.get(r, 64)
    ax = -b + (np.arange(m) + 0.5) * (2 * b / m)
    y = np.stack(np.meshgrid(*[ax] * r, indexing="ij"), axis=-1).reshape(-1, r)
    return ax, y, (2 * b / m) ** r


def _f0_adelta(group: Group, profile: TestProfile, y):
    from .torus import eval_A_delta_product
    return profile_values(group, profile, y) * eval_A_delta_product(group.rs, y)


def _freq_defaults(r, xi_max, step):
    d_xi, d_h = FREQ_DEFAULTS.get(r, (10.0, 0.25))
    return (xi_max or d_xi), (step or d_h)


def _euclidean_transform(group, profile, xi_max, step, spatial):
    """``F(f0 A_delta)`` on the frequency box, separably per axis."""
    r = group.rank
    ax, y, dv = _spatial_grid(group, profile, spatial)
    g = _f0_adelta(group, profile, y).reshape((len(ax),) * r)
    nfreq = int(round(xi_max / step))
    xi = np.arange(-nfreq, nfreq + 1) * step
    kern = np.exp(-2j * np.pi * np.outer(xi, ax))
    out = g
    for axis in range(r):
        out = np.moveaxis(np.tensordot(kern, np.moveaxis(out, axis, 0), axes=(1, 0)), 0, axis)
    return xi, out * dv


def euclidean_weighted_norm(group: Group, profile: TestProfile, qp: float,
                            xi_max: float | None = None, step: float | None = None,
                            spatial: int | None = None) -> QuadratureResult:
    """``[int |F(f0 A_delta)|^q' / prod |<alpha, xi>|^(q'-2) dxi]^(1/q')``.

    Frequency measure is Lebesgue measure in fundamental-weight coordinates.
    The integrand is set to zero on root hyperplanes, where it has limit 0.
    """
    if not 2 <= qp < math.inf:
        raise DomainError("Euclidean weighted norm needs 2 <= q' < inf")
    r = group.rank
    xi_max, step = _freq_defaults(r, xi_max, step)
    xi1, fxi = _euclidean_transform(group, profile, xi_max, step, spatial)
    xi = np.stack(np.meshgrid(*[xi1] * r, indexing="ij"), axis=-1).reshape(-1, r)
    pair = np.abs(group.rs.root_pairings(xi))
    weight = np.prod(pair, axis=1) ** (qp - 2) if group.rs.n_positive else np.ones(len(xi))
    dens = np.abs(fxi.reshape(-1)) ** qp
    on_wall = np.min(pair, axis=1) < 1e-12 if group.rs.n_positive else np.zeros(len(xi), bool)
    integrand = np.where(on_wall, 0.0, dens / np.where(on_wall, 1.0, weight))
    total = compensated_sum(integrand) * step ** r
    # outer shell share, and the same rule on every other node (step 2h)
    outer = np.max(np.abs(xi), axis=1) > 0.9 * xi_max
    tail = compensated_sum(integrand[outer]) * step ** r
    sub = np.all(np.rint(xi / step).astype(np.int64) % 2 == 0, axis=1)
    coarse = compensated_sum(integrand[sub]) * (2 * step) ** r
    value = total ** (1 / qp)
    return QuadratureResult(value, float((1 + tail / total) ** (1 / qp) - 1) if total else 0.0,
                            abs(coarse ** (1 / qp) - value) / value if total else 0.0)


def _lq_euclid(group: Group, profile: TestProfile, q: float, weight_power: float = 0.0,
               spatial: int | None = None) -> float:
    """``(int |f0 A_delta(y)|^q prod |alpha(y)|^weight_power dy)^(1/q)``."""
    _, y, dv = _spatial_grid(group, profile, spatial)
    dens = np.abs(_f0_adelta(group, profile, y)) ** q
    if weight_power and group.rs.n_positive:
        dens = dens * np.prod(np.abs(group.rs.root_values(y)), axis=1) ** weight_power
    return (compensated_sum(dens) * dv) ** (1 / q)


# --- reports ---------------------------------------------------------------

@dataclass
class LocalReport:
    group: str
    q: float
    profile: dict
    grid_n: int
    rows: list = field(default_factory=list)
    euclidean_norm: float | None = None
    euclidean_tail: float | None = None
    euclidean_discretization: float | None = None
    B: float | None = None
    estimate: float | None = None
    closed_form: float | None = None
    max_usable_k: int | None = None
    skipped_k: list = field(default_factory=list)
    deviations_decreasing: bool | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = ["k", "lq_norm", "spectral_norm", "quotient", "riemann_deviation", "spectral_tail"]
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for row in self.rows:
            w.writerow([row.get(c) if row.get(c) is not None else "" for c in cols])
        return buf.getvalue()


def _usable(grid: TorusGrid, profile: TestProfile, k_list):
    kmax = max_usable_k(grid, profile)
    ks = sorted(int(k) for k in k_list)
    return [k for k in ks if k <= kmax], [k for k in ks if k > kmax], kmax


def hy_quotients(grid: TorusGrid, profile: TestProfile, q: float, k_list) -> list[dict]:
    """Per-``k`` rows ``{k, lq_norm, spectral_norm, quotient, spectral_tail}``."""
    qp = conjugate_exponent(q)
    rows = []
    for k in k_list:
        phi = scaled_family(grid, profile, k, q)
        coeffs = central_fourier(phi)
        s = spectral_norm_direct(coeffs, qp)
        lq = weyl_integral_norm(phi, q)
        rows.append({"k": int(k), "lq_norm": lq, "spectral_norm": s, "quotient": s / lq,
                     "riemann_deviation": None, "spectral_tail": spectral_tail(coeffs, qp)})
    return rows


def riemann_limit_check(grid: TorusGrid, profile: TestProfile, q: float, k_list,
                        xi_max=None, step=None, spatial=None) -> LocalReport:
    """Compare ``B(G,q) ||phi_k^||`` with the Euclidean weighted norm along ``k``."""
    group = grid.group
    if q == 1:
        raise DomainError("the Riemann-sum comparison needs q > 1")
    ks, skipped, kmax = _usable(grid, profile, k_list)
    if not ks:
        raise NyquistError(f"no requested k is resolved on N={grid.n}; max usable k is {kmax}")
    const = constants(group, q)
    eu = euclidean_weighted_norm(group, profile, const.qp, xi_max, step, spatial)
    rows = hy_quotients(grid, profile, q, ks)
    for row in rows:
        row["riemann_deviation"] = abs(const.B * row["spectral_norm"] - eu.value) / eu.value
    dev = [row["riemann_deviation"] for row in rows]
    return LocalReport(group.name, q, asdict(profile), grid.n, rows, eu.value, eu.tail_estimate,
                       eu.discretization_estimate, const.B, max_usable_k=kmax, skipped_k=skipped,
                       deviations_decreasing=bool(len(dev) < 2 or dev[-1] < dev[-2]))


def lq_bound_check(grid: TorusGrid, profile: TestProfile, q: float, k: int,
                   spatial: int | None = None) -> dict:
    """Both sides of ``||phi_k||_q <= C M_G ||f0 A_delta||_q``."""
    group = grid.group
    const = constants(group, q)
    left = weyl_integral_norm(scaled_family(grid, profile, k, q), q)
    plain = _lq_euclid(group, profile, q, spatial=spatial)
    weighted = const.C * _lq_euclid(group, profile, q, const.tau * q, spatial=spatial)
    right = const.C * const.M_G * plain
    return {"k": int(k), "left": left, "weighted_bound": weighted, "right": right,
            "slack": right - left, "holds": bool(left <= right * (1 + 1e-6))}


def estimate_local_constant(grid: TorusGrid, profile: TestProfile, q: float,
                            k_max: int, tail: int = 2) -> float:
    """Minimum Hausdorff-Young quotient over the last ``tail`` dilations up to ``k_max``."""
    if not 1 <= q <= 2:
        raise DomainError("q must lie in [1, 2]")
    ks = _dilations(k_max)
    usable, skipped, kmax = _usable(grid, profile, ks)
    if skipped:
        raise NyquistError(f"k={skipped} not resolved on N={grid.n}; max usable k is {kmax}")
    rows = hy_quotients(grid, profile, q, usable[-tail:])
    return float(min(row["quotient"] for row in rows))


def _dilations(k_max: int) -> list[int]:
    ks = [1 << j for j in range(int(math.log2(k_max)) + 1)]
    if ks[-1] != k_max:
        ks.append(int(k_max))
    return ks


def closed_form_Kf0(group: Group, profile: TestProfile, q: float, xi_max=None, step=None,
                    spatial=None) -> float:
    """Limit of the quotients as a ratio of weighted Euclidean integrals."""
    if not 1 < q <= 2:
        raise DomainError("closed form needs 1 < q <= 2")
    qp, tau, _ = _scaling_exponents(group, q)
    rs = group.rs
    pref = (group.wg.order ** tau * (2 * np.pi) ** (-tau * rs.n_positive)
            * float(np.prod(rs.root_pairings(rs.delta))) ** tau)
    num = euclidean_weighted_norm(group, profile, qp, xi_max, step, spatial).value
    den = _lq_euclid(group, profile, q, 2 - q, spatial=spatial)
    return float(pref * num / den)
