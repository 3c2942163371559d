"""Lower-bound certificates for the vector-valued Fourier type constants.

A central ``f`` supported near the identity, translated by ``n`` commuting
torus elements with disjoint supports, gives an ``l^p(n)``-valued function
``Phi_n`` whose norms factor exactly:

    ||Phi_n^|| = n^(1/p) ||f^||_{q'},    ||Phi_n||_q = n^(1/q) ||f||_q.

Hence the constant is at least ``K(G,q,n) n^(1/p - 1/q)`` with ``K`` the
scalar Hausdorff-Young quotient of ``f``. The first identity rests on the
diagonal model (all ``pi(g_k)`` are simultaneously diagonal with unimodular
eigenvalues), which is checked numerically; the second is used as is.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ConfigurationError, DomainError
from .rootsys import Group, weyl_dimensions
from .spectral import central_fourier, spectral_norm_direct
from .torus import CentralFunction, TorusGrid, weyl_integral_norm

__all__ = [
    "diag_mixed_norms", "TranslationSet", "build_translation_set",
    "GrowthCertificate", "growth_certificate", "kprime_statistic",
    "CharacterReport", "character_experiment", "default_character_weights",
]

SPACING_MARGIN = 0.01
UNIMODULAR_TOL = 1e-12
RESIDUAL_SAMPLE = 16


def _conj(q: float) -> float:
    return math.inf if q == 1 else q / (q - 1)


def _lp(values, p: float, axis=-1):
    a = np.abs(values)
    if p == math.inf:
        return np.max(a, axis=axis)
    return np.sum(a ** p, axis=axis) ** (1.0 / p)


def diag_mixed_norms(phases, p1: float, p2: float) -> tuple[float, float]:
    """Both mixed norms of ``n`` diagonal ``d x d`` matrices with unimodular entries.

    Row ``k`` of ``phases`` is the diagonal of the ``k``-th matrix. Returns
    (outer ``l^p1`` of row-wise ``S^p2`` norms, outer ``l^p2`` across slots of
    per-slot ``l^p1`` norms).
    """
    phases = np.atleast_2d(np.asarray(phases, dtype=complex))
    if np.any(np.abs(np.abs(phases) - 1) > UNIMODULAR_TOL):
        raise DomainError("diagonal model needs unit-modulus entries")
    for p in (p1, p2):
        if not p >= 1:
            raise DomainError("exponents must lie in [1, inf]")
    rows = _lp(_lp(phases, p2, axis=1), p1, axis=0)
    slots = _lp(_lp(phases, p1, axis=0), p2, axis=0)
    return float(rows), float(slots)


@dataclass(frozen=True, eq=False)
class TranslationSet:
    """Points ``g_1..g_n`` of the torus spread along the first axis."""

    n: int
    points: np.ndarray
    spacing: float
    support_radius: float

    def disjoint(self) -> bool:
        return self.n == 1 or self.spacing > 2 * self.support_radius


def _max_feasible(rho: float) -> int:
    return max(0, math.ceil(1.0 / (2 * rho + SPACING_MARGIN)) - 1)


def build_translation_set(group: Group, n: int, rho: float) -> TranslationSet:
    """Equally spaced points ``(k/n, 0, ..)`` with pairwise distance ``1/n``.

    Spacing ``> 2 rho`` (plus a small margin) is sufficient, not necessary,
    for the translated supports to be disjoint.
    """
    if n < 1:
        raise ConfigurationError("n must be positive")
    if rho <= 0:
        raise ConfigurationError("support radius must be positive")
    if n > 1 and n * (2 * rho + SPACING_MARGIN) >= 1:
        raise ConfigurationError(
            f"{n} supports of radius {rho} do not fit; maximal feasible n is {_max_feasible(rho)}")
    pts = np.zeros((n, group.rank))
    pts[:, 0] = np.arange(n) / n
    pts[:, 0] -= np.floor(pts[:, 0] + 0.5)
    return TranslationSet(n, pts, 1.0 / n if n > 1 else math.inf, float(rho))


@dataclass(frozen=True)
class GrowthCertificate:
    group: str
    p: float
    q: float
    n: int
    K: float
    lower_bound: float
    upper_bound: float
    residual_max: float
    grid: dict
    profile: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _step_one_residual(coeffs, n: int, p: float, qp: float, rng) -> float:
    """Max relative gap between the diagonal model norm and ``|gamma| n^(1/p) d^(1/q')``."""
    m = len(coeffs)
    if m == 0:
        return 0.0
    idx = np.unique(np.concatenate([np.arange(min(m, RESIDUAL_SAMPLE)),
                                    rng.choice(m, size=min(m, RESIDUAL_SAMPLE), replace=False)]))
    worst = 0.0
    for i in idx:
        d = int(coeffs.dims[i])
        g = coeffs.gamma[i]
        phases = np.exp(2j * np.pi * rng.random((n, d)))
        # S^{q'}_d(l^p(n)) norm of (g diag(phases_k))_k: l^p per slot, l^{q'} across slots
        got = float(_lp(_lp(g * phases, p, axis=0), qp, axis=0))
        want = abs(g) * n ** (1 / p) * d ** (1 / qp)
        if want > 0:
            worst = max(worst, abs(got - want) / want)
    return worst


def growth_certificate(f: CentralFunction, ts: TranslationSet, p: float, q: float,
                       profile: dict | None = None, seed: int = 0) -> GrowthCertificate:
    """Certificate ``K(G,q,n) n^(1/p-1/q) <= C <= n^(1/p-1/q)`` for one ``f`` and ``n``."""
    if not 1 <= p < q <= 2:
        raise DomainError("growth certificate needs 1 <= p < q <= 2")
    if f.support_radius is None:
        raise ConfigurationError("f must carry a support radius")
    if ts.support_radius < f.support_radius or not ts.disjoint():
        raise ConfigurationError("translation set does not separate the supports of f")
    qp = _conj(q)
    coeffs = central_fourier(f)
    k = spectral_norm_direct(coeffs, qp) / weyl_integral_norm(f, q)
    growth = ts.n ** (1 / p - 1 / q)
    resid = _step_one_residual(coeffs, ts.n, p, qp, np.random.default_rng(seed))
    grid = f.grid
    return GrowthCertificate(grid.group.name, p, q, ts.n, float(k), float(k * growth),
                             float(growth), float(resid),
                             {"N": grid.n, "cutoff": coeffs.cutoff}, dict(profile or {}))


def kprime_statistic(quotients, q: float) -> float:
    """Power mean of order ``q'`` of Hausdorff-Young quotients."""
    vals = np.asarray(quotients, dtype=float)
    if vals.size == 0:
        raise DomainError("need at least one quotient")
    if np.any(vals < 0):
        raise DomainError("quotients must be nonnegative")
    qp = _conj(q)
    if qp == math.inf:
        return float(vals.max())
    return float(np.mean(vals ** qp) ** (1 / qp))


@dataclass
class CharacterReport:
    group: str
    p: float
    q: float
    weights: list
    rows: list = field(default_factory=list)
    exponent: float | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


def default_character_weights(group: Group, n: int) -> list:
    """``lam_k = (k-1) omega`` with ``omega = (1, .., 1)``, so ``lam_1 = 0``."""
    return [[k] * group.rank for k in range(n)]


def character_experiment(grid: TorusGrid, n_list, p: float, q: float,
                         weights=None) -> CharacterReport:
    """Norms of ``Phi_n = (d_k^tau chi_k)_k`` for each ``n`` in ``n_list``.

    ``||Phi_n^||`` is computed from the torus coefficients; ``||Phi_n||`` by
    Weyl integration of ``|| (d_k^tau chi_k(t))_k ||_{l^p'}``.
    """
    from .spectral import character_function

    if not 1 <= p < q <= 2:
        raise DomainError("character experiment needs 1 <= p < q <= 2")
    group = grid.group
    n_list = sorted(int(n) for n in n_list)
    nmax = n_list[-1]
    weights = default_character_weights(group, nmax) if weights is None else [list(w) for w in weights]
    if len(weights) < nmax:
        raise ConfigurationError(f"need {nmax} weights, got {len(weights)}")
    if len({tuple(w) for w in weights[:nmax]}) < nmax:
        raise DomainError("character weights must be pairwise distinct")
    qp, pp = _conj(q), _conj(p)
    tau = 1.0 if qp == math.inf else 1 - 2 / qp
    lam = np.asarray(weights[:nmax], dtype=np.int64)
    dims = weyl_dimensions(group.rs, lam).astype(float)
    comps = [character_function(grid, w) * (d ** tau) for w, d in zip(lam, dims)]
    coeffs = [central_fourier(c) for c in comps]
    rows = []
    for n in n_list:
        ref = coeffs[0]
        gam = np.stack([c.gamma for c in coeffs[:n]], axis=1)
        hat = (np.sum(ref.dims.astype(float) ** 2 * _lp(gam, pp, axis=1) ** qp)) ** (1 / qp)
        pointwise = _lp(np.stack([c.values for c in comps[:n]], axis=-1), pp, axis=-1)
        phi = weyl_integral_norm(CentralFunction(grid, pointwise), q)
        rows.append({"n": n, "hat_norm": float(hat), "hat_expected": n ** (1 / qp),
                     "phi_norm": float(phi), "ratio": float(n ** (1 / qp) / phi)})
    exponent = None
    if len(n_list) >= 2:
        x = np.log(np.array(n_list, dtype=float))
        scale = 0.0 if pp == math.inf else 1 / pp
        y = np.log([r["phi_norm"] for r in rows]) - scale * x
        exponent = float(np.polyfit(x, y, 1)[0])
    return CharacterReport(group.name, p, q, lam.tolist(), rows, exponent)
