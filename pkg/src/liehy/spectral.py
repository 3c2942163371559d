"""Fourier transform of central functions and its Schatten-weighted norms.

For a central ``f`` on a simply connected group, Schur's lemma makes
``f^(pi_lam) = gamma_lam * Id`` with

    gamma_lam = F_T(f A_delta)(lam + delta) / d_lam,

a torus Fourier coefficient. On grids that are not Weyl-closed the
coefficient is replaced by its alternating Weyl-orbit average (see
``orbit_coefficients``), which is the same quantity in exact arithmetic. The norm ``||f^||_{q'}`` is available two
ways: the direct sum over dominant weights, and a weighted sum over the
regular part of the weight lattice (each regular lattice point is
``W(mu + delta)`` for exactly one pair). Both paths are kept; their
agreement is the main internal consistency check.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError, SingularPointError
from .rootsys import (Group, RootSystem, enumerate_dominant_weights, lattice_ball,
                      singular_mask, weyl_dimensions)
from .torus import (CentralFunction, TorusGrid, compensated_sum, eval_A,
                    torus_coefficients)

__all__ = [
    "SpectralCoefficients", "nyquist_cutoff", "central_fourier",
    "orbit_coefficients", "spectral_norm_direct", "spectral_tail", "spectral_norm_lattice",
    "lattice_constant", "eval_character", "character_function",
    "coefficients_to_json",
]

N_SHELLS = 8


@dataclass(frozen=True, eq=False)
class SpectralCoefficients:
    """Scalars ``gamma_lam`` for every dominant weight inside the cutoff ball."""

    weights: np.ndarray
    gamma: np.ndarray
    dims: np.ndarray
    cutoff: float
    radii: np.ndarray
    tail_estimate: float = 0.0

    def __len__(self):
        return len(self.weights)

    @property
    def entries(self) -> dict:
        return {tuple(int(v) for v in w): complex(g) for w, g in zip(self.weights, self.gamma)}


def nyquist_cutoff(group: Group, n: int) -> float:
    """Largest ball radius whose lattice points all stay below Nyquist ``n/2``."""
    top = math.ceil(n / 2) - 1
    scale = np.sqrt(np.diag(np.linalg.inv(group.rs.gram)))
    return float(top / np.max(scale))


def orbit_coefficients(f: CentralFunction, nus) -> np.ndarray:
    """``(1/|W|) sum_W det(W) F_T(f A_delta)(W nu)`` for each regular ``nu``.

    This is the grid quadrature of the Weyl-invariant integrand
    ``f A_delta conj(A_nu) / |W|``. It equals ``F_T(f A_delta)(nu)`` on
    Weyl-closed grids; on other grids it discards the part of the aliasing
    error that is not alternating, so that ``|gamma_lam| <= ||f||_1`` and
    discrete Parseval hold exactly.
    """
    grid = f.grid
    wg = grid.group.wg
    nus = np.asarray(nus, dtype=np.int64).reshape(-1, grid.rank)
    if grid.weyl_closed:
        return torus_coefficients(f.values * grid.a_delta, grid, nus)
    images = np.einsum("wij,mj->wmi", wg.elements, nus).reshape(-1, grid.rank)
    coeff = torus_coefficients(f.values * grid.a_delta, grid, images).reshape(wg.order, -1)
    return (wg.dets.astype(float) @ coeff) / wg.order


def central_fourier(f: CentralFunction, cutoff: float | None = None) -> SpectralCoefficients:
    """``gamma_lam`` for all dominant ``lam`` with ``|lam + delta| <= cutoff``."""
    grid = f.grid
    rs = grid.group.rs
    if cutoff is None:
        cutoff = nyquist_cutoff(grid.group, grid.n)
    weights = enumerate_dominant_weights(rs, cutoff)
    dims = weyl_dimensions(rs, weights)
    shifted = weights + rs.delta
    coeff = orbit_coefficients(f, shifted)
    radii = np.sqrt(rs.inner(shifted, shifted))
    c = SpectralCoefficients(weights, coeff / dims, dims, float(cutoff), radii)
    tail = spectral_tail(c, 2.0)
    return SpectralCoefficients(weights, c.gamma, dims, float(cutoff), radii, tail)


def _terms(c: SpectralCoefficients, qp: float) -> np.ndarray:
    return c.dims.astype(float) ** 2 * np.abs(c.gamma) ** qp


def spectral_norm_direct(c: SpectralCoefficients, qp: float) -> float:
    """``(sum_lam d_lam^2 |gamma_lam|^q')^(1/q')``; the supremum for ``q' = inf``."""
    if qp == math.inf:
        return float(np.max(np.abs(c.gamma), initial=0.0))
    if not qp >= 2:
        raise DomainError("dual exponent must be at least 2")
    return compensated_sum(_terms(c, qp)) ** (1.0 / qp)


def spectral_tail(c: SpectralCoefficients, qp: float) -> float:
    """Relative size of the truncated tail of the direct norm.

    Terms are binned into equal-width radial shells; the ratio of the two
    outermost shells is extrapolated geometrically. When the shells do not
    decay the outermost shell itself is reported.
    """
    if qp == math.inf or len(c) == 0:
        return 0.0
    terms = _terms(c, qp)
    total = compensated_sum(terms)
    if total == 0:
        return 0.0
    edges = np.linspace(0.0, c.cutoff, N_SHELLS + 1)
    shell = np.clip(np.searchsorted(edges, c.radii, side="left") - 1, 0, N_SHELLS - 1)
    sums = np.bincount(shell, weights=terms, minlength=N_SHELLS)
    last, prev = sums[-1], sums[-2]
    if prev > 0 and last < prev:
        ratio = last / prev
        tail = last * ratio / (1 - ratio)
    else:
        tail = last
    return float((1 + tail / total) ** (1.0 / qp) - 1)


def lattice_constant(rs: RootSystem, order: int, qp: float) -> float:
    """``[(1/|W|) prod_alpha <alpha, delta>^(q'-2)]^(1/q')``."""
    base = np.prod(rs.root_pairings(rs.delta) ** (qp - 2))
    return float((base / order) ** (1.0 / qp))


def spectral_norm_lattice(f: CentralFunction, qp: float, cutoff: float | None = None) -> float:
    """Norm of ``f^`` as a weighted sum over the regular weight lattice."""
    grid = f.grid
    group = grid.group
    rs = group.rs
    if rs.abelian:
        raise ConfigurationError("lattice norm needs a non-abelian group; use the direct norm")
    if not 2 <= qp < math.inf:
        raise DomainError("lattice norm needs 2 <= q' < inf")
    if cutoff is None:
        cutoff = nyquist_cutoff(group, grid.n)
    lams = lattice_ball(rs, cutoff)
    lams = lams[~singular_mask(rs, lams)]
    coeff = orbit_coefficients(f, lams)
    weight = np.prod(np.abs(rs.root_pairings(lams)) ** (qp - 2), axis=1)
    total = compensated_sum(np.abs(coeff) ** qp / weight)
    return lattice_constant(rs, group.wg.order, qp) * total ** (1.0 / qp)


def eval_character(group: Group, lam, x, tol: float = 1e-12):
    """Character ``A_{lam+delta}(x) / A_delta(x)`` at regular points ``x``."""
    lam = np.asarray(lam)
    if np.any(lam < 0) and not group.rs.abelian:
        raise DomainError("character needs a dominant weight")
    num = eval_A(group, lam + group.rs.delta, x)
    den = eval_A(group, group.rs.delta, x)
    if np.any(np.abs(den) < tol):
        raise SingularPointError("A_delta vanishes at the evaluation point; perturb x")
    return num / den


def character_function(grid: TorusGrid, lam) -> CentralFunction:
    """``chi_lam`` sampled on the grid."""
    return CentralFunction(grid, eval_character(grid.group, lam, grid.points))


def coefficients_to_json(c: SpectralCoefficients) -> str:
    """Byte-stable JSON list of ``{lambda, gamma, dim}`` sorted by weight."""
    order = np.lexsort(c.weights.T[::-1]) if len(c) else []
    rows = [{"lambda": [int(v) for v in c.weights[i]],
             "gamma": [float(c.gamma[i].real), float(c.gamma[i].imag)],
             "dim": int(c.dims[i])} for i in order]
    return json.dumps(rows, indent=1)
