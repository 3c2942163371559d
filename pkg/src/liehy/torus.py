"""Central functions sampled on the maximal torus.

The torus is ``R^r / Z^r`` in the coordinates ``x_k`` dual to the
fundamental weights, with fundamental domain ``[-1/2, 1/2)^r``. A central
function on the group is a Weyl-invariant function on the torus; it is
represented by its samples on a shifted uniform grid

    x_j = -1/2 + (j + theta) / N,   j = 0..N-1  (per axis),

which is an exact quadrature rule for trigonometric polynomials of
coordinate degree below ``N``. The shift ``theta`` (a fraction of one step)
is chosen so that no node sits on a root hyperplane, where ``A_delta``
vanishes.
"""
from __future__ import annotations

import functools
import math
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .errors import ConfigurationError, DomainError, NyquistError
from .rootsys import Group, RootSystem

__all__ = [
    "TorusGrid", "CentralFunction", "make_grid", "wrap", "eval_exp", "eval_A",
    "eval_A_delta_product", "compensated_sum", "torus_fourier",
    "torus_coefficients", "weyl_integral_norm", "sample", "symmetrize",
    "save_sampled", "load_sampled",
]

_TWO_PI_I = 2j * np.pi


def wrap(x):
    """Reduce coordinates modulo the lattice into ``[-1/2, 1/2)``."""
    x = np.asarray(x, dtype=float)
    return x - np.floor(x + 0.5)


def _kronecker_direction(r: int) -> np.ndarray:
    # generalized golden ratio: root of t^(r+1) = t + 1
    t = 2.0
    for _ in range(100):
        t = (1 + t) ** (1.0 / (r + 1))
    return np.array([(1 / t) ** (k + 1) % 1 for k in range(r)])


def _wall_clearance(rs: RootSystem, n: int, theta: np.ndarray) -> float:
    """Smallest distance of ``alpha(x_j)`` from ``Z`` over nodes, in units of ``1/N``."""
    best = np.inf
    for a in rs.positive_roots:
        g = math.gcd(*(int(abs(v)) for v in a), n)
        t = float(a @ theta) - n * int(a.sum()) / 2.0
        best = min(best, abs(t - g * round(t / g)))
    return best


@dataclass(frozen=True, eq=False)
class TorusGrid:
    """Shifted uniform grid with ``n`` points per axis on the maximal torus."""

    group: Group
    n: int
    offset: tuple

    @property
    def rank(self) -> int:
        return self.group.rank

    @property
    def shape(self) -> tuple:
        return (self.n,) * self.rank

    @property
    def cell(self) -> float:
        return float(self.n) ** (-self.rank)

    def axis(self, k: int) -> np.ndarray:
        return -0.5 + (np.arange(self.n) + self.offset[k]) / self.n

    @functools.cached_property
    def points(self) -> np.ndarray:
        """Nodes as an ``(N^r, r)`` array in C order (axis 0 slowest)."""
        axes = [self.axis(k) for k in range(self.rank)]
        return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, self.rank)

    @functools.cached_property
    def a_delta(self) -> np.ndarray:
        """``A_delta`` at the nodes (product form), shaped like the grid."""
        return eval_A_delta_product(self.group.rs, self.points).reshape(self.shape)

    @functools.cached_property
    def wall_clearance(self) -> float:
        return _wall_clearance(self.group.rs, self.n, np.asarray(self.offset))

    def node_permutation(self, m) -> np.ndarray | None:
        """Flat index of the image node ``m.T @ x`` for every node, if the grid is closed."""
        img = wrap(self.points @ np.asarray(m, dtype=float))
        idx = (img + 0.5) * self.n - np.asarray(self.offset)
        j = np.rint(idx)
        if np.max(np.abs(idx - j), initial=0.0) > 1e-8:
            return None
        j = j.astype(np.int64) % self.n
        return np.ravel_multi_index(tuple(j.T), self.shape)

    @functools.cached_property
    def weyl_permutations(self) -> np.ndarray | None:
        perms = [self.node_permutation(m) for m in self.group.wg.elements]
        if any(p is None for p in perms):
            return None
        return np.array(perms)

    @property
    def weyl_closed(self) -> bool:
        return self.weyl_permutations is not None


def make_grid(group: Group, n: int, offset=None) -> TorusGrid:
    """Grid with ``n`` points per axis whose nodes avoid every root hyperplane.

    The half-step shift is used whenever it clears the walls by at least a
    quarter step (always the case for ``A1`` and tori with even ``n``);
    otherwise the shift is taken from a Kronecker sequence maximising the
    clearance.
    """
    if n < 2:
        raise ConfigurationError("grid needs at least two points per axis")
    r = group.rank
    if offset is not None:
        theta = np.broadcast_to(np.asarray(offset, dtype=float), (r,)).copy()
        grid = TorusGrid(group, int(n), tuple(float(t) for t in theta))
        if group.rs.n_positive and grid.wall_clearance < 1e-9:
            raise ConfigurationError("grid offset puts nodes on a root hyperplane")
        return grid
    rs = group.rs
    theta = np.full(r, 0.5)
    if rs.n_positive and _wall_clearance(rs, n, theta) < 0.25:
        direction = _kronecker_direction(r)
        best, best_c = theta, _wall_clearance(rs, n, theta)
        for s in range(1, 512):
            cand = (0.5 + s * direction) % 1.0
            c = _wall_clearance(rs, n, cand)
            if c > best_c + 1e-12:
                best, best_c = cand, c
        theta = best
        if best_c < 1e-6:
            raise ConfigurationError(f"no wall-avoiding offset found for {group.name}, N={n}")
    return TorusGrid(group, int(n), tuple(float(t) for t in theta))


@dataclass(frozen=True, eq=False)
class CentralFunction:
    """Samples of a Weyl-invariant function on a torus grid."""

    grid: TorusGrid
    values: np.ndarray
    support_radius: float | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex).reshape(self.grid.shape)
        object.__setattr__(self, "values", v)

    def __mul__(self, other):
        if isinstance(other, CentralFunction):
            return CentralFunction(self.grid, self.values * other.values)
        return CentralFunction(self.grid, self.values * other, self.support_radius)

    __rmul__ = __mul__

    def __add__(self, other: "CentralFunction"):
        return CentralFunction(self.grid, self.values + other.values)

    def conj(self) -> "CentralFunction":
        return CentralFunction(self.grid, self.values.conj(), self.support_radius)


def eval_exp(beta, x):
    """``exp(2 pi i <beta, x>)`` via the coordinate pairing."""
    return np.exp(_TWO_PI_I * (np.asarray(x, dtype=float) @ np.asarray(beta, dtype=float)))


def eval_A(group: Group, beta, x):
    """Alternating sum ``sum_W det(W) exp(2 pi i <W beta, x>)``."""
    images = group.wg.elements @ np.asarray(beta)
    phases = np.asarray(x, dtype=float) @ images.T.astype(float)
    return np.exp(_TWO_PI_I * phases) @ group.wg.dets.astype(float)


def eval_A_delta_product(rs: RootSystem, x):
    """``A_delta = exp_{-delta} prod_{alpha > 0} (exp_alpha - 1)``."""
    x = np.asarray(x, dtype=float)
    out = np.exp(-_TWO_PI_I * (x @ rs.delta.astype(float)))
    for t in np.moveaxis(rs.root_values(x), -1, 0):
        out = out * (np.exp(_TWO_PI_I * t) - 1.0)
    return out


def compensated_sum(values) -> complex:
    """Exactly rounded sum of a complex array, independent of ordering."""
    v = np.ravel(values)
    if np.iscomplexobj(v):
        return complex(math.fsum(v.real), math.fsum(v.imag))
    return math.fsum(v)


def _check_nyquist(grid: TorusGrid, lams: np.ndarray) -> None:
    if lams.size and np.max(np.abs(lams)) * 2 >= grid.n:
        raise NyquistError(
            f"frequency {int(np.max(np.abs(lams)))} not below Nyquist N/2 = {grid.n / 2}; "
            "raise the grid size or lower the cutoff")


def torus_fourier(values, grid: TorusGrid, lam) -> complex:
    """Fourier coefficient ``int g(x) exp(-2 pi i lam.x) dx`` by direct summation."""
    lam = np.asarray(lam, dtype=np.int64).reshape(grid.rank)
    _check_nyquist(grid, lam)
    g = np.asarray(values, dtype=complex).reshape(-1)
    terms = g * np.exp(-_TWO_PI_I * (grid.points @ lam.astype(float)))
    return compensated_sum(terms) * grid.cell


def torus_coefficients(values, grid: TorusGrid, lams) -> np.ndarray:
    """Fourier coefficients at many integer frequencies through one FFT.

    Reproduces :func:`torus_fourier` to rounding error; the shift of the
    grid enters as the phase ``exp(-2 pi i lam.x_0)``.
    """
    lams = np.asarray(lams, dtype=np.int64).reshape(-1, grid.rank)
    _check_nyquist(grid, lams)
    spec = np.fft.fftn(np.asarray(values, dtype=complex).reshape(grid.shape))
    x0 = -0.5 + np.asarray(grid.offset) / grid.n
    idx = tuple((lams % grid.n).T)
    return spec[idx] * np.exp(-_TWO_PI_I * (lams @ x0)) * grid.cell


def weyl_integral_norm(f: CentralFunction, q: float) -> float:
    """``||f||_{L^q(G)}`` through the Weyl integration formula."""
    if not q >= 1:
        raise DomainError("q must be at least 1")
    grid = f.grid
    dens = np.abs(f.values) ** q * np.abs(grid.a_delta) ** 2
    total = compensated_sum(dens) * grid.cell / grid.group.wg.order
    return total ** (1.0 / q)


def sample(grid: TorusGrid, func: Callable, support_radius=None) -> CentralFunction:
    """Evaluate ``func`` on the ``(N^r, r)`` node array."""
    return CentralFunction(grid, func(grid.points), support_radius)


def symmetrize(g, grid: TorusGrid | None = None) -> CentralFunction:
    """Average over the Weyl orbit of each node.

    ``g`` is either a callable on coordinate arrays (then ``grid`` is
    required and the average uses exact Weyl images of the nodes) or a
    sampled function, which needs a Weyl-closed grid.
    """
    if callable(g):
        if grid is None:
            raise ConfigurationError("symmetrizing a callable needs a grid")
        pts = grid.points
        acc = np.zeros(len(pts), dtype=complex)
        for m in grid.group.wg.elements:
            acc += g(wrap(pts @ m.astype(float)))
        return CentralFunction(grid, acc / grid.group.wg.order)
    if isinstance(g, CentralFunction):
        grid, vals, rad = g.grid, g.values, g.support_radius
    else:
        if grid is None:
            raise ConfigurationError("symmetrizing raw samples needs a grid")
        vals, rad = np.asarray(g), None
    perms = grid.weyl_permutations
    if perms is None:
        raise ConfigurationError(
            f"grid for {grid.group.name} is not Weyl-closed; symmetrize a callable instead")
    flat = np.asarray(vals, dtype=complex).reshape(-1)
    return CentralFunction(grid, flat[perms].mean(axis=0), rad)


# --- sampled-function files -------------------------------------------------
#
# binary layout (little endian):
#   0   4s  magic b"LHYS"
#   4   u32 format version (1)
#   8   u32 rank r
#   12  u32 points per axis N
#   16  r x f64 grid offsets theta_k (fraction of a step)
#   ..  f64 support radius (NaN when absent)
#   ..  N^r x complex128 samples, C order (axis 0 slowest)

_MAGIC = b"LHYS"


def save_sampled(path, f: CentralFunction, fmt: str = "bin") -> None:
    path = Path(path)
    grid = f.grid
    rad = math.nan if f.support_radius is None else float(f.support_radius)
    if fmt == "bin":
        head = struct.pack("<4sIII", _MAGIC, 1, grid.rank, grid.n)
        head += struct.pack(f"<{grid.rank}d", *grid.offset) + struct.pack("<d", rad)
        path.write_bytes(head + np.ascontiguousarray(f.values, dtype="<c16").tobytes())
    elif fmt == "csv":
        off = ",".join(repr(t) for t in grid.offset)
        lines = [f"# rank={grid.rank} N={grid.n} offset={off} support_radius={rad!r}", "re,im"]
        lines += [f"{float(v.real)!r},{float(v.imag)!r}" for v in f.values.reshape(-1)]
        path.write_text("\n".join(lines) + "\n")
    else:
        raise ConfigurationError(f"unknown sample format {fmt!r}")


def load_sampled(path, group: Group) -> CentralFunction:
    path = Path(path)
    raw = path.read_bytes()
    if raw[:4] == _MAGIC:
        _, version, r, n = struct.unpack_from("<4sIII", raw, 0)
        if version != 1:
            raise ConfigurationError(f"unsupported sample file version {version}")
        pos = 16
        offset = struct.unpack_from(f"<{r}d", raw, pos)
        pos += 8 * r
        (rad,) = struct.unpack_from("<d", raw, pos)
        pos += 8
        values = np.frombuffer(raw, dtype="<c16", offset=pos)
    else:
        text = raw.decode().splitlines()
        header = dict(item.split("=", 1) for item in text[0].lstrip("# ").split())
        r, n = int(header["rank"]), int(header["N"])
        offset = tuple(float(t) for t in header["offset"].split(","))
        rad = float(header["support_radius"])
        rows = [line.split(",") for line in text[2:] if line]
        values = np.array([complex(float(a), float(b)) for a, b in rows])
    if r != group.rank:
        raise ConfigurationError(f"file rank {r} does not match group {group.name}")
    grid = make_grid(group, n, offset)
    return CentralFunction(grid, values.copy(), None if math.isnan(rad) else rad)
