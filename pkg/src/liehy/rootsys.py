"""Root systems, Weyl groups and weights of simply connected compact simple groups.

Every weight and root is stored in coordinates with respect to the
fundamental weights, so the weight lattice is exactly ``Z^r`` and the Weyl
group acts by integer matrices. The invariant inner product is carried as a
Gram matrix in the same coordinates, normalised so that long roots have
squared length 2.

Supported types are ``A_r`` (r >= 1), ``B_r`` (r >= 2, spin), ``C_r``
(r >= 2), ``D_r`` (r >= 3, spin), ``G_2`` and the abelian torus ``T_r``
(empty root system, trivial Weyl group), which serves as the commutative
baseline.
"""
from __future__ import annotations

import dataclasses
import functools
import itertools
import re
from collections import deque
from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import ClosureError, ConfigurationError, DomainError

__all__ = [
    "CartanSpec", "parse_group", "RootSystem", "WeylGroup", "Group",
    "build_root_system", "generate_weyl_group", "load_group",
    "weyl_group_order", "weyl_dimension", "enumerate_dominant_weights",
    "is_dominant", "is_singular", "dominant_decomposition", "weyl_dimensions",
    "lattice_ball", "singular_mask",
]

SINGULAR_EPS = 1e-9
WEYL_GROUP_CAP = 10_000_000

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "G": 2, "T": 1}


@dataclass(frozen=True)
class CartanSpec:
    """Cartan type of a simple group, or an abelian torus of given rank."""

    family: str
    rank: int
    abelian_degenerate: bool = False

    def __post_init__(self):
        fam = self.family.upper()
        object.__setattr__(self, "family", fam)
        if self.abelian_degenerate and fam != "T":
            raise ConfigurationError("abelian_degenerate requires family 'T'")
        if fam == "T":
            object.__setattr__(self, "abelian_degenerate", True)
        if fam not in _MIN_RANK:
            raise ConfigurationError(f"unsupported Cartan family {self.family!r}")
        if not isinstance(self.rank, (int, np.integer)) or self.rank < _MIN_RANK[fam]:
            raise ConfigurationError(f"inadmissible rank {self.rank} for family {fam}")
        if fam == "G" and self.rank != 2:
            raise ConfigurationError("family G is only supported in rank 2")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"


def parse_group(text: str) -> CartanSpec:
    """Parse a group string such as ``"A2"``, ``"g2"`` or ``"T1"``."""
    m = re.fullmatch(r"\s*([A-Za-z])\s*_?\s*(\d+)\s*", str(text))
    if m is None:
        raise ConfigurationError(f"cannot parse group specification {text!r}")
    return CartanSpec(m.group(1).upper(), int(m.group(2)))


def _cartan_data(spec: CartanSpec):
    """Cartan matrix ``C[i, j] = <alpha_i, alpha_j^vee>`` and half squared lengths."""
    r, fam = spec.rank, spec.family
    c = 2 * np.eye(r, dtype=np.int64)
    for i in range(r - 1):
        c[i, i + 1] = c[i + 1, i] = -1
    half = np.ones(r)
    if fam == "B":
        c[r - 2, r - 1] = -2
        half[r - 1] = 0.5
    elif fam == "C":
        c[r - 1, r - 2] = -2
        half[: r - 1] = 0.5
    elif fam == "D":
        c[r - 2, r - 1] = c[r - 1, r - 2] = 0
        c[r - 3, r - 1] = c[r - 1, r - 3] = -1
    elif fam == "G":
        c[1, 0] = -3
        half[0] = 1.0 / 3.0
    return c, half


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Positive roots, coroots, delta and the invariant Gram matrix.

    ``positive_roots[a]`` holds the fundamental-weight coordinates of a
    positive root; as a functional on the Cartan subalgebra it acts on torus
    coordinates ``x`` by the plain dot product. ``positive_coroots[a]`` holds
    the coefficients of the coroot in the simple-coroot basis, so that
    ``<alpha^vee, lam> = positive_coroots[a] @ lam`` exactly for integer
    weights.
    """

    spec: CartanSpec
    rank: int
    cartan: np.ndarray
    simple_roots: np.ndarray
    positive_roots: np.ndarray
    positive_coroots: np.ndarray
    delta: np.ndarray
    gram: np.ndarray

    @property
    def n_positive(self) -> int:
        return len(self.positive_roots)

    @property
    def abelian(self) -> bool:
        return self.spec.abelian_degenerate

    def rescaled(self, c: float) -> "RootSystem":
        """Same root system with the inner product multiplied by ``c > 0``."""
        if not c > 0:
            raise DomainError("rescaling factor must be positive")
        return dataclasses.replace(self, gram=c * self.gram)

    def inner(self, a, b) -> np.ndarray:
        """Invariant inner product of weight-coordinate vectors (broadcasting)."""
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        return np.einsum("...i,ij,...j->...", a, self.gram, b)

    def root_pairings(self, xi) -> np.ndarray:
        """``<alpha, xi>`` for every positive root; shape ``xi.shape[:-1] + (|R+|,)``."""
        xi = np.asarray(xi, dtype=float)
        return xi @ (self.gram @ self.positive_roots.T.astype(float))

    def root_values(self, x) -> np.ndarray:
        """``alpha(x)`` for torus/Cartan coordinates ``x``; coordinate pairing."""
        x = np.asarray(x, dtype=float)
        return x @ self.positive_roots.T.astype(float)


def build_root_system(spec: CartanSpec | str) -> RootSystem:
    """Construct the root system of ``spec`` in fundamental-weight coordinates."""
    if isinstance(spec, str):
        spec = parse_group(spec)
    r = spec.rank
    if spec.abelian_degenerate:
        empty = np.zeros((0, r), dtype=np.int64)
        return RootSystem(spec, r, np.zeros((0, 0), dtype=np.int64), empty, empty,
                          empty.copy(), np.zeros(r, dtype=np.int64), np.eye(r))

    cartan, half = _cartan_data(spec)
    # simple roots alpha_i = sum_j C_ij omega_j ;  C G = diag(half)
    gram = np.linalg.solve(cartan.astype(float), np.diag(half))
    gram = 0.5 * (gram + gram.T)

    # closure of the simple roots under simple reflections, in simple-root coordinates
    simple = [tuple(int(v) for v in row) for row in np.eye(r, dtype=np.int64)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = np.array(queue.popleft())
        pair = beta @ cartan  # <beta, alpha_i^vee> for each i
        for i in range(r):
            img = beta.copy()
            img[i] -= pair[i]
            key = tuple(int(v) for v in img)
            if key not in seen:
                seen.add(key)
                queue.append(key)
    pos = sorted((n for n in seen if min(n) >= 0), key=lambda n: (sum(n), n))
    pos_n = np.array(pos, dtype=np.int64)
    roots = pos_n @ cartan  # omega coordinates

    # coroot coefficients n_i * |alpha_i|^2 / |alpha|^2
    half_len = 0.5 * np.einsum("ai,ij,aj->a", roots.astype(float), gram, roots.astype(float))
    co = pos_n * half[None, :] / half_len[:, None]
    coroots = np.rint(co).astype(np.int64)
    if not np.allclose(co, coroots, atol=1e-9):
        raise ClosureError("coroot coefficients are not integral")

    delta2 = roots.sum(axis=0)
    if np.any(delta2 != 2):
        raise ClosureError("half sum of positive roots is not (1, ..., 1)")
    return RootSystem(spec, r, cartan, cartan.copy(), roots, coroots,
                      delta2 // 2, gram)


@dataclass(frozen=True, eq=False)
class WeylGroup:
    """Weyl group as integer matrices acting on fundamental-weight coordinates.

    ``elements[w] @ lam`` is the image of the weight ``lam`` (the transpose
    action on the dual of the Cartan subalgebra). On torus coordinates the
    same element acts by ``x -> elements[w].T @ x``.
    """

    elements: np.ndarray
    dets: np.ndarray

    @property
    def order(self) -> int:
        return len(self.elements)

    @functools.cached_property
    def _index(self) -> dict:
        return {m.tobytes(): i for i, m in enumerate(self.elements)}

    def index_of(self, m) -> int:
        return self._index[np.ascontiguousarray(m, dtype=np.int64).tobytes()]


def _simple_reflections(rs: RootSystem) -> list[np.ndarray]:
    r = rs.rank
    gens = []
    for i in range(r):
        s = np.eye(r, dtype=np.int64)
        s[:, i] -= rs.simple_roots[i]
        gens.append(s)
    return gens


def generate_weyl_group(rs: RootSystem, cap: int = WEYL_GROUP_CAP) -> WeylGroup:
    """Breadth-first closure of the simple reflections."""
    r = rs.rank
    ident = np.eye(r, dtype=np.int64)
    if rs.abelian:
        return WeylGroup(ident[None].copy(), np.ones(1, dtype=np.int64))
    gens = _simple_reflections(rs)
    elements = [ident]
    dets = [1]
    seen = {ident.tobytes()}
    head = 0
    while head < len(elements):
        m, d = elements[head], dets[head]
        head += 1
        for s in gens:
            img = s @ m
            key = img.tobytes()
            if key not in seen:
                seen.add(key)
                elements.append(img)
                dets.append(-d)
                if len(elements) > cap:
                    raise ClosureError(f"Weyl group exceeded {cap} elements")
    return WeylGroup(np.array(elements), np.array(dets, dtype=np.int64))


_DEGREES = {
    "A": lambda r: range(2, r + 2),
    "B": lambda r: range(2, 2 * r + 1, 2),
    "C": lambda r: range(2, 2 * r + 1, 2),
    "D": lambda r: [*range(2, 2 * r - 1, 2), r],
    "G": lambda r: (2, 6),
    "T": lambda r: (),
}


def weyl_group_order(spec: CartanSpec) -> int:
    """Order of the Weyl group from the degrees of the basic invariants."""
    return prod(_DEGREES[spec.family](spec.rank))


@dataclass(frozen=True, eq=False)
class Group:
    """A root system bundled with its Weyl group."""

    rs: RootSystem
    wg: WeylGroup

    @property
    def name(self) -> str:
        return self.rs.spec.name

    @property
    def rank(self) -> int:
        return self.rs.rank

    def rescaled(self, c: float) -> "Group":
        return Group(self.rs.rescaled(c), self.wg)


@functools.lru_cache(maxsize=None)
def _load(spec: CartanSpec) -> Group:
    rs = build_root_system(spec)
    return Group(rs, generate_weyl_group(rs))


def load_group(spec: CartanSpec | str) -> Group:
    """Root system and Weyl group for a group string or spec (cached)."""
    if isinstance(spec, str):
        spec = parse_group(spec)
    return _load(spec)


def is_dominant(rs: RootSystem, lam) -> bool:
    """Nonnegative coordinates; every weight of a torus counts as dominant."""
    if rs.abelian:
        return True
    return bool(np.all(np.asarray(lam) >= 0))


def weyl_dimension(rs: RootSystem, lam) -> int:
    """Degree of the irreducible representation with highest weight ``lam``."""
    lam = np.asarray(lam)
    if lam.shape != (rs.rank,):
        raise DomainError(f"weight must have length {rs.rank}")
    if not is_dominant(rs, lam):
        raise DomainError(f"weight {lam.tolist()} is not dominant")
    if rs.abelian:
        return 1
    num = rs.root_pairings(lam + rs.delta)
    den = rs.root_pairings(rs.delta)
    value = float(np.prod(num / den))
    d = round(value)
    if abs(value - d) > 1e-6 * max(1.0, abs(value)):
        raise ArithmeticError(f"Weyl dimension product {value} is not integral")
    return int(d)


def weyl_dimensions(rs: RootSystem, weights) -> np.ndarray:
    """Vectorised :func:`weyl_dimension` for an ``(m, r)`` array of dominant weights."""
    weights = np.asarray(weights).reshape(-1, rs.rank)
    if rs.abelian:
        return np.ones(len(weights), dtype=np.int64)
    if np.any(weights < 0):
        raise DomainError("all weights must be dominant")
    ratio = rs.root_pairings(weights + rs.delta) / rs.root_pairings(rs.delta)
    value = np.prod(ratio, axis=1)
    d = np.rint(value)
    if np.any(np.abs(value - d) > 1e-6 * np.maximum(1.0, np.abs(value))):
        raise ArithmeticError("Weyl dimension product is not integral")
    return d.astype(np.int64)


def lattice_ball(rs: RootSystem, cutoff: float) -> np.ndarray:
    """All lattice points with ``<lam, lam> <= cutoff**2``, lexicographic order."""
    r = rs.rank
    bounds = np.floor(cutoff * np.sqrt(np.diag(np.linalg.inv(rs.gram))) + 1e-9).astype(int)
    axes = [np.arange(-b, b + 1) for b in bounds]
    cand = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, r)
    return cand[rs.inner(cand, cand) <= cutoff * cutoff * (1 + 1e-12)].astype(np.int64)


def singular_mask(rs: RootSystem, lams) -> np.ndarray:
    """Exact test of integer weights against every root hyperplane."""
    lams = np.asarray(lams, dtype=np.int64).reshape(-1, rs.rank)
    if rs.abelian:
        return np.zeros(len(lams), dtype=bool)
    return np.any(lams @ rs.positive_coroots.T == 0, axis=1)


def enumerate_dominant_weights(rs: RootSystem, cutoff: float) -> np.ndarray:
    """Dominant weights with ``<lam + delta, lam + delta> <= cutoff**2``.

    Returned as an integer array of shape ``(m, r)`` in lexicographic order.
    For a torus the "dominant" set is the whole lattice ball.
    """
    if not cutoff > 0:
        raise DomainError("cutoff must be positive")
    r = rs.rank
    ginv = np.linalg.inv(rs.gram)
    bounds = np.floor(cutoff * np.sqrt(np.diag(ginv)) + 1e-9).astype(int)
    lo = -bounds if rs.abelian else np.zeros(r, dtype=int)
    axes = [np.arange(lo[k], bounds[k] + 1) for k in range(r)]
    cand = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, r)
    if not rs.abelian:
        cand = cand[np.all(cand + rs.delta <= bounds, axis=1)]
    nu = cand + rs.delta
    keep = rs.inner(nu, nu) <= cutoff * cutoff * (1 + 1e-12)
    return cand[keep].astype(np.int64)


def is_singular(rs: RootSystem, xi, eps: float = SINGULAR_EPS) -> bool:
    """Whether ``xi`` lies on a root hyperplane (exact for integer input)."""
    xi = np.asarray(xi)
    if xi.shape != (rs.rank,):
        raise DomainError(f"vector must have length {rs.rank}")
    if rs.abelian:
        return False
    if np.issubdtype(xi.dtype, np.integer):
        return bool(np.any(rs.positive_coroots @ xi == 0))
    return bool(np.min(np.abs(rs.root_pairings(xi))) < eps)


def dominant_decomposition(rs: RootSystem, wg: WeylGroup, lam) -> tuple[int, np.ndarray]:
    """Unique ``(w, mu)`` with ``wg.elements[w] @ (mu + delta) == lam``, ``mu`` dominant."""
    lam = np.asarray(lam, dtype=np.int64)
    if rs.abelian:
        return 0, lam.copy()
    if is_singular(rs, lam):
        raise DomainError(f"singular weight {lam.tolist()} has no decomposition")
    gens = _simple_reflections(rs)
    nu = lam.copy()
    inv = np.eye(rs.rank, dtype=np.int64)
    for _ in itertools.count():
        neg = np.flatnonzero(nu < 0)
        if len(neg) == 0:
            break
        s = gens[neg[0]]
        nu = s @ nu
        inv = inv @ s
    w = wg.index_of(inv)
    mu = nu - rs.delta
    assert np.array_equal(wg.elements[w] @ (mu + rs.delta), lam)
    return w, mu
