"""Discrete wavelet dictionary built from an activation.

Kernels and atoms::

    S_k(x, b)      = 2^k sigma(2^{k/d} (x - b))
    psi_{k,b}(x)   = 2^{-k/2} (S_k(x, b) - S_{k-1}(x, b))
                   = 2^{k/2} sigma(2^{k/d}(x-b)) - 2^{k/2-1} sigma(2^{(k-1)/d}(x-b))

Atom centres live on the lattice b = 2^{-k/d} m, m in Z^d.  Atoms are stored as
integer pairs (k, m); every power of two is formed as ``ldexp`` of a fractional
root so that shifting k by d halves the spacing exactly.
"""
from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .activations import ActivationSpec, as_points, eval_sigma, support_radius
from .errors import EmptyDictionary, TooManyPoints
from .quadrature import Grid, l2_norm

log = logging.getLogger(__name__)

MAX_POINTS = 10**6
DROP_NORM = 1e-12


def _pow2_frac(num: int, den: int) -> float:
    """2^(num/den), exact whenever den divides num."""
    q, r = divmod(num, den)
    return math.ldexp(2.0 ** (r / den), q)


def dilation(k: int, d: int) -> float:
    """2^{k/d}."""
    return _pow2_frac(k, d)


def spacing(k: int, d: int) -> float:
    """Lattice spacing 2^{-k/d}."""
    return _pow2_frac(-k, d)


def amplitude(k: int) -> float:
    """2^{k/2}."""
    return _pow2_frac(k, 2)


@dataclass(frozen=True, order=True)
class AtomIndex:
    k: int
    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "m", tuple(int(v) for v in self.m))

    @property
    def dim(self) -> int:
        return len(self.m)

    def center(self) -> np.ndarray:
        return spacing(self.k, self.dim) * np.asarray(self.m, dtype=float)

    def to_list(self) -> list:
        return [self.k, list(self.m)]

    @classmethod
    def from_list(cls, item) -> "AtomIndex":
        return cls(item[0], tuple(item[1]))


def as_box(domain, d: int) -> np.ndarray:
    """Normalize a domain to a (d, 2) array of [lo, hi] rows.

    Accepts a half-width, a single [lo, hi] pair applied to every axis, or one
    pair per axis.
    """
    arr = np.asarray(domain, dtype=float)
    if arr.ndim == 0:
        arr = np.array([[-float(arr), float(arr)]] * d)
    elif arr.ndim == 1:
        arr = np.tile(arr, (d, 1))
    if arr.shape != (d, 2) or np.any(arr[:, 0] > arr[:, 1]):
        raise ValueError(f"bad domain box {domain!r} for d={d}")
    return arr


def lattice_indices(k: int, domain, d: int, cap: int = MAX_POINTS) -> list[tuple]:
    """Integer vectors m with 2^{-k/d} m inside the closed box, lexicographic."""
    box = as_box(domain, d)
    h = spacing(k, d)
    ranges = []
    for lo, hi in box:
        m_lo = math.ceil(lo / h - 1e-9)
        m_hi = math.floor(hi / h + 1e-9)
        ranges.append(range(m_lo, m_hi + 1))
    count = math.prod(len(r) for r in ranges)
    if count > cap:
        raise TooManyPoints(f"{count} lattice points at k={k} exceed the cap {cap}")
    return list(itertools.product(*ranges))


def lattice_points(k: int, domain, d: int = 1, cap: int = MAX_POINTS) -> np.ndarray:
    """Lattice centres b (count, d) of spacing 2^{-k/d} inside the box."""
    ms = lattice_indices(k, domain, d, cap)
    return spacing(k, d) * np.asarray(ms, dtype=float).reshape(len(ms), d)


def eval_S_k(spec: ActivationSpec, k: int, x, b) -> np.ndarray:
    x = as_points(x, spec.dim)
    b = as_points(b, spec.dim)
    return math.ldexp(1.0, k) * eval_sigma(spec, dilation(k, spec.dim) * (x - b))


def eval_psi(spec: ActivationSpec, k: int, b, x) -> np.ndarray:
    d = spec.dim
    diff = as_points(x, d) - as_points(b, d)
    amp = amplitude(k)
    return (amp * eval_sigma(spec, dilation(k, d) * diff)
            - 0.5 * amp * eval_sigma(spec, dilation(k - 1, d) * diff))


def eval_atom(spec: ActivationSpec, atom: AtomIndex, x) -> np.ndarray:
    return eval_psi(spec, atom.k, atom.center(), x)


@dataclass(frozen=True, eq=False)
class Dictionary:
    spec: ActivationSpec
    k_min: int
    k_max: int
    domain: np.ndarray
    grid: Grid
    atoms: list
    samples: np.ndarray     # (len(atoms), grid.size)
    norms: np.ndarray
    dropped: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.atoms)

    def index_of(self, atom: AtomIndex) -> int:
        return self._lookup[atom]

    @property
    def _lookup(self) -> dict:
        cache = self.__dict__.get("_lookup_cache")
        if cache is None:
            cache = {a: i for i, a in enumerate(self.atoms)}
            object.__setattr__(self, "_lookup_cache", cache)
        return cache

    def manifest(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "k_range": [self.k_min, self.k_max],
            "domain": self.domain.tolist(),
            "atom_count": len(self.atoms),
            "dropped_atoms": [a.to_list() for a in self.dropped],
        }


def _sample_atoms(spec, atoms, nodes):
    out = np.empty((len(atoms), nodes.shape[0]))
    for i, atom in enumerate(atoms):
        out[i] = eval_atom(spec, atom, nodes)
    return out


def check_coverage(spec: ActivationSpec, k_min: int, domain, grid: Grid) -> bool:
    """True when the grid box contains the domain box plus 4 atom widths at k_min."""
    width = spacing(k_min - 1, spec.dim) * (support_radius(spec) or 2.0)
    box = as_box(domain, spec.dim)
    need = np.abs(box).max() + 4 * width
    return grid.half_width >= need


def build_dictionary(spec: ActivationSpec, k_min: int, k_max: int, domain, grid: Grid,
                     cap: int = MAX_POINTS, workers: int = 1) -> Dictionary:
    """All atoms (k, b) with k_min <= k <= k_max and b in the domain, sampled on grid.

    ``workers`` only changes how the sampling is spread over threads; each atom
    row is computed identically either way.
    """
    if k_min > k_max:
        raise ValueError("k_min must not exceed k_max")
    if grid.dim != spec.dim:
        raise ValueError("grid and activation dimensions differ")
    box = as_box(domain, spec.dim)
    atoms = []
    for k in range(k_min, k_max + 1):
        atoms.extend(AtomIndex(k, m) for m in lattice_indices(k, box, spec.dim, cap))
        if len(atoms) > cap:
            raise TooManyPoints(f"{len(atoms)} atoms exceed the cap {cap}")
    if not check_coverage(spec, k_min, box, grid):
        log.warning("grid box [-%g, %g]^%d is narrower than domain + 4 atom widths at k=%d; "
                    "coarse atoms are truncated", grid.half_width, grid.half_width,
                    spec.dim, k_min)
    if workers > 1 and len(atoms) > 1:
        chunks = np.array_split(np.arange(len(atoms)), workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(
                lambda idx: _sample_atoms(spec, [atoms[i] for i in idx], grid.nodes), chunks))
        samples = np.concatenate(parts, axis=0)
    else:
        samples = _sample_atoms(spec, atoms, grid.nodes)
    norms = np.atleast_1d(l2_norm(samples, grid)) if atoms else np.zeros(0)
    keep = norms >= DROP_NORM
    dropped = [a for a, kp in zip(atoms, keep) if not kp]
    atoms = [a for a, kp in zip(atoms, keep) if kp]
    if not atoms:
        raise EmptyDictionary("no atom has a non-negligible norm on the grid")
    samples = np.ascontiguousarray(samples[keep])
    samples.setflags(write=False)
    norms = norms[keep]
    return Dictionary(spec, k_min, k_max, box, grid, atoms, samples, norms, dropped)


@dataclass
class WaveletExpansion:
    """Sparse expansion sum_i c_i psi_{k_i, b_i}, kept in insertion order."""

    terms: list = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        for atom, _ in self.terms:
            if atom in seen:
                raise ValueError(f"duplicate atom {atom} in expansion")
            seen.add(atom)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def atoms(self) -> list:
        return [a for a, _ in self.terms]

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([c for _, c in self.terms], dtype=float)

    @property
    def coefficient_l1(self) -> float:
        return float(np.abs(self.coefficients).sum()) if self.terms else 0.0

    def scaled(self, a: float) -> "WaveletExpansion":
        return WaveletExpansion([(atom, a * c) for atom, c in self.terms])

    def __add__(self, other: "WaveletExpansion") -> "WaveletExpansion":
        merged = dict(self.terms)
        order = [a for a, _ in self.terms]
        for atom, c in other.terms:
            if atom in merged:
                merged[atom] += c
            else:
                merged[atom] = c
                order.append(atom)
        return WaveletExpansion([(a, merged[a]) for a in order])

    def to_list(self) -> list:
        return [{"k": a.k, "m": list(a.m), "c": float(c)} for a, c in self.terms]

    @classmethod
    def from_list(cls, items) -> "WaveletExpansion":
        return cls([(AtomIndex(t["k"], tuple(t["m"])), float(t["c"])) for t in items])


def eval_expansion(expansion: WaveletExpansion, spec: ActivationSpec, x) -> np.ndarray:
    pts = as_points(x, spec.dim)
    out = np.zeros(pts.shape[:-1])
    for atom, c in expansion.terms:
        out = out + c * eval_atom(spec, atom, pts)
    return out
