"""Orthogonal greedy algorithm over a sampled wavelet dictionary.

Selection maximizes the normalized correlation |<r, g>| / ||g||; after every
selection all coefficients are refit by projecting the target onto the span of
the selected atoms (Gram system, Cholesky).  Among atoms within 1e-12 of the
best score the smallest (k, m) wins.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .errors import DictionaryExhausted, GramSingular, MissingBound
from .frame import Dictionary, WaveletExpansion
from .quadrature import fixed_sum, l2_norm, sample

TIE_TOL = 1e-12
RATE_SLACK = 1e-3
COEFF_LAWS = ("gaussian", "uniform", "dyadic", "unit")


@dataclass(frozen=True)
class OgaStep:
    chosen: object          # AtomIndex
    score: float
    coefficients: tuple     # refit over all atoms selected so far
    residual_norm: float


@dataclass
class OgaTrace:
    target_norm: float
    steps: list = field(default_factory=list)
    l1_bound: float | None = None

    def __len__(self) -> int:
        return len(self.steps)

    def to_dict(self) -> dict:
        return {
            "target_norm": self.target_norm,
            "l1_bound": self.l1_bound,
            "steps": [{"chosen": s.chosen.to_list(), "score": s.score,
                       "coefficients": list(s.coefficients),
                       "residual_norm": s.residual_norm} for s in self.steps],
        }


def spd_solve(gram: np.ndarray, rhs: np.ndarray, exc=GramSingular) -> np.ndarray:
    """Solve a symmetric positive-definite system by Cholesky.

    On failure a ridge of 1e-12 * trace / t is added once; a second failure
    raises ``exc``.  One step of iterative refinement follows the solve.
    """
    t = gram.shape[0]
    for ridge in (0.0, 1e-12 * np.trace(gram) / t):
        mat = gram + ridge * np.eye(t)
        try:
            factor = cho_factor(mat, lower=True, check_finite=True)
        except (LinAlgError, ValueError):
            continue
        sol = cho_solve(factor, rhs)
        sol = sol + cho_solve(factor, rhs - mat @ sol)
        if np.all(np.isfinite(sol)):
            return sol
    raise exc(f"{t}x{t} Gram system is numerically singular")


def _pick(scores: np.ndarray, dictionary: Dictionary, tie_break: str) -> int:
    best = scores.max()
    candidates = np.flatnonzero(scores >= best - TIE_TOL)
    if tie_break == "smallest_k_then_m":
        return min(candidates, key=lambda i: dictionary.atoms[i])
    if tie_break == "lowest_index":
        return int(candidates[0])
    raise ValueError(f"unknown tie rule {tie_break!r}")


def oga(target, dictionary: Dictionary, N: int, tie_break: str = "smallest_k_then_m",
        threshold: float | None = None) -> tuple[WaveletExpansion, OgaTrace]:
    """Run ``N`` steps of the orthogonal greedy algorithm.

    ``target`` is either grid samples or a callable evaluated on the grid.
    ``threshold`` enables an early stop once the residual norm drops below it.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if N > len(dictionary):
        raise DictionaryExhausted(f"N={N} exceeds the {len(dictionary)} available atoms")
    grid = dictionary.grid
    f = np.asarray(sample(target, grid), dtype=float)
    w = grid.weights
    D, norms = dictionary.samples, dictionary.norms

    trace = OgaTrace(target_norm=l2_norm(f, grid))
    chosen: list[int] = []
    gram = np.zeros((0, 0))
    rhs = np.zeros(0)
    available = np.ones(len(dictionary), dtype=bool)
    residual = f.copy()
    coeffs = np.zeros(0)

    for _ in range(N):
        corr = fixed_sum(D * (w * residual))
        scores = np.where(available, np.abs(corr) / norms, -np.inf)
        j = _pick(scores, dictionary, tie_break)
        available[j] = False

        g = D[j]
        cross = fixed_sum(D[chosen] * (w * g)) if chosen else np.zeros(0)
        t = len(chosen) + 1
        new_gram = np.empty((t, t))
        new_gram[:-1, :-1] = gram
        new_gram[-1, :-1] = new_gram[:-1, -1] = cross
        new_gram[-1, -1] = norms[j] ** 2
        gram = new_gram
        rhs = np.append(rhs, fixed_sum(f * w * g))
        chosen.append(j)

        coeffs = spd_solve(gram, rhs)
        residual = f - (coeffs[:, None] * D[chosen]).sum(axis=0)
        rnorm = l2_norm(residual, grid)
        trace.steps.append(OgaStep(dictionary.atoms[j], float(scores[j]),
                                   tuple(float(c) for c in coeffs), rnorm))
        if threshold is not None and rnorm <= threshold:
            break

    expansion = WaveletExpansion([(dictionary.atoms[j], float(c))
                                  for j, c in zip(chosen, coeffs)])
    return expansion, trace


def residual_curve(trace: OgaTrace) -> list[tuple[int, float]]:
    if not trace.steps:
        raise ValueError("empty trace")
    return [(t, s.residual_norm) for t, s in enumerate(trace.steps, start=1)]


@dataclass(frozen=True)
class RateVerdict:
    passed: bool
    margin: float
    worst_step: int

    def to_dict(self) -> dict:
        margin = self.margin if math.isfinite(self.margin) else "inf"
        return {"pass": self.passed, "margin": margin, "worst_step": self.worst_step}


def rate_bound(l1_bound: float, t: int) -> float:
    return l1_bound / math.sqrt(t + 1)


def verify_rate(trace: OgaTrace, l1_bound: float | None = None,
                slack: float = RATE_SLACK) -> RateVerdict:
    """Check residual(t) <= l1_bound (t+1)^{-1/2} (1 + slack) for every step."""
    bound = trace.l1_bound if l1_bound is None else l1_bound
    if bound is None:
        raise MissingBound("verify_rate needs an L1 bound on the target")
    margin, worst = 0.0, 1
    for t, res in residual_curve(trace):
        if bound > 0:
            ratio = res * math.sqrt(t + 1) / bound
        else:
            ratio = math.inf if res > 0 else 0.0
        if ratio > margin:
            margin, worst = ratio, t
    return RateVerdict(margin <= 1.0 + slack, margin, worst)


def make_synthetic_target(dictionary: Dictionary, n_atoms: int, coeff_law: str = "gaussian",
                          seed: int | np.random.Generator = 0):
    """Random sparse combination of dictionary atoms with a known L1 bound.

    Returns ``(samples, l1_bound, expansion)``; ``l1_bound`` is the sum of
    absolute coefficients over the (un-normalized) atoms.
    """
    if n_atoms > len(dictionary):
        raise DictionaryExhausted(f"{n_atoms} atoms requested from {len(dictionary)}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    idx = np.sort(rng.choice(len(dictionary), size=n_atoms, replace=False))
    if coeff_law == "gaussian":
        c = rng.standard_normal(n_atoms)
    elif coeff_law == "uniform":
        c = rng.uniform(-1.0, 1.0, n_atoms)
    elif coeff_law == "dyadic":
        c = rng.choice([-1.0, 1.0], n_atoms) * np.ldexp(1.0, -np.arange(n_atoms))
    elif coeff_law == "unit":
        c = np.ones(n_atoms)
    else:
        raise ValueError(f"unknown coefficient law {coeff_law!r}")
    samples = (c[:, None] * dictionary.samples[idx]).sum(axis=0)
    expansion = WaveletExpansion([(dictionary.atoms[i], float(ci)) for i, ci in zip(idx, c)])
    return samples, float(np.abs(c).sum()), expansion
