"""Shallow-network views of wavelet expansions.

A scalar-weight, vector-bias network evaluates

    Psi(x) = sum_n alpha_n sigma(gamma_n x + theta_n),   gamma_n > 0, theta_n in R^d.

Each wavelet term c psi_{k,b} becomes two nodes, with theta = -gamma b so that
sigma(gamma x + theta) = sigma(gamma (x - b)).

For non-smooth activations, sigma is replaced by a finite combination
sigma_dagger = sum_m c_m sigma0(. - b_m) and every node is split into M nodes
over sigma0.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .activations import ActivationSpec, as_points, eval_sigma, support_radius
from .errors import DimMismatch, EmptyExpansion, FitSingular, NotSeparable
from .frame import WaveletExpansion, amplitude, dilation
from .greedy import spd_solve
from .quadrature import Grid, default_grid, dist_sigma, fixed_sum, l2_norm

EFFECTIVE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class WBNetParams:
    gamma: np.ndarray   # (n,)
    alpha: np.ndarray   # (n,)
    theta: np.ndarray   # (n, d)

    def __post_init__(self):
        g = np.asarray(self.gamma, dtype=float).reshape(-1)
        a = np.asarray(self.alpha, dtype=float).reshape(-1)
        t = np.asarray(self.theta, dtype=float)
        if t.ndim == 1:
            t = t.reshape(len(g), -1) if len(g) else t.reshape(0, 1)
        if not (len(g) == len(a) == t.shape[0]):
            raise ValueError("gamma, alpha and theta must have one entry per node")
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "theta", t)

    @property
    def node_count(self) -> int:
        return len(self.gamma)

    @property
    def dim(self) -> int:
        return self.theta.shape[1]

    def __eq__(self, other):
        if not isinstance(other, WBNetParams):
            return NotImplemented
        return (np.array_equal(self.gamma, other.gamma) and np.array_equal(self.alpha, other.alpha)
                and np.array_equal(self.theta, other.theta))


def expansion_to_wbnet(expansion: WaveletExpansion, d: int) -> WBNetParams:
    """Two nodes per term: the scale-k kernel and the (negated, halved) scale-(k-1) one."""
    if len(expansion) == 0:
        raise EmptyExpansion("cannot convert an empty expansion")
    gamma, alpha, theta = [], [], []
    for atom, c in expansion.terms:
        if atom.dim != d:
            raise DimMismatch(f"atom {atom} is not {d}-dimensional")
        b = atom.center()
        amp = amplitude(atom.k)
        for kk, a in ((atom.k, c * amp), (atom.k - 1, -c * 0.5 * amp)):
            g = dilation(kk, d)
            gamma.append(g)
            alpha.append(a)
            theta.append(-g * b)
    return WBNetParams(np.array(gamma), np.array(alpha), np.array(theta).reshape(-1, d))


def _activate(activation, z):
    if isinstance(activation, ActivationSpec):
        return eval_sigma(activation, z)
    return activation(z)


def eval_wbnet(params: WBNetParams, activation, x) -> np.ndarray:
    """Sum of alpha_n sigma(gamma_n x + theta_n), accumulated in node order."""
    d = activation.dim
    if params.node_count and params.dim != d:
        raise DimMismatch(f"network biases are {params.dim}-d, activation is {d}-d")
    pts = as_points(x, d)
    out = np.zeros(pts.shape[:-1])
    for g, a, t in zip(params.gamma, params.alpha, params.theta):
        out = out + a * _activate(activation, g * pts + t)
    return out


class WBNet:
    """Parameters bound to an activation; calling it evaluates the network."""

    def __init__(self, params: WBNetParams, activation):
        if params.node_count and params.dim != activation.dim:
            raise DimMismatch("network and activation dimensions differ")
        self.params = params
        self.activation = activation

    @property
    def dim(self) -> int:
        return self.activation.dim

    def __call__(self, x):
        return eval_wbnet(self.params, self.activation, x)


def substitute_activation(params: WBNetParams, activation) -> WBNet:
    """Same weights, new activation (a spec or a :class:`DaggerCombo`)."""
    return WBNet(params, activation)


# -- sigma dagger -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DaggerCombo:
    base: ActivationSpec
    shifts: np.ndarray      # (M, d)
    coeffs: np.ndarray      # (M,)
    achieved_dist: float = float("nan")

    @property
    def M(self) -> int:
        return len(self.coeffs)

    @property
    def dim(self) -> int:
        return self.base.dim

    def __call__(self, z):
        pts = as_points(z, self.dim)
        out = np.zeros(pts.shape[:-1])
        for c, b in zip(self.coeffs, self.shifts):
            out = out + c * eval_sigma(self.base, pts - b)
        return out

    def to_dict(self) -> dict:
        return {"base": self.base.to_dict(), "shifts": self.shifts.tolist(),
                "coeffs": self.coeffs.tolist(), "M": self.M,
                "achieved_dist": self.achieved_dist}


def effective_radius(spec: ActivationSpec, grid: Grid, tol: float = EFFECTIVE_TOL) -> float:
    """Radius beyond which |sigma| stays below tol * max |sigma| along the first axis."""
    r = support_radius(spec)
    if r is not None:
        return float(min(r, grid.half_width))
    t = np.linspace(0.0, grid.half_width, 4097)
    pts = np.zeros((len(t), spec.dim))
    pts[:, 0] = t
    vals = np.abs(eval_sigma(spec, pts))
    big = np.flatnonzero(vals > tol * vals.max())
    return float(t[big[-1]]) if len(big) else float(grid.half_width)


def shift_grid(M: int, shift_box, d: int) -> np.ndarray:
    """M uniform shifts over the box; for d > 1, M must be a perfect d-th power."""
    box = np.asarray(shift_box, dtype=float)
    if box.ndim == 1:
        box = np.tile(box, (d, 1))
    per_axis = round(M ** (1.0 / d))
    if per_axis**d != M:
        raise ValueError(f"M={M} is not a perfect {d}-th power")
    axes = [np.linspace(lo, hi, per_axis) if per_axis > 1 else np.array([(lo + hi) / 2])
            for lo, hi in box]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def fit_sigma_dagger(sigma: ActivationSpec, sigma0: ActivationSpec, M: int,
                     shift_box=None, grid: Grid | None = None) -> DaggerCombo:
    """Least-squares fit of sigma by M shifted copies of sigma0 on the grid.

    The default shift box is the effective support of sigma.  A singular
    Gram system is retried once with a tiny ridge before raising
    :class:`FitSingular`.
    """
    if M < 1:
        raise ValueError("M must be at least 1")
    if sigma.dim != sigma0.dim:
        raise DimMismatch("sigma and sigma0 dimensions differ")
    grid = grid or default_grid(sigma)
    if shift_box is None:
        r = effective_radius(sigma, grid)
        shift_box = [-r, r]
    shifts = shift_grid(M, shift_box, sigma.dim)
    target = eval_sigma(sigma, grid.nodes)
    basis = np.stack([eval_sigma(sigma0, grid.nodes - b) for b in shifts])
    wb = basis * grid.weights
    gram = fixed_sum(wb[:, None, :] * basis[None, :, :])
    rhs = fixed_sum(wb * target)
    coeffs = spd_solve(gram, rhs, exc=FitSingular)
    combo = DaggerCombo(sigma0, shifts, coeffs)
    achieved = dist_sigma(sigma, combo, grid)
    return DaggerCombo(sigma0, shifts, coeffs, achieved)


def expand_sigma0_net(params: WBNetParams, combo: DaggerCombo) -> WBNetParams:
    """Node (gamma, alpha, theta) x term (c_m, b_m) -> (gamma, alpha c_m, theta - b_m)."""
    gamma = np.repeat(params.gamma, combo.M)
    alpha = (params.alpha[:, None] * combo.coeffs[None, :]).reshape(-1)
    theta = (params.theta[:, None, :] - combo.shifts[None, :, :]).reshape(-1, params.dim)
    return WBNetParams(gamma, alpha, theta)


# -- vector-weight form ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class VecWeightParams:
    W: np.ndarray       # (d, n), column n is w_n
    alpha: np.ndarray   # (n,)
    beta: np.ndarray    # (n,)

    @property
    def node_count(self) -> int:
        return len(self.alpha)


def scalar_part(spec: ActivationSpec) -> ActivationSpec:
    """The scalar s with sigma(x) = s(1 . x); raises NotSeparable otherwise."""
    if spec.family == "SumRidge":
        inner = spec.params["inner"]
        return inner.with_scale(inner.scale * spec.scale)
    if spec.dim == 1:
        return spec
    raise NotSeparable(f"{spec.family} in {spec.dim}-d does not factor through the all-ones map")


def wb_to_vecweight(params: WBNetParams, spec: ActivationSpec) -> VecWeightParams:
    """w_n = gamma_n 1 and beta_n = 1 . theta_n."""
    scalar_part(spec)
    d = params.dim
    W = np.tile(params.gamma, (d, 1))
    beta = params.theta.sum(axis=1)
    return VecWeightParams(W, params.alpha.copy(), beta)


def eval_vecweight(params: VecWeightParams, scalar: ActivationSpec, x) -> np.ndarray:
    """Sum of alpha_n s(w_n . x + beta_n) for a scalar activation s."""
    if scalar.dim != 1:
        raise DimMismatch("vector-weight networks use a scalar activation")
    pts = np.asarray(x, dtype=float)
    if pts.shape[-1] != params.W.shape[0]:
        raise DimMismatch("points and weights disagree on d")
    out = np.zeros(pts.shape[:-1])
    for n in range(params.node_count):
        z = pts @ params.W[:, n] + params.beta[n]
        out = out + params.alpha[n] * eval_sigma(scalar, z[..., None])
    return out


# -- export ----------------------------------------------------------------------------

def expansion_hash(expansion: WaveletExpansion) -> str:
    blob = json.dumps(expansion.to_list(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def net_to_json(params: WBNetParams, spec: ActivationSpec,
                expansion: WaveletExpansion | None = None) -> dict:
    return {
        "gamma": params.gamma.tolist(),
        "alpha": params.alpha.tolist(),
        "theta": params.theta.tolist(),
        "metadata": {
            "d": params.dim,
            "family": spec.family,
            "activation": spec.to_dict(),
            "node_count": params.node_count,
            "source_expansion_hash": expansion_hash(expansion) if expansion is not None else None,
        },
    }


def net_from_json(data: dict) -> tuple[WBNetParams, ActivationSpec]:
    spec = ActivationSpec.from_dict(data["metadata"]["activation"])
    theta = np.asarray(data["theta"], dtype=float).reshape(-1, spec.dim)
    return WBNetParams(np.asarray(data["gamma"]), np.asarray(data["alpha"]), theta), spec


# -- the non-smooth comparison ----------------------------------------------------------

def compare_activations(sigma: ActivationSpec, sigma0: ActivationSpec, Ms, expansion,
                        target, residual: float, grid: Grid, shift_box=None,
                        slack: float = 1e-3) -> dict:
    """Fit sigma_dagger for each M and test the combined error bound.

    For each M:  ||f - Psi[p; sigma_dagger]|| <= residual + dist * sum|c| + slack,
    with p the network of ``expansion`` and ``target`` the grid samples of f.
    """
    params = expansion_to_wbnet(expansion, sigma.dim)
    l1 = expansion.coefficient_l1
    rows = []
    for M in Ms:
        combo = fit_sigma_dagger(sigma, sigma0, M, shift_box, grid)
        net_vals = eval_wbnet(params, combo, grid.nodes)
        err = l2_norm(np.asarray(target) - net_vals, grid)
        bound = residual + combo.achieved_dist * l1
        expanded = expand_sigma0_net(params, combo)
        rows.append({"M": M, "achieved_dist": combo.achieved_dist, "error": err,
                     "bound": bound, "pass": bool(err <= bound + slack),
                     "node_count": expanded.node_count})
    dists = [r["achieved_dist"] for r in rows]
    monotone = all(b <= a * (1 + 1e-9) + 1e-15 for a, b in zip(dists, dists[1:]))
    return {"rows": rows, "l1": l1, "residual": residual,
            "dist_non_increasing": monotone,
            "pass": all(r["pass"] for r in rows) and monotone}
