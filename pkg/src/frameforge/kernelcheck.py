"""Numerical certification of the averaging-kernel conditions for S_k built from sigma.

Quasi-metric rho(x, y) = c |x - y|^d on R^d, with eta = theta = 1/d and
A = 3^d / 2.  The decay certificate estimates the smallest C' with

    |grad^j sigma(x)| <= C' / (1/c + |x|^d)^(1 + eps + j/d),   j = 0, 1, 2,

and conditions (C2)-(C4) are then checked against the constants

    C2: c^(1+eps) C'
    C3: 2^(1 + d(1+eps)) c^(1+eps) C'
    C4: 3^(2 + d(1+eps)) c^(1+eps) C'

at quasi-random sample points.  A condition passes when every sampled ratio
LHS / RHS stays below 1 + 1e-6.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize
from scipy.stats import qmc

from .activations import ActivationSpec, eval_grad, eval_hessian_norm, eval_sigma
from .errors import NonSmoothFamily, TooFewValidSamples, UnstableCertificate
from .frame import dilation, spacing
from .quadrature import Grid, default_grid, integrate

RATIO_TOL = 1e-6
C1_TOL = 1e-3
SYMMETRY_TOL = 1e-12
STABILITY_TOL = 0.05
MIN_VALID = 1000
K_RANGE = (-3, 5)
LOCAL_RADIUS = 8.0
NONSMOOTH_NOTE = "non-smooth: certify a smooth sigma and use the sigma-dagger route"


@dataclass(frozen=True)
class HomogeneousConstants:
    c: float = 1.0
    epsilon: float = 0.5
    d: int = 1

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError("quasi-metric constant c must be positive")
        if not 0 < self.epsilon <= self.theta + 1e-15:
            raise ValueError(f"epsilon must lie in (0, 1/d], got {self.epsilon}")

    @property
    def eta(self) -> float:
        return 1.0 / self.d

    @property
    def theta(self) -> float:
        return 1.0 / self.d

    @property
    def A(self) -> float:
        return 3.0**self.d / 2.0

    def to_dict(self) -> dict:
        return {"c": self.c, "epsilon": self.epsilon, "eta": self.eta,
                "theta": self.theta, "A": self.A}


def default_constants(d: int, c: float = 1.0, epsilon: float | None = None) -> HomogeneousConstants:
    eps = min(1.0 / d, 0.5) if epsilon is None else epsilon
    return HomogeneousConstants(c=c, epsilon=eps, d=d)


def rho(x, y, c: float) -> np.ndarray:
    diff = np.asarray(x) - np.asarray(y)
    d = diff.shape[-1]
    return c * np.sqrt(np.einsum("...i,...i->...", diff, diff)) ** d


def proof_constant(condition: str, consts: HomogeneousConstants, cprime: float) -> float:
    base = consts.c ** (1 + consts.epsilon) * cprime
    d, eps = consts.d, consts.epsilon
    if condition == "C2":
        return base
    if condition == "C3":
        return 2.0 ** (1 + d * (1 + eps)) * base
    if condition == "C4":
        return 3.0 ** (2 + d * (1 + eps)) * base
    raise ValueError(condition)


# -- report types ---------------------------------------------------------------------

@dataclass(frozen=True)
class KernelEntry:
    """One row of a report; ``passed`` is equivalent to ``sup_ratio <= 1`` up to slack.

    For (C1) and symmetry the ratio is deviation / tolerance and
    ``implied_constant`` holds the raw deviation.
    """

    condition: str
    sup_ratio: float | None
    implied_constant: float | None
    samples: int
    passed: bool
    note: str | None = None

    def to_dict(self) -> dict:
        out = {"condition": self.condition, "sup_ratio": self.sup_ratio,
               "implied_constant": self.implied_constant, "samples": self.samples,
               "pass": self.passed}
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class KernelReport:
    entries: tuple
    constants: HomogeneousConstants
    cprime: float | None
    status: str = "checked"

    @property
    def certified(self) -> bool:
        return self.status == "checked" and all(e.passed for e in self.entries)

    def entry(self, condition: str) -> KernelEntry:
        for e in self.entries:
            if e.condition == condition:
                return e
        raise KeyError(condition)

    def to_dict(self) -> dict:
        return {"entries": [e.to_dict() for e in self.entries],
                "constants": self.constants.to_dict(), "cprime": self.cprime,
                "status": self.status}


# -- decay certificate ------------------------------------------------------------------

@dataclass(frozen=True)
class DecayCertificate:
    cprime: float
    sup_by_j: tuple          # sup of the weighted j-th derivative norms
    sample_radius: float
    coarse_cprime: float     # same estimate at half the radius
    samples: int

    @property
    def change(self) -> float:
        if self.coarse_cprime == 0:
            return 0.0 if self.cprime == 0 else math.inf
        return (self.cprime - self.coarse_cprime) / self.coarse_cprime

    @property
    def stable(self) -> bool:
        return math.isfinite(self.cprime) and self.change < STABILITY_TOL


def derivative_norm(spec: ActivationSpec, j: int, x) -> np.ndarray:
    if j == 0:
        return np.abs(eval_sigma(spec, x))
    if j == 1:
        return np.linalg.norm(eval_grad(spec, x), axis=-1)
    if j == 2:
        return eval_hessian_norm(spec, x)
    raise ValueError("j must be 0, 1 or 2")


def decay_weight(x, consts: HomogeneousConstants, j: int) -> np.ndarray:
    r = np.linalg.norm(np.atleast_1d(x) if np.ndim(x) == 0 else x, axis=-1)
    return (1.0 / consts.c + r**consts.d) ** (1.0 + consts.epsilon + j / consts.d)


def decay_ratio(spec: ActivationSpec, consts: HomogeneousConstants, j: int, x) -> np.ndarray:
    """|grad^j sigma(x)| (1/c + |x|^d)^(1 + eps + j/d)."""
    pts = np.asarray(x, dtype=float)
    if spec.dim == 1 and (pts.ndim == 0 or pts.shape[-1] != 1):
        pts = pts[..., None]
    return derivative_norm(spec, j, pts) * decay_weight(pts, consts, j)


def _sobol(dim: int, n: int, seed: int) -> np.ndarray:
    m = max(int(math.ceil(math.log2(max(n, 2)))), 1)
    return qmc.Sobol(d=dim, scramble=True, seed=seed).random_base2(m)[:n]


def _radial_points(d: int, radius: float, n: int, seed: int) -> np.ndarray:
    pts = (2.0 * _sobol(d, n, seed) - 1.0) * radius
    axis = np.linspace(0.0, radius, 513)
    sweep = np.zeros((len(axis), d))
    sweep[:, 0] = axis
    return np.concatenate([np.zeros((1, d)), sweep, pts], axis=0)


def _refine(spec, consts, j, start, radius):
    def neg(z):
        z = np.clip(z, -radius, radius)
        return -float(decay_ratio(spec, consts, j, z[None, :])[0])

    res = minimize(neg, start, method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 400})
    z = np.clip(res.x, -radius, radius)
    return float(decay_ratio(spec, consts, j, z[None, :])[0])


def _decay_sups(spec, consts, pts, radius, refine_top=6):
    sups = []
    for j in (0, 1, 2):
        vals = decay_ratio(spec, consts, j, pts)
        best = float(vals.max()) if vals.size else 0.0
        if best > 0:
            for i in np.argsort(vals)[::-1][:refine_top]:
                best = max(best, _refine(spec, consts, j, pts[i], radius))
        sups.append(best)
    return tuple(sups)


def certify_decay(spec: ActivationSpec, consts: HomogeneousConstants,
                  sample_radius: float = 16.0, n_samples: int = 4096,
                  seed: int = 0) -> DecayCertificate:
    """Estimate C' over |x| <= 2 * sample_radius and compare with |x| <= sample_radius.

    The sampled supremum of each weighted derivative norm is polished by a
    local Nelder-Mead search from the best samples.  Raises
    :class:`UnstableCertificate` (carrying the certificate) when the estimate
    grows by 5% or more as the radius doubles.
    """
    if not spec.smooth:
        raise NonSmoothFamily(f"{spec.family} has no bounded second derivative")
    if consts.d != spec.dim:
        raise ValueError("constants and activation disagree on d")
    inner = _radial_points(spec.dim, sample_radius, n_samples, seed)
    outer = _radial_points(spec.dim, 2 * sample_radius, n_samples, seed + 1)
    coarse = _decay_sups(spec, consts, inner, sample_radius)
    fine = _decay_sups(spec, consts, np.concatenate([inner, outer]), 2 * sample_radius)
    fine = tuple(max(a, b) for a, b in zip(fine, coarse))
    cert = DecayCertificate(max(fine), fine, float(sample_radius), max(coarse),
                            len(inner) + len(outer))
    if not cert.stable:
        err = UnstableCertificate(f"C' grew by {cert.change:.1%} when the radius doubled")
        err.certificate = cert
        raise err
    return cert


# -- (C1) -------------------------------------------------------------------------------

def check_C1(spec: ActivationSpec, k: int, x, grid: Grid) -> float:
    """|int S_k(x, b) db - 1| by quadrature.

    The b-grid is ``grid`` dilated by 2^{-k/d} and translated to the scale-k
    lattice point nearest x, so it covers the kernel at every scale.
    """
    d = spec.dim
    x = np.asarray(x, dtype=float).reshape(d)
    h = spacing(k, d)
    anchor = h * np.round(x / h)
    nodes = anchor + h * grid.nodes
    vals = math.ldexp(1.0, k) * eval_sigma(spec, dilation(k, d) * (x - nodes))
    total = integrate(vals * h**d, grid)
    return abs(total - 1.0)


def c1_entry(spec: ActivationSpec, grid: Grid, ks=range(-2, 5), xs=None) -> KernelEntry:
    if xs is None:
        xs = [np.zeros(spec.dim), np.full(spec.dim, 0.3), np.full(spec.dim, -1.7)]
    devs = [check_C1(spec, k, x, grid) for k in ks for x in xs]
    worst = max(devs)
    return KernelEntry("C1", worst / C1_TOL, worst, len(devs), worst <= C1_TOL)


# -- sampling for (C2)-(C4) ----------------------------------------------------------------

@dataclass
class KernelSamples:
    """Sample tuples; unused slots (xp, yp) equal x, y."""

    k: np.ndarray
    x: np.ndarray
    y: np.ndarray
    xp: np.ndarray = field(default=None)
    yp: np.ndarray = field(default=None)

    def __len__(self) -> int:
        return len(self.k)

    def subset(self, idx) -> "KernelSamples":
        return KernelSamples(self.k[idx], self.x[idx], self.y[idx],
                             None if self.xp is None else self.xp[idx],
                             None if self.yp is None else self.yp[idx])


def _draw_pairs(d, n, box_radius, seed):
    """Half global pairs over the box, half pairs at kernel-resolving distance."""
    u = _sobol(1 + 2 * d + 2 * (1 + d), n, seed)
    lo, hi = K_RANGE
    k = np.minimum(lo + np.floor(u[:, 0] * (hi - lo + 1)), hi).astype(int)
    y = (2 * u[:, 1:1 + d] - 1) * box_radius
    x_global = (2 * u[:, 1 + d:1 + 2 * d] - 1) * box_radius
    h = np.array([spacing(int(kk), d) for kk in k])[:, None]
    x_local = y + h * (2 * u[:, 1 + d:1 + 2 * d] - 1) * LOCAL_RADIUS
    local = np.arange(n) % 2 == 1
    x = np.where(local[:, None], x_local, x_global)
    x = np.clip(x, -box_radius, box_radius)
    return k, x, y, u[:, 1 + 2 * d:]


def _displace(rng_u, base, reach, d):
    """Points base + s * 1.25 * reach * direction, s log-uniform in [1e-3, 1]."""
    s = 10.0 ** (-3.0 * rng_u[:, 0])
    if d == 1:
        direction = np.where(rng_u[:, 1:2] < 0.5, -1.0, 1.0)
    else:
        g = np.tan(np.pi * (rng_u[:, 1:1 + d] - 0.5))
        direction = g / np.maximum(np.linalg.norm(g, axis=1, keepdims=True), 1e-300)
    return base + (1.25 * s * reach)[:, None] * direction


def _reach(k, x, y, consts):
    dmeas = np.ldexp(1.0, -k) + rho(x, y, consts.c)
    return (dmeas / (2 * consts.A * consts.c)) ** (1.0 / consts.d), dmeas


def sample_pairs(d: int, n: int, box_radius: float, seed: int = 0) -> KernelSamples:
    k, x, y, _ = _draw_pairs(d, n, box_radius, seed)
    return KernelSamples(k, x, y)


def sample_triples(consts: HomogeneousConstants, n: int, box_radius: float,
                   seed: int = 0) -> KernelSamples:
    """Triples (k, x, x', y) satisfying rho(x, x') <= (2^-k + rho(x, y)) / (2A)."""
    return _sample_valid(consts, n, box_radius, seed, second=False)


def sample_quadruples(consts: HomogeneousConstants, n: int, box_radius: float,
                      seed: int = 0) -> KernelSamples:
    """Quadruples (k, x, x', y, y') meeting both (C4) preconditions."""
    return _sample_valid(consts, n, box_radius, seed, second=True)


def _sample_valid(consts, n, box_radius, seed, second, max_rounds=6):
    d = consts.d
    parts, have = [], 0
    for rnd in range(max_rounds):
        draw = int(1.3 * (n - have)) + 64
        k, x, y, extra = _draw_pairs(d, draw, box_radius, seed + 7919 * rnd)
        reach, dmeas = _reach(k, x, y, consts)
        xp = _displace(extra[:, :1 + d], x, reach, d)
        ok = rho(x, xp, consts.c) <= dmeas / (2 * consts.A)
        yp = y
        if second:
            yp = _displace(extra[:, 1 + d:], y, reach, d)
            ok &= rho(y, yp, consts.c) <= dmeas / (2 * consts.A)
        parts.append(KernelSamples(k[ok], x[ok], y[ok], xp[ok], yp[ok]))
        have += int(ok.sum())
        if have >= n:
            break
    merged = KernelSamples(*(np.concatenate([getattr(p, f) for p in parts])
                             for f in ("k", "x", "y", "xp", "yp")))
    if len(merged) < MIN_VALID:
        raise TooFewValidSamples(f"only {len(merged)} samples met the precondition")
    return merged.subset(slice(0, n))


# -- ratio evaluations ---------------------------------------------------------------------

def _S(spec, k, x, y):
    scale = np.ldexp(1.0, k)
    dil = np.array([dilation(int(kk), spec.dim) for kk in np.atleast_1d(k)])
    return scale * eval_sigma(spec, dil[:, None] * (x - y))


def _envelope(k, dmeas, consts):
    return np.ldexp(1.0, -k) ** consts.epsilon / dmeas ** (1 + consts.epsilon)


def c2_ratios(spec, consts, cprime, s: KernelSamples) -> np.ndarray:
    dmeas = np.ldexp(1.0, -s.k) + rho(s.x, s.y, consts.c)
    rhs = proof_constant("C2", consts, cprime) * _envelope(s.k, dmeas, consts)
    lhs = np.abs(_S(spec, s.k, s.x, s.y))
    return _safe_ratio(lhs, rhs)


def c3_ratios(spec, consts, cprime, s: KernelSamples) -> np.ndarray:
    dmeas = np.ldexp(1.0, -s.k) + rho(s.x, s.y, consts.c)
    lhs = np.abs(_S(spec, s.k, s.x, s.y) - _S(spec, s.k, s.xp, s.y))
    rhs = (proof_constant("C3", consts, cprime)
           * (rho(s.x, s.xp, consts.c) / dmeas) ** consts.eta
           * _envelope(s.k, dmeas, consts))
    return _safe_ratio(lhs, rhs)


def c4_ratios(spec, consts, cprime, s: KernelSamples) -> np.ndarray:
    dmeas = np.ldexp(1.0, -s.k) + rho(s.x, s.y, consts.c)
    lhs = np.abs(_S(spec, s.k, s.x, s.y) - _S(spec, s.k, s.xp, s.y)
                 - _S(spec, s.k, s.x, s.yp) + _S(spec, s.k, s.xp, s.yp))
    rhs = (proof_constant("C4", consts, cprime)
           * (rho(s.x, s.xp, consts.c) / dmeas) ** consts.eta
           * (rho(s.y, s.yp, consts.c) / dmeas) ** consts.eta
           * _envelope(s.k, dmeas, consts))
    return _safe_ratio(lhs, rhs)


def _safe_ratio(lhs, rhs):
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(lhs == 0, 0.0, lhs / rhs)
    return np.where(np.isnan(out), np.inf, out)


_RATIO_FUNCS = {"C2": c2_ratios, "C3": c3_ratios, "C4": c4_ratios}


def condition_entry(condition: str, spec, consts, cprime, samples: KernelSamples) -> KernelEntry:
    ratios = _RATIO_FUNCS[condition](spec, consts, cprime, samples)
    sup = float(ratios.max()) if len(ratios) else 0.0
    implied = sup * proof_constant(condition, consts, cprime)
    return KernelEntry(condition, sup, implied, len(samples), sup <= 1.0 + RATIO_TOL)


def check_C2(spec, consts, cprime, samples: KernelSamples) -> KernelEntry:
    return condition_entry("C2", spec, consts, cprime, samples)


def check_C3(spec, consts, cprime, samples: KernelSamples) -> KernelEntry:
    if len(samples) < MIN_VALID:
        raise TooFewValidSamples(f"{len(samples)} valid triples, need {MIN_VALID}")
    return condition_entry("C3", spec, consts, cprime, samples)


def check_C4(spec, consts, cprime, samples: KernelSamples) -> KernelEntry:
    if not spec.smooth:
        raise NonSmoothFamily(NONSMOOTH_NOTE)
    if len(samples) < MIN_VALID:
        raise TooFewValidSamples(f"{len(samples)} valid quadruples, need {MIN_VALID}")
    return condition_entry("C4", spec, consts, cprime, samples)


def symmetry_entry(spec: ActivationSpec, n: int = 1000, box_radius: float = 16.0,
                   seed: int = 0) -> KernelEntry:
    s = sample_pairs(spec.dim, n, box_radius, seed)
    a, b = _S(spec, s.k, s.x, s.y), _S(spec, s.k, s.y, s.x)
    dev = np.abs(a - b) / np.maximum(1.0, np.abs(a))
    worst = float(dev.max())
    return KernelEntry("Symmetry", worst / SYMMETRY_TOL, worst, n, worst <= SYMMETRY_TOL)


def check_kernel(spec: ActivationSpec, consts: HomogeneousConstants | None = None,
                 grid: Grid | None = None, sample_radius: float = 16.0,
                 n_samples: int = 10_000, n_decay: int = 4096,
                 seed: int = 0) -> KernelReport:
    """Run the full battery: symmetry, decay (j = 0, 1, 2), (C1)-(C4).

    Non-smooth families stop after symmetry and (C1) with status
    ``"NonSmoothFamily"``; an unstable decay estimate yields status
    ``"Unstable"`` and (C2)-(C4) are reported as not passed.
    """
    consts = consts or default_constants(spec.dim)
    grid = grid or default_grid(spec)
    box = 2.0 * grid.half_width
    entries = [symmetry_entry(spec, 1000, box, seed), c1_entry(spec, grid)]

    def unclaimed(names, note):
        return [KernelEntry(nm, None, None, 0, False, note) for nm in names]

    decay_names = ["Decay_j0", "Decay_j1", "Decay_j2"]
    if not spec.smooth:
        entries += unclaimed(decay_names + ["C2", "C3", "C4"], NONSMOOTH_NOTE)
        return KernelReport(tuple(entries), consts, None, "NonSmoothFamily")
    try:
        cert = certify_decay(spec, consts, sample_radius, n_decay, seed)
        status = "checked"
    except UnstableCertificate as err:
        cert, status = err.certificate, "Unstable"
    for name, sup in zip(decay_names, cert.sup_by_j):
        ratio = sup / cert.cprime if cert.cprime > 0 else 0.0
        entries.append(KernelEntry(name, ratio, sup, cert.samples, cert.stable))
    if status != "checked":
        entries += unclaimed(["C2", "C3", "C4"], "not claimed: decay certificate unstable")
        return KernelReport(tuple(entries), consts, cert.cprime, status)

    pairs = sample_pairs(spec.dim, n_samples, box, seed)
    entries.append(check_C2(spec, consts, cert.cprime, pairs))
    entries.append(check_C3(spec, consts, cert.cprime,
                            sample_triples(consts, n_samples, box, seed + 1)))
    entries.append(check_C4(spec, consts, cert.cprime,
                            sample_quadruples(consts, n_samples, box, seed + 2)))
    return KernelReport(tuple(entries), consts, cert.cprime, status)
