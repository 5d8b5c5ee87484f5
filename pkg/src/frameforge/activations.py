"""Activation catalog: evaluable functions sigma: R^d -> R with derivatives.

Every family is vectorized over leading axes.  Points carry a trailing axis of
length ``dim``; for ``dim == 1`` a bare scalar or a 1-D array of points is also
accepted.

Families
--------
Gaussian        exp(-|x|^2)
OscSinc         s(x) sin(m x), s odd, s(x) = 1/x^alpha for |x| > 1 (d = 1)
RadialCos       g(r^2 - |x|^2) cos(tau . x)
RadialSinc      g(r^2 - |x|^2) sin(m |x|^2) / |x|^2
RQNN            g(r^2 - |x|^2)
ShahamReLU      ReLU(sum_j L(x_j) - 2(d - 1))
ReLU1D, Hat, Box
StepCombo       sum_m c_m base(x - b_m)
SumRidge        inner(x_1 + ... + x_d)
Sampled         cubic spline through user samples (d = 1)

Here ``g(t) = exp(-1/t)`` for ``t > 0`` and 0 otherwise.
"""
from __future__ import annotations

import csv
import functools
from dataclasses import dataclass, field, replace
from typing import Any, Callable

import numpy as np

from .errors import DimMismatch, NonSmoothAtPoint, NonSmoothFamily, NotNormalizable

GRAD_STEP = 1e-5
HESS_STEP = 1e-4
KINK_TOL = 1e-12


def as_points(x, dim: int) -> np.ndarray:
    """Return ``x`` as a float array with a trailing axis of length ``dim``."""
    x = np.asarray(x, dtype=float)
    if dim == 1 and (x.ndim == 0 or x.shape[-1] != 1):
        x = x[..., None]
    if x.shape[-1] != dim:
        raise DimMismatch(f"points have trailing size {x.shape[-1]}, expected {dim}")
    return x


def _sqnorm(x):
    return np.einsum("...i,...i->...", x, x)


def _relu(t):
    return np.maximum(t, 0.0)


# -- radial bump g(t) = exp(-1/t) --------------------------------------------

def _bump(t):
    pos = t > 0
    ts = np.where(pos, t, 1.0)
    g = np.where(pos, np.exp(-1.0 / ts), 0.0)
    return g, ts, pos


def _bump_derivs(t):
    g, ts, pos = _bump(t)
    g1 = np.where(pos, g / ts**2, 0.0)
    g2 = np.where(pos, g * (1.0 - 2.0 * ts) / ts**4, 0.0)
    return g, g1, g2


# -- family implementations ---------------------------------------------------

@dataclass(frozen=True)
class Family:
    name: str
    value: Callable
    grad: Callable | None = None
    hess: Callable | None = None
    kinks: Callable | None = None
    smooth: bool = True
    even: bool = True
    dims: tuple | None = None


def _gauss_value(x, p):
    return np.exp(-_sqnorm(x))


def _gauss_grad(x, p):
    return -2.0 * x * np.exp(-_sqnorm(x))[..., None]


def _gauss_hess(x, p):
    e = np.exp(-_sqnorm(x))[..., None, None]
    eye = np.eye(x.shape[-1])
    return e * (4.0 * x[..., :, None] * x[..., None, :] - 2.0 * eye)


@functools.lru_cache(maxsize=64)
def hermite_core(alpha: float) -> tuple:
    """Coefficients (a, b, c) of the odd quintic a x + b x^3 + c x^5 matching
    1/x^alpha in value, slope and curvature at x = 1."""
    lhs = np.array([[1.0, 1.0, 1.0], [1.0, 3.0, 5.0], [0.0, 6.0, 20.0]])
    rhs = np.array([1.0, -alpha, alpha * (alpha + 1.0)])
    return tuple(float(v) for v in np.linalg.solve(lhs, rhs))


def _osc_envelope(t, alpha):
    # odd envelope and its first two derivatives, t scalar coordinate
    a, b, c = hermite_core(alpha)
    inner = np.abs(t) <= 1.0
    at = np.where(inner, 2.0, np.abs(t))
    sg = np.sign(t)
    s0 = np.where(inner, a * t + b * t**3 + c * t**5, sg * at**-alpha)
    s1 = np.where(inner, a + 3 * b * t**2 + 5 * c * t**4, -alpha * at ** (-alpha - 1))
    s2 = np.where(inner, 6 * b * t + 20 * c * t**3,
                  alpha * (alpha + 1) * sg * at ** (-alpha - 2))
    return s0, s1, s2


def _osc_value(x, p):
    t = x[..., 0]
    s0, _, _ = _osc_envelope(t, p["alpha"])
    return s0 * np.sin(p["m"] * t)


def _osc_grad(x, p):
    t, m = x[..., 0], p["m"]
    s0, s1, _ = _osc_envelope(t, p["alpha"])
    return (s1 * np.sin(m * t) + m * s0 * np.cos(m * t))[..., None]


def _osc_hess(x, p):
    t, m = x[..., 0], p["m"]
    s0, s1, s2 = _osc_envelope(t, p["alpha"])
    h = s2 * np.sin(m * t) + 2 * m * s1 * np.cos(m * t) - m * m * s0 * np.sin(m * t)
    return h[..., None, None]


def _rqnn_value(x, p):
    return _bump(p["r"] ** 2 - _sqnorm(x))[0]


def _rqnn_grad(x, p):
    _, g1, _ = _bump_derivs(p["r"] ** 2 - _sqnorm(x))
    return -2.0 * g1[..., None] * x


def _rqnn_hess(x, p):
    _, g1, g2 = _bump_derivs(p["r"] ** 2 - _sqnorm(x))
    eye = np.eye(x.shape[-1])
    return (4.0 * g2[..., None, None] * x[..., :, None] * x[..., None, :]
            - 2.0 * g1[..., None, None] * eye)


def _rcos_value(x, p):
    tau = np.asarray(p["tau"])
    return _bump(p["r"] ** 2 - _sqnorm(x))[0] * np.cos(x @ tau)


def _rcos_grad(x, p):
    tau = np.asarray(p["tau"])
    g, g1, _ = _bump_derivs(p["r"] ** 2 - _sqnorm(x))
    ph = x @ tau
    return (-2.0 * (g1 * np.cos(ph))[..., None] * x
            - (g * np.sin(ph))[..., None] * tau)


def _rcos_hess(x, p):
    tau = np.asarray(p["tau"])
    g, g1, g2 = _bump_derivs(p["r"] ** 2 - _sqnorm(x))
    ph = x @ tau
    co, si = np.cos(ph)[..., None, None], np.sin(ph)[..., None, None]
    g, g1, g2 = g[..., None, None], g1[..., None, None], g2[..., None, None]
    xx = x[..., :, None] * x[..., None, :]
    xt = x[..., :, None] * tau[None, :] + tau[:, None] * x[..., None, :]
    tt = np.outer(tau, tau)
    eye = np.eye(x.shape[-1])
    return 4 * g2 * xx * co - 2 * g1 * eye * co + 2 * g1 * si * xt - g * co * tt


def _sinc_sq(s, m):
    # q(s) = sin(m s)/s with derivatives; series near s = 0
    small = np.abs(m * s) < 1e-3
    ss = np.where(small, 1.0, s)
    q = np.where(small, m - m**3 * s**2 / 6 + m**5 * s**4 / 120, np.sin(m * ss) / ss)
    q1 = np.where(small, -(m**3) * s / 3 + m**5 * s**3 / 30,
                  (m * ss * np.cos(m * ss) - np.sin(m * ss)) / ss**2)
    q2 = np.where(small, -(m**3) / 3 + m**5 * s**2 / 10,
                  (-(m**2) * ss**2 * np.sin(m * ss) - 2 * m * ss * np.cos(m * ss)
                   + 2 * np.sin(m * ss)) / ss**3)
    return q, q1, q2


def _rsinc_parts(x, p):
    s = _sqnorm(x)
    g, g1, g2 = _bump_derivs(p["r"] ** 2 - s)
    q, q1, q2 = _sinc_sq(s, p["m"])
    h = g * q
    h1 = -g1 * q + g * q1
    h2 = g2 * q - 2 * g1 * q1 + g * q2
    return h, h1, h2


def _rsinc_value(x, p):
    return _rsinc_parts(x, p)[0]


def _rsinc_grad(x, p):
    _, h1, _ = _rsinc_parts(x, p)
    return 2.0 * h1[..., None] * x


def _rsinc_hess(x, p):
    _, h1, h2 = _rsinc_parts(x, p)
    eye = np.eye(x.shape[-1])
    return (4.0 * h2[..., None, None] * x[..., :, None] * x[..., None, :]
            + 2.0 * h1[..., None, None] * eye)


def shaham_L(t):
    """Trapezoid L(t) = ReLU(t+3) - ReLU(t+1) - ReLU(t-1) + ReLU(t-3)."""
    return _relu(t + 3) - _relu(t + 1) - _relu(t - 1) + _relu(t - 3)


def _shaham_inner(x):
    d = x.shape[-1]
    return shaham_L(x).sum(axis=-1) - 2.0 * (d - 1)


def _shaham_value(x, p):
    return _relu(_shaham_inner(x))


def _shaham_grad(x, p):
    dl = (np.where((x > -3) & (x < -1), 1.0, 0.0)
          - np.where((x > 1) & (x < 3), 1.0, 0.0))
    return (_shaham_inner(x) > 0)[..., None] * dl


def _shaham_kinks(x, p):
    near = np.zeros(x.shape[:-1], dtype=bool)
    for c in (-3.0, -1.0, 1.0, 3.0):
        near |= (np.abs(x - c) < KINK_TOL).any(axis=-1)
    return near | (np.abs(_shaham_inner(x)) < KINK_TOL)


def _relu_value(x, p):
    return _relu(x[..., 0])


def _relu_grad(x, p):
    return (x > 0).astype(float)


def _relu_kinks(x, p):
    return np.abs(x[..., 0]) < KINK_TOL


def _hat_value(x, p):
    return _relu(1.0 - np.abs(x[..., 0]))


def _hat_grad(x, p):
    t = x[..., 0]
    return (np.where((t > -1) & (t < 0), 1.0, 0.0)
            - np.where((t > 0) & (t < 1), 1.0, 0.0))[..., None]


def _hat_kinks(x, p):
    t = x[..., 0]
    return (np.abs(t) < KINK_TOL) | (np.abs(np.abs(t) - 1) < KINK_TOL)


def _box_value(x, p):
    # H(t + 1/2) - H(t - 1/2) with H(0) = 1/2 keeps the box even
    return np.heaviside(x[..., 0] + 0.5, 0.5) - np.heaviside(x[..., 0] - 0.5, 0.5)


def _box_grad(x, p):
    return np.zeros_like(x)


def _box_kinks(x, p):
    return np.abs(np.abs(x[..., 0]) - 0.5) < KINK_TOL


def _combo_terms(x, p):
    shifts = np.asarray(p["shifts"], dtype=float)
    return x[..., None, :] - shifts


def _combo_value(x, p):
    base, coeffs = p["base"], np.asarray(p["coeffs"])
    vals = eval_sigma(base, _combo_terms(x, p))
    return vals @ coeffs


def _combo_grad(x, p):
    base, coeffs = p["base"], np.asarray(p["coeffs"])
    return np.einsum("...md,m->...d", eval_grad(base, _combo_terms(x, p)), coeffs)


def _combo_kinks(x, p):
    fam = FAMILIES[p["base"].family]
    if fam.kinks is None:
        return np.zeros(x.shape[:-1], dtype=bool)
    return fam.kinks(_combo_terms(x, p), p["base"].params).any(axis=-1)


def _ridge_value(x, p):
    return eval_sigma(p["inner"], x.sum(axis=-1))


def _ridge_grad(x, p):
    g = eval_grad(p["inner"], x.sum(axis=-1))
    return np.broadcast_to(g, x.shape).copy()


def _ridge_hess(x, p):
    h = _scalar_second(p["inner"], x.sum(axis=-1))
    return h[..., None, None] * np.ones((x.shape[-1], x.shape[-1]))


def _sampled_value(x, p):
    spline = _spline_for(p["xs"], p["values"])
    t = x[..., 0]
    inside = (t >= p["xs"][0]) & (t <= p["xs"][-1])
    return np.where(inside, spline(np.clip(t, p["xs"][0], p["xs"][-1])), 0.0)


@functools.lru_cache(maxsize=16)
def _spline_for(xs: tuple, values: tuple):
    from scipy.interpolate import CubicSpline
    return CubicSpline(np.asarray(xs), np.asarray(values))


FAMILIES: dict[str, Family] = {
    f.name: f
    for f in [
        Family("Gaussian", _gauss_value, _gauss_grad, _gauss_hess),
        Family("OscSinc", _osc_value, _osc_grad, _osc_hess, dims=(1,)),
        Family("RadialCos", _rcos_value, _rcos_grad, _rcos_hess),
        Family("RadialSinc", _rsinc_value, _rsinc_grad, _rsinc_hess),
        Family("RQNN", _rqnn_value, _rqnn_grad, _rqnn_hess),
        Family("ShahamReLU", _shaham_value, _shaham_grad, kinks=_shaham_kinks, smooth=False),
        Family("ReLU1D", _relu_value, _relu_grad, kinks=_relu_kinks, smooth=False,
               even=False, dims=(1,)),
        Family("Hat", _hat_value, _hat_grad, kinks=_hat_kinks, smooth=False, dims=(1,)),
        Family("Box", _box_value, _box_grad, kinks=_box_kinks, smooth=False, dims=(1,)),
        Family("StepCombo", _combo_value, _combo_grad, kinks=_combo_kinks, even=False),
        Family("SumRidge", _ridge_value, _ridge_grad, _ridge_hess),
        Family("Sampled", _sampled_value, even=False, dims=(1,)),
    ]
}


# -- activation descriptor ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class ActivationSpec:
    """An immutable, evaluable activation ``scale * family(x; params)``."""

    family: str
    dim: int = 1
    params: dict = field(default_factory=dict)
    scale: float = 1.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown activation family {self.family!r}")
        if self.dim < 1:
            raise ValueError("dim must be a positive integer")
        dims = FAMILIES[self.family].dims
        if dims is not None and self.dim not in dims:
            raise DimMismatch(f"{self.family} supports dim in {dims}, got {self.dim}")

    @property
    def smooth(self) -> bool:
        if self.family == "StepCombo":
            return self.params["base"].smooth
        if self.family == "SumRidge":
            return self.params["inner"].smooth
        return FAMILIES[self.family].smooth

    @property
    def even(self) -> bool:
        if self.family == "SumRidge":
            return self.params["inner"].even
        return FAMILIES[self.family].even

    @property
    def separable(self) -> bool:
        """True when sigma(x) = s(1 . x) for a scalar activation s."""
        return self.family == "SumRidge" or self.dim == 1

    def __call__(self, x):
        return eval_sigma(self, x)

    def with_scale(self, scale: float) -> "ActivationSpec":
        return replace(self, scale=float(scale))

    def to_dict(self) -> dict:
        params = {}
        for key, val in self.params.items():
            if isinstance(val, ActivationSpec):
                val = val.to_dict()
            elif isinstance(val, tuple):
                val = _untuple(val)
            params[key] = val
        return {"family": self.family, "dim": self.dim, "params": params,
                "scale": self.scale}

    @classmethod
    def from_dict(cls, data: dict) -> "ActivationSpec":
        family = data["family"]
        dim = int(data.get("dim", 1))
        raw = dict(data.get("params", {}))
        builder = _BUILDERS.get(family)
        if builder is None:
            raise ValueError(f"unknown activation family {family!r}")
        spec = builder(dim, raw)
        return spec.with_scale(float(data.get("scale", 1.0)))

    def __eq__(self, other):
        if not isinstance(other, ActivationSpec):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return (f"ActivationSpec({self.family}, dim={self.dim}, "
                f"params={self.to_dict()['params']}, scale={self.scale!r})")


def _untuple(val):
    if isinstance(val, tuple):
        return [_untuple(v) for v in val]
    return val


def _tuplify(val):
    if isinstance(val, (list, tuple, np.ndarray)):
        return tuple(_tuplify(v) for v in val)
    return float(val)


# -- catalog constructors -------------------------------------------------------

def gaussian(dim: int = 1) -> ActivationSpec:
    return ActivationSpec("Gaussian", dim)


def osc_sinc(alpha: float = 3.5, m: float = 1.0) -> ActivationSpec:
    if alpha <= 3:
        raise ValueError("OscSinc needs alpha > 3 for the decay condition")
    return ActivationSpec("OscSinc", 1, {"alpha": float(alpha), "m": float(m)})


def radial_cos(dim: int = 1, r: float = 2.0, tau=None) -> ActivationSpec:
    tau = (1.0,) * dim if tau is None else _tuplify(tau)
    if len(tau) != dim:
        raise DimMismatch("tau must have length dim")
    return ActivationSpec("RadialCos", dim, {"r": float(r), "tau": tau})


def radial_sinc(dim: int = 1, r: float = 2.0, m: float = 1.0) -> ActivationSpec:
    return ActivationSpec("RadialSinc", dim, {"r": float(r), "m": float(m)})


def rqnn(dim: int = 1, r: float = 2.0) -> ActivationSpec:
    return ActivationSpec("RQNN", dim, {"r": float(r), "inner": "exp_bump"})


def shaham_relu(dim: int = 1) -> ActivationSpec:
    return ActivationSpec("ShahamReLU", dim)


def relu1d() -> ActivationSpec:
    return ActivationSpec("ReLU1D", 1)


def hat() -> ActivationSpec:
    return ActivationSpec("Hat", 1)


def box() -> ActivationSpec:
    return ActivationSpec("Box", 1)


def step_combo(coeffs, shifts, base: ActivationSpec) -> ActivationSpec:
    coeffs = _tuplify(np.ravel(coeffs))
    shifts = np.asarray(shifts, dtype=float).reshape(len(coeffs), base.dim)
    return ActivationSpec("StepCombo", base.dim,
                          {"coeffs": coeffs, "shifts": _tuplify(shifts), "base": base})


def sum_ridge(inner: ActivationSpec, dim: int) -> ActivationSpec:
    if inner.dim != 1:
        raise DimMismatch("SumRidge needs a scalar (dim 1) inner activation")
    return ActivationSpec("SumRidge", dim, {"inner": inner})


def sampled(xs, values) -> ActivationSpec:
    xs = np.asarray(xs, dtype=float)
    order = np.argsort(xs)
    return ActivationSpec("Sampled", 1, {"xs": _tuplify(xs[order]),
                                         "values": _tuplify(np.asarray(values)[order])})


def load_sampled_csv(path) -> ActivationSpec:
    """Load a custom 1-D activation from a CSV with columns ``x_1, value``."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    if header != ["x_1", "value"]:
        from .errors import SchemaMismatch
        raise SchemaMismatch(f"expected columns ['x_1', 'value'], got {header}")
    data = np.array([[float(v) for v in row] for row in body])
    return sampled(data[:, 0], data[:, 1])


_BUILDERS: dict[str, Callable[[int, dict], ActivationSpec]] = {
    "Gaussian": lambda d, p: gaussian(d),
    "OscSinc": lambda d, p: osc_sinc(p.get("alpha", 3.5), p.get("m", 1.0)),
    "RadialCos": lambda d, p: radial_cos(d, p.get("r", 2.0), p.get("tau")),
    "RadialSinc": lambda d, p: radial_sinc(d, p.get("r", 2.0), p.get("m", 1.0)),
    "RQNN": lambda d, p: rqnn(d, p.get("r", 2.0)),
    "ShahamReLU": lambda d, p: shaham_relu(d),
    "ReLU1D": lambda d, p: relu1d(),
    "Hat": lambda d, p: hat(),
    "Box": lambda d, p: box(),
    "StepCombo": lambda d, p: step_combo(p["coeffs"], p["shifts"],
                                         ActivationSpec.from_dict(p["base"])),
    "SumRidge": lambda d, p: sum_ridge(ActivationSpec.from_dict(p["inner"]), d),
    "Sampled": lambda d, p: sampled(p["xs"], p["values"]),
}


# -- evaluation -------------------------------------------------------------------

def eval_sigma(spec: ActivationSpec, x) -> np.ndarray:
    """sigma(x) for points ``x`` of shape (..., dim)."""
    pts = as_points(x, spec.dim)
    out = FAMILIES[spec.family].value(pts, spec.params)
    return spec.scale * out


def _fd_grad(spec, pts):
    h = GRAD_STEP * (1.0 + np.sqrt(_sqnorm(pts)))[..., None]
    out = np.empty_like(pts)
    for i in range(spec.dim):
        e = np.zeros(spec.dim)
        e[i] = 1.0
        step = h * e
        out[..., i] = (eval_sigma(spec, pts + step) - eval_sigma(spec, pts - step)) / (2 * h[..., 0])
    return out


def _fd_hess(spec, pts):
    d = spec.dim
    h = HESS_STEP * (1.0 + np.sqrt(_sqnorm(pts)))
    hb = h[..., None]
    out = np.empty(pts.shape + (d,))
    eye = np.eye(d)
    f = lambda z: eval_sigma(spec, z)
    for i in range(d):
        for j in range(i, d):
            ei, ej = hb * eye[i], hb * eye[j]
            val = (f(pts + ei + ej) - f(pts + ei - ej) - f(pts - ei + ej) + f(pts - ei - ej))
            out[..., i, j] = out[..., j, i] = val / (4 * h * h)
    return out


def eval_grad(spec: ActivationSpec, x, method: str = "auto") -> np.ndarray:
    """Gradient of sigma, shape (..., dim).

    ``method="auto"`` uses the family's analytic gradient when the family is
    smooth and falls back to central differences with step 1e-5 (1 + |x|)
    otherwise.  ``"analytic"`` forces the piecewise formula and raises
    :class:`NonSmoothAtPoint` at a kink; ``"fd"`` forces finite differences.
    """
    pts = as_points(x, spec.dim)
    fam = FAMILIES[spec.family]
    if method == "fd" or fam.grad is None:
        return _fd_grad(spec, pts)
    if not spec.smooth:
        if method == "auto":
            return _fd_grad(spec, pts)
        if fam.kinks is not None and np.any(fam.kinks(pts, spec.params)):
            raise NonSmoothAtPoint(f"{spec.family} has a kink at a requested point")
    return spec.scale * fam.grad(pts, spec.params)


def eval_hessian(spec: ActivationSpec, x) -> np.ndarray:
    """Hessian of sigma, shape (..., dim, dim); analytic when available."""
    if not spec.smooth:
        raise NonSmoothFamily(f"{spec.family} is not twice differentiable")
    pts = as_points(x, spec.dim)
    fam = FAMILIES[spec.family]
    if fam.hess is None:
        return _fd_hess(spec, pts)
    return spec.scale * fam.hess(pts, spec.params)


def _scalar_second(spec, t):
    return eval_hessian(spec, t)[..., 0, 0]


def eval_hessian_norm(spec: ActivationSpec, x) -> np.ndarray:
    """Spectral norm of the Hessian (|sigma''| in one dimension)."""
    hess = eval_hessian(spec, x)
    if spec.dim == 1:
        return np.abs(hess[..., 0, 0])
    return np.abs(np.linalg.eigvalsh(hess)).max(axis=-1)


def normalize_sigma(spec: ActivationSpec, grid) -> ActivationSpec:
    """Rescale ``spec`` so that its quadrature integral over ``grid`` is 1."""
    from .quadrature import integrate

    if grid.dim != spec.dim:
        raise DimMismatch(f"grid dim {grid.dim} != activation dim {spec.dim}")
    total = integrate(spec, grid)
    if abs(total) <= 1e-8:
        raise NotNormalizable(f"integral of {spec.family} is {total:.3e}")
    if abs(total - 1.0) <= 1e-12:
        return spec
    return spec.with_scale(spec.scale / total)


def support_radius(spec: ActivationSpec) -> float | None:
    """Radius outside which sigma vanishes exactly, or None."""
    fam = spec.family
    if fam in ("RadialCos", "RadialSinc", "RQNN"):
        return spec.params["r"]
    if fam == "ShahamReLU":
        return 3.0 * np.sqrt(spec.dim)
    if fam in ("Hat", "Box"):
        return 1.0
    if fam == "StepCombo":
        base = support_radius(spec.params["base"])
        if base is None:
            return None
        shifts = np.asarray(spec.params["shifts"])
        return base + float(np.sqrt(_sqnorm(shifts)).max())
    return None


def catalog() -> dict[str, ActivationSpec]:
    """Default instances of the built-in activations (unnormalized)."""
    return {
        "Gaussian": gaussian(1),
        "OscSinc": osc_sinc(3.5, 1.0),
        "RadialCos": radial_cos(1),
        "RadialSinc": radial_sinc(1),
        "RQNN": rqnn(1),
        "ShahamReLU": shaham_relu(1),
        "Gaussian2D": gaussian(2),
        "RadialCos2D": radial_cos(2, tau=(1.0, 0.5)),
        "RadialSinc2D": radial_sinc(2),
        "ShahamReLU2D": shaham_relu(2),
    }


def describe(spec: ActivationSpec) -> dict[str, Any]:
    return {"family": spec.family, "dim": spec.dim, "smooth": spec.smooth,
            "even": spec.even, "scale": spec.scale}
