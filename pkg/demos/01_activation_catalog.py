"""Tour of the activation catalog.

Every family is normalized so that its integral over the default grid is 1,
then we look at a few values and at the derivative checks.
"""
import numpy as np

from frameforge.activations import catalog, eval_grad, eval_sigma, normalize_sigma
from frameforge.quadrature import default_grid, integrate

print(f"{'family':<14}{'d':>2}  {'smooth':<7}{'scale':>12}{'sigma(0)':>12}{'integral':>12}")
for name, spec in catalog().items():
    grid = default_grid(spec)
    spec = normalize_sigma(spec, grid)
    zero = np.zeros(spec.dim)
    print(f"{name:<14}{spec.dim:>2}  {str(spec.smooth):<7}{spec.scale:>12.6f}"
          f"{float(eval_sigma(spec, zero)):>12.6f}{integrate(spec, grid):>12.9f}")

# Analytic and central-difference gradients should agree for the smooth families.
rng = np.random.default_rng(0)
print("\nmax |analytic - fd| / max |grad| on 200 random points")
for name, spec in catalog().items():
    if not spec.smooth:
        continue
    x = rng.uniform(-4, 4, size=(200, spec.dim))
    an = eval_grad(spec, x, method="analytic")
    fd = eval_grad(spec, x, method="fd")
    print(f"  {name:<14}{np.abs(an - fd).max() / np.abs(an).max():.2e}")
