"""Running a smooth-activation network on a piecewise-linear activation.

The Gaussian is approximated by M shifted hats; replacing sigma by that
combination moves the network by at most dist(sigma, sigma_dagger) times the
coefficient sum, and the hat network has 2 N M nodes.
"""
from frameforge.activations import gaussian, hat, normalize_sigma
from frameforge.frame import build_dictionary
from frameforge.greedy import make_synthetic_target, oga
from frameforge.network import compare_activations
from frameforge.quadrature import make_grid

grid = make_grid(1, 8.0, 2048)
spec = normalize_sigma(gaussian(1), grid)
dic = build_dictionary(spec, -2, 4, [-4.0, 4.0], grid)
f, _, _ = make_synthetic_target(dic, 10, "gaussian", seed=1)
expansion, trace = oga(f, dic, 25)
residual = trace.steps[-1].residual_norm

out = compare_activations(spec, hat(), [5, 9, 17, 33, 65], expansion, f, residual, grid,
                          shift_box=[-4.0, 4.0])
print(f"OGA residual {residual:.3e}, coefficient sum {out['l1']:.3f}")
print(f"{'M':>4}{'dist':>12}{'error':>12}{'bound':>12}{'nodes':>8}")
for row in out["rows"]:
    print(f"{row['M']:>4}{row['achieved_dist']:>12.3e}{row['error']:>12.3e}"
          f"{row['bound']:>12.3e}{row['node_count']:>8}")
print(f"distance non-increasing: {out['dist_non_increasing']}, all bounds hold: {out['pass']}")
