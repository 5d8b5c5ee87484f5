"""Orthogonal greedy approximation of a sparse target and the N^{-1/2} rate.

The target is a random 10-term combination of dictionary atoms, so the sum
of absolute coefficients bounds its L1 norm and hence the error after N
greedy steps.
"""
from frameforge.activations import gaussian, normalize_sigma
from frameforge.frame import build_dictionary
from frameforge.greedy import make_synthetic_target, oga, rate_bound, verify_rate
from frameforge.quadrature import make_grid

grid = make_grid(1, 8.0, 2048)
spec = normalize_sigma(gaussian(1), grid)
dic = build_dictionary(spec, -2, 4, [-4.0, 4.0], grid)
print(f"dictionary: {len(dic)} atoms, scales {dic.k_min}..{dic.k_max}")

f, l1, truth = make_synthetic_target(dic, 10, "gaussian", seed=0)
expansion, trace = oga(f, dic, 25)
trace.l1_bound = l1

print(f"\n{'N':>3}{'residual':>14}{'bound':>12}  chosen (k, m)")
for t, step in enumerate(trace.steps, start=1):
    print(f"{t:>3}{step.residual_norm:>14.3e}{rate_bound(l1, t):>12.4f}  {step.chosen.to_list()}")

verdict = verify_rate(trace)
print(f"\nrate verdict: pass={verdict.passed}, worst ratio {verdict.margin:.3f} at step "
      f"{verdict.worst_step}")
found = set(truth.atoms) <= set(expansion.atoms)
print(f"all ten true atoms recovered: {found}")
