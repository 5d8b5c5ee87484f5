"""From a wavelet expansion to an explicit shallow network and back.

Each term c psi_{k,b} turns into two hidden nodes; the exported JSON can be
evaluated without any wavelet machinery.
"""
import json

import numpy as np

from frameforge.activations import gaussian, normalize_sigma, sum_ridge
from frameforge.frame import AtomIndex, WaveletExpansion, build_dictionary, eval_expansion
from frameforge.greedy import make_synthetic_target, oga
from frameforge.network import (eval_vecweight, eval_wbnet, expansion_to_wbnet, net_from_json,
                                net_to_json, scalar_part, wb_to_vecweight)
from frameforge.quadrature import make_grid

grid = make_grid(1, 8.0, 2048)
spec = normalize_sigma(gaussian(1), grid)
dic = build_dictionary(spec, -2, 4, [-4.0, 4.0], grid)
f, _, _ = make_synthetic_target(dic, 6, "uniform", seed=4)
expansion, _ = oga(f, dic, 6)

params = expansion_to_wbnet(expansion, 1)
blob = json.dumps(net_to_json(params, spec, expansion))
print(f"{len(expansion)} terms -> {params.node_count} nodes, {len(blob)} bytes of JSON")

params2, spec2 = net_from_json(json.loads(blob))
x = np.linspace(-6, 6, 7)
for xi, a, b in zip(x, eval_expansion(expansion, spec, x), eval_wbnet(params2, spec2, x)):
    print(f"  x={xi:+.1f}  expansion {a:+.12f}  network {b:+.12f}")

# A ridge activation in the plane factors through x1 + x2, so the same network
# can be rewritten with ordinary weight vectors.
ridge = sum_ridge(gaussian(1), 2)
plane = WaveletExpansion([(AtomIndex(0, (0, 0)), 1.0), (AtomIndex(2, (1, -1)), -0.5)])
p2 = expansion_to_wbnet(plane, 2)
vec = wb_to_vecweight(p2, ridge)
pts = np.random.default_rng(1).uniform(-2, 2, size=(5, 2))
print("\nvector-weight rewrite, max difference:",
      np.abs(eval_wbnet(p2, ridge, pts) - eval_vecweight(vec, scalar_part(ridge), pts)).max())
