"""Certify the averaging-kernel conditions for two smooth activations.

The decay constant C' is estimated from samples; the kernel conditions are
then checked against the constants that follow from it.  The kinked
ShahamReLU activation is refused and flagged for the sigma-dagger route.
"""
from frameforge.activations import gaussian, normalize_sigma, osc_sinc, shaham_relu
from frameforge.kernelcheck import check_kernel, default_constants
from frameforge.quadrature import default_grid

cases = [("Gaussian", gaussian(1), None), ("OscSinc", osc_sinc(3.5, 1.0), 0.4),
         ("ShahamReLU", shaham_relu(1), None)]

for name, spec, eps in cases:
    grid = default_grid(spec)
    spec = normalize_sigma(spec, grid)
    report = check_kernel(spec, default_constants(1, epsilon=eps), grid)
    cprime = "n/a" if report.cprime is None else f"{report.cprime:.4g}"
    print(f"\n{name}: status={report.status} certified={report.certified} C'={cprime}")
    for e in report.entries:
        ratio = "-" if e.sup_ratio is None else f"{e.sup_ratio:.3e}"
        print(f"  {e.condition:<9} sup ratio {ratio:>10}  samples {e.samples:>6}  "
              f"{'pass' if e.passed else 'not claimed' if e.note else 'FAIL'}")
