import math

import numpy as np
import pytest

from frameforge.activations import eval_hessian_norm, gaussian, osc_sinc, relu1d, shaham_relu
from frameforge.errors import NonSmoothFamily, TooFewValidSamples, UnstableCertificate
from frameforge.quadrature import default_grid
from frameforge import kernelcheck as K


@pytest.fixture(scope="module")
def gauss_cert(gauss1):
    consts = K.default_constants(1)
    return consts, K.certify_decay(gauss1, consts, 16.0, 2048)


def test_constants():
    for d in (1, 2, 3):
        c = K.default_constants(d)
        assert c.eta == c.theta == 1 / d
        assert c.A == 3**d / 2
        assert c.epsilon == min(1 / d, 0.5)
    with pytest.raises(ValueError):
        K.HomogeneousConstants(c=1.0, epsilon=0.6, d=2)
    with pytest.raises(ValueError):
        K.HomogeneousConstants(c=0.0, epsilon=0.5, d=1)


def test_proof_constants():
    c = K.HomogeneousConstants(c=2.0, epsilon=0.25, d=2)
    base = 2.0**1.25 * 3.0
    assert K.proof_constant("C2", c, 3.0) == pytest.approx(base)
    assert K.proof_constant("C3", c, 3.0) == pytest.approx(2 ** (1 + 2 * 1.25) * base)
    assert K.proof_constant("C4", c, 3.0) == pytest.approx(3 ** (2 + 2 * 1.25) * base)


def test_decay_ratio_at_origin(gauss1):
    consts = K.HomogeneousConstants(1.0, 0.5, 1)
    assert float(K.decay_ratio(gauss1, consts, 0, 0.0)) == pytest.approx(1 / math.sqrt(math.pi),
                                                                            rel=1e-12)


def test_gaussian_certificate(gauss_cert):
    consts, cert = gauss_cert
    assert math.isfinite(cert.cprime) and cert.stable
    assert cert.cprime == max(cert.sup_by_j)
    assert cert.sup_by_j[0] >= 1 / math.sqrt(math.pi)


def test_zero_activation_certificate():
    zero = gaussian(1).with_scale(0.0)
    cert = K.certify_decay(zero, K.default_constants(1), 16.0, 256)
    assert cert.cprime == 0.0 and cert.stable


def test_osc_sinc_certificate(osc1):
    consts = K.default_constants(1, epsilon=0.4)
    cert = K.certify_decay(osc1, consts, 16.0, 2048)
    assert cert.stable and cert.change < 0.05
    # second-derivative decay at x = 10 is covered by the certified constant
    bound = cert.cprime / (1 / consts.c + 10.0) ** (1 + consts.epsilon + 2)
    assert float(eval_hessian_norm(osc1, 10.0)) <= bound


def test_slow_decay_is_unstable():
    # |sigma''| ~ m^2 x^{-3.01} against the weight (1+x)^{3+eps}: the ratio grows like x^0.99
    spec = osc_sinc(3.01, 4.0)
    with pytest.raises(UnstableCertificate) as info:
        K.certify_decay(spec, K.default_constants(1, epsilon=1.0), 16.0, 1024)
    assert info.value.certificate.change >= 0.05
    report = K.check_kernel(spec, K.default_constants(1, epsilon=1.0), n_samples=1000,
                            n_decay=1024)
    assert report.status == "Unstable" and not report.certified
    assert not report.entry("C2").passed and report.entry("C2").sup_ratio is None


def test_nonsmooth_certificate_refused():
    with pytest.raises(NonSmoothFamily):
        K.certify_decay(shaham_relu(1), K.default_constants(1))


def test_C1_examples(gauss1, grid1):
    assert K.check_C1(gauss1, 0, [0.0], grid1) <= 1e-10
    assert K.check_C1(gauss1, 3, [0.0], grid1) <= 1e-6
    devs = [K.check_C1(gauss1, 2, [x], grid1) for x in (-3.3, -0.1, 0.0, 0.77, 2.5)]
    assert max(devs) - min(devs) <= 1e-9


def test_C2_zero_activation():
    zero = gaussian(1).with_scale(0.0)
    s = K.sample_pairs(1, 500, 16.0, seed=1)
    assert np.all(K.c2_ratios(zero, K.default_constants(1), 1.0, s) == 0.0)


def test_C2_equals_decay_ratio(gauss1, gauss_cert):
    consts, cert = gauss_cert
    s = K.sample_pairs(1, 2000, 16.0, seed=3)
    ratios = K.c2_ratios(gauss1, consts, cert.cprime, s)
    u = np.array([K.dilation(int(k), 1) for k in s.k])[:, None] * (s.x - s.y)
    direct = K.decay_ratio(gauss1, consts, 0, u) / cert.cprime
    np.testing.assert_allclose(ratios, direct, rtol=1e-9, atol=1e-300)


def test_C2_diagonal_point(gauss1, gauss_cert):
    consts, cert = gauss_cert
    s = K.KernelSamples(np.array([0]), np.zeros((1, 1)), np.zeros((1, 1)))
    ratio = float(K.c2_ratios(gauss1, consts, cert.cprime, s)[0])
    assert ratio == pytest.approx(float(gauss1(0.0)) / cert.cprime, rel=1e-12)
    assert ratio <= 1


def _triple(k, x, xp, y):
    a = lambda v: np.array([[v]], dtype=float)
    return K.KernelSamples(np.array([k]), a(x), a(y), a(xp), a(y))


def test_C3_examples(gauss1, gauss_cert):
    consts, cert = gauss_cert
    assert K.c3_ratios(gauss1, consts, cert.cprime, _triple(0, 0.3, 0.3, 1.0))[0] == 0.0
    r = K.c3_ratios(gauss1, consts, cert.cprime, _triple(0, 0.1, 0.12, 2.0))[0]
    assert 0 < r <= 1


@pytest.mark.parametrize("k", [-2, 0, 3])
def test_C3_scaling_consistency(gauss1, gauss_cert, k):
    consts, cert = gauss_cert
    base = K.c3_ratios(gauss1, consts, cert.cprime, _triple(k, 0.4, 0.47, -1.1))[0]
    scaled = K.c3_ratios(gauss1, consts, cert.cprime, _triple(k + 1, 0.2, 0.235, -0.55))[0]
    assert scaled == pytest.approx(base, rel=1e-10)


def test_C4_degenerate_quadruple(gauss1, gauss_cert):
    consts, cert = gauss_cert
    a = lambda v: np.array([[v]], dtype=float)
    s = K.KernelSamples(np.array([1]), a(0.2), a(1.0), a(0.25), a(1.0))
    assert K.c4_ratios(gauss1, consts, cert.cprime, s)[0] == 0.0


def test_sampled_preconditions_hold():
    consts = K.default_constants(2)
    s = K.sample_quadruples(consts, 2000, 10.0, seed=5)
    assert len(s) == 2000
    dmeas = np.ldexp(1.0, -s.k) + K.rho(s.x, s.y, consts.c)
    assert np.all(K.rho(s.x, s.xp, consts.c) <= dmeas / (2 * consts.A))
    assert np.all(K.rho(s.y, s.yp, consts.c) <= dmeas / (2 * consts.A))
    assert s.k.min() >= -3 and s.k.max() <= 5


def test_too_few_samples(gauss1, gauss_cert):
    consts, cert = gauss_cert
    small = K.sample_triples(consts, 1000, 16.0).subset(slice(0, 10))
    with pytest.raises(TooFewValidSamples):
        K.check_C3(gauss1, consts, cert.cprime, small)
    with pytest.raises(NonSmoothFamily):
        K.check_C4(shaham_relu(1), consts, 1.0, small)


def test_monotone_certification(gauss1, gauss_cert):
    consts, cert = gauss_cert
    full = K.sample_triples(consts, 4000, 16.0, seed=9)
    part = full.subset(slice(0, 1500))
    e_full = K.check_C3(gauss1, consts, cert.cprime, full)
    e_part = K.check_C3(gauss1, consts, cert.cprime, part)
    assert e_full.sup_ratio >= e_part.sup_ratio
    assert e_part.passed or not e_full.passed


def test_symmetry_entry(gauss1):
    assert K.symmetry_entry(gauss1).passed
    # a one-sided activation gives a non-symmetric kernel
    assert not K.symmetry_entry(relu1d()).passed


def test_report_for_gaussian(gauss1):
    report = K.check_kernel(gauss1, n_samples=2000, n_decay=1024)
    assert report.certified
    c2 = report.entry("C2")
    assert c2.implied_constant <= K.proof_constant("C2", report.constants, report.cprime) * (1 + 1e-9)
    d = report.to_dict()
    assert {e["condition"] for e in d["entries"]} == {
        "Symmetry", "C1", "Decay_j0", "Decay_j1", "Decay_j2", "C2", "C3", "C4"}
    assert set(d["entries"][0]) >= {"condition", "sup_ratio", "implied_constant", "samples", "pass"}


def test_report_for_nonsmooth_family():
    spec = shaham_relu(1)
    report = K.check_kernel(spec, grid=default_grid(spec))
    assert report.status == "NonSmoothFamily" and not report.certified
    assert report.cprime is None
    c4 = report.entry("C4")
    assert not c4.passed and "sigma-dagger" in c4.note


def test_gaussian_2d_passes(gauss1):
    spec = gaussian(2)
    from frameforge.activations import normalize_sigma
    spec = normalize_sigma(spec, default_grid(spec))
    report = K.check_kernel(spec, n_samples=2000, n_decay=1024)
    assert report.certified
