import cmath
import math

import numpy as np
import pytest

from hciz.errors import DegenerateSpectrumError, DimensionMismatchError, NotAlternatingError
from hciz.exactpoly import ExactPoly
from hciz.numeric import (
    GAP_TOL_DEFAULT,
    MCEstimate,
    Spectrum,
    as_spectrum,
    coherent_reproducing_check,
    ginibre_moment_suite,
    hciz_determinant,
    hciz_mc,
    kernel_q_mc,
    kernel_series,
    random_real_spectrum,
    sample_ginibre,
    sample_haar_unitary,
)
from hciz.symfn import alternant


def det_n2_by_hand(a, b):
    """Direct transcription of the two-point closed form, kept independent of
    the library implementation."""
    num = cmath.exp(a[0] * b[0] + a[1] * b[1]) - cmath.exp(a[0] * b[1] + a[1] * b[0])
    return num / ((a[1] - a[0]) * (b[1] - b[0]))


class TestSpectrum:
    def test_gap_over_all_pairs(self):
        s = Spectrum((0.0, 10.0, 0.5))
        assert s.gap == pytest.approx(0.5)
        assert s.n == 3

    def test_single_point_gap_infinite(self):
        assert Spectrum((2.0,)).gap == math.inf

    def test_conj_and_is_real(self):
        s = Spectrum((1 + 2j, 3.0))
        assert s.conj().eigs == ((1 - 2j), (3 + 0j))
        assert not s.is_real()
        assert Spectrum((1.0, 2.0)).is_real()

    def test_rejects_empty_and_nonfinite(self):
        with pytest.raises(ValueError):
            Spectrum(())
        with pytest.raises(ValueError):
            Spectrum((float("nan"),))

    def test_as_spectrum_passthrough(self):
        s = Spectrum((1.0,))
        assert as_spectrum(s) is s
        assert as_spectrum([1.0, 2.0]).eigs == ((1 + 0j), (2 + 0j))


class TestSamplers:
    def test_haar_unitary_to_machine_precision(self):
        rng = np.random.default_rng(0)
        for n in (1, 2, 3, 5):
            u = sample_haar_unitary(n, rng)
            res = np.abs(u.conj().T @ u - np.eye(n)).max()
            assert res < 1e-13

    def test_haar_entry_moment(self):
        # E|u_ij|^2 = 1/n for every entry
        rng = np.random.default_rng(1)
        n, m = 3, 20000
        acc = np.zeros((n, n))
        for _ in range(m // 2000):
            pass
        us = np.stack([sample_haar_unitary(n, rng) for _ in range(4000)])
        acc = (np.abs(us) ** 2).mean(axis=0)
        assert np.abs(acc - 1.0 / n).max() < 0.03

    def test_ginibre_moments(self):
        rng = np.random.default_rng(2)
        m = 20000
        zs = np.stack([sample_ginibre(2, rng) for _ in range(m)])
        assert abs(zs[:, 0, 0].mean()) < 0.05
        assert abs((np.abs(zs[:, 0, 0]) ** 2).mean() - 1.0) < 0.05

    def test_rejects_nonpositive_n(self):
        rng = np.random.default_rng(3)
        with pytest.raises(ValueError):
            sample_haar_unitary(0, rng)
        with pytest.raises(ValueError):
            sample_ginibre(0, rng)


class TestMonteCarlo:
    def test_constant_integrand_single_point(self):
        # the integrand is constant up to unitary rounding, so the stderr
        # collapses to the rounding scale
        est = hciz_mc((0.7,), (-1.1,), n_samples=500, seed=0)
        assert abs(est.mean - cmath.exp(0.7 * -1.1)) < 1e-12
        assert est.stderr < 1e-14

    def test_agrees_with_closed_form(self):
        a, b = (0.3, -0.6), (0.9, 0.1)
        want = hciz_determinant(a, b)
        est = hciz_mc(a, b, n_samples=40000, seed=1)
        assert est.stderr > 0
        assert est.within(want)

    def test_agrees_with_closed_form_n3(self):
        a, b = (0.3, -0.6, 1.0), (0.9, 0.1, -0.5)
        want = hciz_determinant(a, b)
        est = hciz_mc(a, b, n_samples=60000, seed=2)
        assert est.within(want)

    def test_reproducible(self):
        kw = dict(n_samples=5000, seed=7)
        e1 = hciz_mc((0.3, -0.6), (0.9, 0.1), **kw)
        e2 = hciz_mc((0.3, -0.6), (0.9, 0.1), **kw)
        assert e1.mean == e2.mean and e1.stderr == e2.stderr

    def test_reproducible_threaded(self):
        kw = dict(n_samples=5000, seed=7, threads=2)
        e1 = hciz_mc((0.3, -0.6), (0.9, 0.1), **kw)
        e2 = hciz_mc((0.3, -0.6), (0.9, 0.1), **kw)
        assert e1.mean == e2.mean and e1.stderr == e2.stderr

    def test_threaded_estimate_consistent(self):
        want = hciz_determinant((0.3, -0.6), (0.9, 0.1))
        est = hciz_mc((0.3, -0.6), (0.9, 0.1), n_samples=40000, seed=3, threads=4)
        assert est.within(want)

    def test_stderr_shrinks_with_sample_size(self):
        ratios = []
        for seed in range(10):
            lo = hciz_mc((0.3, -0.6), (0.9, 0.1), n_samples=4000, seed=seed)
            hi = hciz_mc((0.3, -0.6), (0.9, 0.1), n_samples=8000, seed=100 + seed)
            ratios.append(lo.stderr / hi.stderr)
        mean_ratio = sum(ratios) / len(ratios)
        # sqrt(2) up to sampling noise
        assert 1.2 <= mean_ratio <= 1.7

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            hciz_mc((1.0, 2.0), (1.0,), n_samples=100, seed=0)

    def test_needs_two_samples(self):
        with pytest.raises(ValueError):
            hciz_mc((1.0,), (1.0,), n_samples=1, seed=0)


class TestClosedForm:
    def test_single_point(self):
        assert hciz_determinant((1.5,), (-2.0,)) == pytest.approx(cmath.exp(-3.0))

    def test_two_point_golden(self):
        # a = b = (1, 0): the ratio collapses to e - 1
        got = hciz_determinant((1.0, 0.0), (1.0, 0.0))
        assert got == pytest.approx(math.e - 1.0, rel=1e-12)

    def test_two_point_hand_formula(self):
        for a, b in [
            ((0.4, -0.9), (1.2, 0.3)),
            ((0.5 + 0.2j, -0.1), (0.7, -0.3 - 0.4j)),
        ]:
            got = hciz_determinant(a, b)
            want = det_n2_by_hand(a, b)
            assert got == pytest.approx(want, rel=1e-12)

    def test_swap_arguments(self):
        a, b = (0.4, -0.9, 0.2), (1.2, 0.3, -0.5)
        assert hciz_determinant(a, b) == pytest.approx(hciz_determinant(b, a), rel=1e-12)

    def test_permutation_invariance(self):
        a, b = (0.4, -0.9, 0.2), (1.2, 0.3, -0.5)
        want = hciz_determinant(a, b)
        for pa in [(0.2, 0.4, -0.9), (-0.9, 0.2, 0.4)]:
            for pb in [(0.3, -0.5, 1.2), (-0.5, 1.2, 0.3)]:
                got = hciz_determinant(pa, pb)
                assert abs(got - want) <= 1e-12 * abs(want)

    def test_degenerate_raises(self):
        with pytest.raises(DegenerateSpectrumError):
            hciz_determinant((1.0, 1.0 + 1e-9), (0.0, 1.0))
        with pytest.raises(DegenerateSpectrumError):
            hciz_determinant((0.0, 1.0), (2.0, 2.0))

    def test_gap_tol_is_adjustable(self):
        # formally still nondegenerate; tightening the tolerance admits it
        v = hciz_determinant((1.0, 1.0 + 1e-9), (0.0, 1.0), gap_tol=1e-12)
        assert math.isfinite(abs(v))
        assert GAP_TOL_DEFAULT == 1e-8


class TestKernelSeries:
    def test_weight_zero_is_one(self):
        r = kernel_series((0.4, -0.2), (0.3, 0.1), max_weight=0)
        assert r.value == 1.0 + 0j
        assert r.max_weight_used == 0

    def test_single_point_exponential(self):
        x, y = 0.4 + 0.1j, -0.3 + 0.2j
        r = kernel_series((x,), (y,))
        assert r.value == pytest.approx(cmath.exp(x * y.conjugate()), abs=1e-12)

    def test_matches_determinant_inside_radius(self):
        pairs = [
            ((0.31, -0.42), (0.05, 0.44)),
            ((0.31 + 0.1j, -0.42), (0.05, 0.44 - 0.2j)),
            ((0.31, -0.42, 0.11), (0.05, 0.44, -0.37)),
        ]
        for x, y in pairs:
            want = hciz_determinant(x, tuple(complex(e).conjugate() for e in y))
            got = kernel_series(x, y)
            assert abs(got.value - want) <= 1e-8

    def test_hermitian_symmetry(self):
        x, y = (0.31 + 0.1j, -0.42), (0.05, 0.44 - 0.2j)
        kxy = kernel_series(x, y).value
        kyx = kernel_series(y, x).value
        assert kxy == pytest.approx(kyx.conjugate(), abs=1e-10)

    def test_adaptive_truncation_stops_early(self):
        r = kernel_series((0.2, -0.1), (0.15, 0.05))
        assert r.max_weight_used < 24
        assert r.last_shell_magnitude < 1e-11

    def test_full_depth_when_tol_zero(self):
        r = kernel_series((0.2, -0.1), (0.15, 0.05), max_weight=16, tol=0.0)
        assert r.max_weight_used == 16
        assert r.last_shell_magnitude < 1e-14

    def test_shell_mass_decays_two_apart(self):
        x, y = (0.31, -0.42), (0.05, 0.44)
        mags = [
            kernel_series(x, y, max_weight=w, tol=0.0).last_shell_magnitude
            for w in range(2, 12)
        ]
        for k in range(len(mags) - 2):
            assert mags[k + 2] < mags[k]

    def test_traceless_spectrum_converges(self):
        # the weight-1 shell vanishes identically here; the truncation must
        # push past it rather than stop on one quiet shell
        x, y = (0.31, -0.42, 0.11), (0.05, 0.44, -0.37)
        want = hciz_determinant(x, y)
        got = kernel_series(x, y)
        assert got.max_weight_used > 2
        assert abs(got.value - want) <= 1e-8

    def test_coincident_points_supported(self):
        # the closed form refuses this spectrum; the series does not care
        r = kernel_series((0.5, 0.5), (0.5, 0.5))
        assert math.isfinite(abs(r.value))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            kernel_series((0.1,), (0.1, 0.2))


class TestKernelQMC:
    def test_zero_second_argument(self):
        x = np.array([[0.4, 0.2], [0.1, -0.3]])
        est = kernel_q_mc(x, np.zeros((2, 2)), n_samples=1000, seed=0)
        assert est.mean == 1.0 + 0j
        assert est.stderr == 0.0

    def test_matches_diagonal_monte_carlo(self):
        a, b = (0.3, -0.6), (0.9, 0.1)
        e1 = kernel_q_mc(np.diag(a), np.diag(b), n_samples=40000, seed=4)
        e2 = hciz_mc(a, b, n_samples=40000, seed=5)
        band = 4.0 * math.hypot(e1.stderr, e2.stderr)
        assert abs(e1.mean - e2.mean) <= band

    def test_matches_closed_form(self):
        a, b = (0.3, -0.6), (0.9, 0.1)
        want = hciz_determinant(a, b)
        est = kernel_q_mc(np.diag(a), np.diag(b), n_samples=40000, seed=6)
        assert est.within(want)

    def test_unitary_conjugation_invariance(self):
        rng = np.random.default_rng(7)
        x = np.diag([0.3, -0.6]).astype(complex)
        y = np.diag([0.9, 0.1]).astype(complex)
        v = sample_haar_unitary(2, rng)
        e1 = kernel_q_mc(x, y, n_samples=40000, seed=8)
        e2 = kernel_q_mc(v @ x @ v.conj().T, y, n_samples=40000, seed=9)
        band = 4.0 * math.hypot(e1.stderr, e2.stderr)
        assert abs(e1.mean - e2.mean) <= band

    def test_depends_only_on_eigenvalues(self):
        # non-normal input: the integral sees just the spectrum
        x = np.array([[0.31, 0.8], [0.0, -0.42]])
        y = np.diag([0.05, 0.44]).astype(complex)
        est = kernel_q_mc(x, y, n_samples=60000, seed=10)
        want = kernel_series((0.31, -0.42), (0.05, 0.44)).value
        assert est.within(want)

    def test_shape_validation(self):
        with pytest.raises(DimensionMismatchError):
            kernel_q_mc(np.zeros((2, 3)), np.zeros((2, 3)), n_samples=10, seed=0)
        with pytest.raises(DimensionMismatchError):
            kernel_q_mc(np.zeros((2, 2)), np.zeros((3, 3)), n_samples=10, seed=0)


class TestGinibreMoments:
    def test_suite_passes(self):
        for n in (1, 2, 3):
            rep = ginibre_moment_suite(n, n_samples=20000, seed=0)
            assert rep.trace_expected == float(n)
            assert rep.det_expected == float(math.factorial(n))
            assert rep.all_ok

    def test_range_validation(self):
        with pytest.raises(ValueError):
            ginibre_moment_suite(0, n_samples=10, seed=0)
        with pytest.raises(ValueError):
            ginibre_moment_suite(7, n_samples=10, seed=0)


class TestCoherentReproducing:
    def test_alternating_polynomial_reproduced(self):
        # F = a_{(3,1)}; weight of the partition part is 2, so depth 4 suffices
        f = alternant((3, 1), 2)
        res = coherent_reproducing_check((0.3, -0.2), f, max_weight=4)
        assert res < 1e-10

    def test_truncation_below_degree_misses(self):
        f = alternant((3, 1), 2)
        res = coherent_reproducing_check((0.3, -0.2), f, max_weight=1)
        assert res > 1e-6

    def test_rejects_nonalternating(self):
        with pytest.raises(NotAlternatingError):
            coherent_reproducing_check((0.3, -0.2), ExactPoly.monomial(2, (1, 1)), 4)


class TestRandomRealSpectrum:
    def test_properties(self):
        rng = np.random.default_rng(11)
        for n in (1, 2, 3, 4):
            for _ in range(20):
                s = random_real_spectrum(n, rng)
                assert s.n == n and s.is_real()
                assert all(-1.0 <= e.real <= 1.0 for e in s.eigs)
                assert s.gap >= 0.1

    def test_reproducible(self):
        s1 = random_real_spectrum(3, np.random.default_rng(12))
        s2 = random_real_spectrum(3, np.random.default_rng(12))
        assert s1.eigs == s2.eigs

    def test_infeasible_gap(self):
        with pytest.raises(ValueError):
            random_real_spectrum(30, np.random.default_rng(0))


class TestMCEstimate:
    def test_within(self):
        e = MCEstimate(mean=1.0 + 0j, stderr=0.1, n_samples=10, seed=0)
        assert e.within(1.3)
        assert not e.within(1.5)
        assert e.within(1.15, k=2.0)
