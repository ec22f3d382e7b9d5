"""Floating-point evaluation of the unitary-group exponential integral

    I(a, b) = integral over the unitary group of exp(Tr(u A u^-1 B)) du

by three independent routes: the closed-form ratio of a determinant of
exponentials to Vandermonde products, Monte Carlo over Haar measure, and
the truncated Schur-function expansion of the reproducing kernel.

Convention split, deliberately kept apart: `hciz_*` functions take both
spectra holomorphically (the integral as usually written), while the
`kernel_*` functions conjugate their second argument (the reproducing
kernel is anti-holomorphic there).  The two agree through

    kernel(x, y) == hciz(x, conj(y)).

Randomness comes from counter-based Philox streams; a worker w draws from
the substream `Philox(seed).jumped(w)`, so results are reproducible for a
fixed (seed, worker count) and independent of scheduling.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    DegenerateSpectrumError,
    DimensionMismatchError,
    NotAlternatingError,
)
from .exactpoly import ExactPoly, bargmann_inner
from .symfn import (
    Partition,
    d_lambda,
    enumerate_partitions,
    homogeneous_values,
    is_alternating,
    jacobi_trudi_indices,
    partitions_of_weight,
    staircase,
    vector_factorial,
)

GAP_TOL_DEFAULT = 1e-8
_BATCH = 32768


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue list with its regularity gap (min pairwise distance)."""

    eigs: tuple
    gap: float = field(init=False)

    def __post_init__(self):
        eigs = tuple(complex(e) for e in self.eigs)
        if not eigs:
            raise ValueError("empty spectrum")
        if any(not (math.isfinite(e.real) and math.isfinite(e.imag)) for e in eigs):
            raise ValueError("non-finite eigenvalue")
        gap = min(
            (abs(eigs[i] - eigs[j]) for i in range(len(eigs)) for j in range(i + 1, len(eigs))),
            default=math.inf,
        )
        object.__setattr__(self, "eigs", eigs)
        object.__setattr__(self, "gap", gap)

    @property
    def n(self) -> int:
        return len(self.eigs)

    def conj(self) -> "Spectrum":
        return Spectrum(tuple(e.conjugate() for e in self.eigs))

    def is_real(self, tol: float = 0.0) -> bool:
        return all(abs(e.imag) <= tol for e in self.eigs)


def as_spectrum(x) -> Spectrum:
    return x if isinstance(x, Spectrum) else Spectrum(tuple(x))


@dataclass(frozen=True)
class MCEstimate:
    """Monte Carlo mean with its standard error (combined over re and im)."""

    mean: complex
    stderr: float
    n_samples: int
    seed: int

    def within(self, target: complex, k: float = 4.0) -> bool:
        return abs(self.mean - target) <= k * self.stderr


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    max_weight_used: int
    last_shell_magnitude: float


# -- sampling ---------------------------------------------------------------------


def _substream(seed: int, worker: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed).jumped(worker))


def _ginibre_batch(count: int, n: int, rng: np.random.Generator) -> np.ndarray:
    scale = math.sqrt(0.5)
    return rng.normal(0.0, scale, (count, n, n)) + 1j * rng.normal(0.0, scale, (count, n, n))


def sample_ginibre(n: int, rng: np.random.Generator) -> np.ndarray:
    """One n x n matrix with i.i.d. standard complex Gaussian entries."""
    if n < 1:
        raise ValueError("n must be positive")
    return _ginibre_batch(1, n, rng)[0]


def _haar_batch(count: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitaries: Ginibre, QR, then make R's diagonal positive."""
    g = _ginibre_batch(count, n, rng)
    q, r = np.linalg.qr(g)
    d = np.einsum("bii->bi", r).copy()
    bad = np.abs(d) == 0.0
    while bad.any():
        # measure-zero QR breakdown: redraw the affected matrices
        rows = np.unique(np.nonzero(bad)[0])
        g2 = _ginibre_batch(len(rows), n, rng)
        q2, r2 = np.linalg.qr(g2)
        q[rows], d[rows] = q2, np.einsum("bii->bi", r2)
        bad = np.abs(d) == 0.0
    q *= (d / np.abs(d))[:, None, :]
    return q

def sample_haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """One Haar-random n x n unitary; u†u = I to machine precision."""
    if n < 1:
        raise ValueError("n must be positive")
    return _haar_batch(1, n, rng)[0]


# -- the generic parallel MC engine ----------------------------------------------------


def _mc_mean(sample_values, n_samples: int, seed: int, threads: int) -> MCEstimate:
    """Average `sample_values(rng, count)` over deterministic worker substreams."""
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    threads = max(1, int(threads))
    workers = min(threads, n_samples)
    quota, extra = divmod(n_samples, workers)

    def merge(acc, chunk):
        # Chan's parallel update of (count, mean, sum of squared deviations);
        # no large-term cancellation, so near-constant integrands report
        # their true tiny variance instead of rounding junk
        cnt, mean, m2r, m2i = acc
        ccnt, cmean, cm2r, cm2i = chunk
        tot = cnt + ccnt
        d = cmean - mean
        m2r += cm2r + d.real**2 * cnt * ccnt / tot
        m2i += cm2i + d.imag**2 * cnt * ccnt / tot
        return tot, mean + d * (ccnt / tot), m2r, m2i

    def run(worker: int):
        rng = _substream(seed, worker)
        todo = quota + (1 if worker < extra else 0)
        acc = (0, 0j, 0.0, 0.0)
        while todo:
            count = min(todo, _BATCH)
            vals = np.asarray(sample_values(rng, count), dtype=complex)
            bmean = complex(vals.mean())
            bm2r = float(np.sum((vals.real - bmean.real) ** 2))
            bm2i = float(np.sum((vals.imag - bmean.imag) ** 2))
            acc = merge(acc, (count, bmean, bm2r, bm2i))
            todo -= count
        return acc

    if workers == 1:
        partials = [run(0)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(run, range(workers)))

    acc = (0, 0j, 0.0, 0.0)
    for p in partials:
        acc = merge(acc, p)
    _, mean, m2r, m2i = acc
    if n_samples > 1:
        stderr = math.sqrt((m2r + m2i) / (n_samples - 1) / n_samples)
    else:
        stderr = math.inf
    return MCEstimate(mean=mean, stderr=stderr, n_samples=n_samples, seed=seed)


# -- the three evaluators ---------------------------------------------------------------


def hciz_mc(a, b, n_samples: int, seed: int, threads: int = 1) -> MCEstimate:
    """Monte Carlo mean of exp(Tr(u A u^-1 B)) over Haar samples, A=diag(a), B=diag(b)."""
    a, b = as_spectrum(a), as_spectrum(b)
    if a.n != b.n:
        raise DimensionMismatchError(f"spectra of lengths {a.n} and {b.n}")
    if n_samples < 2:
        raise ValueError("need n_samples >= 2")
    n = a.n
    av = np.array(a.eigs)
    bv = np.array(b.eigs)

    def values(rng, count):
        u = _haar_batch(count, n, rng)
        tr = np.einsum("bij,j,i->b", np.abs(u) ** 2, av, bv)
        return np.exp(tr)

    return _mc_mean(values, n_samples, seed, threads)


def _vdm_product(v: np.ndarray) -> complex:
    out = 1.0 + 0j
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            out *= v[j] - v[i]
    return complex(out)


def hciz_determinant(a, b, gap_tol: float = GAP_TOL_DEFAULT) -> complex:
    """Closed form: prod_{p<n} p! * det[exp(a_i b_j)] / (Vdm(a) Vdm(b)).

    Raises DegenerateSpectrumError when either spectrum has a pairwise gap
    below `gap_tol`; the character series is the stable route there.
    """
    a, b = as_spectrum(a), as_spectrum(b)
    if a.n != b.n:
        raise DimensionMismatchError(f"spectra of lengths {a.n} and {b.n}")
    for s in (a, b):
        if s.gap < gap_tol:
            raise DegenerateSpectrumError(s.gap, gap_tol)
    n = a.n
    if n == 1:
        return cmath.exp(a.eigs[0] * b.eigs[0])
    av = np.array(a.eigs)
    bv = np.array(b.eigs)
    mat = np.exp(np.outer(av, bv))
    prefactor = 1
    for p in range(1, n):
        prefactor *= math.factorial(p)
    return prefactor * complex(np.linalg.det(mat)) / (_vdm_product(av) * _vdm_product(bv))


def _schur_values_shell(partitions, h: np.ndarray) -> np.ndarray:
    """Schur values for same-weight partitions via stacked Jacobi-Trudi determinants."""
    vals = np.empty(len(partitions), dtype=complex)
    by_len: dict[int, list] = {}
    for pos, lam in enumerate(partitions):
        by_len.setdefault(lam.length, []).append(pos)
    for ell, idxs in by_len.items():
        if ell == 0:
            vals[idxs] = 1.0
            continue
        stack = np.array(
            [jacobi_trudi_indices(partitions[pos]) for pos in idxs], dtype=int
        )
        entries = np.where(stack >= 0, h[np.clip(stack, 0, None)], 0j)
        if ell == 1:
            vals[idxs] = entries[:, 0, 0]
        else:
            vals[idxs] = np.linalg.det(entries)
    return vals


def kernel_series(x, y, max_weight: int = 24, tol: float = 1e-8) -> SeriesResult:
    """Truncated expansion sum_lambda delta!/(lambda+delta)! s_lambda(x) conj(s_lambda(y)).

    Shells are whole weights; the sum stops early once n consecutive shells
    have absolute mass below 1e-3 * tol, and in any case at `max_weight`.
    A single tiny shell can be an accident of the spectrum (a traceless x
    kills weight 1); n in a row force p_1..p_n ~ 0, hence real convergence.
    """
    x, y = as_spectrum(x), as_spectrum(y)
    if x.n != y.n:
        raise DimensionMismatchError(f"spectra of lengths {x.n} and {y.n}")
    if max_weight < 0:
        raise ValueError("max_weight must be nonnegative")
    n = x.n
    delta_fact = vector_factorial(staircase(n))
    kmax = max_weight + n - 1
    hx = np.array(homogeneous_values(x.eigs, kmax))
    hy = np.array(homogeneous_values([e.conjugate() for e in y.eigs], kmax))
    total = 0j
    shell_mag = 0.0
    used = 0
    small_run = 0
    for w in range(max_weight + 1):
        shell = list(partitions_of_weight(w, n))
        coeffs = np.array(
            [
                float(Fraction(delta_fact, vector_factorial(lam.plus_staircase(n))))
                for lam in shell
            ]
        )
        sx = _schur_values_shell(shell, hx)
        sy = _schur_values_shell(shell, hy)
        terms = coeffs * sx * sy
        total += complex(terms.sum())
        shell_mag = float(np.abs(terms).sum())
        used = w
        small_run = small_run + 1 if shell_mag < 1e-3 * tol else 0
        if small_run >= n:
            break
    return SeriesResult(value=total, max_weight_used=used, last_shell_magnitude=shell_mag)


def kernel_q_mc(x, y, n_samples: int, seed: int, threads: int = 1) -> MCEstimate:
    """MC mean of exp(Tr(u^-1 x u y†)) for square matrices x, y."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise DimensionMismatchError(f"x has shape {x.shape}, expected square")
    if y.shape != x.shape:
        raise DimensionMismatchError(f"y has shape {y.shape}, expected {x.shape}")
    n = x.shape[0]
    yc = y.conj()

    def values(rng, count):
        u = _haar_batch(count, n, rng)
        w = np.einsum("bki,kl,blj->bij", u.conj(), x, u)
        tr = np.einsum("bij,ij->b", w, yc)
        return np.exp(tr)

    return _mc_mean(values, n_samples, seed, threads)


# -- statistical checks -----------------------------------------------------------------


@dataclass(frozen=True)
class GinibreMomentReport:
    n: int
    trace_estimate: MCEstimate
    det_estimate: MCEstimate
    trace_expected: float
    det_expected: float

    @property
    def trace_ok(self) -> bool:
        return self.trace_estimate.within(self.trace_expected)

    @property
    def det_ok(self) -> bool:
        return self.det_estimate.within(self.det_expected)

    @property
    def all_ok(self) -> bool:
        return self.trace_ok and self.det_ok


def ginibre_moment_suite(
    n: int, n_samples: int, seed: int, threads: int = 1
) -> GinibreMomentReport:
    """Estimates of E|Tr z|^2 and E|det z|^2 against their exact values n and n!."""
    if not 1 <= n <= 6:
        raise ValueError("n out of the supported range 1..6")

    def trace_vals(rng, count):
        z = _ginibre_batch(count, n, rng)
        return np.abs(np.einsum("bii->b", z)) ** 2

    def det_vals(rng, count):
        z = _ginibre_batch(count, n, rng)
        return np.abs(np.linalg.det(z)) ** 2

    return GinibreMomentReport(
        n=n,
        trace_estimate=_mc_mean(trace_vals, n_samples, seed, threads),
        det_estimate=_mc_mean(det_vals, n_samples, seed + 1, threads),
        trace_expected=float(n),
        det_expected=float(math.factorial(n)),
    )


def coherent_reproducing_check(a, f: ExactPoly, max_weight: int) -> float:
    """|<R_a truncated, F> - F(a)| for alternating F; exact pairing, numeric value.

    The kernel section R_a = sum_lambda d_lambda conj(d_lambda(a)) reproduces
    point evaluation; once max_weight reaches deg F the truncation error is
    exactly zero, so the residual is pure floating rounding.
    """
    a = as_spectrum(a)
    n = a.n
    if f.n_vars != n:
        raise DimensionMismatchError(f"polynomial over {f.n_vars} variables, expected {n}")
    if not is_alternating(f):
        raise NotAlternatingError("the reproducing check needs an alternating polynomial")
    acc = 0j
    for lam in enumerate_partitions(max_weight, n):
        dl = d_lambda(lam, n)
        pairing = bargmann_inner(dl.poly, f)
        if pairing.is_zero:
            continue
        scale2 = complex(dl.scale.squared().to_complex())
        acc += scale2 * dl.poly.eval_complex(a.eigs) * pairing.to_complex()
    return abs(acc - f.eval_complex(a.eigs))


def random_real_spectrum(
    n: int,
    rng: np.random.Generator,
    low: float = -1.0,
    high: float = 1.0,
    min_gap: float = 0.1,
) -> Spectrum:
    """Sorted uniform draw from [low, high]^n, rejected until the gap clears min_gap."""
    if n * min_gap >= (high - low):
        raise ValueError("gap constraint cannot be met on this interval")
    while True:
        vals = np.sort(rng.uniform(low, high, n))
        if n == 1 or float(np.diff(vals).min()) >= min_gap:
            return Spectrum(tuple(float(v) for v in vals))
