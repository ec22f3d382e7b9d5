"""Conjugation-invariant polynomials on n x n matrices, and the maps between
the three exact pictures the verification suites compare:

    trace picture      TracePoly in generators t_k = Tr(z^k)
    entry picture      ExactPoly over the n^2 matrix entries (row-major)
    diagonal picture   symmetric / alternating ExactPoly in n eigenvalues

The restriction map psi(F) = c * a_delta * F|_D carries the invariant
picture to the alternating one; its unitarity, the differential-operator
identity, Schur-coefficient extraction and the orthonormal bases d_lambda,
e_lambda are all checked here with rational arithmetic only.

A caution on presentations: at fixed n the generators t_k with k > n are
algebraically dependent on the lower ones, so identities between trace
polynomials are compared after restriction to the diagonal (faithful on
invariants), never coefficientwise in the t_k.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

from .errors import (
    ExactDivisionError,
    NotAlternatingError,
    NotInImageError,
)
from .exactpoly import ExactPoly, MultiIndex, bargmann_inner
from .scalars import GaussianRational, RadicalScalar
from .symfn import (
    GeneratorPoly,
    Partition,
    Scaled,
    alternant_delta,
    divide_by_alternant_delta,
    is_alternating,
    is_symmetric,
    norm_const_c,
    enumerate_partitions,
    schur_to_power_sums,
    staircase,
    vector_factorial,
)


class TracePoly(GeneratorPoly):
    """Polynomial in the trace generators t_1, t_2, ... with deg t_k = k."""

    symbol = "t"
    __slots__ = ()


class SymPoly(ExactPoly):
    """ExactPoly verified symmetric on construction."""

    __slots__ = ()

    @classmethod
    def tag(cls, p: ExactPoly) -> "SymPoly":
        if not is_symmetric(p):
            raise NotAlternatingError("polynomial is not symmetric")
        self = object.__new__(cls)
        object.__setattr__(self, "n_vars", p.n_vars)
        object.__setattr__(self, "terms", p.terms)
        return self


class AltPoly(ExactPoly):
    """ExactPoly verified alternating on construction."""

    __slots__ = ()

    @classmethod
    def tag(cls, p: ExactPoly) -> "AltPoly":
        if not is_alternating(p):
            raise NotAlternatingError("polynomial is not alternating")
        self = object.__new__(cls)
        object.__setattr__(self, "n_vars", p.n_vars)
        object.__setattr__(self, "terms", p.terms)
        return self


def entry_var(i: int, j: int, n: int) -> int:
    """Row-major variable id of the entry z_{ij} (0-based indices)."""
    return i * n + j


@lru_cache(maxsize=None)
def trace_power_entry(k: int, n: int) -> ExactPoly:
    """Tr(z^k) as a polynomial in the n^2 entries: sum over cyclic index paths."""
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 and n >= 1")
    counts: dict[MultiIndex, int] = {}
    for path in itertools.product(range(n), repeat=k):
        exps: dict[int, int] = {}
        for s in range(k):
            v = entry_var(path[s], path[(s + 1) % k], n)
            exps[v] = exps.get(v, 0) + 1
        key = MultiIndex(exps.items())
        counts[key] = counts.get(key, 0) + 1
    return ExactPoly(n * n, {mi: GaussianRational(c) for mi, c in counts.items()})


def expand_to_entries(f: TracePoly, n: int) -> ExactPoly:
    """Substitute t_k -> Tr(z^k); ring homomorphism into the entry picture."""
    images = {k: trace_power_entry(k, n) for k in range(1, f.max_gen() + 1)}
    return f.substitute_gens(images, n * n)


def restrict_to_diagonal(f: TracePoly, n: int) -> SymPoly:
    """Substitute t_k -> x_1^k + ... + x_n^k; the diagonal picture F|_D."""
    return SymPoly.tag(f.substitute_powers(n))


def entry_to_diagonal(e: ExactPoly, n: int) -> ExactPoly:
    """Set off-diagonal entries to zero and rename z_{ii} -> x_i."""
    images = {
        entry_var(i, j, n): (i if i == j else None)
        for i in range(n)
        for j in range(n)
    }
    return e.map_vars(images, n)


def psi_map(f: TracePoly, n: int) -> Scaled:
    """psi(F) = c * a_delta * F|_D, the scale c kept exact."""
    return Scaled(norm_const_c(n), AltPoly.tag(alternant_delta(n) * restrict_to_diagonal(f, n)))


# -- rewriting symmetric polynomials in the trace generators -----------------------------


@lru_cache(maxsize=None)
def elementary_exact(k: int, n: int) -> ExactPoly:
    """Elementary symmetric polynomial e_k in n variables."""
    if k > n:
        return ExactPoly.zero(n)
    one = GaussianRational(1)
    return ExactPoly(
        n,
        {
            MultiIndex((v, 1) for v in combo): one
            for combo in itertools.combinations(range(n), k)
        },
    )


@lru_cache(maxsize=None)
def elementary_in_power_sums(k: int) -> TracePoly:
    """e_k rewritten in power sums by Newton's identity k e_k = sum (-1)^{i-1} e_{k-i} p_i."""
    if k == 0:
        return TracePoly.one()
    acc = TracePoly.zero()
    for i in range(1, k + 1):
        term = elementary_in_power_sums(k - i) * TracePoly.gen(i)
        acc = acc + (term if (i - 1) % 2 == 0 else -term)
    return acc * Fraction(1, k)


def symmetric_to_traces(s: ExactPoly, n: int) -> TracePoly:
    """Rewrite a symmetric polynomial in n variables as a trace polynomial.

    Leading-exponent elimination against products of elementary symmetric
    polynomials, then Newton's identities to reach the t_k.  Only t_1..t_n
    appear in the output.
    """
    residue = s
    out = TracePoly.zero()
    while not residue.is_zero:
        mi, c = residue.leading()
        alpha = mi.dense(n)
        if any(alpha[i] < alpha[i + 1] for i in range(n - 1)):
            raise NotInImageError("polynomial is not symmetric")
        mults = [alpha[k - 1] - (alpha[k] if k < n else 0) for k in range(1, n + 1)]
        e_mono_x = ExactPoly.one(n)
        e_mono_t = TracePoly.one()
        for k, m in enumerate(mults, start=1):
            for _ in range(m):
                e_mono_x = e_mono_x * elementary_exact(k, n)
                e_mono_t = e_mono_t * elementary_in_power_sums(k)
        residue = residue - e_mono_x * c
        out = out + e_mono_t * c
    return out


def psi_inverse(g, n: int) -> Scaled:
    """Inverse of psi: divide out a_delta exactly, lift to traces, divide the scale by c.

    Accepts a plain ExactPoly or a Scaled one; the input must be alternating
    and divisible by a_delta, else NotAlternatingError / NotInImageError.
    """
    g = Scaled.of(g)
    if g.poly.n_vars != n:
        raise NotInImageError(f"polynomial over {g.poly.n_vars} variables, expected {n}")
    if not is_alternating(g.poly):
        raise NotAlternatingError("psi_inverse needs an alternating input")
    try:
        sym = divide_by_alternant_delta(g.poly, n)
    except ExactDivisionError as exc:
        raise NotInImageError("polynomial is not a multiple of the alternant") from exc
    return Scaled(g.scale / norm_const_c(n), symmetric_to_traces(sym, n))


# -- the canonical bases -------------------------------------------------------------


def chi_lambda(lam: Partition) -> TracePoly:
    """The character polynomial: s_lambda with power sums realized as traces."""
    return TracePoly(schur_to_power_sums(lam).poly)


def e_lambda(lam: Partition, n: int) -> Scaled:
    """e_lambda = sqrt(delta! / (lambda+delta)!) * chi_lambda at dimension n."""
    ratio = Fraction(
        vector_factorial(staircase(n)), vector_factorial(lam.plus_staircase(n))
    )
    return Scaled(RadicalScalar.sqrt_of(ratio), chi_lambda(lam))


def invariant_inner(f: TracePoly, g: TracePoly, n: int) -> GaussianRational:
    """Gaussian inner product of invariants, via the entry picture."""
    return bargmann_inner(expand_to_entries(f, n), expand_to_entries(g, n))


def scaled_invariant_inner(a: Scaled, b: Scaled, n: int) -> RadicalScalar:
    """invariant_inner extended to exact radical multiples of trace polynomials."""
    return a.scale.conjugate() * b.scale * invariant_inner(a.poly, b.poly, n)


# -- identity verifiers ---------------------------------------------------------------


def verify_unitarity(f: TracePoly, g: TracePoly, n: int):
    """<F, G> against c^2 <a_delta F|_D, a_delta G|_D>; returns (equal, lhs, rhs)."""
    lhs = invariant_inner(f, g, n)
    a_delta = alternant_delta(n)
    pf = a_delta * restrict_to_diagonal(f, n)
    pg = a_delta * restrict_to_diagonal(g, n)
    c2 = norm_const_c(n).squared()
    rhs = c2 * bargmann_inner(pf, pg)
    return lhs == rhs, lhs, rhs


def verify_diffop_identity(f: TracePoly, g: TracePoly, n: int):
    """a_delta * (F(d)G)|_D  against  F|_D(d) (a_delta * G|_D); returns (equal, lhs, rhs).

    Both sides are computed as exact polynomials in the n diagonal variables,
    so equality here is equality for every x at once.
    """
    fe = expand_to_entries(f, n)
    ge = expand_to_entries(g, n)
    lhs = alternant_delta(n) * entry_to_diagonal(fe.apply_diff(ge), n)
    fd = restrict_to_diagonal(f, n)
    gd = restrict_to_diagonal(g, n)
    rhs = fd.apply_diff(alternant_delta(n) * gd)
    return lhs == rhs, lhs, rhs


def fourier_coefficients(f: TracePoly, n: int, max_weight: int | None = None) -> dict:
    """Schur-basis coefficients: f_lambda = coefficient of z^{lambda+delta} in a_delta F|_D.

    Returns {Partition: GaussianRational}, zero coefficients omitted.
    """
    if max_weight is None:
        max_weight = max(f.weighted_degree(), 0)
    h = alternant_delta(n) * restrict_to_diagonal(f, n)
    out = {}
    for lam in enumerate_partitions(max_weight, n):
        c = h.coefficient(MultiIndex.from_dense(lam.plus_staircase(n)))
        if not c.is_zero:
            out[lam] = c
    return out


def verify_fourier_reconstruction(f: TracePoly, n: int, max_weight: int | None = None):
    """Check sum_lambda f_lambda chi_lambda == F in the diagonal picture.

    Returns (equal, coeffs).  The comparison happens after restriction to n
    variables because trace presentations of the same invariant can differ
    through the relations among t_k for k > n.
    """
    coeffs = fourier_coefficients(f, n, max_weight)
    acc = TracePoly.zero()
    for lam, c in coeffs.items():
        acc = acc + chi_lambda(lam) * c
    same = acc.substitute_powers(n) == f.substitute_powers(n)
    return same, coeffs


def verify_psi_roundtrip(f: TracePoly, n: int):
    """psi_inverse(psi_map(F)) == F, compared faithfully in the diagonal picture."""
    back = psi_inverse(psi_map(f, n), n)
    if back == Scaled.of(f):
        return True, back
    # presentations may differ through t_k relations at k > n
    lhs = back.map_poly(lambda p: p.substitute_powers(n))
    rhs = Scaled.of(f.substitute_powers(n))
    return lhs == rhs, back
