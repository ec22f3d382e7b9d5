"""Partitions, alternants, Schur polynomials and their normalizations.

Exact throughout.  The only floating point lives in `schur_numeric`, the
evaluation path used by the truncated character series; everything else
returns ExactPoly values or exact scalars.

Conventions.  The staircase is delta = (n-1, n-2, ..., 0).  Two signed
products of differences coexist:

    vandermonde(n)      = prod_{i<j} (x_j - x_i)
    alternant(delta, n) = det[x_i^{delta_j}] = prod_{i<j} (x_i - x_j)

They differ by (-1)^{n(n-1)/2}, exposed as `alternant_vandermonde_sign`.
All bialternant and basis formulas here use the alternant form; the
`vandermonde` product convention belongs to the determinant evaluator of
the integral.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

from .errors import (
    DegenerateExponentError,
    DimensionMismatchError,
    ExactDivisionError,
)
from .exactpoly import ExactPoly, MultiIndex, bargmann_inner
from .scalars import QQI_ONE, GaussianRational, RadicalScalar


class Partition:
    """Weakly decreasing tuple of positive parts; trailing zeros dropped."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        clean = []
        prev = None
        for p in parts:
            p = int(p)
            if p < 0:
                raise ValueError("negative part")
            if prev is not None and p > prev:
                raise ValueError(f"parts not weakly decreasing: {tuple(parts)}")
            prev = p
            if p > 0:
                clean.append(p)
        object.__setattr__(self, "parts", tuple(clean))

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    @classmethod
    def from_text(cls, text: str) -> "Partition":
        """Parse `2,1`; the empty partition is written `0`."""
        text = text.strip()
        if text in ("0", ""):
            return cls()
        return cls(int(p) for p in text.split(","))

    def to_text(self) -> str:
        return ",".join(str(p) for p in self.parts) if self.parts else "0"

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        return self.parts[i] if i < len(self.parts) else 0

    def plus_staircase(self, n: int) -> tuple:
        """lambda + delta padded to length n; strictly decreasing."""
        if len(self.parts) > n:
            raise DimensionMismatchError(
                f"partition has {len(self.parts)} parts, more than n={n}"
            )
        return tuple(self.part(i) + (n - 1 - i) for i in range(n))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self == Partition(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition({self.parts!r})"

    def __str__(self):
        return self.to_text()


def staircase(n: int) -> tuple:
    """delta = (n-1, n-2, ..., 0)."""
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(range(n - 1, -1, -1))


def vector_factorial(v) -> int:
    """v! = prod_i v_i! for a vector of nonnegative integers."""
    out = 1
    for p in v:
        out *= math.factorial(p)
    return out


def superfactorial(n: int) -> int:
    """prod_{p=1}^{n} p!"""
    out = 1
    for p in range(1, n + 1):
        out *= math.factorial(p)
    return out


def partitions_of_weight(weight: int, max_parts: int):
    """Partitions of exactly `weight` into at most `max_parts` parts, lex-descending."""

    def rec(remaining, cap, slots):
        if remaining == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first, slots - 1):
                yield (first,) + rest

    for parts in rec(weight, weight, max_parts):
        yield Partition(parts)


def enumerate_partitions(max_weight: int, max_parts: int) -> list:
    """All partitions with weight <= max_weight and <= max_parts parts.

    Order: by weight, then lexicographically descending; deterministic and
    stable under truncation of the weight bound.
    """
    if max_weight < 0 or max_parts < 1:
        raise ValueError("need max_weight >= 0 and max_parts >= 1")
    out = []
    for w in range(max_weight + 1):
        out.extend(partitions_of_weight(w, max_parts))
    return out


def _perm_sign(perm) -> int:
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv & 1 else 1


def alternant(mu, n: int) -> ExactPoly:
    """a_mu = det[x_i^{mu_j}] = sum_sigma sgn(sigma) prod_i x_i^{mu_{sigma(i)}}."""
    mu = tuple(int(m) for m in mu)
    if len(mu) != n:
        raise DimensionMismatchError(f"exponent vector of length {len(mu)}, expected {n}")
    if any(m < 0 for m in mu):
        raise ValueError("negative exponent in alternant")
    if len(set(mu)) != n:
        raise DegenerateExponentError(f"repeated exponents in {mu}: alternant vanishes")
    terms = {}
    for perm in itertools.permutations(range(n)):
        key = MultiIndex.from_dense(tuple(mu[perm[i]] for i in range(n)))
        terms[key] = GaussianRational(_perm_sign(perm))
    return ExactPoly(n, terms)


def vandermonde(n: int) -> ExactPoly:
    """prod_{i<j} (x_j - x_i); equals 1 for n = 1."""
    if n < 1:
        raise ValueError("n must be positive")
    out = ExactPoly.one(n)
    for i in range(n):
        for j in range(i + 1, n):
            out = out * (ExactPoly.variable(n, j) - ExactPoly.variable(n, i))
    return out


def alternant_vandermonde_sign(n: int) -> int:
    """Sign relating the two conventions: alternant(delta, n) == sign * vandermonde(n)."""
    return -1 if (n * (n - 1) // 2) & 1 else 1


@lru_cache(maxsize=None)
def alternant_delta(n: int) -> ExactPoly:
    return alternant(staircase(n), n)


def _transposition(n: int, k: int):
    sigma = list(range(n))
    sigma[k], sigma[k + 1] = sigma[k + 1], sigma[k]
    return sigma


def is_symmetric(f: ExactPoly) -> bool:
    return all(f.permute_vars(_transposition(f.n_vars, k)) == f for k in range(f.n_vars - 1))


def is_alternating(f: ExactPoly) -> bool:
    return all(
        f.permute_vars(_transposition(f.n_vars, k)) == -f for k in range(f.n_vars - 1)
    )


def alternating_projection(f: ExactPoly) -> ExactPoly:
    """P F = (1/n!) sum_sigma sgn(sigma) F(z_{sigma^-1(1)}, ..., z_{sigma^-1(n)})."""
    n = f.n_vars
    acc = ExactPoly.zero(n)
    for perm in itertools.permutations(range(n)):
        g = f.permute_vars(perm)
        acc = acc + (g if _perm_sign(perm) == 1 else -g)
    return acc * Fraction(1, math.factorial(n))


def divide_by_linear(f: ExactPoly, i: int, j: int) -> ExactPoly:
    """Exact quotient F / (x_i - x_j); raises if the division leaves a remainder.

    Synthetic division in x_i about the root x_i = x_j: the remainder is
    F restricted to x_i = x_j, which vanishes iff the factor divides F.
    """
    n = f.n_vars
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise DimensionMismatchError(f"bad variable pair ({i}, {j}) for n_vars={n}")
    if f.is_zero:
        return f
    by_deg: dict[int, dict] = {}
    for mi, c in f.terms.items():
        k = mi.get(i)
        rest = mi.sub(MultiIndex.single(i, k)) if k else mi
        by_deg.setdefault(k, {})[rest] = c
    top = max(by_deg)
    coeffs = [
        ExactPoly(n, by_deg.get(k, {})) for k in range(top + 1)
    ]
    xj = ExactPoly.variable(n, j)
    quots = [ExactPoly.zero(n)] * top
    carry = coeffs[top]
    for k in range(top - 1, -1, -1):
        quots[k] = carry
        carry = coeffs[k] + xj * carry
    if not carry.is_zero:
        raise ExactDivisionError(f"(x{i} - x{j}) does not divide the polynomial")
    out = {}
    for k, q in enumerate(quots):
        if k == 0:
            out.update(q.terms)
            continue
        shift = MultiIndex.single(i, k)
        for mi, c in q.terms.items():
            out[mi * shift] = c
    return ExactPoly(n, out)


def divide_by_alternant_delta(f: ExactPoly, n: int) -> ExactPoly:
    """Exact quotient F / a_delta, dividing out each factor (x_i - x_j), i < j."""
    out = f.with_n_vars(n) if f.n_vars != n else f
    for i in range(n):
        for j in range(i + 1, n):
            out = divide_by_linear(out, i, j)
    return out


@lru_cache(maxsize=None)
def _schur_exact(parts: tuple, n: int) -> ExactPoly:
    lam = Partition(parts)
    return divide_by_alternant_delta(alternant(lam.plus_staircase(n), n), n)


def schur_exact(lam: Partition, n: int) -> ExactPoly:
    """s_lambda in n variables via the bialternant ratio a_{lambda+delta} / a_delta."""
    if lam.length > n:
        raise DimensionMismatchError(f"partition {lam} needs more than {n} variables")
    return _schur_exact(lam.parts, n)


# -- numeric Schur values ---------------------------------------------------------


def homogeneous_values(eigs, kmax: int):
    """h_0..h_kmax at the given points, by Newton's identities on power sums.

    Stable at coincident points, unlike the bialternant ratio.
    """
    import numpy as np

    pts = np.asarray(eigs, dtype=complex)
    p = [complex(np.sum(pts**k)) for k in range(1, kmax + 1)]
    h = [1.0 + 0j] * (kmax + 1)
    for k in range(1, kmax + 1):
        acc = 0j
        for i in range(1, k + 1):
            acc += p[i - 1] * h[k - i]
        h[k] = acc / k
    return h


def jacobi_trudi_indices(lam: Partition):
    """Row-major index matrix (lambda_i - i + j) of the h-determinant; -1 marks a zero."""
    ell = lam.length
    return [
        [lam.parts[i] - (i + 1) + (j + 1) for j in range(ell)]
        for i in range(ell)
    ]


def schur_numeric(lam: Partition, eigs) -> complex:
    """s_lambda at complex points, via det[h_{lambda_i - i + j}]."""
    if lam.length > len(eigs):
        raise DimensionMismatchError(
            f"partition {lam} needs more than {len(eigs)} variables"
        )
    ell = lam.length
    if ell == 0:
        return 1.0 + 0j
    h = homogeneous_values(eigs, lam.parts[0] + ell - 1)
    if ell == 1:
        return h[lam.parts[0]]
    import numpy as np

    m = np.array(
        [[h[idx] if idx >= 0 else 0j for idx in row] for row in jacobi_trudi_indices(lam)],
        dtype=complex,
    )
    return complex(np.linalg.det(m))


# -- power-sum expansion -------------------------------------------------------------


def zee(rho: Partition) -> int:
    """z_rho = prod_k k^{m_k} m_k! for multiplicities m_k of the parts."""
    out = 1
    mult: dict[int, int] = {}
    for p in rho.parts:
        mult[p] = mult.get(p, 0) + 1
    for k, m in mult.items():
        out *= k**m * math.factorial(m)
    return out


@lru_cache(maxsize=None)
def character(shape: tuple, rho: tuple) -> int:
    """Symmetric-group character chi^shape on the class rho, |shape| = |rho|.

    Border-strip recursion on beta-numbers: removing a strip of size r moves
    one bead b to b - r; the sign counts the beads jumped over.
    """
    if not rho:
        return 1 if not shape else 0
    ell = len(shape)
    beads = [shape[i] + (ell - 1 - i) for i in range(ell)]
    bead_set = set(beads)
    r = rho[0]
    rest = rho[1:]
    total = 0
    for b in beads:
        lo = b - r
        if lo < 0 or lo in bead_set:
            continue
        jumped = sum(1 for x in beads if lo < x < b)
        new = sorted((bead_set - {b}) | {lo}, reverse=True)
        sub = tuple(
            p for i, v in enumerate(new) if (p := v - (ell - 1 - i)) > 0
        )
        total += (-1 if jumped & 1 else 1) * character(sub, rest)
    return total


class GeneratorPoly:
    """Polynomial in abstract weighted generators g_1, g_2, ... (deg g_k = k).

    Thin wrapper over ExactPoly with variable id k-1 standing for g_k; the
    stored polynomial is always trimmed to the highest generator in use, so
    equal values compare and hash equal regardless of how they were built.
    """

    symbol = "g"
    __slots__ = ("poly",)

    def __init__(self, poly: ExactPoly):
        object.__setattr__(self, "poly", poly.with_n_vars(max(poly.min_n_vars(), 1)))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def zero(cls):
        return cls(ExactPoly.zero(1))

    @classmethod
    def const(cls, c):
        return cls(ExactPoly.const(1, c))

    @classmethod
    def one(cls):
        return cls.const(1)

    @classmethod
    def gen(cls, k: int):
        """The generator g_k, k >= 1."""
        if k < 1:
            raise ValueError("generator index must be >= 1")
        return cls(ExactPoly.variable(k, k - 1))

    @classmethod
    def from_terms(cls, terms):
        """terms: iterable of (dict generator-index -> exponent, coeff)."""
        acc: dict[MultiIndex, GaussianRational] = {}
        top = 1
        for exps, c in terms:
            mi = MultiIndex((k - 1, e) for k, e in exps.items())
            top = max(top, mi.max_var() + 1)
            c = GaussianRational.coerce(c)
            prev = acc.get(mi)
            acc[mi] = c if prev is None else prev + c
        return cls(ExactPoly(top, acc))

    @property
    def n_gens(self) -> int:
        return self.poly.n_vars

    @property
    def terms(self):
        return self.poly.terms

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def max_gen(self) -> int:
        """Largest generator index appearing; 0 for constants."""
        return max((mi.max_var() + 1 for mi in self.poly.terms), default=0)

    def weighted_degree(self) -> int:
        """Total degree with g_k weighing k; -1 for the zero value."""
        if self.poly.is_zero:
            return -1
        return max(
            sum((v + 1) * e for v, e in mi.exps) for mi in self.poly.terms
        )

    def coefficient(self, exps: dict) -> GaussianRational:
        return self.poly.coefficient(MultiIndex((k - 1, e) for k, e in exps.items()))

    def _aligned(self, other):
        m = max(self.poly.n_vars, other.poly.n_vars)
        return self.poly.with_n_vars(m), other.poly.with_n_vars(m)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = type(self).const(other)
        if not isinstance(other, GeneratorPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return type(self)(a + b)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(-self.poly)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = type(self).const(other)
        if not isinstance(other, GeneratorPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return type(self)(self.poly * other)
        if not isinstance(other, GeneratorPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return type(self)(a * b)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return type(self)(self.poly**k)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = type(self).const(other)
        if not isinstance(other, GeneratorPoly):
            return NotImplemented
        return self.poly.terms == other.poly.terms

    def __hash__(self):
        return hash(frozenset(self.poly.terms.items()))

    def __bool__(self):
        return bool(self.poly)

    def substitute_gens(self, images: dict, n_vars_out: int) -> ExactPoly:
        """Substitute g_k by images[k] (ExactPoly values over the target space)."""
        return self.poly.substitute(
            {k - 1: img for k, img in images.items()}, n_vars_out
        )

    def substitute_powers(self, n: int) -> ExactPoly:
        """Realize g_k as the power sum x_1^k + ... + x_n^k."""
        images = {
            k: ExactPoly(
                n, {MultiIndex.single(i, k): QQI_ONE for i in range(n)}
            )
            for k in range(1, self.max_gen() + 1)
        }
        return self.substitute_gens(images, n)

    def items_canonical(self):
        """Terms ordered by weighted degree, then exponent vector, descending."""
        nv = self.poly.n_vars

        def key(kv):
            mi = kv[0]
            return (sum((v + 1) * e for v, e in mi.exps), mi.dense(nv))

        return sorted(self.poly.terms.items(), key=key, reverse=True)

    def to_text(self) -> str:
        """Canonical text form, e.g. `(3/2, 0) t1^2 t3`."""
        if self.poly.is_zero:
            return "0"
        parts = []
        for mi, c in self.items_canonical():
            mono = " ".join(
                f"{self.symbol}{v + 1}^{e}" if e > 1 else f"{self.symbol}{v + 1}"
                for v, e in mi.exps
            )
            parts.append(f"{c.pair_str()} {mono}".rstrip())
        return " + ".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({self.to_text()!r})"


class PowerSumPoly(GeneratorPoly):
    """Polynomial in the power-sum generators p_1, p_2, ..."""

    symbol = "p"
    __slots__ = ()


@lru_cache(maxsize=None)
def _schur_to_power_sums(parts: tuple) -> PowerSumPoly:
    lam = Partition(parts)
    w = lam.weight
    if w == 0:
        return PowerSumPoly.one()
    terms = []
    for rho in partitions_of_weight(w, w):
        chi = character(lam.parts, rho.parts)
        if chi == 0:
            continue
        mult: dict[int, int] = {}
        for p in rho.parts:
            mult[p] = mult.get(p, 0) + 1
        terms.append((mult, Fraction(chi, zee(rho))))
    return PowerSumPoly.from_terms(terms)


def schur_to_power_sums(lam: Partition) -> PowerSumPoly:
    """s_lambda = sum_rho chi^lambda(rho) p_rho / z_rho over classes rho of |lambda|."""
    return _schur_to_power_sums(lam.parts)


# -- scaled polynomials and normalization constants --------------------------------------


class Scaled:
    """An exact radical multiple  scale * poly  of a polynomial value.

    The radical never touches the coefficients; identities that need it
    squared out compare Scaled values componentwise after normalizing the
    radicand, which `RadicalScalar` guarantees is squarefree.
    """

    __slots__ = ("scale", "poly")

    def __init__(self, scale, poly):
        scale = RadicalScalar.coerce(scale)
        if scale.is_zero and poly:
            poly = poly * 0
        if not poly:
            scale = RadicalScalar(1)
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "poly", poly)

    def __setattr__(self, name, value):
        raise AttributeError("Scaled is immutable")

    @classmethod
    def of(cls, x) -> "Scaled":
        if isinstance(x, Scaled):
            return x
        return cls(RadicalScalar(1), x)

    @property
    def is_zero(self) -> bool:
        return not self.poly

    def __mul__(self, other):
        if isinstance(other, Scaled):
            return Scaled(self.scale * other.scale, self.poly * other.poly)
        if isinstance(other, RadicalScalar):
            return Scaled(self.scale * other, self.poly)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return Scaled(self.scale * GaussianRational.coerce(other), self.poly)
        return Scaled(self.scale, self.poly * other)

    __rmul__ = __mul__

    def __neg__(self):
        return Scaled(-self.scale, self.poly)

    def map_poly(self, fn) -> "Scaled":
        return Scaled(self.scale, fn(self.poly))

    def eval_complex(self, point) -> complex:
        return self.scale.to_complex() * self.poly.eval_complex(point)

    def __eq__(self, other):
        if not isinstance(other, Scaled):
            other = Scaled.of(other)
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if self.scale.radicand != other.scale.radicand:
            # nonzero Gaussian-rational coefficient vectors cannot bridge
            # distinct squarefree radicands
            return False
        return self.poly * self.scale.coeff == other.poly * other.scale.coeff

    def __hash__(self):
        raise TypeError("Scaled is not hashable")

    def __repr__(self):
        return f"Scaled({self.scale!r}, {self.poly!r})"

    def __str__(self):
        return f"{self.scale} * ({self.poly})"


def scaled_bargmann(a: Scaled, b: Scaled) -> RadicalScalar:
    """<s1 P1, s2 P2> = conj(s1) s2 <P1, P2> under the Bargmann pairing."""
    inner = bargmann_inner(a.poly, b.poly)
    return a.scale.conjugate() * b.scale * inner


def d_lambda(lam: Partition, n: int) -> Scaled:
    """Normalized alternant a_{lambda+delta} / sqrt(n! (lambda+delta)!)."""
    mu = lam.plus_staircase(n)
    scale = RadicalScalar.inv_sqrt_of(math.factorial(n) * vector_factorial(mu))
    return Scaled(scale, alternant(mu, n))


def norm_const_c(n: int) -> RadicalScalar:
    """c with c^2 = 1 / prod_{p=1}^n p!; the scale of the restriction map."""
    return RadicalScalar.inv_sqrt_of(superfactorial(n))
