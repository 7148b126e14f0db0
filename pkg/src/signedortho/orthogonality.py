"""Moments of the signed weight, inner products, and a Gram-Schmidt oracle.

All integrals are relative to ``M_0 = int_{-1}^{1} (1-x^2)^alpha dx``, so
exact mode stays inside the rationals. Even moments of ``(1-x^2)^alpha``
satisfy ``M_{2s} / M_{2s-2} = (2s-1) / (2s+2alpha+1)`` (Beta integral);
odd moments vanish.

For the signed weight ``w(x) = x^(2q+1) (1-x^2)^alpha (1-x)``::

    m_k = int w(x) x^k dx = M_{2q+1+k}    (k odd)
                          = -M_{2q+2+k}   (k even)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .families import FamilyParams
from .numerics import Scalar, float_tolerance, is_exact, same_mode, to_mode
from .polynomials import Poly, mul


class QuasiDefinitenessError(ArithmeticError):
    """A leading Hankel determinant of the moment sequence vanished."""

    def __init__(self, index: int):
        super().__init__(f"moment functional is not quasi-definite: <p_{index}, p_{index}> = 0")
        self.index = index


@dataclass(frozen=True)
class MomentTable:
    """Relative even moments ``M_{2s}/M_0`` for s = 0..len-1."""

    alpha: Scalar
    relative_moments: tuple

    def even(self, power: int) -> Scalar:
        """``M_power / M_0``; zero for odd powers."""
        if power % 2:
            return self.relative_moments[0] * 0
        return self.relative_moments[power // 2]


def base_moments(alpha: Scalar, max_power: int) -> MomentTable:
    if not alpha > -1:
        raise ValueError(f"alpha must be > -1, got {alpha}")
    value = to_mode(1, alpha)
    table = [value]
    for s in range(1, max_power // 2 + 1):
        value = value * (2 * s - 1) / (2 * s + 2 * alpha + 1)
        table.append(value)
    return MomentTable(alpha, tuple(table))


def signed_moments(fp: FamilyParams, count: int) -> list[Scalar]:
    """``m_0 .. m_{count-1}`` of the signed weight (relative to M_0)."""
    table = base_moments(fp.alpha, 2 * fp.q + 2 + count)
    out = []
    for k in range(count):
        if k % 2:
            out.append(table.even(2 * fp.q + 1 + k))
        else:
            out.append(-table.even(2 * fp.q + 2 + k))
    return out


@dataclass
class InnerProduct:
    """Signed inner product with a moment cache that grows on demand."""

    fp: FamilyParams
    _moments: list = field(default_factory=list, repr=False)

    def moments(self, count: int) -> list[Scalar]:
        if len(self._moments) < count:
            self._moments = signed_moments(self.fp, max(count, 2 * len(self._moments)))
        return self._moments

    def __call__(self, p: Poly, r: Poly) -> Scalar:
        prod = mul(p, r)
        if prod.is_zero():
            return to_mode(0, self.fp.alpha)
        same_mode(prod.coeffs[0], self.fp.alpha)
        m = self.moments(len(prod.coeffs))
        return sum((c * m[k] for k, c in enumerate(prod.coeffs)), to_mode(0, self.fp.alpha))


def signed_inner(fp: FamilyParams, p: Poly, r: Poly) -> Scalar:
    """``int_{-1}^{1} w(x) p(x) r(x) dx / M_0``."""
    return InnerProduct(fp)(p, r)


@dataclass
class OrthogonalityReport:
    """Values ``<x^m, p>`` for m = 0..n, relative to M_0.

    ``passed`` is True iff every m < n gives zero and m = n does not.
    """

    n: int
    values: list
    passed: bool
    failing_m: int | None = None


def verify_orthogonality(
    fp: FamilyParams, p: Poly, n: int, tol: Scalar | None = None, inner: InnerProduct | None = None
) -> OrthogonalityReport:
    """Check ``<x^m, p> = k_n delta_{m,n}`` with ``k_n != 0`` for 0 <= m <= n.

    Exact scalars are compared with 0 exactly. For float scalars the default
    tolerance is a roundoff budget scaled by the largest coefficient of p.
    """
    if p.degree != n:
        raise ValueError(f"polynomial has degree {p.degree}, expected {n}")
    inner = inner or InnerProduct(fp)
    one = to_mode(1, fp.alpha)
    if tol is None and not is_exact(one):
        tol = float_tolerance(one, max(abs(c) for c in p.coeffs), slack_bits=32)
    values = [inner(Poly.monomial(m, one), p) for m in range(n + 1)]

    def zero(v):
        return v == 0 if tol is None else abs(v) <= tol

    failing = next((m for m in range(n) if not zero(values[m])), None)
    if failing is None and zero(values[n]):
        failing = n
    return OrthogonalityReport(n, values, failing is None, failing)


def gram_schmidt_oracle(fp: FamilyParams, n: int) -> list[Poly]:
    """Monic p_0..p_n orthogonal under the signed inner product.

    Classical Gram-Schmidt on the monomials 1, x, ..., x^n, projecting out
    every earlier p_j (not just the last two), so nothing about the
    three-term structure is assumed. Raises :class:`QuasiDefinitenessError`
    when some ``<p_k, p_k>`` vanishes.
    """
    inner = InnerProduct(fp)
    inner.moments(2 * n + 2)
    one = to_mode(1, fp.alpha)
    basis: list[Poly] = []
    norms: list[Scalar] = []
    for k in range(n + 1):
        p = Poly.monomial(k, one)
        xk = p
        for pj, nj in zip(basis, norms):
            p = p - pj * (inner(xk, pj) / nj)
        norm = inner(p, p)
        if norm == 0:
            raise QuasiDefinitenessError(k)
        basis.append(p)
        norms.append(norm)
    return basis


def recovered_recurrence(fp: FamilyParams, polys: Sequence[Poly]) -> list[tuple[Scalar, Scalar | None]]:
    """``(beta_k, gamma_k)`` computed from an orthogonal family by inner products.

    beta_k = <x p_k, p_k> / <p_k, p_k>,  gamma_k = <p_k, p_k> / <p_{k-1}, p_{k-1}>
    (gamma_0 is None).
    """
    inner = InnerProduct(fp)
    one = to_mode(1, fp.alpha)
    x = Poly.monomial(1, one)
    out = []
    prev = None
    for p in polys:
        norm = inner(p, p)
        beta = inner(mul(x, p), p) / norm
        out.append((beta, None if prev is None else norm / prev))
        prev = norm
    return out


def expand_in_basis(p: Poly, basis: Sequence[Poly]) -> list[Scalar]:
    """Coefficients lambda_i with ``p = sum lambda_i basis[i]``.

    ``basis[i]`` must be monic of degree i; the triangular solve uses only
    coefficients, no inner products.
    """
    if p.degree >= len(basis):
        raise ValueError("basis too short for this polynomial")
    rest = p
    lambdas = [None] * (p.degree + 1)
    for i in range(p.degree, -1, -1):
        c = rest.coeff(i)
        if c == 0:
            c = to_mode(0, basis[0].coeffs[0])
        lambdas[i] = c
        if c != 0:
            rest = rest - basis[i] * c
    return lambdas


def partial_orthogonality_holds(fp: FamilyParams, p: Poly, n: int, inner: InnerProduct | None = None) -> bool:
    """``<x^k, p> = 0`` for k < n and ``<x^n, p> != 0`` (exact scalars)."""
    inner = inner or InnerProduct(fp)
    one = to_mode(1, fp.alpha)
    values = [inner(Poly.monomial(k, one), p) for k in range(n + 1)]
    return all(v == 0 for v in values[:n]) and values[n] != 0
