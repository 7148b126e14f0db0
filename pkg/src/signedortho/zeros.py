"""Certified real roots of P_n^{alpha,q} and checks of their arrangement.

Isolation uses Sturm sequences; in exact mode every count and every sign is
computed over the rationals, so enclosures are certified. Roots are never
obtained from an eigenvalue problem: the recurrence has negative gamma_n, so
its Jacobi matrix has no real symmetric form.

Structure used by :func:`find_zeros`:

* P_{2m} is even, so P_{2m}(x) = Q(x^2) with deg Q = m. Positive roots are
  isolated on (0, 1) by counting roots of Q in (a^2, b^2]; negative roots are
  their mirror images.
* P_{2m+1} = (1+x) * (even cofactor), so -1 is checked by exact evaluation
  and deflated before the even case applies.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .families import FamilyParams, p_poly_ttrr
from .numerics import Scalar, float_tolerance, is_exact, to_mode
from .polynomials import (
    Poly,
    deflate_root,
    derivative,
    divmod_poly,
    even_part_in_u,
    eval_poly,
    max_abs_coeff,
    mul,
    substitute_square,
)


class CertificationError(ArithmeticError):
    """A computed fact contradicts what the zero properties predict."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class NotSquarefreeError(CertificationError):
    pass


class Structural(str, Enum):
    AT_MINUS_ONE = "at_minus_one"
    AT_ZERO = "at_zero"


@dataclass(frozen=True)
class Root:
    lo: Scalar
    hi: Scalar
    refined: Scalar
    structural: Structural | None = None

    @property
    def width(self) -> Scalar:
        return self.hi - self.lo

    def mirrored(self) -> "Root":
        return Root(-self.hi, -self.lo, -self.refined, self.structural)


@dataclass
class RootSet:
    """Roots in ascending order. ``source`` is ``(alpha, q, n)`` when the
    polynomial came from the family, otherwise None."""

    roots: list[Root]
    degree: int
    tolerance: Scalar
    source: tuple | None = None

    @property
    def structural_roots(self) -> list[Root]:
        return [r for r in self.roots if r.structural is not None]

    @property
    def values(self) -> list[Scalar]:
        return [r.refined for r in self.roots]

    def __len__(self):
        return len(self.roots)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_evaluator(p: Poly):
    """Return ``t -> sign(p(t))``.

    For exact polynomials the denominators are cleared once and the sign at
    ``t = num/den`` comes from the integer form ``sum c_i num^i den^(d-i)``,
    which avoids Fraction normalisation in the bisection loops.
    """
    if p.is_zero():
        return lambda t: 0
    if not is_exact(p.coeffs[0]):
        return lambda t: _sign(eval_poly(p, t))
    lcm = 1
    for c in p.coeffs:
        lcm = math.lcm(lcm, c.denominator)
    ints = [int(c * lcm) for c in reversed(p.coeffs)]

    def sign_at(t):
        t = Fraction(t)
        num, den = t.numerator, t.denominator
        acc = ints[0]
        power = 1
        for c in ints[1:]:
            power *= den
            acc = acc * num + c * power
        return _sign(acc)

    return sign_at


def _clean(p: Poly, reference: Poly) -> Poly:
    """Flush float roundoff in a Sturm remainder to zero."""
    if p.is_zero() or is_exact(p.coeffs[0]):
        return p
    ctx = p.coeffs[0].context
    cutoff = ctx.ldexp(1, -(ctx.prec // 2)) * max_abs_coeff(reference)
    return Poly(c if abs(c) > cutoff else c * 0 for c in p.coeffs)


class SturmChain:
    """Sturm sequence p, p', -rem(...), ... for a squarefree polynomial."""

    def __init__(self, p: Poly):
        if p.degree < 1:
            raise ValueError("Sturm chain needs a polynomial of degree >= 1")
        chain = [p, derivative(p)]
        while True:
            _, rem = divmod_poly(chain[-2], chain[-1])
            rem = _clean(rem, chain[-2])
            if rem.is_zero():
                break
            chain.append(-rem)
        gcd = chain[-1]
        if gcd.degree > 0:
            raise NotSquarefreeError(f"gcd(p, p') has degree {gcd.degree}; p = {p}")
        self.chain = chain
        self.poly = p
        self._signs = [sign_evaluator(q) for q in chain]

    def variations_at(self, t: Scalar) -> int:
        signs = [s for s in (sign(t) for sign in self._signs) if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def variations_at_infinity(self, positive: bool) -> int:
        signs = []
        for q in self.chain:
            s = _sign(q.leading)
            if not positive and q.degree % 2:
                s = -s
            signs.append(s)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count(self, a: Scalar, b: Scalar) -> int:
        """Distinct real roots in ``(a, b]``."""
        return self.variations_at(a) - self.variations_at(b)

    def count_all(self) -> int:
        return self.variations_at_infinity(False) - self.variations_at_infinity(True)


def sturm_count(p: Poly, a: Scalar, b: Scalar) -> int:
    """Number of distinct real roots of a squarefree ``p`` in ``(a, b]``."""
    return SturmChain(p).count(a, b)


def _default_tolerance(like: Scalar) -> Scalar:
    return to_mode(Fraction(1, 2**60), like)


def _isolate(count, lo, hi, total, sign_at) -> list[tuple]:
    """Split (lo, hi] until each piece holds one root.

    ``count(a, b)`` counts roots in (a, b]; ``sign_at(t)`` is the sign of the
    polynomial, used to keep split points off exact roots.
    """
    done = []
    stack = [(lo, hi, total)]
    while stack:
        a, b, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            done.append((a, b))
            continue
        mid = (a + b) / 2
        step = (b - a) / 8
        while sign_at(mid) == 0:
            mid += step
            step /= 2
        left = count(a, mid)
        stack.append((mid, b, k - left))
        stack.append((a, mid, left))
    done.sort(key=lambda ab: ab[0])
    return done


def _refine(a, b, sign_at, tol, newton_poly: Poly | None = None) -> Root:
    """Bisect an isolating interval until its width is at most ``tol``.

    In float mode the midpoint is then polished by three Newton steps on
    ``newton_poly``, kept only if the result stays in the enclosure.
    """
    fa = sign_at(a)
    fb = sign_at(b)
    if fb == 0:
        return Root(b, b, b)
    if fa == 0 or fa == fb:
        raise CertificationError(f"no sign change on isolating interval ({a}, {b}]")
    while b - a > tol:
        mid = (a + b) / 2
        fm = sign_at(mid)
        if fm == 0:
            return Root(mid, mid, mid)
        if fm == fa:
            a = mid
        else:
            b = mid
    refined = (a + b) / 2
    if newton_poly is not None and not is_exact(refined):
        dp = derivative(newton_poly)
        x = refined
        for _ in range(3):
            d = eval_poly(dp, x)
            if d == 0:
                break
            x = x - eval_poly(newton_poly, x) / d
        if a <= x <= b:
            refined = x
    return Root(a, b, refined)


def real_roots(p: Poly, tol: Scalar | None = None) -> RootSet:
    """All real roots of a squarefree polynomial, ascending.

    Generic path (no parity structure): isolation on the Cauchy bound
    interval.
    """
    if p.degree < 1:
        return RootSet([], max(p.degree, 0), tol if tol is not None else Fraction(0))
    lead = p.leading
    tol = tol if tol is not None else _default_tolerance(lead)
    chain = SturmChain(p)
    bound = 1 + max(abs(c / lead) for c in p.coeffs[:-1])
    lo = -bound
    while eval_poly(p, lo) == 0:
        lo -= 1
    total = chain.count_all()
    sign_at = sign_evaluator(p)
    intervals = _isolate(chain.count, lo, bound, total, sign_at)
    roots = [_refine(a, b, sign_at, tol, p) for a, b in intervals]
    return RootSet(roots, p.degree, tol)


def positive_roots_of_even(q_u: Poly, tol: Scalar) -> list[Root]:
    """Positive roots x of ``Q(x^2)``, where ``Q = q_u`` is written in ``u = x^2``.

    Every root of Q must be real, simple and strictly inside (0, 1);
    otherwise :class:`CertificationError` is raised.
    """
    m = q_u.degree
    if m < 1:
        return []
    one = to_mode(1, q_u.leading)
    zero = one * 0
    chain = SturmChain(q_u)
    q0, q1 = eval_poly(q_u, zero), eval_poly(q_u, one)
    total = chain.count_all()
    inside = chain.count(zero, one)
    if total != m or inside != m or q0 == 0 or q1 == 0:
        raise CertificationError(
            f"expected {m} simple roots of Q strictly inside (0, 1); "
            f"found {total} real, {inside} in (0, 1], Q(0)={q0}, Q(1)={q1}"
        )
    full = substitute_square(q_u)
    sign_at = sign_evaluator(full)
    count = lambda a, b: chain.count(a * a, b * b)
    intervals = _isolate(count, zero, one, m, sign_at)
    return [_refine(a, b, sign_at, tol, full) for a, b in intervals]


def find_zeros(fp: FamilyParams, n: int, tol: Scalar | None = None, poly: Poly | None = None) -> RootSet:
    """Certified zeros of P_n^{alpha,q}.

    For odd n the root -1 is verified by exact evaluation (flagged
    ``AT_MINUS_ONE``) and deflated. The remaining even polynomial must have
    all its ``n // 2`` squared roots in (0, 1); anything else raises
    :class:`CertificationError`.
    """
    p = poly if poly is not None else p_poly_ttrr(fp, n)
    one = to_mode(1, fp.alpha)
    tol = tol if tol is not None else _default_tolerance(one)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    roots: list[Root] = []
    even = p
    if n % 2:
        minus_one = -one
        value = eval_poly(p, minus_one)
        ptol = None if is_exact(one) else float_tolerance(one, max_abs_coeff(p), slack_bits=32)
        if not (value == 0 if ptol is None else abs(value) <= ptol):
            raise CertificationError(f"P_{n}(-1) = {value}, expected 0")
        even = deflate_root(p, minus_one, ptol)
        roots.append(Root(minus_one, minus_one, minus_one, Structural.AT_MINUS_ONE))
    q_u = even_part_in_u(even)
    positive = positive_roots_of_even(q_u, tol)
    roots.extend(r.mirrored() for r in reversed(positive))
    roots.extend(positive)
    if len(roots) != n:
        raise CertificationError(f"found {len(roots)} roots for degree {n}")
    return RootSet(roots, n, tol, (fp.alpha, fp.q, n))


@dataclass
class InterlacingResult:
    interlaces: bool
    witness: tuple[Root, Root] | None
    gap_counts: list[int] = field(default_factory=list)


def _check_refined(rs: RootSet):
    for r in rs.roots:
        if r.width > rs.tolerance:
            raise ValueError(f"root enclosure [{r.lo}, {r.hi}] wider than tolerance {rs.tolerance}")
    for a, b in zip(rs.roots, rs.roots[1:]):
        if not a.hi < b.lo:
            raise ValueError(f"overlapping enclosures [{a.lo}, {a.hi}] and [{b.lo}, {b.hi}]")


def check_interlacing(rs_lo: RootSet, rs_hi: RootSet) -> InterlacingResult:
    """Do the roots of the lower-degree polynomial strictly interlace those of
    the higher-degree one?

    Interlacing means every open gap between consecutive roots of ``rs_hi``
    holds exactly one root of ``rs_lo``. When it fails, the witness is a gap
    holding no root of ``rs_lo``, preferring a gap symmetric about 0, or else
    the first gap whose count differs from one.
    """
    if rs_hi.degree != rs_lo.degree + 1:
        raise ValueError(
            f"degrees must differ by one, got {rs_lo.degree} and {rs_hi.degree}"
        )
    _check_refined(rs_lo)
    _check_refined(rs_hi)
    for lo in rs_lo.roots:
        for hi in rs_hi.roots:
            if not (lo.hi < hi.lo or hi.hi < lo.lo):
                raise ValueError(
                    f"enclosures [{lo.lo}, {lo.hi}] and [{hi.lo}, {hi.hi}] overlap; refine further"
                )
    gaps = list(zip(rs_hi.roots, rs_hi.roots[1:]))
    counts = [
        sum(1 for r in rs_lo.roots if left.hi < r.lo and r.hi < right.lo) for left, right in gaps
    ]
    if all(c == 1 for c in counts):
        return InterlacingResult(True, None, counts)
    empty = [g for g, c in zip(gaps, counts) if c == 0]
    symmetric = [g for g in empty if g[0].lo == -g[1].hi and g[0].hi == -g[1].lo]
    if symmetric:
        witness = symmetric[0]
    elif empty:
        witness = empty[0]
    else:
        witness = next(g for g, c in zip(gaps, counts) if c != 1)
    return InterlacingResult(False, witness, counts)


def largest_zero_chain(alpha: Scalar, q: int, n: int, tol: Scalar | None = None) -> list[Root]:
    """Largest zeros of P_{2n-2k}^{alpha+k, q+k} for k = 0..n-1.

    The values must strictly decrease in k (certified by disjoint, ordered
    enclosures); a violation raises :class:`CertificationError`.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    chain = []
    for k in range(n):
        rs = find_zeros(FamilyParams(alpha + k, q + k), 2 * n - 2 * k, tol)
        chain.append(rs.roots[-1])
    for k, (a, b) in enumerate(zip(chain, chain[1:])):
        if not b.hi < a.lo:
            raise CertificationError(
                f"largest zeros not strictly decreasing at k={k}: {a.refined} vs {b.refined}",
                chain,
            )
    return chain


@dataclass
class ZeroMapReport:
    """Zeros of P_{2n+1}^{alpha+k, q+l} against {-1} and zeros of P_{2n}^{alpha+k+1, q+l}."""

    params: tuple
    residual_zero: bool
    odd_roots: RootSet
    even_roots: RootSet
    max_deviation: Scalar
    passed: bool


def odd_even_zero_map(
    alpha: Scalar, q: int, n: int, k: int = 0, l: int = 0, tol: Scalar | None = None
) -> ZeroMapReport:
    """Check x_{2n+1,1} = -1 and x_{2n+1,m} = x_{2n,m-1}^{+1 shift} root by root."""
    odd_fp = FamilyParams(alpha + k, q + l)
    even_fp = FamilyParams(alpha + k + 1, q + l)
    p_odd = p_poly_ttrr(odd_fp, 2 * n + 1)
    p_even = p_poly_ttrr(even_fp, 2 * n)
    one = to_mode(1, alpha)
    residual = p_odd - mul(Poly([one, one]), p_even)
    if is_exact(one):
        residual_zero = residual.is_zero()
    else:
        residual_zero = residual.is_zero() or max_abs_coeff(residual) <= float_tolerance(
            one, max_abs_coeff(p_odd), 32
        )
    odd_rs = find_zeros(odd_fp, 2 * n + 1, tol, p_odd)
    even_rs = find_zeros(even_fp, 2 * n, tol, p_even)
    first = odd_rs.roots[0]
    matched = first.structural is Structural.AT_MINUS_ONE and first.refined == -1
    deviation = one * 0
    for a, b in zip(odd_rs.roots[1:], even_rs.roots):
        deviation = max(deviation, abs(a.refined - b.refined))
        if is_exact(one):
            matched = matched and (a.lo, a.hi) == (b.lo, b.hi)
    if not is_exact(one):
        matched = matched and deviation <= odd_rs.tolerance
    matched = matched and len(odd_rs) == len(even_rs) + 1
    report = ZeroMapReport(
        (alpha, q, n, k, l), residual_zero, odd_rs, even_rs, deviation, residual_zero and matched
    )
    if not report.passed:
        raise CertificationError(f"odd/even zero map failed for {report.params}", report)
    return report


@dataclass
class CriticalPointReport:
    """Zeros of P_{n-2}^{alpha+1,q+1} in the gaps between consecutive
    positive zeros of P_n^{alpha,q}."""

    n: int
    gaps: list[tuple[Root, Root]]
    counts: list[int]
    passed: bool


def critical_point_check(fp: FamilyParams, n: int, tol: Scalar | None = None) -> CriticalPointReport:
    """Each gap between consecutive positive zeros of P_n must contain exactly
    one zero of P_{n-2}^{alpha+1,q+1} (n even, n >= 2)."""
    if n < 2 or n % 2:
        raise ValueError(f"critical_point_check needs an even n >= 2, got {n}")
    rs = find_zeros(fp, n, tol)
    positive = [r for r in rs.roots if r.lo > 0]
    gaps = list(zip(positive, positive[1:]))
    inner_poly = p_poly_ttrr(fp.shift(1, 1), n - 2)
    counts = []
    if inner_poly.degree >= 1:
        q_u = even_part_in_u(inner_poly)
        chain = SturmChain(q_u) if q_u.degree >= 1 else None
        for left, right in gaps:
            # a root inside an enclosure would make the gap count ambiguous
            for r in (left, right):
                if chain.count(r.lo * r.lo, r.hi * r.hi) or eval_poly(q_u, r.lo * r.lo) == 0:
                    raise CertificationError(
                        f"zero of P_{n - 2}^(alpha+1,q+1) inside enclosure [{r.lo}, {r.hi}]"
                    )
            counts.append(chain.count(left.hi * left.hi, right.lo * right.lo))
    else:
        counts = [0 for _ in gaps]
    report = CriticalPointReport(n, gaps, counts, all(c == 1 for c in counts))
    if not report.passed:
        raise CertificationError(f"gap counts {counts} for n={n}", report)
    return report
