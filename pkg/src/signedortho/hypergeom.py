"""Terminating Gauss hypergeometric series and contiguous relations."""
from __future__ import annotations

from dataclasses import dataclass, field

from .numerics import (
    Scalar,
    binomial,
    is_exact,
    is_nonpositive_integer,
    pochhammer,
    same_mode,
    to_mode,
)


class HypergeometricError(ValueError):
    """Series does not terminate or hits a pole in the lower parameter."""


@dataclass(frozen=True)
class HypParams:
    """Parameters of 2F1(a, b; c; z) for a terminating series.

    ``termination`` is the degree m of the polynomial: the smaller ``|value|``
    among the upper parameters that are nonpositive integers.
    """

    a: Scalar
    b: Scalar
    c: Scalar
    termination: int = field(init=False, compare=False)

    def __post_init__(self):
        same_mode(self.a, self.b, self.c)
        uppers = [p for p in (self.a, self.b) if is_nonpositive_integer(p)]
        if not uppers:
            raise HypergeometricError(
                f"2F1({self.a}, {self.b}; {self.c}; z) does not terminate"
            )
        m = min(int(-p) for p in uppers)
        object.__setattr__(self, "termination", m)
        # (c)_k for k <= m only involves c .. c+m-1
        for k in range(m):
            if self.c + k == 0:
                raise HypergeometricError(
                    f"lower parameter c={self.c} gives (c)_{k + 1} = 0 within the truncation m={m}"
                )

    def shifted(self, da: int = 0, db: int = 0, dc: int = 0) -> "HypParams":
        return HypParams(self.a + da, self.b + db, self.c + dc)


def series_coefficients(p: HypParams) -> list[Scalar]:
    """Coefficients ``t_k = (a)_k (b)_k / (k! (c)_k)`` for k = 0..m."""
    t = to_mode(1, p.a)
    coeffs = [t]
    for k in range(p.termination):
        t = t * (p.a + k) * (p.b + k) / ((k + 1) * (p.c + k))
        coeffs.append(t)
    return coeffs


def eval_2f1_terminating(p: HypParams, z: Scalar) -> Scalar:
    """Sum the terminating series at ``z`` (nested, highest term first)."""
    same_mode(p.a, z)
    total = to_mode(0, z)
    for t in reversed(series_coefficients(p)):
        total = total * z + t
    return total


def eval_2f1_binomial_form(beta: Scalar, gamma: Scalar, m: int, z: Scalar) -> Scalar:
    """``sum_k C(m, k) (beta)_k / (gamma)_k (-z)^k``: the same polynomial as
    ``2F1(-m, beta; gamma; z)`` written with binomials. Used as a cross-check."""
    same_mode(beta, gamma, z)
    total = to_mode(0, z)
    for k in range(m + 1):
        total += binomial(m, k, z) * pochhammer(beta, k) / pochhammer(gamma, k) * (-z) ** k
    return total


def _relation_terms(relation_id: int, p: HypParams, z: Scalar):
    a, b, c = p.a, p.b, p.c
    one = to_mode(1, z)
    if relation_id == 1:
        return [
            (c - a - b, p),
            (a * (one - z), p.shifted(da=1)),
            (-(c - b), p.shifted(db=-1)),
        ]
    if relation_id == 2:
        return [
            (c - a - 1, p),
            (a, p.shifted(da=1)),
            (-(c - 1), p.shifted(dc=-1)),
        ]
    if relation_id == 3:
        return [
            (c * (one - z), p),
            (-c, p.shifted(da=-1)),
            ((c - b) * z, p.shifted(dc=1)),
        ]
    if relation_id == 4:
        return [
            (a - b, p),
            (-a, p.shifted(da=1)),
            (b, p.shifted(db=1)),
        ]
    if relation_id == 5:
        return [
            ((a - b) * (one - z), p),
            (c - a, p.shifted(da=-1)),
            (-(c - b), p.shifted(db=-1)),
        ]
    raise ValueError(f"relation_id must be in 1..5, got {relation_id}")


def contiguous_residual(relation_id: int, p: HypParams, z: Scalar) -> Scalar:
    """Left-hand side of contiguous relation ``relation_id`` at ``(p, z)``.

    The relations, with F = 2F1(a, b; c; z) and F(a+1) etc. its neighbours:

    1. (c-a-b) F + a(1-z) F(a+1) - (c-b) F(b-1)
    2. (c-a-1) F + a F(a+1) - (c-1) F(c-1)
    3. c(1-z) F - c F(a-1) + (c-b) z F(c+1)
    4. (a-b) F - a F(a+1) + b F(b+1)
    5. (a-b)(1-z) F + (c-a) F(a-1) - (c-b) F(b-1)

    Each one vanishes identically. Constructing a shifted parameter set that
    stops terminating or meets a pole raises :class:`HypergeometricError`.
    """
    same_mode(p.a, z)
    total = to_mode(0, z)
    for coef, params in _relation_terms(relation_id, p, z):
        total += coef * eval_2f1_terminating(params, z)
    return total


def contiguous_scale(relation_id: int, p: HypParams, z: Scalar) -> Scalar:
    """Largest absolute term in the residual sum, for float-mode tolerances."""
    scale = to_mode(0, z)
    for coef, params in _relation_terms(relation_id, p, z):
        for k, t in enumerate(series_coefficients(params)):
            scale = max(scale, abs(coef * t * z**k))
    return scale


def relation_holds(relation_id: int, p: HypParams, z: Scalar, slack_bits: int = 8) -> bool:
    r = contiguous_residual(relation_id, p, z)
    if is_exact(r):
        return r == 0
    prec = r.context.prec
    return abs(r) <= r.context.ldexp(1, -(prec - slack_bits)) * contiguous_scale(relation_id, p, z)
