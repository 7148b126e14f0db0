"""Dense univariate polynomials over exact or float scalars."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .numerics import ModeError, Scalar, is_exact, mode_key, same_mode, to_mode


class ParityError(ValueError):
    pass


class DivisionError(ValueError):
    """Synthetic division left a nonzero remainder."""


def _normalize(coeffs: Iterable) -> tuple:
    out = []
    for c in coeffs:
        if isinstance(c, int) and not isinstance(c, bool):
            c = Fraction(c)
        out.append(c)
    if out:
        same_mode(*out)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class Poly:
    """Immutable polynomial with coefficients in ascending powers.

    The zero polynomial has no coefficients and is compatible with every mode.
    All other polynomials hold scalars of a single mode.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _normalize(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, k: int, like: Scalar = Fraction(1)) -> "Poly":
        zero = to_mode(0, like)
        return cls([zero] * k + [to_mode(1, like)])

    @classmethod
    def constant(cls, c: Scalar) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls, like: Scalar = Fraction(1)) -> "Poly":
        return cls.monomial(1, like)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Scalar:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def mode(self):
        return mode_key(self.coeffs[0]) if self.coeffs else None

    def coeff(self, k: int) -> Scalar | int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def _check(self, other: "Poly"):
        if self.coeffs and other.coeffs:
            same_mode(self.coeffs[0], other.coeffs[0])

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")

    def __call__(self, x: Scalar) -> Scalar:
        return eval_poly(self, x)

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(k) + other.coeff(k) for k in range(n))

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__


def eval_poly(p: Poly, x: Scalar) -> Scalar:
    """Horner evaluation."""
    if not p.coeffs:
        mode_key(x)
        return x * 0
    same_mode(p.coeffs[0], x)
    acc = p.coeffs[-1]
    for c in reversed(p.coeffs[:-1]):
        acc = acc * x + c
    return acc


def add(p: Poly, q: Poly) -> Poly:
    return p + q


def scale(p: Poly, c: Scalar) -> Poly:
    if isinstance(c, int) and not isinstance(c, bool):
        c = Fraction(c)
    if p.coeffs:
        same_mode(p.coeffs[0], c)
    return Poly(a * c for a in p.coeffs)


def mul(p: Poly, q: Poly) -> Poly:
    """Schoolbook product."""
    if not p.coeffs or not q.coeffs:
        return Poly()
    p._check(q)
    out = [p.coeffs[0] * 0] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(q.coeffs):
            out[i + j] += a * b
    return Poly(out)


def derivative(p: Poly) -> Poly:
    return Poly(k * p.coeffs[k] for k in range(1, len(p.coeffs)))


def shift_power(p: Poly, k: int) -> Poly:
    """Multiply by ``x**k``."""
    if not p.coeffs:
        return p
    return Poly([p.coeffs[0] * 0] * k + list(p.coeffs))


def even_tolerance_zeroes(p: Poly) -> Sequence[Scalar]:
    """Odd-index coefficients, with float roundoff (relative to the largest
    coefficient, at half the working precision) flushed to zero."""
    odd = list(p.coeffs[1::2])
    if not p.coeffs or is_exact(p.coeffs[0]):
        return odd
    ctx = p.coeffs[0].context
    cutoff = ctx.ldexp(1, -(ctx.prec // 2)) * max(abs(c) for c in p.coeffs)
    return [c if abs(c) > cutoff else c * 0 for c in odd]


def is_even(p: Poly) -> bool:
    return all(c == 0 for c in even_tolerance_zeroes(p))


def even_part_in_u(p: Poly) -> Poly:
    """For an even polynomial p, return Q with ``Q(x**2) == p(x)``."""
    if not is_even(p):
        raise ParityError(f"polynomial is not even: {p}")
    return Poly(p.coeffs[0::2])


def substitute_square(q: Poly) -> Poly:
    """Inverse of :func:`even_part_in_u`: returns ``q(x**2)``."""
    if not q.coeffs:
        return q
    zero = q.coeffs[0] * 0
    out = []
    for c in q.coeffs:
        out.extend([c, zero])
    return Poly(out[:-1])


def synthetic_division(p: Poly, r: Scalar) -> tuple[Poly, Scalar]:
    """Divide by ``(x - r)``; returns ``(quotient, remainder)``."""
    if not p.coeffs:
        return Poly(), r * 0
    same_mode(p.coeffs[0], r)
    quotient = []
    acc = p.coeffs[-1] * 0
    for c in reversed(p.coeffs):
        acc = acc * r + c
        quotient.append(acc)
    remainder = quotient.pop()
    return Poly(reversed(quotient)), remainder


def deflate_root(p: Poly, r: Scalar, tol: Scalar | None = None) -> Poly:
    """Return ``p / (x - r)``; the remainder must vanish (exactly, or within
    ``tol`` for float coefficients)."""
    quotient, remainder = synthetic_division(p, r)
    if is_exact(r) or tol is None:
        ok = remainder == 0
    else:
        ok = abs(remainder) <= tol
    if not ok:
        raise DivisionError(f"x - ({r}) does not divide {p}: remainder {remainder}")
    return quotient


def divmod_poly(p: Poly, d: Poly) -> tuple[Poly, Poly]:
    """Euclidean division ``p = d*quo + rem`` with ``deg rem < deg d``."""
    if d.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    p._check(d)
    rem = list(p.coeffs)
    dd = d.degree
    if len(rem) - 1 < dd:
        return Poly(), p
    quo = [d.leading * 0] * (len(rem) - dd)
    lead = d.leading
    for k in range(len(rem) - 1 - dd, -1, -1):
        c = rem[k + dd] / lead
        quo[k] = c
        if c == 0:
            continue
        for j, dc in enumerate(d.coeffs):
            rem[k + j] -= c * dc
    # the subtraction cancels the top coefficients exactly in exact mode; in
    # float mode they are set to zero explicitly
    return Poly(quo), Poly(rem[:dd])


def max_abs_coeff(p: Poly):
    return max((abs(c) for c in p.coeffs), default=Fraction(0))


__all__ = [
    "ModeError",
    "ParityError",
    "DivisionError",
    "Poly",
    "eval_poly",
    "add",
    "scale",
    "mul",
    "derivative",
    "shift_power",
    "is_even",
    "even_part_in_u",
    "substitute_square",
    "synthetic_division",
    "deflate_root",
    "divmod_poly",
    "max_abs_coeff",
]
