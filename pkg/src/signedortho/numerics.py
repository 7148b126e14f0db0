"""Scalar backends and small combinatorial helpers.

Two arithmetic modes are supported:

* ``exact``: values are :class:`fractions.Fraction` (ints are accepted on
  input and promoted).
* ``float``: values are ``mpf`` numbers belonging to a private mpmath
  context with a fixed working precision.

Scalars never change mode implicitly. mpmath would happily add a Fraction to
an mpf, so every entry point that combines scalars calls :func:`same_mode`.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Union

from mpmath.ctx_mp import MPContext
from mpmath.ctx_mp_python import _mpf

Scalar = Union[Fraction, _mpf]

EXACT = "exact"
FLOAT = "float"
MIN_PRECISION_BITS = 64


class ModeError(TypeError):
    """Scalars from different arithmetic modes (or precisions) were combined."""


@functools.lru_cache(maxsize=None)
def float_context(precision_bits: int) -> MPContext:
    """Return the shared mpmath context for ``precision_bits``.

    Contexts are cached so that every scalar created at a given precision has
    the same ``mpf`` type; that type identity is what :func:`same_mode`
    compares.
    """
    if precision_bits < MIN_PRECISION_BITS:
        raise ValueError(f"precision_bits must be >= {MIN_PRECISION_BITS}, got {precision_bits}")
    ctx = MPContext()
    ctx.prec = precision_bits
    return ctx


def mode_key(x: Any) -> tuple[str, int | None]:
    """Classify a scalar as ``(EXACT, None)`` or ``(FLOAT, precision_bits)``."""
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return (EXACT, None)
    if isinstance(x, _mpf):
        return (FLOAT, x.context.prec)
    raise ModeError(f"not a Scalar: {x!r} ({type(x).__name__})")


def same_mode(*values: Any) -> tuple[str, int | None]:
    """Check that all values share one mode and return it."""
    key = None
    for v in values:
        k = mode_key(v)
        if key is None:
            key = k
        elif k != key:
            raise ModeError(f"mixed-mode arithmetic: {key} vs {k}")
    if key is None:
        raise ValueError("same_mode() needs at least one value")
    return key


def is_exact(x: Any) -> bool:
    return mode_key(x)[0] == EXACT


def to_mode(value: Any, like: Scalar) -> Scalar:
    """Lift an int or Fraction into the mode of ``like``.

    Only exact literals may be lifted; passing an mpf to be converted to
    exact mode is a mode error.
    """
    kind, prec = mode_key(like)
    if kind == EXACT:
        if isinstance(value, _mpf):
            raise ModeError("cannot convert a float-mode scalar to exact mode")
        return Fraction(value)
    if isinstance(value, _mpf):
        same_mode(value, like)
        return value
    ctx = like.context
    value = Fraction(value)
    return ctx.mpf(value.numerator) / value.denominator


def is_nonpositive_integer(x: Scalar) -> bool:
    if is_exact(x):
        x = Fraction(x)
        return x.denominator == 1 and x <= 0
    return bool(x.context.isint(x)) and x <= 0


def is_zero(x: Scalar, tol: Scalar | None = None) -> bool:
    """Exact test for exact scalars; ``|x| <= tol`` for float scalars."""
    if is_exact(x) or tol is None:
        return x == 0
    return abs(x) <= tol


def float_tolerance(x: Scalar, scale: Scalar | None = None, slack_bits: int = 8) -> Scalar:
    """Roundoff budget ``2^-(prec - slack_bits) * max(scale, 1)`` for a float scalar."""
    prec = x.context.prec
    eps = x.context.ldexp(1, -(prec - slack_bits))
    if scale is None:
        return eps
    return eps * max(abs(scale), x.context.mpf(1))


def pochhammer(a: Scalar, n: int) -> Scalar:
    """Rising factorial ``a (a+1) ... (a+n-1)``; equal to 1 when ``n == 0``."""
    if n < 0:
        raise ValueError(f"pochhammer needs n >= 0, got {n}")
    mode_key(a)
    result = to_mode(1, a)
    for k in range(n):
        result *= a + k
    return result


def binomial(m: int, k: int, like: Scalar = Fraction(1)) -> Scalar:
    """Binomial coefficient ``C(m, k)`` in the mode of ``like``."""
    if not 0 <= k <= m:
        raise ValueError(f"binomial needs 0 <= k <= m, got m={m}, k={k}")
    return to_mode(math.comb(m, k), like)


def parse_scalar(text: str, mode: str = EXACT, precision_bits: int = 256) -> Scalar:
    """Parse ``"3/4"``, ``"-0.5"`` or ``"2"`` into a scalar of the given mode.

    Exact mode only admits rationals; decimal strings are read exactly
    (``"0.1"`` is 1/10, not the nearest binary float).
    """
    text = text.strip()
    if mode == EXACT:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"exact mode needs a rational value, got {text!r}") from exc
    if mode != FLOAT:
        raise ValueError(f"unknown mode {mode!r}")
    ctx = float_context(precision_bits)
    if "/" in text:
        num, den = text.split("/", 1)
        return ctx.mpf(num) / ctx.mpf(den)
    return ctx.mpf(text)


@dataclass(frozen=True)
class ModeConfig:
    """Arithmetic mode chosen once per run."""

    mode: str = EXACT
    precision_bits: int = 256
    refine_tolerance: Fraction = Fraction(1, 2**60)
    _ctx: MPContext | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.mode not in (EXACT, FLOAT):
            raise ValueError(f"mode must be {EXACT!r} or {FLOAT!r}, got {self.mode!r}")
        if self.refine_tolerance <= 0:
            raise ValueError("refine_tolerance must be positive")
        if self.mode == FLOAT:
            object.__setattr__(self, "_ctx", float_context(self.precision_bits))

    def scalar(self, value: Any) -> Scalar:
        """Convert an int, Fraction or string into this mode."""
        if isinstance(value, str):
            return parse_scalar(value, self.mode, self.precision_bits)
        if self.mode == EXACT:
            if isinstance(value, _mpf):
                raise ModeError("float-mode scalar passed to an exact-mode config")
            return Fraction(value)
        if isinstance(value, _mpf):
            if value.context.prec != self.precision_bits:
                raise ModeError("scalar precision does not match the config")
            return value
        value = Fraction(value)
        return self._ctx.mpf(value.numerator) / value.denominator

    @property
    def tolerance(self) -> Scalar:
        return self.scalar(self.refine_tolerance)
