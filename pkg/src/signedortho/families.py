"""The signed-weight family P_n^{alpha,q} and generalized Gegenbauer polynomials.

P_n^{alpha,q} is the monic family orthogonal on [-1, 1] against
``x^(2q+1) (1-x^2)^alpha (1-x)``; GG_n^{alpha,mu} is monic and orthogonal
against ``|x|^mu (1-x^2)^alpha``. Three constructions are provided:

* the closed-form three-term recurrence (:func:`p_poly_ttrr`),
* the terminating hypergeometric expansion (:func:`p_poly_hyper`,
  :func:`gg_poly`),
* Gram-Schmidt on moments, in :mod:`signedortho.orthogonality`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .hypergeom import HypParams, series_coefficients
from .numerics import ModeError, Scalar, is_exact, mode_key, pochhammer, to_mode
from .polynomials import Poly, derivative, mul, scale, shift_power


@dataclass(frozen=True)
class FamilyParams:
    alpha: Scalar
    q: int

    def __post_init__(self):
        alpha = self.alpha
        if isinstance(alpha, int) and not isinstance(alpha, bool):
            alpha = Fraction(alpha)
            object.__setattr__(self, "alpha", alpha)
        mode_key(alpha)
        if not alpha > -1:
            raise ValueError(f"alpha must be > -1, got {alpha}")
        if isinstance(self.q, bool) or not isinstance(self.q, int) or self.q < 0:
            raise ValueError(f"q must be a nonnegative integer, got {self.q!r}")

    def shift(self, d_alpha: int = 0, d_q: int = 0) -> "FamilyParams":
        return FamilyParams(self.alpha + d_alpha, self.q + d_q)

    def gg(self, d_alpha: int = 0) -> "GGParams":
        """GG parameters (alpha + d_alpha, 2q + 2) paired with this family."""
        return GGParams(self.alpha + d_alpha, to_mode(2 * self.q + 2, self.alpha))


@dataclass(frozen=True)
class GGParams:
    alpha: Scalar
    mu: Scalar

    def __post_init__(self):
        for name in ("alpha", "mu"):
            v = getattr(self, name)
            if isinstance(v, int) and not isinstance(v, bool):
                object.__setattr__(self, name, Fraction(v))
        if mode_key(self.alpha) != mode_key(self.mu):
            raise ModeError("alpha and mu must share a mode")
        if not (self.alpha > -1 and self.mu > -1):
            raise ValueError(f"GG parameters need alpha > -1 and mu > -1, got {self.alpha}, {self.mu}")


@dataclass(frozen=True)
class RecurrencePair:
    index: int
    beta: Scalar
    gamma: Scalar | None  # None at index 0, where the recurrence needs no gamma


def ttrr_beta(fp: FamilyParams, n: int) -> Scalar:
    if n < 0:
        raise ValueError("n must be >= 0")
    return to_mode(-1 if n % 2 == 0 else 1, fp.alpha)


def ttrr_gamma(fp: FamilyParams, n: int) -> Scalar:
    """Closed-form gamma_n, n >= 1. Strictly negative for alpha > -1."""
    if n < 1:
        raise ValueError(f"gamma_n is only defined for n >= 1, got {n}")
    a, q = fp.alpha, fp.q
    m, odd = divmod(n, 2)
    if odd:
        return -2 * (m + a + 1) * (2 * m + 2 * a + 2 * q + 3) / (
            (4 * m + 2 * a + 2 * q + 3) * (4 * m + 2 * a + 2 * q + 5)
        )
    return -2 * m * (2 * m + 2 * q + 1) / (
        (4 * m + 2 * a + 2 * q + 1) * (4 * m + 2 * a + 2 * q + 3)
    )


def recurrence(fp: FamilyParams, n_max: int) -> list[RecurrencePair]:
    return [
        RecurrencePair(k, ttrr_beta(fp, k), ttrr_gamma(fp, k) if k else None)
        for k in range(n_max + 1)
    ]


def p_family_ttrr(
    fp: FamilyParams, n: int, gamma_shift: Mapping[int, Scalar] | None = None
) -> list[Poly]:
    """P_0 .. P_n from the recurrence.

    ``gamma_shift`` adds a perturbation to selected gamma_k; it exists for
    negative-control runs and is never used by the library itself.
    """
    one = to_mode(1, fp.alpha)
    x = Poly([one * 0, one])
    polys = [Poly([one])]
    if n >= 1:
        polys.append(x - Poly([ttrr_beta(fp, 0)]))
    for k in range(1, n):
        gamma = ttrr_gamma(fp, k)
        if gamma_shift and k in gamma_shift:
            gamma = gamma + gamma_shift[k]
        nxt = mul(x - Poly([ttrr_beta(fp, k)]), polys[k]) - scale(polys[k - 1], gamma)
        polys.append(nxt)
    return polys


def p_poly_ttrr(fp: FamilyParams, n: int) -> Poly:
    if n < 0:
        raise ValueError("n must be >= 0")
    return p_family_ttrr(fp, n)[n]


def _expand_inverse_square(hp: HypParams, top: int) -> Poly:
    # x^top * sum_k t_k x^(-2k)
    coeffs = series_coefficients(hp)
    zero = coeffs[0] * 0
    out = [zero] * (top + 1)
    for k, t in enumerate(coeffs):
        out[top - 2 * k] = t
    return Poly(out)


def gg_poly(gp: GGParams, n: int) -> Poly:
    """GG_n^{alpha,mu} expanded from its terminating 2F1 in ``1/x^2``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    m, odd = divmod(n, 2)
    half = to_mode(Fraction(1, 2), gp.alpha)
    sign = -1 if odd else 1
    hp = HypParams(
        to_mode(-m, gp.alpha),
        -m - gp.mu / 2 + sign * half,
        -2 * m - gp.alpha - gp.mu / 2 + sign * half,
    )
    return _expand_inverse_square(hp, n)


def p_poly_hyper(fp: FamilyParams, n: int, form: str = "inverse") -> Poly:
    """P_n for even n via its hypergeometric representation.

    ``form="inverse"`` expands ``x^n 2F1(-m, -m-q-1/2; -2m-alpha-q-1/2; 1/x^2)``
    (m = n/2), which is monic term by term. ``form="square"`` uses the
    normalized series in ``x^2``,

        (-1)^m (q+3/2)_m / (m+q+alpha+3/2)_m * 2F1(-m, m+q+alpha+3/2; q+3/2; x^2),

    and checks that its leading coefficient comes out as 1.
    """
    if n < 0 or n % 2:
        raise ValueError(f"hypergeometric route needs an even n >= 0, got {n}")
    m = n // 2
    a, q = fp.alpha, fp.q
    half = to_mode(Fraction(1, 2), a)
    if form == "inverse":
        lower = -2 * m - a - q - half
        hp = HypParams(to_mode(-m, a), -m - q - half, lower)
        return _expand_inverse_square(hp, n)
    if form != "square":
        raise ValueError(f"unknown form {form!r}")
    c = q + 3 * half
    upper = m + q + a + 3 * half
    hp = HypParams(to_mode(-m, a), upper, c)
    prefactor = (-1) ** m * pochhammer(c, m) / pochhammer(upper, m)
    coeffs = series_coefficients(hp)
    zero = coeffs[0] * 0
    out = [zero] * (n + 1)
    for k, t in enumerate(coeffs):
        out[2 * k] = prefactor * t
    poly = Poly(out)
    lead = poly.leading
    if is_exact(lead):
        if lead != 1:
            raise ArithmeticError(f"normalized hypergeometric form is not monic: leading {lead}")
    elif abs(lead - 1) > lead.context.ldexp(1, -(lead.context.prec // 2)):
        raise ArithmeticError(f"normalized hypergeometric form is not monic: leading {lead}")
    return poly


IDENTITIES = (
    "p2ngg2n",
    "p2np1gg2n",
    "p2np1gg2n2",
    "relationpmu",
    "zeros1",
    "zeros2",
    "zeros3",
)


def check_identity(identity: str, params, n: int) -> Poly:
    """Residual LHS - RHS of a structural identity; the zero polynomial if it holds.

    ``n`` is the half-index: the identities are stated for P_{2n}, P_{2n+1},
    GG_{2n}, GG_{2n+1}. ``params`` is a :class:`GGParams` for ``relationpmu``
    and a :class:`FamilyParams` otherwise.

    ===========  =====================================================
    p2ngg2n      P_{2n}^{a,q} - GG_{2n}^{a,2q+2}
    p2np1gg2n    P_{2n+1}^{a,q} - (1+x) GG_{2n}^{a+1,2q+2}
    p2np1gg2n2   P_{2n+1}^{a,q} - (1+x) P_{2n}^{a+1,q}
    relationpmu  GG_{2n+1}^{a,mu} - x GG_{2n}^{a,mu+2}
    zeros1       d/dx P_{2n}^{a,q} - 2n GG_{2n-1}^{a+1,2q+2}          (n >= 1)
    zeros2       d/dx P_{2n}^{a,q} - 2n x P_{2n-2}^{a+1,q+1}          (n >= 1)
    zeros3       d/dx P_{2n+1}^{a,q} - P_{2n}^{a+1,q} - 2n x P_{2n-1}^{a+1,q+1}
    ===========  =====================================================

    P is always produced by the recurrence and GG by its hypergeometric
    expansion, so every identity compares two independent constructions.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if identity == "relationpmu":
        if not isinstance(params, GGParams):
            raise TypeError("relationpmu takes GGParams")
        gp = params
        x = Poly.x(gp.alpha)
        return gg_poly(gp, 2 * n + 1) - mul(x, gg_poly(GGParams(gp.alpha, gp.mu + 2), 2 * n))
    if identity not in IDENTITIES:
        raise ValueError(f"unknown identity {identity!r}")
    if not isinstance(params, FamilyParams):
        raise TypeError(f"{identity} takes FamilyParams")
    fp = params
    one = to_mode(1, fp.alpha)
    x = Poly([one * 0, one])
    one_plus_x = Poly([one, one])
    if identity == "p2ngg2n":
        return p_poly_ttrr(fp, 2 * n) - gg_poly(fp.gg(), 2 * n)
    if identity == "p2np1gg2n":
        return p_poly_ttrr(fp, 2 * n + 1) - mul(one_plus_x, gg_poly(fp.gg(1), 2 * n))
    if identity == "p2np1gg2n2":
        return p_poly_ttrr(fp, 2 * n + 1) - mul(one_plus_x, p_poly_ttrr(fp.shift(1), 2 * n))
    if identity == "zeros3":
        lhs = derivative(p_poly_ttrr(fp, 2 * n + 1)) - p_poly_ttrr(fp.shift(1), 2 * n)
        if n == 0:
            return lhs
        return lhs - scale(shift_power(p_poly_ttrr(fp.shift(1, 1), 2 * n - 1), 1), 2 * n * one)
    if n < 1:
        raise ValueError(f"{identity} needs n >= 1")
    lhs = derivative(p_poly_ttrr(fp, 2 * n))
    if identity == "zeros1":
        return lhs - scale(gg_poly(fp.gg(1), 2 * n - 1), 2 * n * one)
    # zeros2
    return lhs - scale(mul(x, p_poly_ttrr(fp.shift(1, 1), 2 * n - 2)), 2 * n * one)
