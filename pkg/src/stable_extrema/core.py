"""Parameters of strictly stable processes and their special classes.

A strictly stable process is parametrized by the stability index ``alpha``
and the positivity parameter ``rho = P(X_1 > 0)``.  The characteristic
exponent is normalized so that

    Psi(z) = exp(+i*pi*gamma/2) * |z|**alpha   for z > 0,

with ``gamma = alpha*(1 - 2*rho)``; the classical skewness ``beta`` is
recovered from ``tan(pi*gamma/2) = -beta*tan(pi*alpha/2)``.

The admissible set is

    { 0 < alpha < 1,  0 < rho < 1 }
  U { alpha = 1,      rho = 1/2   }
  U { 1 < alpha < 2,  1 - 1/alpha <= rho <= 1/alpha },

plus the Brownian boundary (alpha=2, rho=1/2), which every formula in this
package accepts.  Subordinator corners (alpha < 1 with rho in {0, 1}) are
rejected.

The special classes C(k, l) consist of processes whose parameters satisfy
``rho + k = l/alpha`` for integers k, l.  They unlock finite-product
formulas downstream; membership is certified by :class:`CklClass`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import AdmissibilityError, DomainError, SubordinatorError

__all__ = [
    "Parameters",
    "CklClass",
    "RationalAlpha",
    "make_params",
    "rho_from_beta",
    "detect_ckl",
    "ckl_residual",
    "dual",
    "inverse_alpha",
    "is_near_rational",
    "continued_fraction_convergents",
]

#: admissibility tolerance on closed boundaries
_BOUNDARY_TOL = 1e-12

#: search range for C(k,l) detection
_CKL_SCAN = 64


@dataclass(frozen=True)
class RationalAlpha:
    """Exact rational stability index alpha = m/n in lowest terms."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise DomainError("rational alpha needs positive numerator and denominator")
        if math.gcd(self.m, self.n) != 1:
            raise DomainError(f"{self.m}/{self.n} is not in lowest terms")
        if self.m > 2 * self.n:
            raise DomainError(f"alpha = {self.m}/{self.n} lies outside (0, 2]")

    @property
    def value(self) -> float:
        return self.m / self.n

    @classmethod
    def from_fraction(cls, num: int, den: int) -> "RationalAlpha":
        f = Fraction(num, den)
        return cls(f.numerator, f.denominator)

    def __str__(self) -> str:
        return f"{self.m}/{self.n}"


@dataclass(frozen=True)
class CklClass:
    """Certificate that rho + k = l/alpha for integers (k, l).

    ``exact`` is True when alpha was supplied as an exact rational, in
    which case (k, l) is the normalized representative 0 <= k < n,
    1 <= l < m.  For irrational alpha the pair is unique.
    """

    k: int
    l: int
    exact: bool = False


@dataclass(frozen=True)
class Parameters:
    """Validated (alpha, rho) pair with the derived (gamma, beta) cached.

    Instances are immutable; construct through :func:`make_params`.
    """

    alpha: float
    rho: float
    gamma: float
    beta: float
    alpha_rational: Optional[RationalAlpha] = None

    def __str__(self) -> str:
        a = str(self.alpha_rational) if self.alpha_rational else f"{self.alpha:g}"
        return f"(alpha={a}, rho={self.rho:g})"


def _in_admissible_set(alpha: float, rho: float) -> bool:
    if 0.0 < alpha < 1.0:
        return 0.0 < rho < 1.0
    if abs(alpha - 1.0) <= _BOUNDARY_TOL:
        return abs(rho - 0.5) <= _BOUNDARY_TOL
    if 1.0 < alpha < 2.0:
        lo, hi = 1.0 - 1.0 / alpha, 1.0 / alpha
        return lo - _BOUNDARY_TOL <= rho <= hi + _BOUNDARY_TOL
    if abs(alpha - 2.0) <= _BOUNDARY_TOL:
        # Brownian limit
        return abs(rho - 0.5) <= _BOUNDARY_TOL
    return False


def make_params(alpha, rho: float) -> Parameters:
    """Validate (alpha, rho) and return an immutable Parameters value.

    Parameters
    ----------
    alpha : float or RationalAlpha
        Stability index in (0, 2].  Pass a :class:`RationalAlpha` to mark
        alpha as exactly rational; float input is never silently
        rationalized.
    rho : float
        Positivity parameter P(X_1 > 0).

    Raises
    ------
    SubordinatorError
        alpha in (0,1) with rho in {0, 1}.
    AdmissibilityError
        (alpha, rho) outside the admissible set.
    """
    ra = None
    if isinstance(alpha, RationalAlpha):
        ra = alpha
        alpha = ra.value
    alpha = float(alpha)
    rho = float(rho)
    if not (math.isfinite(alpha) and math.isfinite(rho)):
        raise AdmissibilityError("alpha and rho must be finite")
    if 0.0 < alpha < 1.0 and (abs(rho) <= _BOUNDARY_TOL or abs(rho - 1.0) <= _BOUNDARY_TOL):
        raise SubordinatorError(
            f"alpha={alpha:g}, rho={rho:g}: subordinator case is excluded"
        )
    if not _in_admissible_set(alpha, rho):
        raise AdmissibilityError(f"(alpha={alpha:g}, rho={rho:g}) is not admissible")

    gamma = alpha * (1.0 - 2.0 * rho)
    if abs(rho - 0.5) <= _BOUNDARY_TOL:
        beta = 0.0
    elif abs(alpha - 2.0) <= _BOUNDARY_TOL:
        beta = 0.0
    else:
        beta = -math.tan(math.pi * gamma / 2.0) / math.tan(math.pi * alpha / 2.0)
        beta = min(1.0, max(-1.0, beta))
    return Parameters(alpha=alpha, rho=rho, gamma=gamma, beta=beta, alpha_rational=ra)


def rho_from_beta(alpha: float, beta: float) -> float:
    """Positivity parameter from the skewness:
    rho = 1/2 + arctan(beta*tan(pi*alpha/2)) / (pi*alpha).

    alpha = 1 is allowed only with beta = 0 (Cauchy); alpha = 2 returns 1/2.
    """
    alpha = float(alpha)
    beta = float(beta)
    if not -1.0 <= beta <= 1.0:
        raise DomainError(f"beta={beta:g} outside [-1, 1]")
    if not 0.0 < alpha <= 2.0:
        raise DomainError(f"alpha={alpha:g} outside (0, 2]")
    if abs(alpha - 1.0) <= _BOUNDARY_TOL:
        if beta != 0.0:
            raise DomainError("alpha = 1 requires beta = 0 in the strict parametrization")
        return 0.5
    if abs(alpha - 2.0) <= _BOUNDARY_TOL:
        return 0.5
    return 0.5 + math.atan(beta * math.tan(math.pi * alpha / 2.0)) / (math.pi * alpha)


def ckl_residual(alpha: float, rho: float, k: int, l: int) -> float:
    """Defect of the class relation: rho + k - l/alpha."""
    return rho + k - l / alpha


def _normalize_ckl(k: int, l: int, ra: RationalAlpha) -> Optional[CklClass]:
    # shift by j*(n, m): (k, l) -> (k + j*n, l + j*m) until 0 <= k < n
    j = -(k // ra.n)  # k + j*n in [0, n)
    k0 = k + j * ra.n
    l0 = l + j * ra.m
    if 0 <= k0 < ra.n and 1 <= l0 < ra.m:
        return CklClass(k=k0, l=l0, exact=True)
    return None


def detect_ckl(
    params: Parameters,
    alpha_as_rational: Optional[RationalAlpha] = None,
    tol: float = 1e-10,
) -> Optional[CklClass]:
    """Search for integers (k, l) with rho + k = l/alpha within ``tol``.

    Scans |k| <= 64 in the order 0, 1, -1, 2, -2, ...; absence of a
    certificate is a normal outcome (returns None).  For rational alpha
    (supplied explicitly or carried by ``params``) the normalized
    representative with 0 <= k < n, 1 <= l < m is returned.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    ra = alpha_as_rational if alpha_as_rational is not None else params.alpha_rational
    alpha, rho = params.alpha, params.rho
    for a in range(2 * _CKL_SCAN + 1):
        k = (a + 1) // 2 if a % 2 == 1 else -(a // 2)  # 0, 1, -1, 2, -2, ...
        l = round(alpha * (rho + k))
        if l == 0 or abs(l) > _CKL_SCAN:
            continue
        if abs(ckl_residual(alpha, rho, k, l)) <= tol:
            if ra is not None:
                norm = _normalize_ckl(k, l, ra)
                if norm is not None:
                    return norm
                continue
            return CklClass(k=k, l=l, exact=False)
    return None


def dual(params: Parameters) -> Parameters:
    """Parameters (alpha, 1-rho) of the negated process.

    If the input is in C(k, l), the output is in C(-k-1, -l).
    """
    return make_params(
        params.alpha_rational if params.alpha_rational is not None else params.alpha,
        1.0 - params.rho,
    )


def inverse_alpha(params: Parameters) -> Parameters:
    """Parameters (1/alpha, alpha*rho) of the index-inverted process.

    Valid whenever the image is admissible (always for alpha in (1, 2)
    with alpha*rho < 1).  A C(k, l) input maps to a C(-l, -k) output.
    """
    if params.alpha_rational is not None:
        ra = params.alpha_rational
        new_alpha = RationalAlpha(ra.n, ra.m) if ra.n <= 2 * ra.m else ra.n / ra.m
    else:
        new_alpha = 1.0 / params.alpha
    return make_params(new_alpha, params.alpha * params.rho)


def continued_fraction_convergents(x: float, max_den: int = 10**6):
    """Continued-fraction convergents (p, q) of x with q <= max_den."""
    out = []
    p0, q0, p1, q1 = 1, 0, int(math.floor(x)), 1
    frac = x - math.floor(x)
    out.append((p1, q1))
    for _ in range(64):
        if frac < 1e-18:
            break
        x = 1.0 / frac
        a = int(math.floor(x))
        frac = x - a
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        if q1 > max_den:
            break
        out.append((p1, q1))
    return out


def is_near_rational(alpha: float, b: float = 2.0, coeff: float = 1e-6) -> bool:
    """Continued-fraction diagnostic for dangerously good rational approximation.

    Flags alpha when some convergent p/q (q <= 10^6) satisfies
    |alpha - p/q| < coeff * b**(-q); exact rationals always trip the test.
    Series whose denominators involve sin(pi*k*alpha) must be refused for
    flagged alpha.
    """
    for p, q in continued_fraction_convergents(alpha):
        err = abs(alpha - p / q)
        threshold = coeff * b ** (-float(min(q, 1100)))
        if err < threshold:
            return True
    return False
