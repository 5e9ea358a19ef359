"""The elliptic-like kernel function

    F(z; tau) = integral over x in R of dx / ((1 + e^(z + i*tau*x)) (1 + e^x)),

defined for Im(tau) > 0 and z in the strip S(tau) = { |Re(z*conj(tau))| <
pi*Im(tau) }.  Four independent evaluation routes are provided (direct
quadrature, two series, a contour integral, and a closed form for tau =
i*m/n) together with the strip/parallelogram predicates.  The routes
cross-validate each other and back the Wiener-Hopf layer: the logarithmic
derivative of the positive factor is a difference of two F values.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError, PoleError
from .quadrature import de_line
from .result import EvalResult

__all__ = [
    "StripCheck",
    "strip_check",
    "LatticePoint",
    "lattice_point",
    "f_quadrature",
    "f_series",
    "f_rational",
    "f_contour",
]

_PI = math.pi


@dataclass(frozen=True)
class StripCheck:
    """Membership of z in the strip S(tau) and parallelogram P(tau)."""

    tau: complex
    in_strip: bool
    in_parallelogram: bool
    strip_margin: float  # pi*Im(tau) - |Re(z*conj(tau))|


def strip_check(z: complex, tau: complex) -> StripCheck:
    """Evaluate the domain predicates for F(z; tau).

    S(tau) = { |Re(z*conj(tau))| < pi*Im(tau) };
    P(tau) = S(tau) intersected with { |Im(z)| < pi*Im(tau) }.
    """
    z, tau = complex(z), complex(tau)
    if tau.imag <= 0:
        raise DomainError("strip_check needs Im(tau) > 0")
    margin = _PI * tau.imag - abs((z * tau.conjugate()).real)
    in_s = margin > 0
    in_p = in_s and abs(z.imag) < _PI * tau.imag
    return StripCheck(tau=tau, in_strip=in_s, in_parallelogram=in_p, strip_margin=margin)


@dataclass(frozen=True)
class LatticePoint:
    """Point w = pi*i*((2m+1)/alpha + (2n+1)) of the zero/pole lattice."""

    m: int
    n: int
    w: complex


def lattice_point(m: int, n: int, alpha: float) -> LatticePoint:
    w = _PI * 1j * ((2 * m + 1) / alpha + (2 * n + 1))
    return LatticePoint(m=m, n=n, w=w)


def _inv1pexp(w: complex) -> complex:
    """1 / (1 + exp(w)) without overflow."""
    if w.real > 36.0:
        ew = cmath.exp(-w)
        return ew / (1.0 + ew)
    return 1.0 / (1.0 + cmath.exp(w))


def _cexpm1(w: complex) -> complex:
    """exp(w) - 1, accurate near w = 0."""
    if abs(w) < 1e-4:
        return w * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w / 24.0)))
    return cmath.exp(w) - 1.0


def _logsinh(w: complex) -> complex:
    """A logarithm of sinh(w), safe for |Re(w)| beyond the overflow range."""
    if abs(w.real) <= 36.0:
        return cmath.log(cmath.sinh(w))
    s = 1.0 if w.real > 0 else -1.0
    out = s * w - math.log(2.0) + cmath.log(1.0 - cmath.exp(-2.0 * s * w))
    if s < 0:
        out += 1j * _PI
    return out


def _require_strip(z: complex, tau: complex, need_parallelogram: bool = False) -> StripCheck:
    chk = strip_check(z, tau)
    guard = 1e-8 * (1.0 + abs(z)) * abs(tau) ** 2
    if not chk.in_strip or chk.strip_margin <= guard:
        raise DomainError(
            f"z = {z} outside (or too close to the boundary of) S(tau), tau = {tau}"
        )
    if need_parallelogram and not chk.in_parallelogram:
        raise DomainError(f"z = {z} outside P(tau), tau = {tau}")
    return chk


def f_quadrature(z: complex, tau: complex, target: float = 1e-13) -> EvalResult:
    """F(z; tau) by double-exponential quadrature of the defining integral.

    The integrand decays like e^-x to the right and e^(Im(tau)*x) to the
    left; inputs on or within ~1e-8 of the strip boundary are rejected
    because a pole of the integrand then sits on the path.
    """
    z, tau = complex(z), complex(tau)
    _require_strip(z, tau)

    def integrand(x: float) -> complex:
        return _inv1pexp(z + 1j * tau * x) * _inv1pexp(x)

    scale = 1.0 / min(1.0, tau.imag)
    val, err, n_eval = de_line(integrand, scale=scale, target=target)
    return EvalResult(value=val, abs_err=err, terms=n_eval, method="f-quadrature")


def f_series(z: complex, tau: complex, form: str = "pole") -> EvalResult:
    """F(z; tau) by one of the two exponential series (Re(tau) != 0).

    ``form="pole"`` sums simple-fraction terms over the pole ladders and
    needs only z in S(tau); ``form="exp"`` sums exponentials against
    cosech factors and additionally needs Re(z) > 0.  Terms are added
    until |term| < 1e-16 * (1 + |partial|).
    """
    z, tau = complex(z), complex(tau)
    _require_strip(z, tau)
    if tau.real == 0.0:
        raise DomainError("series forms need Re(tau) != 0")
    if form == "pole":
        d = 1.0 if tau.real > 0 else -1.0
        s = 0.0 + 0.0j
        small = 0
        for k in range(100_000):
            t = 2j * _PI * _inv1pexp(z + 2 * _PI * d * (k + 0.5) * tau) + (
                2 * _PI / tau
            ) * _inv1pexp(1j * z / tau + (2 * _PI * d / tau) * (k + 0.5))
            s += t
            if abs(t) < 1e-16 * (1.0 + abs(s)):
                small += 1
                if small >= 3:
                    return EvalResult(value=d * s, abs_err=abs(t), terms=k + 1, method="f-series-pole")
            else:
                small = 0
        raise ConvergenceError("pole-ladder series for F did not converge")
    if form == "exp":
        if z.real <= 0:
            raise DomainError("exponential series form needs Re(z) > 0")
        s = 0.0 + 0.0j
        small = 0
        for k in range(1, 100_000):
            t = (-1.0) ** k * (
                cmath.exp(-k * z) / cmath.sinh(_PI * k * tau)
                - (1j / tau) * cmath.exp(-1j * k * z / tau) / cmath.sinh(_PI * k / tau)
            )
            s += t
            if abs(t) < 1e-16 * (1.0 + abs(s)):
                small += 1
                if small >= 3:
                    return EvalResult(
                        value=-1j * _PI * s, abs_err=_PI * abs(t), terms=k, method="f-series-exp"
                    )
            else:
                small = 0
        raise ConvergenceError("exponential series for F did not converge")
    raise DomainError(f"unknown series form {form!r}")


def f_rational(z: complex, m: int, n: int) -> EvalResult:
    """F(z; i*m/n) in closed form for coprime m, n >= 1 and |Im(z)| < pi.

    The expression is a finite sum of simple fractions plus the term
    -(n/m) z / ((-1)^(mn) e^(nz) + 1); apparent singularities inside the
    strip are removable and the one at z = 0 (mn odd) is evaluated via its
    limit.  Other near-coincidences with the simple-fraction poles are
    rejected rather than regularized.

    Raises
    ------
    PoleError
        z within ~1e-10 of a singular point of the closed form.
    """
    z = complex(z)
    if m < 1 or n < 1 or math.gcd(m, n) != 1:
        raise DomainError("f_rational needs coprime m, n >= 1")
    if abs(z.imag) >= _PI:
        raise DomainError("f_rational needs |Im(z)| < pi")

    mn_odd = (m * n) % 2 == 1
    if mn_odd:
        # (-1)^(mn) e^(nz) + 1 = -(e^(nz) - 1): limit value n/(m*n) at z = 0
        den = _cexpm1(n * z)
        if z == 0:
            t1 = 1.0 / m
        else:
            if abs(den) < 1e-10:
                raise PoleError(f"f_rational near removable point z = {z}", location=z)
            t1 = (n / m) * z / den
    else:
        den = cmath.exp(n * z) + 1.0
        if abs(den) < 1e-10:
            raise PoleError(f"f_rational near singular point z = {z}", location=z)
        t1 = -(n / m) * z / den

    s2 = 0.0 + 0.0j
    for k in range(n):
        den = cmath.exp(z + 1j * _PI * m / n * (2 * k + 1)) + 1.0
        if abs(den) < 1e-10:
            raise PoleError(f"f_rational near singular point z = {z}", location=z)
        s2 += (1j * _PI / n) * (n - 2 * k - 1) / den
    s3 = 0.0 + 0.0j
    for j in range(m):
        den = cmath.exp(z * n / m + 1j * _PI * n / m * (2 * j + 1)) + 1.0
        if abs(den) < 1e-10:
            raise PoleError(f"f_rational near singular point z = {z}", location=z)
        s3 += (1j * _PI / m) * (m - 2 * j - 1) / den

    val = t1 + s2 + (n / m) * s3
    return EvalResult(value=val, abs_err=1e-15 * (1 + abs(val)) * (m + n), terms=m + n + 1, method="f-rational")


def f_contour(z: complex, tau: complex, target: float = 1e-13) -> EvalResult:
    """F(z; tau) through the cosech-kernel contour integral along R + i*eps.

    Valid for z in the parallelogram P(tau); eps is fixed at half its
    allowed supremum min(pi/2, Im(-pi/(2*tau))), which maximizes the
    distance to both pole lines of the integrand.
    """
    z, tau = complex(z), complex(tau)
    _require_strip(z, tau, need_parallelogram=True)
    eps_max = min(_PI / 2.0, (-_PI / (2.0 * tau)).imag)
    if eps_max <= 0:
        raise DomainError("no admissible contour height for this tau")
    eps = 0.5 * eps_max

    def integrand(t: float) -> complex:
        x = t + 1j * eps
        expo = 1j * z * x / _PI - _logsinh(x) - _logsinh(1j * tau * x)
        if expo.real < -745.0:
            return 0.0
        return cmath.exp(expo)

    rate = 1.0 + tau.imag - abs(z.imag) / _PI
    scale = 1.0 / min(1.0, rate)
    val, err, n_eval = de_line(integrand, scale=scale, target=target)
    return EvalResult(value=0.5 * val, abs_err=0.5 * err, terms=n_eval, method="f-contour")
