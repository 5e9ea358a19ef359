"""The positive Wiener-Hopf factor of a strictly stable process,

    phi(z; alpha, rho) = E[ exp(-z * sup_{t <= e(1)} X_t) ],   Re(z) >= 0,

where e(1) is an independent unit-mean exponential time.  phi extends
analytically to |arg z| < pi and is computed here by five mutually
cross-validating routes:

* ``double-gamma``      ratio of four Barnes G values (universal),
* ``rational-alpha``    finite trigonometric products with a Clausen
                        prefactor, for exactly rational alpha and z > 0,
* ``ckl-product``       finite q-Pochhammer ratios for the special classes
                        C(k, l),
* ``log-series``        power series of log(phi) in z and z^alpha, for
                        alpha far enough from rationals,
* ``darling``           direct quadrature of the log-integral (the route
                        closest to the probabilistic definition; serves as
                        the oracle in cross-method tests),

plus a q-product route for complex alpha with Im(alpha) > 0.  Dispatch
prefers finite products (exact up to rounding), then the double gamma
representation.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .core import (
    CklClass,
    Parameters,
    RationalAlpha,
    detect_ckl,
    is_near_rational,
)
from .errors import (
    BranchCutError,
    ConvergenceError,
    DomainError,
    SmallDenominatorError,
)
from .ftau import lattice_point, LatticePoint
from .quadrature import de_line
from .result import EvalResult
from .specfun import clausen, log_barnes_g_many, qpochhammer

__all__ = [
    "PhiMethod",
    "PoleZeroReport",
    "phi",
    "phi_double_gamma",
    "phi_rational_alpha",
    "phi_ckl",
    "phi_log_series",
    "phi_qproduct",
    "phi_darling_quadrature",
    "phi_gamma_product",
    "phi_q",
    "phi_exp_log",
    "pole_zero_report",
]

_PI = math.pi


class PhiMethod(enum.Enum):
    AUTO = "auto"
    DOUBLE_GAMMA = "double-gamma"
    RATIONAL_ALPHA = "rational-alpha"
    CKL_PRODUCT = "ckl-product"
    LOG_SERIES = "log-series"
    Q_PRODUCT = "q-product"
    DARLING_QUADRATURE = "darling"


def _check_arg_z(z: complex) -> complex:
    z = complex(z)
    if z != 0 and z.real < 0 and z.imag == 0:
        raise BranchCutError(f"phi is not evaluated on the branch cut, z = {z}")
    return z


# ---------------------------------------------------------------------------
# double gamma route
# ---------------------------------------------------------------------------

def _phi_log_dg_raw(alpha: float, rho: float, w) -> Tuple[np.ndarray, float]:
    """log phi(e^w) as a function of w (vectorized), via Barnes G.

    Working in w = log z makes the expression entire apart from the G
    zero/pole lattice, which is what the quasi-periodicity relations and
    the pole/zero catalogue refer to.  Returns some branch of the log.
    """
    if not alpha > 0:
        raise DomainError("double gamma route needs alpha > 0")
    if not 0.0 < rho < 1.0:
        raise DomainError("double gamma route needs rho in (0, 1)")
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    L = w / (_PI * 1j)
    args = np.concatenate([
        0.5 + alpha / 2.0 * (1.0 + rho + L),
        0.5 + alpha / 2.0 * (1.0 + rho - L),
        0.5 + alpha / 2.0 * (1.0 - rho + L),
        0.5 + alpha / 2.0 * (1.0 - rho - L),
    ])
    vals, err = log_barnes_g_many(args, alpha)
    k = w.size
    out = (
        -alpha * rho * (math.log(2.0 * _PI) + w / 2.0)
        + vals[:k]
        + vals[k : 2 * k]
        - vals[2 * k : 3 * k]
        - vals[3 * k :]
    )
    return out, 4.0 * err


def phi_exp_log(params: Parameters, w: complex) -> complex:
    """A branch of log phi(e^w), analytically continued in w.

    For |Im w| < pi this agrees with log of phi(z) at z = e^w modulo
    2*pi*i; beyond that it is the meromorphic continuation whose zeros
    and poles lie on the lattice reported by :func:`pole_zero_report`.
    """
    out, _ = _phi_log_dg_raw(params.alpha, params.rho, complex(w))
    return complex(out[0])


def phi_double_gamma(params: Parameters, z: complex) -> EvalResult:
    """phi(z) assembled from four Barnes G values in log space."""
    z = _check_arg_z(z)
    if z == 0:
        return EvalResult(1.0 + 0.0j, 0.0, 0, "double-gamma")
    logs, err = _phi_log_dg_raw(params.alpha, params.rho, cmath.log(z))
    val = cmath.exp(complex(logs[0]))
    return EvalResult(value=val, abs_err=abs(val) * err, terms=4, method="double-gamma")


# ---------------------------------------------------------------------------
# rational alpha route
# ---------------------------------------------------------------------------

def phi_rational_alpha(ra: RationalAlpha, rho: float, z: float) -> EvalResult:
    """phi(z) for alpha = m/n via finite trigonometric products and a
    Clausen-function prefactor; valid for real z > 0.

    The auxiliary angle theta = arccot(cot(pi*m*rho) + (-1)^(mn) z^m /
    sin(pi*m*rho)) is taken in (0, pi), with theta = 0 when m*rho is an
    integer (the Clausen prefactor then collapses to 1).
    """
    if not (isinstance(z, (int, float)) and z > 0):
        raise DomainError("rational-alpha route is defined for real z > 0")
    m, n = ra.m, ra.n
    alpha = ra.value
    z = float(z)
    w = math.log(z)
    sign = (-1.0) ** (m * n)
    smr = math.sin(_PI * m * rho)

    if abs(smr) < 1e-12:
        log_pref = 0.0
    else:
        theta = math.atan2(1.0, 1.0 / math.tan(_PI * m * rho) + sign * z**m / smr)
        log_pref = (
            clausen(2.0 * theta)
            - clausen(2.0 * _PI * m * rho)
            - clausen(2.0 * theta - 2.0 * _PI * m * rho)
        ) / (2.0 * _PI * m * n)

    # factors (1 + 2*c*z^p + z^(2p))^e; c = -1 makes the base the perfect
    # square (1 - z^p)^2, which vanishes at z = 1.  Those logs are split as
    # 2e*log|(1-z^p)/(1-z)| + 2e*log|1-z|; removability means the summed
    # exponent of |1-z| cancels, so z = 1 stays finite.
    factors = [(-rho / (2.0 * n), float(m), sign * math.cos(_PI * m * rho))]
    for k in range(n):
        factors.append(((n - 2 * k - 1) / (2.0 * n), alpha, math.cos(_PI * alpha * (rho + 2 * k + 1))))
    for j in range(m):
        factors.append(((m - 2 * j - 1) / (2.0 * m), 1.0, math.cos(_PI / alpha * (alpha * rho + 2 * j + 1))))

    log_val = log_pref
    sing_expo = 0.0
    for e, p, c in factors:
        if e == 0.0:
            continue
        if c < -1.0 + 1e-12:
            # base = (1 - z^p)^2
            if w == 0.0:
                log_val += 2.0 * e * math.log(p)  # lim (1-z^p)/(1-z) = p
            else:
                log_val += 2.0 * e * math.log(abs(math.expm1(p * w) / math.expm1(w)))
            sing_expo += 2.0 * e
        elif c > 1.0 - 1e-12:
            log_val += 2.0 * e * math.log1p(z**p)
        else:
            log_val += e * math.log(1.0 + 2.0 * c * z**p + z ** (2.0 * p))
    if sing_expo != 0.0:
        if w == 0.0:
            if abs(sing_expo) > 1e-12:
                raise DomainError("rational-alpha product is singular at z = 1 for these parameters")
        else:
            log_val += sing_expo * math.log(abs(math.expm1(w)))

    val = math.exp(log_val)
    return EvalResult(value=val, abs_err=1e-14 * (m + n) * val, terms=m + n, method="rational-alpha")


# ---------------------------------------------------------------------------
# C(k, l) finite products
# ---------------------------------------------------------------------------

def _log1m(w: complex) -> complex:
    """A logarithm of 1 - w, overflow-safe for huge |w|."""
    if abs(w) > 1e15:
        return cmath.log(-w) + (-1.0 / w)
    return cmath.log(1.0 - w)


def _log_qpoch_finite(a: complex, q: complex, n: int) -> complex:
    out = 0.0 + 0.0j
    aqk = a
    for _ in range(n):
        out += _log1m(aqk)
        aqk *= q
    return out


def phi_ckl(params: Parameters, ckl: CklClass, z: complex) -> EvalResult:
    """phi(z) as a ratio of finite q-Pochhammer symbols for X in C(k, l).

    Uses q = e^(2*pi*i*alpha) and qt = e^(-2*pi*i/alpha); |q| = 1 is
    harmless for finite products, which are assembled in log space so
    that extreme |z| cannot overflow intermediates.  Half-integer powers
    of q follow the lattice convention q^x = e^(2*pi*i*alpha*x).
    """
    z = _check_arg_z(z)
    alpha = params.alpha
    k, l = ckl.k, ckl.l
    qx = lambda x: cmath.exp(2j * _PI * alpha * x)
    qtx = lambda x: cmath.exp(-2j * _PI * x / alpha)
    if z == 0:
        return EvalResult(1.0 + 0.0j, 0.0, 0, "ckl-product")
    lz = cmath.log(z)
    za = cmath.exp(alpha * lz)
    if l > 0:
        log_val = _log_qpoch_finite(za * (-1.0) ** (1 - l) * qx((1 - k) / 2.0), qx(1.0), k) - _log_qpoch_finite(
            z * (-1.0) ** (1 - k) * qtx((1 - l) / 2.0), qtx(1.0), l
        )
    elif l < 0:
        log_val = _log_qpoch_finite(z * (-1.0) ** (1 + k) * qtx((1 + l) / 2.0), qtx(1.0), abs(l)) - _log_qpoch_finite(
            za * (-1.0) ** (1 + l) * qx((1 + k) / 2.0), qx(1.0), abs(k)
        )
    else:
        raise DomainError("C(k, l) certificates have l != 0")
    val = cmath.exp(log_val)
    nt = abs(k) + abs(l)
    return EvalResult(value=val, abs_err=1e-14 * (1 + nt) * abs(val), terms=nt, method="ckl-product")


# ---------------------------------------------------------------------------
# log series
# ---------------------------------------------------------------------------

def phi_log_series(params: Parameters, z: complex, guard: float = 1e-8) -> EvalResult:
    """phi(z) by the double power series of log(phi) in z and z^alpha.

    Convergent for |z| < 1 when alpha is neither rational nor absurdly
    well approximated by rationals; |z| > 1 is reduced through the
    inversion identity phi(z) = z^(-alpha*rho) phi(1/z).

    Raises
    ------
    SmallDenominatorError
        sin(pi*k/alpha) or sin(pi*k*alpha) below ``guard`` while the
        corresponding term is still significant.
    DomainError
        |z| = 1.
    ConvergenceError
        more than 1e5 terms.
    """
    z = _check_arg_z(z)
    alpha, rho = params.alpha, params.rho
    if z == 0:
        return EvalResult(1.0 + 0.0j, 0.0, 0, "log-series")
    r = abs(z)
    if r == 1.0:
        raise DomainError("log-series needs |z| != 1")
    if r > 1.0:
        inner = phi_log_series(params, 1.0 / z, guard=guard)
        val = z ** (-alpha * rho) * inner.value
        return EvalResult(value=val, abs_err=abs(val) / abs(inner.value) * inner.abs_err,
                          terms=inner.terms, method="log-series+inversion")

    lz = cmath.log(z)
    s = 0.0 + 0.0j
    last = math.inf
    for k in range(1, 100_001):
        s1 = math.sin(_PI * k / alpha)
        s2 = math.sin(_PI * k * alpha)
        zk = cmath.exp(k * lz)
        zak = cmath.exp(alpha * k * lz)
        for sden, zpow, srho in ((s1, zk, math.sin(_PI * k * rho)), (s2, zak, math.sin(_PI * k * alpha * rho))):
            if abs(sden) < guard:
                if abs(zpow) / k > 1e-17 * (1.0 + abs(s)) * abs(sden):
                    raise SmallDenominatorError(
                        f"sin denominator {sden:.2e} at k={k}: alpha={alpha} too close to rational"
                    )
                continue
            s += (-1.0) ** k * srho / (k * sden) * zpow
        last = (abs(zk) + abs(zak)) / k
        if last < 1e-17 * (1.0 + abs(s)):
            val = cmath.exp(s)
            return EvalResult(value=val, abs_err=abs(val) * 3.0 * last, terms=k, method="log-series")
    raise ConvergenceError("log series did not converge within 1e5 terms")


# ---------------------------------------------------------------------------
# q-product (complex alpha)
# ---------------------------------------------------------------------------

def phi_qproduct(alpha: complex, rho: float, z: complex) -> EvalResult:
    """phi(z) as a ratio of four infinite q-Pochhammer symbols, Im(alpha) > 0.

    Requires |z| < min(sqrt|q|, sqrt|qt|) with q = e^(2*pi*i*alpha),
    qt = e^(-2*pi*i/alpha); square roots follow the lattice convention.
    """
    alpha = complex(alpha)
    z = _check_arg_z(z)
    if alpha.imag <= 0:
        raise ConvergenceError("q-product route needs Im(alpha) > 0 for |q| < 1")
    q = cmath.exp(2j * _PI * alpha)
    qt = cmath.exp(-2j * _PI / alpha)
    sq = cmath.exp(1j * _PI * alpha)
    sqt = cmath.exp(-1j * _PI / alpha)
    if abs(z) >= min(abs(sq), abs(sqt)):
        raise DomainError(f"q-product needs |z| < {min(abs(sq), abs(sqt)):g}")
    za = z**alpha if z != 0 else 0.0
    num = qpochhammer(-z * sqt * cmath.exp(-1j * _PI * rho), qt) * qpochhammer(
        -za * sq * cmath.exp(1j * _PI * rho * alpha), q
    )
    den = qpochhammer(-z * sqt * cmath.exp(1j * _PI * rho), qt) * qpochhammer(
        -za * sq * cmath.exp(-1j * _PI * rho * alpha), q
    )
    val = num / den
    return EvalResult(value=val, abs_err=1e-13 * abs(val), terms=0, method="q-product")


# ---------------------------------------------------------------------------
# Darling-type quadrature
# ---------------------------------------------------------------------------

def _log1p_ray(c: complex, t: float, alpha: float) -> complex:
    """log(1 + c*e^(alpha*t)) with c on a fixed ray, overflow-safe."""
    at = alpha * t
    if at > 36.0:
        return cmath.log(c) + at + cmath.log(1.0 + cmath.exp(-at) / c)
    return cmath.log(1.0 + c * cmath.exp(at))


def phi_darling_quadrature(params: Parameters, z: complex, target: float = 1e-12) -> EvalResult:
    """phi(z) for Re(z) > 0 by quadrature of the two half-line log
    integrals equivalent to Darling's integral.

    After the substitution u = e^t both integrands decay exponentially in
    both directions, so the double-exponential rule applies directly.
    This route does not depend on the Barnes G machinery and is used as
    the reference in cross-method suites.
    """
    z = complex(z)
    if z == 0:
        return EvalResult(1.0 + 0.0j, 0.0, 0, "darling")
    if z.real <= 0:
        raise DomainError("darling route needs Re(z) > 0")
    alpha, gamma = params.alpha, params.gamma

    def make_integrand(sign: float):
        c = cmath.exp(sign * 1j * _PI * gamma / 2.0)

        def integrand(t: float) -> complex:
            if t > 500.0 or t < -500.0 / alpha:
                return 0.0
            return _log1p_ray(c, t, alpha) / (math.exp(t) - sign * 1j * z)

        return integrand

    scale = 1.0 / min(alpha, 1.0)
    center = math.log(abs(z)) if abs(z) > 1e-3 else 0.0
    ip, errp, np_ = de_line(make_integrand(+1.0), center=center, scale=scale, target=target)
    im, errm, nm_ = de_line(make_integrand(-1.0), center=center, scale=scale, target=target)
    lnphi = -(z / (2.0 * _PI)) * (ip + im)
    val = cmath.exp(lnphi)
    err = abs(val) * abs(z) / (2.0 * _PI) * (errp + errm)
    return EvalResult(value=val, abs_err=err, terms=np_ + nm_, method="darling")


# ---------------------------------------------------------------------------
# truncated infinite gamma product (diagnostic route)
# ---------------------------------------------------------------------------

def phi_gamma_product(params: Parameters, z: complex, n_factors: int = 200) -> EvalResult:
    """phi(z) from the infinite product of gamma-function ratios with
    digamma convergence factors.

    Raw partial products converge like O(1/M), so the three nested
    truncations M/4, M/2, M of the log are Richardson-extrapolated
    (eliminating the 1/M and 1/M^2 tail terms); only partial products of
    the formula itself enter, keeping the route independent of the Barnes
    G evaluator it is cross-checked against.  A validation route, not a
    production one.
    """
    from scipy.special import loggamma

    from .specfun import barnes_constants, _polygamma_array

    z = _check_arg_z(z)
    if n_factors < 16:
        raise DomainError("gamma-product extrapolation needs at least 16 factors")
    alpha, rho = params.alpha, params.rho
    cst = barnes_constants(alpha)
    L = cmath.log(z) / (_PI * 1j)
    base = -alpha * rho / 2.0 * cmath.log(z) - alpha * rho * (2.0 * cst.C + (alpha + 1.0) * cst.D)

    ms = np.arange(0, n_factors)
    a = loggamma(0.5 + alpha / 2.0 * (2 * ms + 1 - rho + L))
    b = loggamma(0.5 + alpha / 2.0 * (2 * ms + 1 - rho - L))
    c = loggamma(0.5 + alpha / 2.0 * (2 * ms + 1 + rho + L))
    d = loggamma(0.5 + alpha / 2.0 * (2 * ms + 1 + rho - L))
    comp = np.zeros(n_factors, dtype=complex)
    comp[1:] = alpha * rho * (
        2.0 * _polygamma_array(0, ms[1:] * alpha) + (alpha + 1.0) * _polygamma_array(1, ms[1:] * alpha)
    )
    terms = a + b - c - d + comp

    def partial(mcount: int) -> complex:
        return base + np.sum(terms[:mcount])

    m4 = n_factors // 4
    p1, p2, p3 = partial(m4), partial(2 * m4), partial(4 * m4)
    log_val = (8.0 * p3 - 6.0 * p2 + p1) / 3.0
    val = cmath.exp(complex(log_val))
    err = abs(val) * (abs(p3 - p2) / max(1, m4)) * 4.0
    return EvalResult(value=val, abs_err=err, terms=4 * m4, method="gamma-product+richardson")


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def phi(params: Parameters, z: complex, method: PhiMethod = PhiMethod.AUTO) -> EvalResult:
    """The Wiener-Hopf factor phi(z; alpha, rho), |arg z| < pi.

    ``AUTO`` prefers exact finite forms: a C(k, l) product when a
    certificate is detected, the rational-alpha product when alpha is
    exactly rational and z > 0, then the double gamma representation.
    The log-series route must be requested explicitly and additionally
    requires |z| != 1 and alpha to pass the irrationality diagnostic.
    """
    z = _check_arg_z(z)
    if z == 0:
        return EvalResult(1.0 + 0.0j, 0.0, 0, "definition")

    if method == PhiMethod.AUTO:
        ckl = detect_ckl(params)
        if ckl is not None:
            return phi_ckl(params, ckl, z)
        if params.alpha_rational is not None and z.imag == 0 and z.real > 0:
            return phi_rational_alpha(params.alpha_rational, params.rho, z.real)
        return phi_double_gamma(params, z)
    if method == PhiMethod.DOUBLE_GAMMA:
        return phi_double_gamma(params, z)
    if method == PhiMethod.CKL_PRODUCT:
        ckl = detect_ckl(params)
        if ckl is None:
            raise DomainError(f"no C(k, l) certificate for {params}")
        return phi_ckl(params, ckl, z)
    if method == PhiMethod.RATIONAL_ALPHA:
        if params.alpha_rational is None:
            raise DomainError("rational-alpha route needs alpha supplied as an exact rational")
        if z.imag != 0 or z.real <= 0:
            raise DomainError("rational-alpha route is defined for real z > 0")
        return phi_rational_alpha(params.alpha_rational, params.rho, z.real)
    if method == PhiMethod.LOG_SERIES:
        if is_near_rational(params.alpha):
            raise SmallDenominatorError(
                f"alpha = {params.alpha} fails the irrationality diagnostic"
            )
        return phi_log_series(params, z)
    if method == PhiMethod.DARLING_QUADRATURE:
        return phi_darling_quadrature(params, z)
    if method == PhiMethod.Q_PRODUCT:
        raise DomainError("q-product route needs complex alpha; call phi_qproduct directly")
    raise DomainError(f"unknown method {method}")


def phi_q(params: Parameters, z: complex, q: float, method: PhiMethod = PhiMethod.AUTO) -> EvalResult:
    """Wiener-Hopf factor at exponential rate q > 0: the scaling property
    reduces it to phi evaluated at z * q^(-1/alpha)."""
    if not q > 0:
        raise DomainError("exponential rate q must be positive")
    return phi(params, complex(z) * q ** (-1.0 / params.alpha), method=method)


# ---------------------------------------------------------------------------
# analytic structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PoleZeroReport:
    """Catalogue of the zeros and poles of w -> phi(e^w).

    Zeros sit at w(m,n) + pi*i*rho for m, n >= 0 and at w(m,n) - pi*i*rho
    for m, n < 0, with w(m,n) = pi*i*((2m+1)/alpha + (2n+1)); poles are
    the mirror image (rho -> -rho).  phi(z) itself additionally has the
    simple pole pair -exp(+-pi*i*(rho - 1/alpha)) iff alpha*rho > 1,
    which cannot happen for admissible parameters.
    """

    params: Parameters
    zeros: tuple
    poles: tuple
    simple_poles_of_phi: tuple
    alpha_rho: float


def pole_zero_report(params: Parameters, max_index: int = 3) -> PoleZeroReport:
    alpha, rho = params.alpha, params.rho
    zeros = []
    poles = []
    shift = _PI * 1j * rho
    for m in range(max_index + 1):
        for n in range(max_index + 1):
            lp = lattice_point(m, n, alpha)
            zeros.append((m, n, lp.w + shift, "first-quadrant"))
            poles.append((m, n, lp.w - shift, "first-quadrant"))
    for m in range(-max_index, 0):
        for n in range(-max_index, 0):
            lp = lattice_point(m, n, alpha)
            zeros.append((m, n, lp.w - shift, "third-quadrant"))
            poles.append((m, n, lp.w + shift, "third-quadrant"))
    ar = alpha * rho
    simple = ()
    if ar > 1.0:
        simple = (
            -cmath.exp(1j * _PI * (rho - 1.0 / alpha)),
            -cmath.exp(-1j * _PI * (rho - 1.0 / alpha)),
        )
    return PoleZeroReport(
        params=params,
        zeros=tuple(zeros),
        poles=tuple(poles),
        simple_poles_of_phi=simple,
        alpha_rho=ar,
    )
