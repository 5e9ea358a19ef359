"""Special-function substrate: Clausen function, q-Pochhammer symbols,
complex polygamma functions, and the Barnes double gamma function.

The double gamma function G(z; tau) is the entire function with simple
zeros on the lattice ``-(m*tau + n)``, m, n >= 0, normalized by
G(1; tau) = 1 and quasi-periodic with periods 1 and tau:

    G(z+1;   tau) = Gamma(z/tau) * G(z; tau)
    G(z+tau; tau) = (2*pi)**((tau-1)/2) * tau**(-z+1/2) * Gamma(z) * G(z; tau)

It is evaluated here in log form only, through its representation as an
infinite product of gamma functions with second-order convergence factors.
The raw product converges like O(1/M), far too slowly, so the tail
``sum_{m>M}`` is replaced by its exact Euler-Maclaurin expansion in Hurwitz
zeta values, which brings the cost down to a few hundred terms for
near-machine accuracy.  All identities downstream exponentiate sums of
logs, so each log value is only required to be *some* branch of the true
logarithm; log-level identities hold modulo 2*pi*i in the imaginary part.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.special import loggamma, zeta as _hurwitz_zeta

from .errors import ConvergenceError, DomainError, PoleError, PoleOrZeroError
from .result import EvalResult

__all__ = [
    "clausen",
    "qpochhammer",
    "polygamma",
    "BarnesConstants",
    "barnes_constants",
    "log_barnes_g",
    "log_barnes_g_many",
    "lattice_zero_distance",
]

_TWO_PI = 2.0 * math.pi

# Bernoulli numbers B_0..B_18 (B_1 = -1/2 convention, odd ones >= 3 vanish)
_BERNOULLI = {
    0: 1.0,
    1: -0.5,
    2: 1.0 / 6.0,
    4: -1.0 / 30.0,
    6: 1.0 / 42.0,
    8: -1.0 / 30.0,
    10: 5.0 / 66.0,
    12: -691.0 / 2730.0,
    14: 7.0 / 6.0,
    16: -3617.0 / 510.0,
    18: 43867.0 / 798.0,
}


def _bern(j: int) -> float:
    return _BERNOULLI.get(j, 0.0)


def _bernoulli_poly(n: int, z):
    """B_n(z) = sum_j C(n, j) B_j z^(n-j); z may be a complex array."""
    s = 0.0
    for j in range(n + 1):
        bj = _bern(j)
        if bj != 0.0:
            s = s + math.comb(n, j) * bj * z ** (n - j)
    return s


# ---------------------------------------------------------------------------
# Clausen function
# ---------------------------------------------------------------------------

def _zeta_minus_one(n: int) -> float:
    """zeta(n) - 1 without cancellation for large n."""
    if n <= 16:
        return float(_hurwitz_zeta(n, 1)) - 1.0
    return sum(k ** (-float(n)) for k in range(2, 40))


#: coefficients (zeta(2n)-1) / (n*(2n+1)) of the accelerated series
_CL_COEFFS = [_zeta_minus_one(2 * n) / (n * (2 * n + 1)) for n in range(1, 41)]


def clausen(theta: float) -> float:
    """Clausen function Cl_2(theta) = sum_{n>=1} sin(n*theta)/n^2.

    Range-reduces to |theta| <= pi using oddness and 2*pi periodicity,
    then sums the log-accelerated series whose terms decay like
    O(n^-2 * 16^-n).  Absolute accuracy ~1e-15.
    """
    r = math.remainder(float(theta), _TWO_PI)  # in [-pi, pi]
    if r == 0.0 or abs(r) == math.pi:
        return 0.0
    u = (r / _TWO_PI) ** 2
    s = 0.0
    un = 1.0
    for c in _CL_COEFFS:
        un *= u
        t = c * un
        s += t
        if abs(t) < 1e-18 * abs(s):
            break
    return (
        3.0 * r
        - r * math.log(abs(r) * (1.0 - u))
        - _TWO_PI * math.log((_TWO_PI + r) / (_TWO_PI - r))
        + r * s
    )


# ---------------------------------------------------------------------------
# q-Pochhammer symbol
# ---------------------------------------------------------------------------

def qpochhammer(a: complex, q: complex, n: Optional[int] = None) -> complex:
    """(a; q)_n = prod_{k=0}^{n-1} (1 - a*q^k); n = None means infinity.

    The infinite product requires |q| < 1 and is truncated once
    |a*q^k| < 1e-17 * (1 + |accumulated log|).
    """
    a = complex(a)
    q = complex(q)
    if n is not None and not (isinstance(n, float) and math.isinf(n)):
        n = int(n)
        if n < 0:
            raise DomainError("q-Pochhammer order must be >= 0")
        prod = 1.0 + 0.0j
        aqk = a
        for _ in range(n):
            prod *= 1.0 - aqk
            aqk *= q
        return prod
    if abs(q) >= 1.0:
        raise ConvergenceError(f"(a; q)_inf requires |q| < 1, got |q| = {abs(q):g}")
    prod = 1.0 + 0.0j
    logsum = 0.0
    aqk = a
    for _ in range(100_000):
        if abs(aqk) < 1e-17 * (1.0 + logsum):
            return prod
        f = 1.0 - aqk
        prod *= f
        if f != 0.0:
            logsum += abs(math.log(abs(f)))
        aqk *= q
    raise ConvergenceError("q-Pochhammer infinite product did not truncate")


# ---------------------------------------------------------------------------
# complex polygamma
# ---------------------------------------------------------------------------

_PSI_ASYM_TERMS = 12
_PSI_SHIFT_RADIUS = 40.0


def _polygamma_asymptotic(k: int, z):
    if k == 0:
        s = np.log(z) - 0.5 / z
        zin = 1.0 / (z * z)
        zp = np.ones_like(z)
        for j in range(1, _PSI_ASYM_TERMS):
            zp = zp * zin
            s = s - (_bern(2 * j) / (2 * j)) * zp
        return s
    sign = (-1.0) ** (k - 1)
    s = sign * (math.factorial(k - 1) * z ** (-k) + 0.5 * math.factorial(k) * z ** (-k - 1))
    zin = 1.0 / (z * z)
    zp = z ** (-float(k))
    for j in range(1, _PSI_ASYM_TERMS):
        zp = zp * zin
        s = s + sign * _bern(2 * j) * (math.factorial(2 * j + k - 1) / math.factorial(2 * j)) * zp
    return s


def _polygamma_array(k: int, z: np.ndarray) -> np.ndarray:
    """psi^(k) on a complex array via recurrence shift + asymptotic series."""
    z = np.array(z, dtype=complex)
    acc = np.zeros_like(z)
    mask = (np.abs(z) < _PSI_SHIFT_RADIUS) | (z.real < 0.5)
    guard = 0
    while mask.any():
        zm = z[mask]
        if k == 0:
            acc[mask] -= 1.0 / zm
        else:
            acc[mask] -= (-1.0) ** k * math.factorial(k) * zm ** (-k - 1)
        z[mask] = zm + 1.0
        mask = (np.abs(z) < _PSI_SHIFT_RADIUS) | (z.real < 0.5)
        guard += 1
        if guard > 2000:
            raise ConvergenceError("polygamma shift did not terminate")
    return _polygamma_asymptotic(k, z) + acc


def polygamma(k: int, z: complex) -> complex:
    """Polygamma function psi^(k)(z) for k in {0..4} and complex z.

    Uses the recurrence psi^(k)(z) = psi^(k)(z+1) - (-1)^k k! z^(-k-1)
    to shift into |z| >= 40, then the Bernoulli asymptotic series.

    Raises
    ------
    PoleError
        z within 1e-12 of a nonpositive integer.
    """
    if not 0 <= k <= 4:
        raise DomainError("polygamma implemented for orders 0..4")
    z = complex(z)
    if abs(z - round(z.real)) < 1e-12 and round(z.real) <= 0 and abs(z.imag) < 1e-12:
        raise PoleError(f"psi^({k}) pole at z = {z}", location=round(z.real))
    return complex(_polygamma_array(k, np.array([z]))[0])


# ---------------------------------------------------------------------------
# Barnes double gamma
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BarnesConstants:
    """Modular constants C(tau), D(tau) of the double gamma function,
    computed from Barnes' limit formulas with polygamma corrections."""

    tau: complex
    C: complex
    D: complex
    m_used: int
    err_est: float


def _constants_at(tau: complex, m: int) -> Tuple[complex, complex]:
    ks = np.arange(1, m) * tau
    psi0 = _polygamma_array(0, ks)
    psi1 = _polygamma_array(1, ks)
    mt = m * tau
    p0, p1, p2, p3, p4 = (complex(_polygamma_array(k, np.array([mt]))[0]) for k in range(5))
    C = (
        psi0.sum()
        + 0.5 * p0
        - (loggamma(mt) - 0.5 * math.log(_TWO_PI)) / tau
        - (tau / 12.0) * p1
        + (tau**3 / 720.0) * p3
    )
    D = (
        psi1.sum()
        + 0.5 * p1
        - p0 / tau
        - (tau / 12.0) * p2
        + (tau**3 / 720.0) * p4
    )
    return complex(C), complex(D)


_constants_cache: dict = {}
_constants_lock = threading.Lock()


def barnes_constants(tau: complex, target_err: float = 1e-12) -> BarnesConstants:
    """C(tau) and D(tau) with m doubled until two refinements agree.

    Starts from m with |m*tau| >= 32 and doubles until successive values
    agree within ``target_err`` (error decays like m^-5 / m^-6 until the
    summation rounding floor, a few units in 1e-14, is reached; hitting
    that floor within 50x the target also stops the refinement, with the
    achieved difference reported as ``err_est``).

    Raises
    ------
    DomainError
        tau = 0 or arg(tau) = +-pi.
    ConvergenceError
        no agreement reached by m = 2**20.
    """
    tau = complex(tau)
    if tau == 0 or (tau.real < 0 and tau.imag == 0):
        raise DomainError("barnes constants need |arg tau| < pi, tau != 0")
    key = (tau, float(target_err))
    with _constants_lock:
        hit = _constants_cache.get(key)
    if hit is not None:
        return hit

    m = max(int(math.ceil(32.0 / abs(tau))), 16)
    C_prev, D_prev = _constants_at(tau, m)
    err_prev = math.inf
    while m <= 2**20:
        m *= 2
        C_cur, D_cur = _constants_at(tau, m)
        err = abs(C_cur - C_prev) + abs(D_cur - D_prev)
        at_floor = err > 0.25 * err_prev and err <= 50.0 * target_err
        if err <= target_err or at_floor:
            out = BarnesConstants(tau=tau, C=C_cur, D=D_cur, m_used=m, err_est=err)
            with _constants_lock:
                _constants_cache[key] = out
            return out
        C_prev, D_prev = C_cur, D_cur
        err_prev = err
    raise ConvergenceError(f"barnes constants did not converge for tau = {tau}")


class _TauTable:
    """Per-tau cache of loggamma(m*tau), psi(m*tau), psi'(m*tau) arrays."""

    def __init__(self, tau: complex):
        self.tau = tau
        cst = barnes_constants(tau)
        self.a_tilde = (tau / 2.0) * np.log(_TWO_PI * tau) + 0.5 * np.log(tau) - tau * cst.C
        self.b_tilde = -tau * np.log(tau) - tau * tau * cst.D
        self.err_const = cst.err_est
        self._cap = 0
        self._lg = np.empty(0, complex)
        self._p0 = np.empty(0, complex)
        self._p1 = np.empty(0, complex)
        self._lock = threading.Lock()

    def arrays(self, m_terms: int):
        with self._lock:
            if m_terms > self._cap:
                cap = max(64, 1 << int(math.ceil(math.log2(m_terms))))
                mt = np.arange(1, cap + 1) * self.tau
                self._lg = loggamma(mt)
                self._p0 = _polygamma_array(0, mt)
                self._p1 = _polygamma_array(1, mt)
                self._cap = cap
            return self._lg[:m_terms], self._p0[:m_terms], self._p1[:m_terms]


_tau_tables: dict = {}
_tau_tables_lock = threading.Lock()


def _tau_table(tau: complex) -> _TauTable:
    tau = complex(tau)
    with _tau_tables_lock:
        tab = _tau_tables.get(tau)
    if tab is None:
        tab = _TauTable(tau)
        with _tau_tables_lock:
            _tau_tables[tau] = tab
    return tab


_TAIL_ORDER = 18


def _log_g_tail(z: np.ndarray, tau: complex, M: int) -> np.ndarray:
    """Euler-Maclaurin tail sum_{m>M} of the product's log terms.

    The summand has the asymptotic expansion sum_{r>=2} d_r(z) x^-r at
    x = m*tau, so the tail is sum_r d_r(z) tau^-r zeta(r, M+1) exactly.
    """
    tail = np.zeros_like(z)
    for r in range(2, _TAIL_ORDER + 1):
        d = (-1.0) ** r * (_bernoulli_poly(r + 1, z) - _bern(r + 1)) / (r * (r + 1))
        if r == 2:
            d = d + 0.25 * z * z
        if r % 2 == 0:
            d = d - z * (_bern(r) / r)
        else:
            d = d + 0.5 * z * z * _bern(r - 1)
        tail = tail + d * tau ** (-float(r)) * float(_hurwitz_zeta(r, M + 1))
    return tail


def log_barnes_g_many(z, tau: complex, m_terms: Optional[int] = None):
    """log G(z; tau) on a complex array (shared tau); returns (values, err_est).

    No lattice-zero screening is performed here: arguments that hit the
    zero lattice produce infinities the caller must have excluded.
    """
    tau = complex(tau)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    tab = _tau_table(tau)
    zmax = float(np.max(np.abs(z))) if z.size else 0.0
    M = m_terms or int(max(math.ceil(40.0 / abs(tau)), math.ceil(5.0 * zmax / abs(tau)), 32))
    lg, p0, p1 = tab.arrays(M)
    mt = np.arange(1, M + 1) * tau

    out = -np.log(tau) - loggamma(z) + tab.a_tilde * z / tau + tab.b_tilde * z * z / (2.0 * tau * tau)
    # chunk the (n_z x M) matrix to bound memory
    chunk = max(1, (1 << 21) // M)
    for i0 in range(0, z.size, chunk):
        zc = z[i0 : i0 + chunk, None]
        out[i0 : i0 + chunk] += np.sum(
            lg - loggamma(zc + mt) + zc * p0 + 0.5 * zc * zc * p1, axis=1
        )
    out += _log_g_tail(z, tau, M)
    # error: constants error amplified by |z|^2 plus tail truncation scale
    err = tab.err_const * (1.0 + zmax) ** 2 / abs(tau) + (zmax / (M * abs(tau))) ** _TAIL_ORDER + 1e-15 * M
    return out, float(err)


def lattice_zero_distance(z: complex, tau: complex):
    """Distance from z to the zero lattice {-(m*tau + n): m, n >= 0} of
    G(.; tau), with the nearest lattice index.

    Returns (distance, (m, n)) or (inf, None) when no lattice point is
    anywhere near.
    """
    z = complex(z)
    tau = complex(tau)
    w = -z  # want w = m*tau + n with m, n >= 0
    best = (math.inf, None)
    if abs(tau.imag) > 1e-14:
        a0 = w.imag / tau.imag
        for a in {math.floor(a0), math.ceil(a0)}:
            if a < 0:
                continue
            b = round(w.real - a * tau.real)
            if b < 0:
                continue
            d = abs(z + a * tau + b)
            if d < best[0]:
                best = (d, (int(a), int(b)))
        return best
    # real tau: lattice lies on the real axis
    if abs(w.imag) > 0.75:
        return best
    a_hi = int(max(0.0, w.real / tau.real)) + 2
    if a_hi > 100_000:
        return best
    for a in range(0, a_hi):
        b = round(w.real - a * tau.real)
        if b < 0:
            continue
        d = abs(z + a * tau + b)
        if d < best[0]:
            best = (d, (int(a), int(b)))
    return best


def log_barnes_g(z: complex, tau: complex) -> EvalResult:
    """A branch of log G(z; tau), |arg tau| < pi.

    The value exponentiates to G(z; tau) exactly; the imaginary part is
    defined modulo 2*pi*i (identities at log level must be checked that
    way).  Arguments on the zero lattice raise; arguments within
    1e-8*(1+|z|) of it are evaluated but tagged ``+near-zero`` so callers
    see the accuracy loss.

    Raises
    ------
    DomainError
        arg(tau) = +-pi or tau = 0.
    PoleOrZeroError
        z on the zero lattice -(m*tau + n), m, n >= 0 (G vanishes there;
        the lattice index is attached to the exception).
    """
    z = complex(z)
    tau = complex(tau)
    if tau == 0 or (tau.real < 0 and tau.imag == 0):
        raise DomainError("log_barnes_g needs |arg tau| < pi, tau != 0")
    dist, idx = lattice_zero_distance(z, tau)
    scale = 1.0 + abs(z)
    if dist < 1e-13 * scale:
        raise PoleOrZeroError(
            f"G(z; tau) has a zero at z = {z} (lattice index {idx})",
            location=z,
            index=idx,
        )
    vals, err = log_barnes_g_many(np.array([z]), tau)
    method = "barnes-log-product"
    if dist < 1e-8 * scale:
        method += "+near-zero"
        err += abs(math.log(dist))
    return EvalResult(value=complex(vals[0]), abs_err=err, terms=0, method=method)
