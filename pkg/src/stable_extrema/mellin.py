"""The Mellin transform of the supremum at fixed time,

    M(s) = E[ S_1^(s-1) ],    S_1 = sup_{t <= 1} X_t,

a meromorphic function of s computed from a ratio of six Barnes G values
(universal route) or from finite sine/gamma products for the C(k, l)
classes.  The module also provides the quasi-periodic recursions and
reflection identities used as consistency checks, closed-form residue
tables at the two pole lattices, the exponential decay rate along
vertical lines (used to truncate inversion contours), and the numeric
bridge to the Wiener-Hopf factor.

Pole handling: G-argument coincidences between numerator and denominator
(exact for the spectrally one-sided boundary alpha*rho = 1, Brownian
included) are cancelled algebraically before evaluation; remaining
arguments falling on the G zero lattice correspond to genuine zeros or
poles of M.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.special import gamma as _gamma, loggamma, rgamma

from .core import CklClass, Parameters, detect_ckl, is_near_rational, make_params
from .errors import (
    DomainError,
    NearPoleWarning,
    PoleError,
    SmallDenominatorError,
)
from .quadrature import de_line
from .result import EvalResult
from .specfun import log_barnes_g_many

__all__ = [
    "MellinStrip",
    "ResidueTable",
    "mellin",
    "mellin_log",
    "mellin_ckl",
    "mellin_strip",
    "mellin_recursion_check",
    "mellin_reflections_check",
    "residue_coeffs",
    "residue_numeric",
    "coeff_a",
    "coeff_b",
    "coeff_c_plus",
    "coeff_c_minus",
    "mellin_decay_rate",
    "mellin_decay_bound",
    "phi_mellin_bridge",
    "nearest_pole",
]

_PI = math.pi


@dataclass(frozen=True)
class MellinStrip:
    """Pole-free vertical strip c_min < Re(s) < c_max around s = 1."""

    c_min: float
    c_max: float


def mellin_strip(params: Parameters) -> MellinStrip:
    """Strip of direct convergence of M: (1 - alpha*rho, 1 + alpha).

    Equivalently, the transform of phi converges for 0 < Re(s) <
    alpha*rho and maps onto the left edge through s -> 1 - s.
    """
    return MellinStrip(c_min=1.0 - params.alpha * params.rho, c_max=1.0 + params.alpha)


def _logsin(w: complex) -> complex:
    """A logarithm of sin(w), safe for large |Im w|."""
    w = complex(w)
    if abs(w.imag) <= 30.0:
        return cmath.log(cmath.sin(w))
    if w.imag > 0:
        # sin w = (i/2) e^{-iw} (1 - e^{2iw})
        return cmath.log(0.5j) - 1j * w + cmath.log(1.0 - cmath.exp(2j * w))
    return cmath.log(-0.5j) + 1j * w + cmath.log(1.0 - cmath.exp(-2j * w))


# ---------------------------------------------------------------------------
# universal double gamma route
# ---------------------------------------------------------------------------

def _mellin_log_raw(alpha: float, rho: float, s) -> Tuple[np.ndarray, float]:
    """A branch of log M(s) via Barnes G, vectorized in s.

    Numerator arguments carry +, denominator -; the pair
    (alpha*(1-rho)+2-s, alpha+1-s) coincides identically when
    alpha*rho = 1 and is dropped before evaluation (0/0 cancellation).
    """
    if not alpha > 0:
        raise DomainError("needs alpha > 0")
    if not 0.0 < rho <= 1.0:
        raise DomainError("needs rho in (0, 1]")
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    k = s.size
    c_plus_const = [alpha * rho]
    c_minus_const = [alpha * (1.0 - rho) + 1.0]
    pieces = []
    signs = []
    if abs((alpha * (1.0 - rho) + 2.0) - (alpha + 1.0)) > 1e-12 * (1.0 + alpha):
        pieces += [alpha * (1.0 - rho) + 2.0 - s, alpha + 1.0 - s]
        signs += [+1.0, -1.0]
    pieces += [alpha * rho - 1.0 + s, alpha - 1.0 + s]
    signs += [-1.0, +1.0]

    args = np.concatenate([np.array(c_plus_const + c_minus_const, dtype=complex)] + pieces)
    vals, err = log_barnes_g_many(args, alpha)
    out = (s - 1.0) * math.log(alpha) + vals[0] - vals[1]
    for i, sg in enumerate(signs):
        out = out + sg * vals[2 + i * k : 2 + (i + 1) * k]
    return out, err * (2.0 + len(signs))


# ---------------------------------------------------------------------------
# pole bookkeeping
# ---------------------------------------------------------------------------

def _generic_pole_candidates(params: Parameters, s: complex):
    """Nearest candidates among s+ = m + alpha*n (m, n >= 1) and
    s- = 1 - alpha*rho - m - alpha*n (m, n >= 0); yields (pole, kind, (m, n))."""
    alpha, rho = params.alpha, params.rho
    x = s.real
    out = []
    n_hi = int(max(0.0, (abs(x) + alpha * rho + 2.0) / alpha)) + 2
    for n in range(1, n_hi + 1):
        m = round(x - alpha * n)
        for mm in (m - 1, m, m + 1):
            if mm >= 1:
                out.append((mm + alpha * n, "plus", (mm, n)))
    for n in range(0, n_hi + 1):
        m = round(1.0 - alpha * rho - alpha * n - x)
        for mm in (m - 1, m, m + 1):
            if mm >= 0:
                out.append((1.0 - alpha * rho - mm - alpha * n, "minus", (mm, n)))
    return out


def _ckl_pole_candidates(params: Parameters, ckl: CklClass, s: complex):
    """Pole candidates s = m + alpha*n of the C(k, l) representation."""
    alpha = params.alpha
    k, l = ckl.k, ckl.l
    x = s.real
    out = []
    if l > 0:
        for n in range(0, k + 1):
            m = round(x - alpha * n)
            for mm in (m - 1, m, m + 1):
                if mm <= 1 - l or (mm >= 1 and n >= 1):
                    out.append((mm + alpha * n, "ckl", (mm, n)))
    else:
        n_hi = int((abs(x) + 2.0) / alpha) + 2
        for m in range(1, abs(l) + 2):
            for n in range(-n_hi, n_hi + 1):
                if n >= 1 or (m >= 2 and n <= k):
                    out.append((m + alpha * n, "ckl", (m, n)))
    return out


def nearest_pole(params: Parameters, s: complex, ckl: Optional[CklClass] = None):
    """Nearest pole of M to s; returns (pole, distance, kind, (m, n)) or None."""
    s = complex(s)
    if abs(s.imag) > 1.0:
        return None
    if ckl is None:
        ckl = detect_ckl(params)
    cands = (
        _ckl_pole_candidates(params, ckl, s)
        if ckl is not None
        else _generic_pole_candidates(params, s)
    )
    best = None
    for pole, kind, mn in cands:
        d = abs(s - pole)
        if best is None or d < best[1]:
            best = (pole, d, kind, mn)
    return best


def _residue_at(params: Parameters, kind: str, mn: Tuple[int, int], ckl: Optional[CklClass]):
    m, n = mn
    alpha, rho = params.alpha, params.rho
    try:
        if kind == "plus":
            return -coeff_b(alpha, rho, m - 1, n)
        if kind == "minus":
            return coeff_a(alpha, rho, m, n)
        if kind == "ckl" and ckl is not None:
            if ckl.l > 0:
                return coeff_c_plus(alpha, ckl.k, ckl.l, m - 1, n)
            return coeff_c_minus(alpha, ckl.k, ckl.l, m - 1, n)
    except SmallDenominatorError:
        return None
    return None


def _check_pole(params: Parameters, s: complex, ckl: Optional[CklClass]):
    hit = nearest_pole(params, s, ckl)
    if hit is None:
        return
    pole, dist, kind, mn = hit
    scale = 1.0 + abs(s)
    if dist < 1e-9 * scale:
        raise PoleError(
            f"M(s) has a pole at s = {pole:.15g} (lattice index {mn})",
            location=pole,
            residue=_residue_at(params, kind, mn, ckl),
            index=mn,
        )
    if dist < 1e-6 * scale:
        warnings.warn(
            f"s = {s} is within {dist:.2e} of the pole at {pole:.15g}; accuracy degraded",
            NearPoleWarning,
            stacklevel=3,
        )


# ---------------------------------------------------------------------------
# public evaluators
# ---------------------------------------------------------------------------

def mellin(params: Parameters, s: complex) -> EvalResult:
    """M(s) by the six-G double gamma representation, valid for all s
    away from the pole lattices.

    Raises
    ------
    PoleError
        s within 1e-9*(1+|s|) of a pole (closed-form residue attached).

    Warns
    -----
    NearPoleWarning
        s within 1e-6*(1+|s|) of a pole.
    """
    s = complex(s)
    ckl = detect_ckl(params)
    _check_pole(params, s, ckl)
    logs, err = _mellin_log_raw(params.alpha, params.rho, s)
    val = cmath.exp(complex(logs[0]))
    return EvalResult(value=val, abs_err=abs(val) * err, terms=6, method="mellin-double-gamma")


def mellin_log(params: Parameters, s: complex) -> complex:
    """A branch of log M(s) (no pole screening); useful for decay studies
    where |M| under- or overflows."""
    logs, _ = _mellin_log_raw(params.alpha, params.rho, complex(s))
    return complex(logs[0])


def _mellin_ckl_log(alpha: float, k: int, l: int, s: complex) -> complex:
    if l > 0:
        out = loggamma(s) - loggamma(1.0 - (1.0 - s) / alpha)
        for j in range(1, l):
            out += _logsin(_PI / alpha * (s - 1.0 + j)) - math.log(abs(math.sin(_PI * j / alpha)))
            if math.sin(_PI * j / alpha) < 0:
                out += 1j * _PI
        for j in range(1, k + 1):
            out += cmath.log(complex(math.sin(_PI * alpha * j))) - _logsin(_PI * (1.0 - s + alpha * j))
        return out
    out = loggamma(1.0 + (1.0 - s) / alpha) - loggamma(2.0 - s)
    for j in range(1, abs(k)):
        out += _logsin(_PI * (s - 1.0 + alpha * j)) - cmath.log(complex(math.sin(_PI * alpha * j)))
    for j in range(1, abs(l) + 1):
        out += cmath.log(complex(math.sin(_PI * j / alpha))) - _logsin(_PI / alpha * (1.0 - s + j))
    return out


def _int_dist(x: complex) -> float:
    return abs(x - round(x.real))


def _ckl_singular_scale(alpha: float, k: int, l: int, s: complex) -> float:
    """Distance of s to the nearest removable 0/0 of the finite form:
    sine arguments near integers or gamma arguments near nonpositive
    integers (genuine poles are screened separately)."""
    d = math.inf
    if l > 0:
        for j in range(1, k + 1):
            d = min(d, _int_dist(1.0 - s + alpha * j))
        for j in range(1, l):
            d = min(d, _int_dist((s - 1.0 + j) / alpha) * alpha)
        if s.real < 0.5:
            d = min(d, _int_dist(s))
        if (1.0 - (1.0 - s) / alpha).real < 0.5:
            d = min(d, _int_dist(1.0 - (1.0 - s) / alpha) * alpha)
    else:
        for j in range(1, abs(l) + 1):
            d = min(d, _int_dist((1.0 - s + j) / alpha) * alpha)
        for j in range(1, abs(k)):
            d = min(d, _int_dist(s - 1.0 + alpha * j))
        if (2.0 - s).real < 0.5:
            d = min(d, _int_dist(2.0 - s))
        if (1.0 + (1.0 - s) / alpha).real < 0.5:
            d = min(d, _int_dist(1.0 + (1.0 - s) / alpha) * alpha)
    return d


def mellin_ckl(params: Parameters, ckl: CklClass, s: complex) -> EvalResult:
    """M(s) as a finite product of sines and two gamma factors, for
    processes in C(k, l); the l > 0 and l < 0 branches mirror each other.

    The finite form has removable 0/0 configurations (a numerator zero
    cancelling a denominator zero) at isolated non-pole points; close to
    those, M is recovered from a four-point interpolation stencil at
    distance 1e-3, exact up to O(h^4) since M is analytic there.
    """
    s = complex(s)
    _check_pole(params, s, ckl)
    alpha = params.alpha
    nt = abs(ckl.k) + abs(ckl.l) + 2
    if _ckl_singular_scale(alpha, ckl.k, ckl.l, s) < 1e-7 * (1.0 + abs(s)):
        h = 1e-3
        f = lambda ss: cmath.exp(_mellin_ckl_log(alpha, ckl.k, ckl.l, ss))
        val = (4.0 * (f(s + h) + f(s - h)) - (f(s + 2 * h) + f(s - 2 * h))) / 6.0
        return EvalResult(value=val, abs_err=1e-10 * (1.0 + abs(val)), terms=nt, method="mellin-ckl+stencil")
    val = cmath.exp(_mellin_ckl_log(alpha, ckl.k, ckl.l, s))
    return EvalResult(value=val, abs_err=1e-13 * nt * abs(val), terms=nt, method="mellin-ckl")


# ---------------------------------------------------------------------------
# functional equation checks
# ---------------------------------------------------------------------------

def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def mellin_recursion_check(params: Parameters, s: complex) -> Tuple[float, float]:
    """Relative residuals of the two quasi-periodicity recursions

        M(s+1)     = (alpha/pi) sin(pi(rho-(1-s)/alpha))
                     Gamma(1-s/alpha) Gamma(1-(1-s)/alpha) M(s),
        M(s+alpha) = (alpha/pi) sin(pi(alpha*rho-1+s))
                     Gamma(1-s) Gamma(alpha-1+s) M(s).
    """
    alpha, rho = params.alpha, params.rho
    s = complex(s)
    lm = lambda ss: complex(_mellin_log_raw(alpha, rho, ss)[0][0])
    m_s = cmath.exp(lm(s))
    r1 = _rel(
        cmath.exp(lm(s + 1.0)),
        (alpha / _PI)
        * cmath.sin(_PI * (rho - (1.0 - s) / alpha))
        * _gamma(1.0 - s / alpha)
        * _gamma(1.0 - (1.0 - s) / alpha)
        * m_s,
    )
    r2 = _rel(
        cmath.exp(lm(s + alpha)),
        (alpha / _PI)
        * cmath.sin(_PI * (alpha * rho - 1.0 + s))
        * _gamma(1.0 - s)
        * _gamma(alpha - 1.0 + s)
        * m_s,
    )
    return r1, r2


def mellin_reflections_check(params: Parameters, s: complex) -> Tuple[float, float]:
    """Relative residuals of the two reflection identities: s ->
    2 - alpha*rho - s at fixed parameters, and s -> 1 - (1-s)/alpha with
    parameters mapped to (1/alpha, alpha*rho)."""
    alpha, rho = params.alpha, params.rho
    s = complex(s)
    lm = lambda ss: complex(_mellin_log_raw(alpha, rho, ss)[0][0])
    m_s = cmath.exp(lm(s))
    r1 = _rel(
        m_s,
        _gamma(alpha * rho - 1.0 + s)
        / _gamma(1.0 - s)
        * _gamma(1.0 - rho + (1.0 - s) / alpha)
        / _gamma(1.0 - (1.0 - s) / alpha)
        * cmath.exp(lm(2.0 - alpha * rho - s)),
    )
    m_inv = cmath.exp(complex(_mellin_log_raw(1.0 / alpha, alpha * rho, 1.0 - (1.0 - s) / alpha)[0][0]))
    r2 = _rel(
        m_s,
        _gamma(s)
        / _gamma(2.0 - s)
        * _gamma(1.0 + (1.0 - s) / alpha)
        / _gamma(1.0 - (1.0 - s) / alpha)
        * m_inv,
    )
    return r1, r2


# ---------------------------------------------------------------------------
# residue coefficients
# ---------------------------------------------------------------------------

def _sin_ratio_product(terms) -> float:
    """prod sin(num_j)/sin(den_j) with a degeneracy guard on denominators."""
    out = 1.0
    for num, den in terms:
        sd = math.sin(den)
        if abs(sd) < 1e-12:
            raise SmallDenominatorError(f"sin({den:g}) ~ 0 in residue coefficient")
        out *= math.sin(num) / sd
    return out


def coeff_a(alpha: float, rho: float, m: int, n: int) -> float:
    """Small-x series / left-lattice residue coefficient a(m, n)."""
    if m < 0 or n < 0:
        raise DomainError("a(m, n) needs m, n >= 0")
    prod = _sin_ratio_product(
        [(_PI / alpha * (alpha * rho + j - 1.0), _PI * j / alpha) for j in range(1, m + 1)]
        + [(_PI * alpha * (rho + j - 1.0), _PI * alpha * j) for j in range(1, n + 1)]
    )
    return (
        (-1.0) ** (m + n)
        * rgamma(1.0 - rho - n - m / alpha)
        * rgamma(alpha * rho + m + alpha * n)
        * prod
    )


def coeff_b(alpha: float, rho: float, m: int, n: int) -> float:
    """Large-x series / right-lattice residue coefficient b(m, n).

    Evaluated as the gamma-cancelled form (the a(m, n) prefactor's gammas
    cancel), which stays finite where a vanishes."""
    if m < 0 or n < 1:
        raise DomainError("b(m, n) needs m >= 0, n >= 1")
    prod = _sin_ratio_product(
        [(_PI / alpha * (alpha * rho + j - 1.0), _PI * j / alpha) for j in range(1, m + 1)]
        + [(_PI * alpha * (rho + j - 1.0), _PI * alpha * j) for j in range(1, n + 1)]
    )
    return (
        (-1.0) ** (m + n)
        * rgamma(1.0 + n + m / alpha)
        * rgamma(-m - alpha * n)
        * prod
    )


def coeff_c_plus(alpha: float, k: int, l: int, m: int, n: int) -> float:
    """C(k, l) residue coefficient (l > 0 branch), n in {0..k}, m integer."""
    if not 0 <= n <= k:
        raise DomainError(f"c+(m, n) needs 0 <= n <= k = {k}")
    prod = _sin_ratio_product(
        [(_PI / alpha * (j + m), _PI * j / alpha) for j in range(1, l)]
        + [(_PI * alpha * (j + n), _PI * alpha * j) for j in range(1, k - n + 1)]
    )
    return (
        (-1.0) ** (m * (k + 1) + n * l + 1)
        * rgamma(1.0 + n + m / alpha)
        * rgamma(-m - alpha * n)
        * prod
    )


def coeff_c_minus(alpha: float, k: int, l: int, m: int, n: int) -> float:
    """C(k, l) residue coefficient (l < 0 branch), m in {0..|l|}, n integer."""
    if not 0 <= m <= abs(l):
        raise DomainError(f"c-(m, n) needs 0 <= m <= |l| = {abs(l)}")
    prod = _sin_ratio_product(
        [(_PI * alpha * (j + n), _PI * alpha * j) for j in range(1, abs(k))]
        + [(_PI / alpha * (j + m), _PI * j / alpha) for j in range(1, abs(l) - m + 1)]
    )
    return (
        (-1.0) ** (m * k + n * (l + 1) + 1)
        * rgamma(1.0 + n + m / alpha)
        * rgamma(-m - alpha * n)
        * prod
    )


@dataclass(frozen=True)
class ResidueTable:
    """Pole locations and residues of M(s).

    ``kind`` is ``"generic"`` (irrational alpha; two lattices) or
    ``"ckl_pos"``/``"ckl_neg"`` (C(k, l) with l > 0 / l < 0; single
    lattice with index-restricted families).  Entries are tuples
    (pole, residue, (m, n)).
    """

    params: Parameters
    kind: str
    entries: tuple


def residue_coeffs(
    params: Parameters,
    kind: str = "auto",
    m_max: int = 4,
    n_max: int = 4,
    ckl: Optional[CklClass] = None,
) -> ResidueTable:
    """Closed-form residue table of M(s).

    ``generic`` tabulates s- = 1 - alpha*rho - m - alpha*n with residue
    a(m, n) and s+ = m + alpha*n with residue -b(m-1, n); it requires
    alpha to pass the irrationality diagnostic.  The C(k, l) kinds
    tabulate the index families of the finite representation with
    residues c+(m-1, n) or c-(m-1, n).
    """
    alpha, rho = params.alpha, params.rho
    if kind == "auto":
        if ckl is None:
            ckl = detect_ckl(params)
        kind = ("ckl_pos" if ckl.l > 0 else "ckl_neg") if ckl is not None else "generic"
    entries = []
    if kind == "generic":
        if is_near_rational(alpha):
            raise SmallDenominatorError(
                f"alpha = {alpha} too close to rational for the generic residue lattice"
            )
        for m in range(0, m_max + 1):
            for n in range(0, n_max + 1):
                entries.append((1.0 - alpha * rho - m - alpha * n, coeff_a(alpha, rho, m, n), (m, n)))
        for m in range(1, m_max + 1):
            for n in range(1, n_max + 1):
                entries.append((m + alpha * n, -coeff_b(alpha, rho, m - 1, n), (m, n)))
        return ResidueTable(params=params, kind=kind, entries=tuple(entries))

    if ckl is None:
        ckl = detect_ckl(params)
    if ckl is None:
        raise DomainError(f"no C(k, l) certificate for {params}")
    k, l = ckl.k, ckl.l
    if kind == "ckl_pos":
        if l <= 0:
            raise DomainError("ckl_pos table needs l > 0")
        for n in range(0, k + 1):
            for m in range(1 - l, -l - m_max, -1):
                entries.append((m + alpha * n, coeff_c_plus(alpha, k, l, m - 1, n), (m, n)))
        for n in range(1, k + 1):
            for m in range(1, m_max + 1):
                entries.append((m + alpha * n, coeff_c_plus(alpha, k, l, m - 1, n), (m, n)))
    elif kind == "ckl_neg":
        if l >= 0:
            raise DomainError("ckl_neg table needs l < 0")
        for m in range(1, abs(l) + 2):
            for n in range(1, n_max + 1):
                entries.append((m + alpha * n, coeff_c_minus(alpha, k, l, m - 1, n), (m, n)))
        for m in range(2, abs(l) + 2):
            for n in range(k, k - n_max, -1):
                entries.append((m + alpha * n, coeff_c_minus(alpha, k, l, m - 1, n), (m, n)))
    else:
        raise DomainError(f"unknown residue table kind {kind!r}")
    return ResidueTable(params=params, kind=kind, entries=tuple(entries))


def residue_numeric(params: Parameters, s0: float, radius: float = 1e-3, nodes: int = 64) -> complex:
    """Residue of M at s0 by a trapezoid contour integral on a small circle."""
    theta = 2.0 * _PI * np.arange(nodes) / nodes
    ring = s0 + radius * np.exp(1j * theta)
    logs, _ = _mellin_log_raw(params.alpha, params.rho, ring)
    vals = np.exp(logs)
    return complex(np.mean(vals * radius * np.exp(1j * theta)))


# ---------------------------------------------------------------------------
# decay bound and bridge
# ---------------------------------------------------------------------------

def mellin_decay_rate(params: Parameters) -> float:
    """Decay rate r in ln|M(x+iy)| ~ -r*|y|:
    r = (pi/(2*alpha)) * (alpha*(1-rho) + 1 - alpha*rho)."""
    alpha, rho = params.alpha, params.rho
    return _PI / (2.0 * alpha) * (alpha * (1.0 - rho) + 1.0 - alpha * rho)


def mellin_decay_bound(params: Parameters, x: float, y: float) -> float:
    """Leading-order value of ln|M(x+iy)| for large |y| (the o(y) term is
    dropped; inversion contours apply a 1.5x safety factor on top)."""
    if abs(y) < 10.0:
        raise DomainError("decay bound stated for |y| >= 10")
    return -mellin_decay_rate(params) * abs(y)


def phi_mellin_bridge(params: Parameters, s: complex) -> float:
    """Absolute residual between the numeric Mellin transform of phi and
    Gamma(s) Gamma(1-s/alpha) M(1-s), for 0 < Re(s) < alpha*rho.

    The integral over z = e^w converges with rates Re(s) to the left and
    alpha*rho - Re(s) to the right; phi is evaluated by automatic
    dispatch under the integral.
    """
    from .wiener_hopf import phi as _phi

    s = complex(s)
    alpha, rho = params.alpha, params.rho
    if not 0.0 < s.real < alpha * rho:
        raise DomainError("bridge needs 0 < Re(s) < alpha*rho")

    # integrand ~ e^(w*Re(s)) to the left, e^(w*(Re(s)-alpha*rho)) to the
    # right; cut where the envelope is below e^-80 to keep z = e^w sane
    w_hi = 80.0 / (alpha * rho - s.real)
    w_lo = -80.0 / s.real

    def integrand(w: float) -> complex:
        if w > w_hi or w < w_lo:
            return 0.0
        return cmath.exp(w * s) * _phi(params, math.exp(w)).value

    rate = min(s.real, alpha * rho - s.real)
    val, _, _ = de_line(integrand, scale=1.0 / rate, target=1e-10)
    rhs = (
        _gamma(s)
        * _gamma(1.0 - s / alpha)
        * cmath.exp(complex(_mellin_log_raw(alpha, rho, 1.0 - s)[0][0]))
    )
    return abs(val - rhs)
