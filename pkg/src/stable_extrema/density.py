"""Density and distribution function of the supremum S_1 = sup_{t<=1} X_t.

Three routes, selected automatically per evaluation point:

* convergent double series in powers of x (C(k, l) classes only): the
  coefficients sit on the residue lattice of the Mellin transform and the
  series converges on all of (0, inf); Brownian motion enters as C(0, 1)
  at alpha = 2.  In floating point the terms grow to exp-sized humps
  before cancelling, so deep in the far region the series hands over to
* the companion asymptotic expansion at the opposite end of the axis
  (x -> infinity for alpha > 1, x -> 0+ for alpha < 1), summed to its
  optimal truncation separately at every evaluation point;
* generic (certificate-free) parameters use asymptotic double series near
  the ends when their optimal truncation already meets tolerance, and
* numerical Mellin inversion along Re(s) = 1 otherwise, with the contour
  truncated where the exponential decay bound of |M| (times a 1.5 safety
  factor) pushes the tail below tolerance.  Contour values are cached per
  parameter set, so x-grids reuse one set of M values.

The distribution function integrates the active series term by term or
inverts M(s)/(1-s) on contours shifted off s = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import CklClass, Parameters, detect_ckl, is_near_rational
from .errors import (
    AccuracyError,
    ConvergenceError,
    DomainError,
    SmallDenominatorError,
)
from .mellin import (
    _mellin_log_raw,
    coeff_a,
    coeff_b,
    coeff_c_minus,
    coeff_c_plus,
    mellin_decay_rate,
)
from .quadrature import gauss_legendre_panels
from .result import EvalResult

__all__ = [
    "SeriesPlan",
    "DensityProfile",
    "pdf",
    "cdf",
    "cdf_grid",
    "pdf_ckl_series",
    "pdf_asymptotic_small_x",
    "pdf_asymptotic_large_x",
    "pdf_mellin_inversion",
    "pdf_derivative",
    "pdf_profile",
    "moment_ckl",
    "probe_generic_series",
]

_PI = math.pi


@dataclass(frozen=True)
class SeriesPlan:
    """What the dispatcher intends to do at one evaluation point."""

    region: str  # "small_x" | "large_x" | "all_x"
    kind: str  # "convergent" | "asymptotic" | "inversion"
    truncation: tuple  # (m, n) caps or indices
    err_est: float


@dataclass(frozen=True)
class DensityProfile:
    """Density values over a grid with per-point method and error tags."""

    x_grid: np.ndarray
    p_values: np.ndarray
    methods: tuple
    errors: np.ndarray


# ---------------------------------------------------------------------------
# C(k, l) series machinery
# ---------------------------------------------------------------------------

def _ckl_row_specs(alpha: float, k: int, l: int, kind: str):
    """Index families of the C(k, l) double series as row generators.

    Each row fixes the finite index and runs an infinite one (j = 0, 1,
    ...); returns a list of (coef(j), expo(j)) pairs, signs folded in.
    ``kind`` selects the representation that converges on (0, inf)
    ("convergent") or the asymptotic companion at the opposite end.
    """
    big = alpha > 1.0
    conv = kind == "convergent"
    rows = []
    # the pairing below mirrors: for alpha > 1 the convergent family runs
    # m <= -l (l > 0) / n <= k (l < 0); swapping conv <-> asym swaps ends
    if (big and l > 0 and conv) or (not big and l > 0 and not conv):
        for n in range(0, k + 1):
            rows.append(
                (
                    lambda j, n=n: coeff_c_plus(alpha, k, l, -l - j, n),
                    lambda j, n=n: (l + j) - alpha * n - 1.0,
                    +1.0,
                )
            )
    elif (big and l > 0 and not conv) or (not big and l > 0 and conv):
        for n in range(1, k + 1):
            rows.append(
                (
                    lambda j, n=n: coeff_c_plus(alpha, k, l, j, n),
                    lambda j, n=n: -j - alpha * n - 1.0,
                    -1.0,
                )
            )
    elif (big and l < 0 and conv) or (not big and l < 0 and not conv):
        for m in range(1, abs(l) + 1):
            rows.append(
                (
                    lambda j, m=m: coeff_c_minus(alpha, k, l, m, k - j),
                    lambda j, m=m: -m - alpha * (k - j) - 1.0,
                    +1.0,
                )
            )
    else:
        for m in range(0, abs(l) + 1):
            rows.append(
                (
                    lambda j, m=m: coeff_c_minus(alpha, k, l, m, 1 + j),
                    lambda j, m=m: -m - alpha * (1 + j) - 1.0,
                    -1.0,
                )
            )
    return rows


def _build_row(coef, expo, sign, lx: float, stop: str):
    """Materialize one row; ``stop`` is "decay" (terms at the reference
    point fall 1e-18 below their peak, for convergent rows) or "trough"
    (divergent rows are cut well past their minimum-magnitude term).

    Sine factors give the coefficients structural zeros every few terms,
    so peak/trough tracking works on a 3-wide max-pool of the magnitudes
    rather than raw terms.
    """
    es, cs, lts = [], [], []
    peak = -math.inf
    trough = math.inf
    trough_idx = -1
    small_run = 0
    j = 0
    while True:
        c = coef(j)
        e = expo(j)
        if not math.isfinite(c):
            # coefficient left the floating range; the trough, if any,
            # must have been recorded long before
            break
        es.append(e)
        cs.append(sign * c)
        lts.append(math.log(abs(c)) + e * lx if c != 0.0 else -math.inf)
        pooled = max(lts[max(0, j - 2) : j + 1])
        peak = max(peak, pooled)
        if math.isfinite(pooled) and pooled < trough:
            trough, trough_idx = pooled, j
        if (
            stop == "trough"
            and j > 6
            and math.isfinite(pooled)
            and math.isfinite(trough)
            and pooled > trough + math.log(1e4)
        ):
            del es[trough_idx + 1 :], cs[trough_idx + 1 :]
            break
        if pooled < peak + math.log(1e-18):
            small_run += 1
            if small_run >= 6 and j > 4:
                break
        else:
            small_run = 0
        j += 1
        if j > 100_000:
            raise ConvergenceError("C(k, l) series row did not truncate")
    return np.array(es), np.array(cs)


_ckl_conv_cache: dict = {}
_ckl_asym_cache: dict = {}


def _ckl_conv_table(params: Parameters, ckl: CklClass, x_ref: float):
    """Flat (e, c) table of the convergent series, long enough for x_ref
    (bucketed in powers of two for reuse across grids)."""
    cap = 2.0 ** math.ceil(math.log2(min(max(x_ref, 1.0 / 256.0), 256.0)))
    key = (params.alpha, ckl.k, ckl.l, cap)
    hit = _ckl_conv_cache.get(key)
    if hit is None:
        es, cs = [], []
        for coef, expo, sign in _ckl_row_specs(params.alpha, ckl.k, ckl.l, "convergent"):
            e, c = _build_row(coef, expo, sign, math.log(cap), stop="decay")
            es.append(e)
            cs.append(c)
        hit = (np.concatenate(es), np.concatenate(cs))
        _ckl_conv_cache[key] = hit
    return hit


def _ckl_asym_rows(params: Parameters, ckl: CklClass):
    """Rows of the asymptotic companion, long enough to reach the optimal
    truncation at the hand-over region (|log x| ~ log 6); evaluation
    truncates each row per point."""
    key = (params.alpha, ckl.k, ckl.l)
    hit = _ckl_asym_cache.get(key)
    if hit is None:
        x_build = 6.0 if params.alpha > 1.0 else 1.0 / 6.0
        hit = [
            _build_row(coef, expo, sign, math.log(x_build), stop="trough")
            for coef, expo, sign in _ckl_row_specs(params.alpha, ckl.k, ckl.l, "asymptotic")
        ]
        _ckl_asym_cache[key] = hit
    return hit


def _power_sum(xs: np.ndarray, e: np.ndarray, c: np.ndarray):
    """sum_i c_i x^{e_i} per point, in log space (no overflow for large x
    with positive exponents); returns (values, cancellation estimates).
    The coefficients themselves carry ~1e-16 relative error, which bounds
    what any summation precision could achieve."""
    with np.errstate(divide="ignore"):
        lc = np.log(np.abs(c))
    sg = np.sign(c)
    lt = np.outer(np.log(xs), e) + lc[None, :]
    np.clip(lt, -745.0, 700.0, out=lt)
    terms = sg[None, :] * np.exp(lt)
    cancel = np.abs(terms).max(axis=1) * 2e-16 * max(1, int(math.sqrt(len(e))))
    return terms.sum(axis=1), cancel


def _asym_eval(rows, xs: np.ndarray, transform=None):
    """Sum asymptotic rows with per-point optimal truncation.

    Each row is cut at its minimum-magnitude term (isolated accidental
    zeros are bridged by a 3-wide max-pool before the minimum search);
    the reported error is 3x the trough term.  ``transform`` maps
    (e, c) -> (e', c'), e.g. term-wise integration.
    """
    vals = np.zeros(len(xs))
    errs = np.zeros(len(xs))
    for e, c in rows:
        if transform is not None:
            e, c = transform(e, c)
        if len(e) == 0:
            continue
        with np.errstate(divide="ignore"):
            lc = np.log(np.abs(c))
        lt = np.outer(np.log(xs), e) + lc[None, :]
        np.clip(lt, -745.0, 700.0, out=lt)
        terms = np.sign(c)[None, :] * np.exp(lt)
        at = np.abs(terms)
        if at.shape[1] >= 3:
            pooled = np.maximum(at[:, :-2], np.maximum(at[:, 1:-1], at[:, 2:]))
            idx = np.argmin(pooled, axis=1) + 1
        else:
            idx = np.full(len(xs), at.shape[1] - 1)
        cs = np.cumsum(terms, axis=1)
        take = cs[np.arange(len(xs)), idx]
        vals += take
        errs += 3.0 * at[np.arange(len(xs)), idx]
    return vals, errs


def _ckl_eval(params: Parameters, ckl: CklClass, xs: np.ndarray, integrated: bool):
    """(conv values, conv errors, asym values, asym errors) on a grid.

    ``integrated`` turns both representations into distribution values:
    term-wise integrals from 0 (alpha > 1) or complemented tails
    (alpha < 1); the asymptotic side integrates toward its own end.
    """
    big = params.alpha > 1.0
    x_ref = float(np.max(xs)) if big else float(np.min(xs))
    e, c = _ckl_conv_table(params, ckl, x_ref)
    rows = _ckl_asym_rows(params, ckl)
    if not integrated:
        vc, errc = _power_sum(xs, e, c)
        va, erra = _asym_eval(rows, xs)
        return vc, errc, va, erra
    vc, errc = _power_sum(xs, e + 1.0, c / (e + 1.0))
    vc = vc if big else 1.0 + vc
    if big:
        # integrate the tail expansion on [x, inf): exponents < -1
        tr = lambda e_, c_: (e_ + 1.0, -c_ / (e_ + 1.0))
        va, erra = _asym_eval(rows, xs, transform=tr)
        va = 1.0 - np.maximum(va, 0.0)
    else:
        # integrate the small-x expansion on (0, x]: exponents > -1
        tr = lambda e_, c_: (e_ + 1.0, c_ / (e_ + 1.0))
        va, erra = _asym_eval(rows, xs, transform=tr)
        va = np.maximum(va, 0.0)
    return vc, errc, va, erra


_ckl_crossovers: dict = {}


def _ckl_crossover(params: Parameters, ckl: CklClass, integrated: bool):
    """Hand-over point between the convergent and asymptotic routes, at
    the probe point where the two representations agree best (the
    agreement gap is cached with it as an error proxy)."""
    key = (params.alpha, ckl.k, ckl.l, integrated)
    hit = _ckl_crossovers.get(key)
    if hit is not None:
        return hit
    big = params.alpha > 1.0
    probe = np.geomspace(0.5, 64.0, 43) if big else np.geomspace(1.0 / 64.0, 2.0, 43)
    vc, errc, va, erra = _ckl_eval(params, ckl, probe, integrated)
    gap = np.abs(vc - va) + errc + erra
    i = int(np.argmin(gap))
    # refine: the usable window between the two routes can be narrow
    fine = probe[i] * np.linspace(0.82, 1.22, 31)
    vc, errc, va, erra = _ckl_eval(params, ckl, fine, integrated)
    gap = np.abs(vc - va) + errc + erra
    i = int(np.argmin(gap))
    out = (float(fine[i]), float(gap[i]))
    _ckl_crossovers[key] = out
    return out


def pdf_ckl_series(params: Parameters, ckl: CklClass, x: float) -> EvalResult:
    """p(x) by the double series of the C(k, l) class.

    The convergent representation is exact on (0, inf) but its terms grow
    to exp-sized humps before cancelling deep in its far region, where the
    companion expansion (whose optimal truncation is far below practical
    tolerances there) takes over; the hand-over point is where the two
    representations agree best.
    """
    if x <= 0:
        raise DomainError("density defined for x > 0")
    x = float(x)
    big = params.alpha > 1.0
    x_star, gap = _ckl_crossover(params, ckl, integrated=False)
    use_conv = x <= x_star if big else x >= x_star
    vc, errc, va, erra = _ckl_eval(params, ckl, np.array([x]), integrated=False)
    if use_conv:
        return EvalResult(value=float(vc[0]), abs_err=float(errc[0]), terms=0, method="ckl-series")
    return EvalResult(
        value=float(va[0]), abs_err=float(erra[0]) + gap, terms=0, method="ckl-asymptotic"
    )


def cdf_grid(params: Parameters, xs, survival: bool = False) -> np.ndarray:
    """P(S_1 <= x) (or P(S_1 > x)) on an array of points, vectorized.

    Certificate classes integrate their series term by term; generic
    parameters invert M on contours shifted off s = 1.  Values are
    clamped to [0, 1].
    """
    xs = np.asarray(xs, dtype=float)
    if np.any(xs <= 0):
        raise DomainError("cdf defined for x > 0")
    ckl = detect_ckl(params)
    if ckl is not None:
        x_star, _ = _ckl_crossover(params, ckl, integrated=True)
        vc, _, va, _ = _ckl_eval(params, ckl, xs, integrated=True)
        use_conv = xs <= x_star if params.alpha > 1.0 else xs >= x_star
        out = np.where(use_conv, vc, va)
    else:
        out = _cdf_inversion_array(params, xs)
    out = np.clip(out, 0.0, 1.0)
    return 1.0 - out if survival else out


def cdf(params: Parameters, x: float) -> EvalResult:
    """P(S_1 <= x): monotone in x, 0 at 0+, 1 at infinity."""
    v = float(cdf_grid(params, np.array([x]))[0])
    return EvalResult(value=v, abs_err=1e-8 + 1e-12 * abs(v), terms=0, method="cdf")


def moment_ckl(params: Parameters, s: float) -> float:
    """Int x^(s-1) p(x) dx for certificate classes, by term-wise
    integration: the convergent series on its own side of the hand-over
    point, the integrated companion expansion beyond it; requires
    1 - alpha*rho < s < 1 + alpha.  s = 1 checks normalization."""
    ckl = detect_ckl(params)
    if ckl is None:
        raise DomainError("moment_ckl needs a C(k, l) certificate")
    alpha = params.alpha
    if not (1.0 - alpha * params.rho < s < 1.0 + alpha):
        raise DomainError("moment outside the convergence strip")
    xsp, _ = _ckl_crossover(params, ckl, integrated=False)
    e, c = _ckl_conv_table(params, ckl, xsp)
    rows = _ckl_asym_rows(params, ckl)
    xa = np.array([xsp])
    if alpha > 1.0:
        head = float(np.sum(c * xsp ** (e + s) / (e + s)))
        tr = lambda e_, c_: (e_ + s, -c_ / (e_ + s))
        tail, _ = _asym_eval(rows, xa, transform=tr)
        return head + float(tail[0])
    # alpha < 1: convergent series lives at large x
    tail = -float(np.sum(c * xsp ** (e + s) / (e + s)))
    tr = lambda e_, c_: (e_ + s, c_ / (e_ + s))
    head, _ = _asym_eval(rows, xa, transform=tr)
    return float(head[0]) + tail


# ---------------------------------------------------------------------------
# Mellin inversion
# ---------------------------------------------------------------------------

_inversion_contours: dict = {}


def _contour(params: Parameters, c: float, tol: float):
    """Cached upper-half contour data (t >= 0): nodes, weights, M(c+it),
    and the truncation tail bound."""
    key = (params.alpha, params.rho, c, round(math.log10(tol)))
    hit = _inversion_contours.get(key)
    if hit is not None:
        return hit
    rate = mellin_decay_rate(params)
    T = 1.5 * (math.log(10.0 / (tol * rate)) + 2.0) / rate
    t, w = gauss_legendre_panels(24, 0.0, T, panel_width=1.5)
    logs, _ = _mellin_log_raw(params.alpha, params.rho, c + 1j * t)
    mv = np.exp(logs)
    tail = 2.0 * math.exp(-rate * T / 1.5) / rate  # bound incl. o(y) slack
    out = (t, w, mv, tail)
    _inversion_contours[key] = out
    return out


def pdf_mellin_inversion(params: Parameters, x: float, tol: float = 1e-8) -> EvalResult:
    """p(x) = (1/2 pi) Int M(1+it) x^(-1-it) dt, truncated at T where the
    decay bound (with its 1.5 safety factor) puts the tail under tol/10;
    composite Gauss-Legendre panels resolve the oscillation e^(-it ln x).
    """
    if x <= 0:
        raise DomainError("density defined for x > 0")
    t, w, mv, tail = _contour(params, 1.0, tol)
    osc = np.exp(-1j * t * math.log(x))
    val = float(np.real(np.sum(w * mv * osc))) / (_PI * x)
    err = tail / (_PI * x) + 1e-13 / x
    return EvalResult(value=val, abs_err=err, terms=t.size, method="mellin-inversion")


def _cdf_inversion_array(params: Parameters, xs: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    alpha, rho = params.alpha, params.rho
    c_lo = 1.0 - alpha * rho / 2.0
    c_hi = 1.0 + min(1.0, alpha) / 2.0
    out = np.empty_like(xs)
    lo = xs <= 2.0
    if lo.any():
        t, w, mv, _ = _contour(params, c_lo, tol)
        s = c_lo + 1j * t
        mat = np.exp(np.outer(np.log(xs[lo]), 1.0 - s))
        out[lo] = (mat @ (w * mv / (1.0 - s))).real / _PI
    if (~lo).any():
        t, w, mv, _ = _contour(params, c_hi, tol)
        s = c_hi + 1j * t
        mat = np.exp(np.outer(np.log(xs[~lo]), 1.0 - s))
        out[~lo] = 1.0 - (mat @ (w * mv / (s - 1.0))).real / _PI
    return out


# ---------------------------------------------------------------------------
# generic asymptotic series
# ---------------------------------------------------------------------------

def _asymptotic_sum(params: Parameters, x: float, small: bool, cap: int = 48):
    """Optimal-truncation sum of the generic asymptotic double series.

    Terms are walked in increasing grading m + alpha*n; summation stops
    just before the minimum-magnitude term once growth is established.
    Returns (sum, err, terms_used, (m, n) at truncation).
    """
    alpha, rho = params.alpha, params.rho
    pairs = sorted(
        ((m + alpha * n, m, n) for m in range(cap) for n in range(cap)),
        key=lambda t: t[0],
    )
    coef = (lambda m, n: coeff_a(alpha, rho, m, n)) if small else (
        lambda m, n: coeff_b(alpha, rho, m, n + 1)
    )
    xl = math.log(x)
    total = 0.0
    best = (math.inf, 0, 0.0, (0, 0))  # (|term|, index, partial, (m, n))
    for idx, (g, m, n) in enumerate(pairs):
        t = coef(m, n) * math.exp((g if small else -g) * xl)
        at = abs(t)
        if at < best[0] and at > 0.0:
            best = (at, idx, total, (m, n))
        total += t
        if at > 4.0 * best[0] and idx > best[1] + 3:
            # past the trough: truncate at the recorded minimum
            return best[2], 3.0 * best[0], best[1], best[3]
        if at < 1e-18 * (1.0 + abs(total)) and idx > 8:
            # effectively convergent at this x
            return total, at + 1e-16 * abs(total), idx + 1, (m, n)
    return best[2], 3.0 * best[0], best[1], best[3]


def pdf_asymptotic_small_x(params: Parameters, x: float) -> EvalResult:
    """p(x) ~ x^(alpha*rho - 1) * sum a(m, n) x^(m + alpha*n) near 0,
    truncated at the minimum-magnitude term (error = 3x that term)."""
    if x <= 0:
        raise DomainError("density defined for x > 0")
    if is_near_rational(params.alpha):
        raise SmallDenominatorError("generic asymptotic series needs irrational-like alpha")
    s, err, nt, mn = _asymptotic_sum(params, x, small=True)
    pref = x ** (params.alpha * params.rho - 1.0)
    return EvalResult(value=pref * s, abs_err=pref * err, terms=nt, method="asymptotic-small-x")


def pdf_asymptotic_large_x(params: Parameters, x: float) -> EvalResult:
    """p(x) ~ x^(-1-alpha) * sum b(m, n+1) x^(-m - alpha*n) at infinity."""
    if x <= 0:
        raise DomainError("density defined for x > 0")
    if is_near_rational(params.alpha):
        raise SmallDenominatorError(
            "generic asymptotic series needs irrational-like alpha "
            "(degenerate for rational alpha, including the Brownian case)"
        )
    s, err, nt, mn = _asymptotic_sum(params, x, small=False)
    pref = x ** (-1.0 - params.alpha)
    return EvalResult(value=pref * s, abs_err=pref * err, terms=nt, method="asymptotic-large-x")


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def plan_for(params: Parameters, x: float, tol: float = 1e-8) -> SeriesPlan:
    """Evaluation plan the dispatcher would follow at x."""
    ckl = detect_ckl(params)
    if ckl is not None:
        return SeriesPlan(region="all_x", kind="convergent", truncation=(0,), err_est=0.0)
    if not is_near_rational(params.alpha):
        small = x <= 1.0
        try:
            _, err, nt, mn = _asymptotic_sum(params, x, small=small)
            pref = x ** (params.alpha * params.rho - 1.0) if small else x ** (-1.0 - params.alpha)
            if pref * err < min(tol, 1e-8):
                return SeriesPlan(
                    region="small_x" if small else "large_x",
                    kind="asymptotic",
                    truncation=mn,
                    err_est=pref * err,
                )
        except SmallDenominatorError:
            pass
    return SeriesPlan(region="all_x", kind="inversion", truncation=(0,), err_est=tol)


def pdf(params: Parameters, x: float, tol: float = 1e-8) -> EvalResult:
    """Density of the supremum at x > 0 with automatic method choice:
    C(k, l) series when a certificate exists, an asymptotic series when
    its optimal truncation already meets ``tol``, and Mellin inversion
    otherwise.

    Raises
    ------
    AccuracyError
        no route reaches the requested tolerance.
    """
    if x <= 0:
        raise DomainError("density defined for x > 0")
    ckl = detect_ckl(params)
    if ckl is not None:
        return pdf_ckl_series(params, ckl, x)
    if not is_near_rational(params.alpha):
        small = x <= 1.0
        r = (pdf_asymptotic_small_x if small else pdf_asymptotic_large_x)(params, x)
        if r.abs_err < min(tol, 1e-8):
            return r
    r = pdf_mellin_inversion(params, x, tol)
    if r.abs_err > tol * (1.0 + abs(r.value)) * 10.0:
        raise AccuracyError(f"no density route reaches tol={tol:g} at x={x:g}")
    return r


def pdf_derivative(params: Parameters, x: float, tol: float = 1e-8) -> EvalResult:
    """dp/dx by term-wise differentiation of the active series (the
    expansions admit term-by-term differentiation), or the differentiated
    inversion integrand; exercised by tests only."""
    if x <= 0:
        raise DomainError("density defined for x > 0")
    ckl = detect_ckl(params)
    if ckl is not None:
        x_star, gap = _ckl_crossover(params, ckl, integrated=False)
        use_conv = x <= x_star if params.alpha > 1.0 else x >= x_star
        if use_conv:
            e, c = _ckl_conv_table(params, ckl, x)
            vals, errs = _power_sum(np.array([x]), e - 1.0, c * e)
            return EvalResult(value=float(vals[0]), abs_err=float(errs[0]), terms=len(e), method="ckl-series-d1")
        rows = _ckl_asym_rows(params, ckl)
        vals, errs = _asym_eval(rows, np.array([x]), transform=lambda e_, c_: (e_ - 1.0, c_ * e_))
        return EvalResult(value=float(vals[0]), abs_err=float(errs[0]) + gap, terms=0, method="ckl-asymptotic-d1")
    t, w, mv, tail = _contour(params, 1.0, tol)
    osc = np.exp(-1j * t * math.log(x))
    val = float(np.real(np.sum(w * mv * (-(1.0 + 1j * t)) * osc))) / (_PI * x * x)
    return EvalResult(value=val, abs_err=tail * (2.0 + t[-1]) / (_PI * x * x), terms=t.size, method="inversion-d1")


def pdf_profile(params: Parameters, xs, tol: float = 1e-8) -> DensityProfile:
    """Density over a grid; values are clamped at 0 against quadrature
    noise in the far tails."""
    xs = np.asarray(xs, dtype=float)
    vals = np.empty_like(xs)
    errs = np.empty_like(xs)
    methods = []
    for i, x in enumerate(xs):
        r = pdf(params, float(x), tol)
        vals[i] = max(0.0, r.real)
        errs[i] = r.abs_err
        methods.append(r.method)
    return DensityProfile(x_grid=xs, p_values=vals, methods=tuple(methods), errors=errs)


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------

def probe_generic_series(params: Parameters, x: float, caps=(8, 16, 32, 48)):
    """Opt-in diagnostic for the conjecture that the generic double
    series converges for all x: returns the partial sums of the small-x
    (alpha > 1) or large-x (alpha < 1) series at increasing grading caps.
    Never used for production values.
    """
    alpha, rho = params.alpha, params.rho
    if is_near_rational(alpha):
        raise SmallDenominatorError("probe needs irrational-like alpha")
    small = alpha > 1.0
    out = []
    for cap in caps:
        total = 0.0
        for m in range(cap):
            for n in range(cap):
                g = m + alpha * n
                if g > cap:
                    continue
                cmn = coeff_a(alpha, rho, m, n) if small else coeff_b(alpha, rho, m, n + 1)
                total += cmn * x ** (g if small else -g)
        pref = x ** (alpha * rho - 1.0) if small else x ** (-1.0 - alpha)
        out.append(pref * total)
    return out
