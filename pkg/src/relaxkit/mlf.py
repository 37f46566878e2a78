"""Three-parameter (Prabhakar) and binomial Mittag-Leffler functions.

Everything here works on the real line.  The three-parameter function is

    E^lam_{nu,mu}(x) = sum_{r>=0} (lam)_r x^r / (r! Gamma(mu + nu*r)),

with the rising factorial (lam)_r evaluated as a running product (so any
real lam is allowed, including the negative orders the memory kernels use)
and with the reciprocal-Gamma convention 1/Gamma(m) = 0 at non-positive
integers m, which makes mu = 0 and mu = -n well defined.

Evaluation strategy: plain float64 term summation while it is accurate,
with a cancellation monitor (sum of |terms| over |sum|); badly cancelling
arguments are re-summed with mpmath at whatever precision the monitor says
is needed, and large negative arguments use the algebraic large-argument
expansion when its error bound is small enough.  The series is the ground
truth; no path ever returns a value whose error estimate exceeds the
target tolerance without raising ConvergenceError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import special as sp

from .errors import ConvergenceError

#: hard cap on series terms before reporting non-convergence
MAX_TERMS = 100_000

#: two consecutive terms below this (relative to |sum|+1) terminate the series
SERIES_TOL = 1e-16

#: default relative accuracy target of every evaluation path
TARGET_RTOL = 1e-13

#: float64 unit roundoff used to convert a tolerance into a cancellation cap
_EPS64 = 2.3e-16

_LOG10E = math.log10(math.e)


@dataclass(frozen=True)
class Ml3Params:
    """Order triple (nu, mu, lam) of the three-parameter function E^lam_{nu,mu}.

    nu must be positive; mu and lam may be any real number (negative lam
    and non-positive mu are what the memory-kernel formulas need).
    """

    nu: float
    mu: float
    lam: float

    def __post_init__(self) -> None:
        for name in ("nu", "mu", "lam"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise ValueError(f"{name} must be a finite real number, got {v!r}")
        if self.nu <= 0.0:
            raise ValueError(f"nu must be > 0, got {self.nu}")


@dataclass(frozen=True)
class Ml2Params:
    """Orders (nu1, nu2, mu) of the binomial function E_{(nu1,nu2),mu}."""

    nu1: float
    nu2: float
    mu: float

    def __post_init__(self) -> None:
        for name in ("nu1", "nu2", "mu"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise ValueError(f"{name} must be a finite real number, got {v!r}")
        if self.nu1 <= 0.0 or self.nu2 <= 0.0:
            raise ValueError(f"nu1 and nu2 must be > 0, got {self.nu1}, {self.nu2}")


# ---------------------------------------------------------------------------
# float64 series with cancellation monitor
# ---------------------------------------------------------------------------

def _series_f64(nu: float, mu: float, lam: float, x: np.ndarray,
                rtol: float = TARGET_RTOL):
    """Sum the defining series elementwise in float64.

    Returns (values, needs_mp) where needs_mp flags elements whose result
    cannot be trusted to rtol in double precision (cancellation, overflow
    or no convergence within MAX_TERMS).
    """
    vals = np.zeros_like(x)
    abs_sum = np.zeros_like(x)
    xpow = np.ones_like(x)
    needs_mp = np.zeros(x.shape, dtype=bool)
    small_streak = np.zeros(x.shape, dtype=np.int8)
    active = np.ones(x.shape, dtype=bool)

    coeff = 1.0  # (lam)_r / r!
    r = 0
    with np.errstate(over="ignore", invalid="ignore"):
        while np.any(active) and r < MAX_TERMS:
            rg = sp.rgamma(mu + nu * r)
            term = coeff * rg * xpow
            vals = np.where(active, vals + term, vals)
            abs_sum = np.where(active, abs_sum + np.abs(term), abs_sum)

            tiny = np.abs(term) <= SERIES_TOL * (np.abs(vals) + 1.0)
            small_streak = np.where(active & tiny, small_streak + 1, 0).astype(np.int8)
            done = small_streak >= 2
            active = active & ~done

            coeff *= (lam + r) / (r + 1)
            xpow = xpow * x
            if coeff == 0.0:  # (lam)_r terminated: lam is a non-positive integer
                break
            over = active & ~(np.abs(xpow) <= 1e280)
            if np.any(over):
                needs_mp |= over
                active &= ~over
            r += 1

    needs_mp |= active  # never converged within the cap
    cancel_cap = max(rtol, 1e-15) / _EPS64
    with np.errstate(invalid="ignore", divide="ignore"):
        cancel = abs_sum / np.maximum(np.abs(vals), 1e-300)
    needs_mp |= (cancel > cancel_cap) & (abs_sum > 1e-300)
    needs_mp |= ~np.isfinite(vals)
    return vals, needs_mp


def _series_mp(nu: float, mu: float, lam: float, x: float,
               extra_digits: float) -> float:
    """Re-sum the series with mpmath at enough precision to undo cancellation.

    The precision estimate is verified against the observed cancellation
    ratio and escalated when it falls short.
    """
    dps = max(25, int(extra_digits) + 20)
    for _attempt in range(4):
        with mpmath.workdps(dps):
            s = mpmath.mpf(0)
            abs_s = mpmath.mpf(0)
            coeff = mpmath.mpf(1)
            xm = mpmath.mpf(x)
            xpow = mpmath.mpf(1)
            # the Gamma argument must be formed in working precision: float
            # rounding of mu + nu*r feeds O(eps*arg) argument noise into
            # Gamma exactly where the terms peak, which no dps can fix
            mu_mp = mpmath.mpf(mu)
            nu_mp = mpmath.mpf(nu)
            lam_mp = mpmath.mpf(lam)
            streak = 0
            exhausted = True
            stop = mpmath.mpf(10) ** (-dps - 2)
            for r in range(MAX_TERMS):
                term = coeff * xpow * mpmath.rgamma(mu_mp + nu_mp * r)
                s += term
                abs_s += abs(term)
                if abs(term) <= stop * (abs(s) + 1):
                    streak += 1
                    if streak >= 2:
                        exhausted = False
                        break
                else:
                    streak = 0
                coeff *= (lam_mp + r) / (r + 1)
                if coeff == 0:
                    exhausted = False
                    break
                xpow *= xm
            if exhausted:
                raise ConvergenceError(
                    f"Mittag-Leffler series did not converge within {MAX_TERMS} "
                    f"terms (nu={nu}, mu={mu}, lam={lam}, x={x}, dps={dps})"
                )
            # enough digits survived the cancellation?
            ok = abs_s <= mpmath.mpf(10) ** (dps - 17) * max(abs(s), mpmath.mpf(1e-300))
            if ok:
                return float(s)
        dps = 2 * dps
    raise ConvergenceError(
        f"cancellation exceeded precision budget (nu={nu}, mu={mu}, lam={lam}, "
        f"x={x}, dps={dps})"
    )


def _mp_digits_needed(nu: float, lam: float, x: float) -> float:
    """Digits lost to cancellation, estimated from the largest series term.

    Terms behave like |x|^r r^(lam-1) / Gamma(mu + nu r); their peak sits
    near r* = |x|^(1/nu)/nu with magnitude about exp(|x|^(1/nu)).
    """
    ax = abs(x)
    if ax <= 1.0:
        return 10.0
    peak = ax ** (1.0 / nu)
    digits = peak * _LOG10E + max(lam - 1.0, 0.0) * math.log10(max(peak / nu, 2.0))
    return digits + 12.0


# ---------------------------------------------------------------------------
# large negative argument expansion
# ---------------------------------------------------------------------------

def _asymptotic_neg(nu: float, mu: float, lam: float, x: float):
    """Algebraic expansion of E^lam_{nu,mu}(x) for x << -1.

    E^lam_{nu,mu}(-y) ~ y^(-lam) * sum_j (-1)^j (lam)_j y^(-j) /
                                          (j! Gamma(mu - nu*(lam+j)))

    Returns (value, error_bound) or None when the bound is useless.  A sum
    that is identically zero through all orders (every reciprocal Gamma at a
    pole) means the true value is exponentially small; the caller must then
    use the high-precision series.
    """
    y = -x
    if y < 10.0:
        return None
    s = 0.0
    coeff = 1.0  # (-1)^j (lam)_j / j!
    ypow = 1.0
    last = math.inf
    nonzero = False
    jmax = max(4, int(min(40, y / 2)))
    for j in range(jmax):
        c = coeff * sp.rgamma(mu - nu * (lam + j))
        term = c * ypow
        mag = abs(term)
        if mag > last and nonzero:
            break  # divergent tail: truncate at the smallest term
        s += term
        if mag > 0:
            nonzero = True
            last = mag
        coeff *= -(lam + j) / (j + 1)
        ypow /= y
        if coeff == 0.0:
            last = 0.0
            break
    bound = last if last is not math.inf else abs(s)
    if not nonzero:
        return 0.0, math.exp(-min(700.0, nu * y ** (1.0 / nu)))
    value = y ** (-lam) * s
    return value, abs(y ** (-lam)) * bound


def _ml3_scalar_slow(nu: float, mu: float, lam: float, x: float,
                     rtol: float = TARGET_RTOL) -> float:
    """Accurate scalar path for arguments the float64 series cannot handle."""
    if x < 0:
        asym = _asymptotic_neg(nu, mu, lam, x)
        if asym is not None:
            value, bound = asym
            # two gates: the smallest-term bound (factor 50; truncation
            # bounds the error in order only), and an empirical floor for
            # corrections the algebraic expansion cannot see at all
            # (calibrated against high-precision sums over nu in [0.5, 1],
            # worst case near nu = 0.6: relative error ~ 2e-8 (z/63)^-3.6
            # with z = |x|^(1/nu))
            z = abs(x) ** (1.0 / nu)
            floor = 2e-8 * (z / 63.0) ** -3.6
            if value != 0.0 and 50.0 * bound <= rtol * abs(value) and floor <= 0.5 * rtol:
                return value
            if value == 0.0:
                # all algebraic orders vanish: the result is exponentially
                # small (this happens only for nu = 1 reductions)
                log10_mag = -(abs(x) ** (1.0 / nu)) * _LOG10E
                if log10_mag < -320:
                    return 0.0
                return _series_mp(nu, mu, lam, x, abs(log10_mag) + 10)
    return _series_mp(nu, mu, lam, x, _mp_digits_needed(nu, lam, x))


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def ml3(p: Ml3Params, x, rtol: float = TARGET_RTOL):
    """Evaluate E^lam_{nu,mu}(x) for real x (scalar or array).

    rtol is the relative accuracy the caller needs; it decides when the
    float64 sum has cancelled too much and must be redone in high precision.
    Raises ConvergenceError when no evaluation path reaches the tolerance;
    never returns an unflagged inaccurate value.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("ml3 requires finite real arguments")
    scalar = arr.ndim == 0
    flat = np.atleast_1d(arr).ravel().copy()

    vals, needs_mp = _series_f64(p.nu, p.mu, p.lam, flat, rtol=rtol)
    if np.any(needs_mp):
        for i in np.nonzero(needs_mp)[0]:
            vals[i] = _ml3_scalar_slow(p.nu, p.mu, p.lam, float(flat[i]), rtol=rtol)
    out = vals.reshape(np.atleast_1d(arr).shape)
    return float(out[0]) if scalar else out.reshape(arr.shape)


def prabhakar(p: Ml3Params, a: float, t, rtol: float = TARGET_RTOL):
    """Prabhakar kernel t^(mu-1) * E^lam_{nu,mu}(-a t^nu) for t > 0.

    The t -> 0+ limit behaves like t^(mu-1)/Gamma(mu); callers that need the
    mu = 0 delta content must handle it through GeneralizedFunction.
    """
    if a < 0:
        raise ValueError(f"prabhakar requires a >= 0, got {a}")
    arr = np.asarray(t, dtype=float)
    if np.any(arr <= 0.0) or not np.all(np.isfinite(arr)):
        raise ValueError("prabhakar requires t > 0")
    scalar = arr.ndim == 0
    tt = np.atleast_1d(arr)
    out = tt ** (p.mu - 1.0) * ml3(p, -a * tt ** p.nu, rtol=rtol)
    return float(out[0]) if scalar else out.reshape(arr.shape)


def ml3_deriv(p: Ml3Params, a: float, n: int, x, rtol: float = TARGET_RTOL):
    """n-th derivative d^n/dx^n [x^(mu-1) E^lam_{nu,mu}(a x^nu)] for x > 0.

    Computed through the index shift mu -> mu - n:
    x^(mu-1-n) E^lam_{nu,mu-n}(a x^nu), with the reciprocal-Gamma convention
    covering mu - n at non-positive integers.
    """
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ValueError(f"derivative order must be a non-negative integer, got {n}")
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0) or not np.all(np.isfinite(arr)):
        raise ValueError("ml3_deriv requires x > 0")
    shifted = Ml3Params(p.nu, p.mu - n, p.lam)
    scalar = arr.ndim == 0
    xx = np.atleast_1d(arr)
    out = xx ** (p.mu - 1.0 - n) * ml3(shifted, a * xx ** p.nu, rtol=rtol)
    return float(out[0]) if scalar else out.reshape(arr.shape)


def ml_binom(p: Ml2Params, x1: float, x2: float, rtol: float = TARGET_RTOL) -> float:
    """Binomial Mittag-Leffler function E_{(nu1,nu2),mu}(x1, x2).

    Evaluated through the single-series rearrangement
    sum_{r>=0} x1^r E^{1+r}_{nu2, nu1*r + mu}(x2); a cancellation monitor
    moves the evaluation to an arbitrary-precision double sum when float64
    cannot carry it.
    """
    for v in (x1, x2):
        if not math.isfinite(v):
            raise ValueError("ml_binom requires finite real arguments")
    val, ok = _binom_rearranged_f64(p, x1, x2, rtol=rtol)
    if ok:
        return val
    return _binom_mp(p, x1, x2)


def _binom_rearranged_f64(p: Ml2Params, x1: float, x2: float,
                          rtol: float = TARGET_RTOL):
    """Rearranged series in float64; returns (value, trustworthy)."""
    total = 0.0
    abs_total = 0.0
    x1pow = 1.0
    streak = 0
    for r in range(2000):
        inner_p = Ml3Params(p.nu2, p.nu1 * r + p.mu, 1.0 + r)
        inner, needs_mp = _series_f64(inner_p.nu, inner_p.mu, inner_p.lam,
                                      np.asarray([x2], dtype=float), rtol=rtol)
        if needs_mp[0]:
            return 0.0, False
        term = x1pow * inner[0]
        total += term
        abs_total += abs(term)
        if abs(term) <= SERIES_TOL * (abs(total) + 1.0):
            streak += 1
            if streak >= 2:
                break
        else:
            streak = 0
        x1pow *= x1
        if abs(x1pow) > 1e280:
            return 0.0, False
    else:
        return 0.0, False
    if abs_total > (max(rtol, 1e-15) / _EPS64) * max(abs(total), 1e-300):
        return 0.0, False
    return total, True


def _binom_mp(p: Ml2Params, x1: float, x2: float) -> float:
    """Defining double sum in arbitrary precision.

    Term magnitudes peak near exp(|x1|^(1/nu1) + |x2|^(1/nu2)); precision is
    chosen from that estimate and verified by the cancellation ratio.
    """
    peak = (abs(x1) ** (1.0 / p.nu1) + abs(x2) ** (1.0 / p.nu2)) * _LOG10E
    dps = min(max(30, int(peak) + 25), 1200)
    with mpmath.workdps(dps):
        m1, m2 = mpmath.mpf(x1), mpmath.mpf(x2)
        total = mpmath.mpf(0)
        abs_total = mpmath.mpf(0)
        # Gamma arguments formed in working precision (see _series_mp)
        mu_mp = mpmath.mpf(p.mu)
        nu1_mp = mpmath.mpf(p.nu1)
        nu2_mp = mpmath.mpf(p.nu2)
        stop = mpmath.mpf(10) ** (-dps - 2)
        streak = 0
        for k in range(MAX_TERMS):
            diag = mpmath.mpf(0)
            fk = mpmath.factorial(k)
            for l1 in range(k + 1):
                l2 = k - l1
                c = fk / (mpmath.factorial(l1) * mpmath.factorial(l2))
                g = mpmath.rgamma(mu_mp + nu1_mp * l1 + nu2_mp * l2)
                diag += c * m1 ** l1 * m2 ** l2 * g
            total += diag
            abs_total += abs(diag)
            if abs(diag) <= stop * (abs(total) + 1):
                streak += 1
                if streak >= 2:
                    break
            else:
                streak = 0
        else:
            raise ConvergenceError(
                f"binomial Mittag-Leffler double sum did not converge "
                f"(x1={x1}, x2={x2}, dps={dps})"
            )
        if abs_total > mpmath.mpf(10) ** (dps - 17) * max(abs(total), mpmath.mpf(1e-300)):
            raise ConvergenceError(
                f"binomial Mittag-Leffler cancellation exceeds precision "
                f"(x1={x1}, x2={x2}, dps={dps})"
            )
        return float(total)


def ml_binom_symmetric(p: Ml2Params, x1: float, x2: float,
                       rtol: float = TARGET_RTOL) -> float:
    """Same function through the swapped rearrangement (consistency check).

    sum_{r>=0} x2^r E^{1+r}_{nu1, nu2*r + mu}(x1), used by tests to confirm
    both rearrangements of the double sum agree.
    """
    swapped = Ml2Params(p.nu2, p.nu1, p.mu)
    return ml_binom(swapped, x2, x1, rtol=rtol)
