"""Relaxation-model parameter sets and their Laplace-domain quantities.

All closed forms are derived from the defining relations

    Psi(s)  = B (1 - phi_hat(s)) / phi_hat(s)      (Levy exponent, CBF)
    M_hat   = 1 / Psi(s)                            (memory, SF)
    k_hat   = Psi(s) / s                            (partner memory, SF)

so that M_hat(s) * k_hat(s) = 1/s holds identically.  Printed table forms
found in the literature correspond to the special cases B = 1 (single-time
models) and tau1 = tau2**alpha (excess wing); the defining relations are
the ground truth here.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class ModelKind(enum.Enum):
    DEBYE = "debye"
    COLE_COLE = "cc"
    COLE_DAVIDSON = "cd"
    HAVRILIAK_NEGAMI = "hn"
    JWS = "jws"
    EXCESS_WING = "ew"

    @classmethod
    def parse(cls, text: str) -> "ModelKind":
        aliases = {
            "debye": cls.DEBYE, "d": cls.DEBYE,
            "cc": cls.COLE_COLE, "cole-cole": cls.COLE_COLE, "colecole": cls.COLE_COLE,
            "cd": cls.COLE_DAVIDSON, "cole-davidson": cls.COLE_DAVIDSON,
            "coledavidson": cls.COLE_DAVIDSON,
            "hn": cls.HAVRILIAK_NEGAMI, "havriliak-negami": cls.HAVRILIAK_NEGAMI,
            "jws": cls.JWS,
            "ew": cls.EXCESS_WING, "excess-wing": cls.EXCESS_WING,
            "excesswing": cls.EXCESS_WING,
        }
        key = text.strip().lower()
        if key not in aliases:
            raise ValueError(f"unknown model kind {text!r}")
        return aliases[key]


def _require_positive(name: str, value) -> float:
    if value is None or not math.isfinite(value) or value <= 0.0:
        raise ValueError(f"{name} must be positive and finite, got {value!r}")
    return float(value)


def _require_unit(name: str, value) -> float:
    v = float(value)
    if not math.isfinite(v) or not (0.0 < v <= 1.0):
        raise ValueError(f"{name} must lie in (0, 1], got {value!r}")
    return v


@dataclass(frozen=True)
class RelaxationModel:
    """Model kind plus parameters; the single source of truth for all modules.

    Single-time kinds use ``tau``; the excess wing uses ``tau1`` and ``tau2``.
    The transition rate ``B`` carries units 1/time and defaults to 1/tau
    (1/tau1 for the excess wing), which makes the Debye case reduce to
    phi(t) = exp(-t/tau)/tau.
    """

    kind: ModelKind
    alpha: float = 1.0
    beta: float = 1.0
    tau: float | None = None
    tau1: float | None = None
    tau2: float | None = None
    B: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", _require_unit("alpha", self.alpha))
        object.__setattr__(self, "beta", _require_unit("beta", self.beta))
        if self.kind is ModelKind.DEBYE and (self.alpha != 1.0 or self.beta != 1.0):
            raise ValueError("Debye requires alpha = beta = 1")
        if self.kind is ModelKind.COLE_COLE and self.beta != 1.0:
            raise ValueError("Cole-Cole requires beta = 1")
        if self.kind is ModelKind.COLE_DAVIDSON and self.alpha != 1.0:
            raise ValueError("Cole-Davidson requires alpha = 1")
        if self.kind is ModelKind.EXCESS_WING:
            if self.beta != 1.0:
                raise ValueError("excess wing has no beta parameter")
            if self.alpha >= 1.0:
                raise ValueError("excess wing requires alpha < 1 (alpha = 1 "
                                 "degenerates to a rational two-pole model)")
            if self.tau is not None:
                raise ValueError("excess wing uses tau1/tau2, not tau")
            object.__setattr__(self, "tau1", _require_positive("tau1", self.tau1))
            object.__setattr__(self, "tau2", _require_positive("tau2", self.tau2))
        else:
            if self.tau1 is not None or self.tau2 is not None:
                raise ValueError(f"{self.kind.value} uses tau, not tau1/tau2")
            object.__setattr__(self, "tau", _require_positive("tau", self.tau))
        default_rate = 1.0 / (self.tau1 if self.kind is ModelKind.EXCESS_WING else self.tau)
        object.__setattr__(self, "B",
                           default_rate if self.B is None
                           else _require_positive("B", self.B))

    # -- convenience constructors -------------------------------------------
    @classmethod
    def debye(cls, tau: float, B: float | None = None) -> "RelaxationModel":
        return cls(ModelKind.DEBYE, 1.0, 1.0, tau=tau, B=B)

    @classmethod
    def cole_cole(cls, alpha: float, tau: float, B: float | None = None) -> "RelaxationModel":
        return cls(ModelKind.COLE_COLE, alpha, 1.0, tau=tau, B=B)

    @classmethod
    def cole_davidson(cls, beta: float, tau: float, B: float | None = None) -> "RelaxationModel":
        return cls(ModelKind.COLE_DAVIDSON, 1.0, beta, tau=tau, B=B)

    @classmethod
    def havriliak_negami(cls, alpha: float, beta: float, tau: float,
                         B: float | None = None) -> "RelaxationModel":
        return cls(ModelKind.HAVRILIAK_NEGAMI, alpha, beta, tau=tau, B=B)

    @classmethod
    def jws(cls, alpha: float, beta: float, tau: float,
            B: float | None = None) -> "RelaxationModel":
        return cls(ModelKind.JWS, alpha, beta, tau=tau, B=B)

    @classmethod
    def excess_wing(cls, alpha: float, tau1: float, tau2: float,
                    B: float | None = None) -> "RelaxationModel":
        return cls(ModelKind.EXCESS_WING, alpha, 1.0, tau1=tau1, tau2=tau2, B=B)

    @property
    def is_single_time(self) -> bool:
        return self.kind is not ModelKind.EXCESS_WING

    def describe(self) -> str:
        if self.kind is ModelKind.EXCESS_WING:
            return (f"ew(alpha={self.alpha}, tau1={self.tau1}, tau2={self.tau2}, "
                    f"B={self.B})")
        return (f"{self.kind.value}(alpha={self.alpha}, beta={self.beta}, "
                f"tau={self.tau}, B={self.B})")


@dataclass(frozen=True)
class UrlExponents:
    """Jonscher exponent pair (a, b) of the two power-law wings."""

    a: float
    b: float


@dataclass(frozen=True)
class PermittivityPoint:
    """One measured/synthesized permittivity sample at angular frequency omega."""

    omega: float
    eps_real: float
    eps_imag: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.omega) and self.omega > 0.0):
            raise ValueError(f"omega must be positive, got {self.omega!r}")


def _check_s(s) -> np.ndarray:
    arr = np.asarray(s, dtype=float)
    if np.any(arr <= 0.0) or not np.all(np.isfinite(arr)):
        raise ValueError("s must be positive and finite")
    return arr


def spectral(m: RelaxationModel, s):
    """Spectral function phi_hat(s) on the positive real axis; values in (0,1).

    HN family: (1 + (s tau)^alpha)^(-beta), evaluated via exp/log1p so the
    s -> 0 and s -> infinity tails keep full relative precision.
    """
    arr = _check_s(s)
    scalar = arr.ndim == 0
    ss = np.atleast_1d(arr)
    if m.kind is ModelKind.JWS:
        out = -np.expm1(-m.beta * np.log1p((ss * m.tau) ** -m.alpha))
    elif m.kind is ModelKind.EXCESS_WING:
        q = ss * m.tau1 / (1.0 + (ss * m.tau2) ** m.alpha)
        out = 1.0 / (1.0 + q)
    else:
        out = np.exp(-m.beta * np.log1p((ss * m.tau) ** m.alpha))
    return float(out[0]) if scalar else out.reshape(arr.shape)


def one_minus_spectral(m: RelaxationModel, s):
    """1 - phi_hat(s) without cancellation (needed for the s -> 0 wing)."""
    arr = _check_s(s)
    scalar = arr.ndim == 0
    ss = np.atleast_1d(arr)
    if m.kind is ModelKind.JWS:
        out = np.exp(-m.beta * np.log1p((ss * m.tau) ** -m.alpha))
    elif m.kind is ModelKind.EXCESS_WING:
        q = ss * m.tau1 / (1.0 + (ss * m.tau2) ** m.alpha)
        out = q / (1.0 + q)
    else:
        out = -np.expm1(-m.beta * np.log1p((ss * m.tau) ** m.alpha))
    return float(out[0]) if scalar else out.reshape(arr.shape)


def levy_exponent(m: RelaxationModel, s):
    """Levy exponent Psi(s) > 0 from the per-model closed forms.

    HN:  B [ (1+(tau s)^alpha)^beta - 1 ]
    JWS: B / [ (1+(tau s)^-alpha)^beta - 1 ]
    EW:  B s tau1 / (1 + (tau2 s)^alpha)

    Each equals B (1-phi_hat)/phi_hat; tests hold the two routes to 1e-12.
    """
    arr = _check_s(s)
    scalar = arr.ndim == 0
    ss = np.atleast_1d(arr)
    if m.kind is ModelKind.JWS:
        out = m.B / np.expm1(m.beta * np.log1p((ss * m.tau) ** -m.alpha))
    elif m.kind is ModelKind.EXCESS_WING:
        out = m.B * ss * m.tau1 / (1.0 + (ss * m.tau2) ** m.alpha)
    else:
        out = m.B * np.expm1(m.beta * np.log1p((ss * m.tau) ** m.alpha))
    return float(out[0]) if scalar else out.reshape(arr.shape)


def levy_exponent_dual(m: RelaxationModel, s):
    """Dual exponent Phi(s) = s / Psi(s) (also a Levy exponent, CBF)."""
    arr = _check_s(s)
    return arr / levy_exponent(m, s) if arr.ndim else float(arr) / levy_exponent(m, s)


def memory_M_hat(m: RelaxationModel, s):
    """Transform of the memory kernel M: M_hat(s) = 1/Psi(s), a Stieltjes fn."""
    return 1.0 / levy_exponent(m, s)


def memory_k_hat(m: RelaxationModel, s):
    """Transform of the partner kernel k: k_hat(s) = Psi(s)/s, a Stieltjes fn."""
    arr = _check_s(s)
    if arr.ndim:
        return levy_exponent(m, s) / arr
    return levy_exponent(m, s) / float(arr)


# -- complex-argument closed forms (principal branch) ------------------------
# Used for i*omega permittivity and by the Talbot/convolution-quadrature
# machinery; s = i*omega never touches the negative real axis.

def _log1p_c(w):
    """log(1 + w) for complex arrays without small-|w| cancellation."""
    w = np.asarray(w, dtype=complex)
    out = np.log1p(w.real + 0j) if np.all(w.imag == 0) else np.log(1.0 + w)
    small = np.abs(w) < 1e-4
    if np.any(small):
        ws = w[small]
        out = np.array(out, dtype=complex)
        out[small] = ws * (1.0 + ws * (-0.5 + ws * (1.0 / 3.0 - 0.25 * ws)))
    return out


def _expm1_c(y):
    """exp(y) - 1 for complex arrays without small-|y| cancellation."""
    y = np.asarray(y, dtype=complex)
    out = np.exp(y) - 1.0
    small = np.abs(y) < 1e-4
    if np.any(small):
        ys = y[small]
        out = np.array(out, dtype=complex)
        out[small] = ys * (1.0 + ys * (0.5 + ys * (1.0 / 6.0 + ys / 24.0)))
    return out


def _phi_hat_z(m: RelaxationModel, z):
    z = np.asarray(z, dtype=complex)
    if m.kind is ModelKind.JWS:
        hn = (1.0 + (z * m.tau) ** m.alpha) ** -m.beta
        return 1.0 - (z * m.tau) ** (m.alpha * m.beta) * hn
    if m.kind is ModelKind.EXCESS_WING:
        w = (z * m.tau2) ** m.alpha
        return (1.0 + w) / (1.0 + z * m.tau1 + w)
    return (1.0 + (z * m.tau) ** m.alpha) ** -m.beta


def _psi_z(m: RelaxationModel, z):
    """Levy exponent for complex arguments, stable at both |z| extremes."""
    z = np.asarray(z, dtype=complex)
    if m.kind is ModelKind.EXCESS_WING:
        return m.B * z * m.tau1 / (1.0 + (z * m.tau2) ** m.alpha)
    if m.kind is ModelKind.JWS:
        return m.B / _expm1_c(m.beta * _log1p_c((z * m.tau) ** -m.alpha))
    return m.B * _expm1_c(m.beta * _log1p_c((z * m.tau) ** m.alpha))


def _m_hat_z(m: RelaxationModel, z):
    return 1.0 / _psi_z(m, z)


def _k_hat_z(m: RelaxationModel, z):
    return _psi_z(m, z) / np.asarray(z, dtype=complex)


def complex_permittivity(m: RelaxationModel, omega, eps0: float, epsinf: float):
    """Complex permittivity eps_inf + (eps0 - eps_inf) * phi_hat(i omega).

    Returns a complex value (array-valued for array omega); the imaginary
    part is negative for these models, i.e. the loss -Im(eps) is positive.
    """
    if not eps0 > epsinf:
        raise ValueError(f"eps0 must exceed epsinf, got eps0={eps0}, epsinf={epsinf}")
    arr = np.asarray(omega, dtype=float)
    if np.any(arr <= 0.0) or not np.all(np.isfinite(arr)):
        raise ValueError("omega must be positive and finite")
    scalar = arr.ndim == 0
    phi = _phi_hat_z(m, 1j * np.atleast_1d(arr))
    out = epsinf + (eps0 - epsinf) * phi
    return complex(out[0]) if scalar else out.reshape(arr.shape)


def url_exponents(m: RelaxationModel) -> UrlExponents:
    """Universal-relaxation-law exponents (a, b) of the model.

    HN maps to a = 1 - alpha*beta, b = alpha; JWS to a = 1 - alpha,
    b = alpha*beta.  The Debye boundary gives (0, 1).  The excess wing has
    two characteristic times and no single power-law pair, so it is
    rejected.
    """
    if m.kind is ModelKind.EXCESS_WING:
        raise ValueError("the excess-wing model does not satisfy the URL")
    if m.kind is ModelKind.JWS:
        return UrlExponents(a=1.0 - m.alpha, b=m.alpha * m.beta)
    return UrlExponents(a=1.0 - m.alpha * m.beta, b=m.alpha)
