"""Quantum speed limit bounds and correlated/uncorrelated ratios.

Units are hbar = k_B = 1. An unreachable bound (zero speed) is reported
as :data:`UNBOUNDED`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channels import KrausSet, RtnParams, family_channel
from .errors import DimensionMismatch, MissingDerivatives, NotHermitian, ZeroDenominator
from .lindblad import AtomicModel, generator_pair
from .matops import DensityMatrix, as_matrix, bell_state, hermiticity_defect, hs_norm

UNBOUNDED = math.inf

# bound = prefactor * theta^2 * (purity term) / (speed)
KRAUS_PREFACTOR = 2.0 / math.pi**2
LINDBLAD_PREFACTOR = 4.0 / math.pi**2


def _as_state(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return as_matrix(rho)


@dataclass(frozen=True)
class QslInput:
    """Target angle ``theta`` in ``(0, pi/2]`` and initial state (Bell state by default)."""

    theta: float = math.pi / 2
    rho0: DensityMatrix = field(default_factory=bell_state)

    def __post_init__(self):
        if not 0.0 < self.theta <= math.pi / 2 + 1e-15:
            raise ValueError(f"theta must lie in (0, pi/2], got {self.theta}")
        if not isinstance(self.rho0, DensityMatrix):
            object.__setattr__(self, "rho0", DensityMatrix(self.rho0))


@dataclass(frozen=True)
class RatioPoint:
    tau_or_a: float
    t_eval: float
    ratio: float
    lower: float | None = None
    upper: float | None = None

    def within_bounds(self, tol: float = 1e-9) -> bool:
        if self.lower is None or self.upper is None:
            return True
        return self.lower - tol <= self.ratio <= self.upper + tol


def mandelstam_tamm(hamiltonian, state) -> float:
    """``pi / (2 dH)`` with ``dH`` the energy spread in ``state`` (a ket or a density matrix)."""
    h = as_matrix(hamiltonian)
    if hermiticity_defect(h) > 1e-10:
        raise NotHermitian("Hamiltonian must be Hermitian")
    s = np.asarray(state.matrix if isinstance(state, DensityMatrix) else state, dtype=complex)
    if s.ndim == 1:
        s = np.outer(s, s.conj()) / np.vdot(s, s).real
    if s.shape != h.shape:
        raise DimensionMismatch("state and Hamiltonian dimensions differ")
    mean = np.trace(s @ h).real
    var = np.trace(s @ h @ h).real - mean**2
    spread = math.sqrt(max(var, 0.0))
    if spread <= 1e-14 * max(1.0, hs_norm(h)):
        return UNBOUNDED
    return math.pi / (2.0 * spread)


def fidelity_f(rho0, rhot) -> float:
    """Relative overlap ``tr[rho0 rho_t] / tr[rho0^2]``."""
    a, b = _as_state(rho0), _as_state(rhot)
    if a.shape != b.shape:
        raise DimensionMismatch("states have different dimensions")
    return float(np.trace(a @ b).real / np.trace(a @ a).real)


def kraus_qsl_denominator(k: KrausSet, rho0) -> float:
    """``sum_a || K_a rho0 dK_a^dagger ||`` (Hilbert-Schmidt)."""
    if k.derivatives is None:
        raise MissingDerivatives(f"Kraus set {k.label!r} has no derivatives")
    m = _as_state(rho0)
    if m.shape != (k.dim, k.dim):
        raise DimensionMismatch("state does not fit the channel")
    return float(sum(hs_norm(a @ m @ d.conj().T) for a, d in zip(k.operators, k.derivatives)))


def kraus_qsl_time(inp: QslInput, denominator: float) -> float:
    """``(2 theta^2 / pi^2) sqrt(tr rho0^2) / denominator``."""
    if denominator < 0:
        raise ValueError("denominator must be nonnegative")
    if denominator == 0.0:
        return UNBOUNDED
    return KRAUS_PREFACTOR * inp.theta**2 * math.sqrt(inp.rho0.purity) / denominator


def lindblad_qsl_time(inp: QslInput, l_rho0) -> float:
    """``(4 theta^2 / pi^2) tr(rho0^2) / ||L(rho0)||``."""
    speed = hs_norm(l_rho0)
    if speed == 0.0:
        return UNBOUNDED
    return LINDBLAD_PREFACTOR * inp.theta**2 * inp.rho0.purity / speed


def ratio_bounds(x: float) -> tuple[float, float]:
    """Triangle-inequality sandwich ``1/(1+x) <= tau_cor/tau_un <= 1/|1-x|``."""
    if x < 0:
        raise ValueError("x must be nonnegative")
    gap = abs(1.0 - x)
    return 1.0 / (1.0 + x), (UNBOUNDED if gap == 0.0 else 1.0 / gap)


def _ratio(num: float, den: float) -> float:
    if den == 0.0:
        if num == 0.0:
            raise ZeroDenominator("both speeds vanish; the ratio is undefined")
        return UNBOUNDED
    return num / den


def channel_denominators(family: str, params: RtnParams, mu_correlated: float = 1.0,
                         variant: str = "standard", rho0=None) -> tuple[float, float]:
    """Speed denominators for the uncorrelated (``mu = 0``) and correlated channel."""
    rho = bell_state() if rho0 is None else rho0
    un = family_channel(family, params, 0.0, variant)
    cor = family_channel(family, params, mu_correlated, variant)
    return kraus_qsl_denominator(un, rho), kraus_qsl_denominator(cor, rho)


def qsl_ratio_channels(family: str, params: RtnParams, mu_correlated: float = 1.0,
                       variant: str = "standard", rho0=None) -> RatioPoint:
    """``R = tau_cor / tau_un``.

    The angle and purity factors are common to both bounds, so ``R``
    reduces to ``denominator_un / denominator_cor``.
    """
    d_un, d_cor = channel_denominators(family, params, mu_correlated, variant, rho0)
    return RatioPoint(params.tau, params.t, _ratio(d_un, d_cor))


def lindblad_ratio(model: AtomicModel, rho0=None, mode: str = "fixture") -> RatioPoint:
    """``tau_cor / tau_un = ||L_un|| / ||L_un + L_cor||`` with its sandwich bounds."""
    l_un, l_cor = generator_pair(model, rho0, mode)
    n_un = hs_norm(l_un)
    if n_un == 0.0:
        raise ZeroDenominator("uncorrelated generator vanishes on this state")
    x = hs_norm(l_cor) / n_un
    lower, upper = ratio_bounds(x)
    return RatioPoint(model.a, 0.0, _ratio(n_un, hs_norm(l_un + l_cor)), lower, upper)
