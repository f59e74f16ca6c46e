"""Two-qubit atomic master equation in a thermal radiation bath.

The uncorrelated generator is

    L_un(rho) = sum_i gamma_i (N + 1) D[s-_i](rho) + gamma_i N D[s+_i](rho)

with ``D[A](rho) = A rho A^dagger - {A^dagger A, rho} / 2`` and ``N`` the
Planck occupation. Collective coupling between the atoms enters through
``gamma_12 = sqrt(gamma_1 gamma_2) a`` with ``a`` in ``[0, 1]``.

Two reference 4x4 matrices (the uncorrelated and correlated generators
evaluated on the Bell state) are kept as fixtures. The uncorrelated one
is reproduced exactly by :func:`apply_uncorrelated`; the correlated one
disagrees with the standard collective dissipator except at ``N = 1``,
see :func:`case2_discrepancy`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, PositivityViolation, StepTooLarge, ZeroDenominator
from .matops import (I2, SIGMA_MINUS, SIGMA_PLUS, DensityMatrix, as_matrix, bell_state,
                     hs_norm, kron)

RK4_STABILITY = 0.1

SIGMA_MINUS_1 = kron(SIGMA_MINUS, I2)
SIGMA_MINUS_2 = kron(I2, SIGMA_MINUS)
SIGMA_PLUS_1 = kron(SIGMA_PLUS, I2)
SIGMA_PLUS_2 = kron(I2, SIGMA_PLUS)


def planck_n(omega: float, temperature: float) -> float:
    """Mean thermal occupation ``1 / (exp(omega / T) - 1)`` in units hbar = k_B = 1."""
    if not (omega > 0 and temperature > 0):
        raise ValueError("omega and temperature must be positive")
    x = omega / temperature
    if x > 700.0:
        return 0.0
    return 1.0 / math.expm1(x)


@dataclass(frozen=True)
class ThermalBath:
    omega: float
    temperature: float

    def __post_init__(self):
        planck_n(self.omega, self.temperature)

    @property
    def n_bar(self) -> float:
        return planck_n(self.omega, self.temperature)


@dataclass(frozen=True)
class AtomicModel:
    """Two atoms with decay rates ``gamma1, gamma2``, collective factor ``a`` and occupation ``n_bar``."""

    gamma1: float = 1.0
    gamma2: float = 1.0
    a: float = 0.0
    n_bar: float = 1.0

    def __post_init__(self):
        if self.gamma1 < 0 or self.gamma2 < 0:
            raise ValueError("decay rates must be nonnegative")
        if not 0.0 <= self.a <= 1.0:
            raise ValueError(f"a must lie in [0, 1], got {self.a}")
        if self.n_bar < 0:
            raise ValueError("n_bar must be nonnegative")

    @classmethod
    def with_bath(cls, bath: ThermalBath, gamma1: float = 1.0, gamma2: float = 1.0,
                  a: float = 0.0) -> "AtomicModel":
        return cls(gamma1, gamma2, a, bath.n_bar)

    @property
    def gamma12(self) -> float:
        return math.sqrt(self.gamma1 * self.gamma2) * self.a


def dissipator(op, rho) -> np.ndarray:
    a = as_matrix(op)
    m = as_matrix(rho)
    ad = a.conj().T
    ada = ad @ a
    return a @ m @ ad - 0.5 * (ada @ m + m @ ada)


@dataclass(frozen=True)
class GeneratorSpec:
    """A Lindblad generator as a list of ``(jump operator, rate)`` pairs.

    Rates of the ``correlated`` cross-term generator may be negative: it
    is only meaningful added to an uncorrelated part.
    """

    jump_ops: tuple
    label: str = "uncorrelated"

    def __post_init__(self):
        ops = tuple((as_matrix(a), float(r)) for a, r in self.jump_ops)
        if self.label == "uncorrelated" and any(r <= 0 for _, r in ops):
            raise ValueError("uncorrelated rates must be positive")
        object.__setattr__(self, "jump_ops", ops)

    @property
    def max_rate(self) -> float:
        return max((abs(r) for _, r in self.jump_ops), default=0.0)

    def __call__(self, rho) -> np.ndarray:
        m = as_matrix(rho)
        out = np.zeros_like(m)
        for a, r in self.jump_ops:
            if a.shape != m.shape:
                raise DimensionMismatch("jump operator and state dimensions differ")
            out += r * dissipator(a, m)
        return out

    def __add__(self, other: "GeneratorSpec") -> "GeneratorSpec":
        return GeneratorSpec(self.jump_ops + other.jump_ops, "total")


def _positive(pairs):
    return tuple((a, r) for a, r in pairs if r != 0.0)


def uncorrelated_generator(model: AtomicModel) -> GeneratorSpec:
    n = model.n_bar
    pairs = [(SIGMA_MINUS_1, model.gamma1 * (n + 1)), (SIGMA_MINUS_2, model.gamma2 * (n + 1)),
             (SIGMA_PLUS_1, model.gamma1 * n), (SIGMA_PLUS_2, model.gamma2 * n)]
    return GeneratorSpec(_positive(pairs), "uncorrelated")


def correlated_generator(model: AtomicModel) -> GeneratorSpec:
    """Cross terms ``gamma_12 [(N+1)(s-_1 rho s+_2 - ...) + N(s+_1 rho s-_2 - ...) + (1 <-> 2)]``.

    Written as ``D[(A+B)/sqrt2] - D[(A-B)/sqrt2]``, which leaves only the
    ``A rho B^dagger`` type cross terms.
    """
    g12, n = model.gamma12, model.n_bar
    r2 = math.sqrt(2.0)
    em_p, em_m = (SIGMA_MINUS_1 + SIGMA_MINUS_2) / r2, (SIGMA_MINUS_1 - SIGMA_MINUS_2) / r2
    ab_p, ab_m = (SIGMA_PLUS_1 + SIGMA_PLUS_2) / r2, (SIGMA_PLUS_1 - SIGMA_PLUS_2) / r2
    pairs = [(em_p, g12 * (n + 1)), (em_m, -g12 * (n + 1)), (ab_p, g12 * n), (ab_m, -g12 * n)]
    return GeneratorSpec(_positive(pairs), "correlated")


def total_generator(model: AtomicModel) -> GeneratorSpec:
    return uncorrelated_generator(model) + correlated_generator(model)


def _state(rho) -> np.ndarray:
    m = np.asarray(rho.matrix if isinstance(rho, DensityMatrix) else rho, dtype=complex)
    if m.shape != (4, 4):
        raise DimensionMismatch(f"two-qubit state expected, got shape {m.shape}")
    return m


def apply_uncorrelated(model: AtomicModel, rho) -> np.ndarray:
    return uncorrelated_generator(model)(_state(rho))


def apply_correlated_derived(model: AtomicModel, rho) -> np.ndarray:
    return correlated_generator(model)(_state(rho))


def paper_case1_matrix(gamma: float, n: float) -> np.ndarray:
    """Reference uncorrelated generator on the Bell state (``gamma1 = gamma2 = gamma``)."""
    m = np.zeros((4, 4), dtype=complex)
    half = (1 + 2 * n) * gamma / 2
    m[0, 0] = -(1 + n) * gamma
    m[1, 1] = m[2, 2] = half
    m[3, 3] = -n * gamma
    m[0, 3] = m[3, 0] = -half
    return m


def paper_case2_matrix(gamma: float, n: float, a: float) -> np.ndarray:
    """Reference correlated generator: only the ``|10><01|`` coherences, ``a N (2+N) gamma / 2``."""
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"a must lie in [0, 1], got {a}")
    m = np.zeros((4, 4), dtype=complex)
    m[1, 2] = m[2, 1] = a * n * (2 + n) * gamma / 2
    return m


def generator_pair(model: AtomicModel, rho0=None, mode: str = "fixture") -> tuple[np.ndarray, np.ndarray]:
    """``(L_un(rho0), L_cor(rho0))`` from the reference fixtures or from first principles.

    Fixture mode is tied to the Bell state and equal decay rates.
    """
    if mode == "fixture":
        if model.gamma1 != model.gamma2:
            raise ValueError("fixture mode assumes gamma1 == gamma2")
        if rho0 is not None and not np.allclose(_state(rho0), bell_state().matrix, atol=1e-12):
            raise ValueError("fixture matrices are only defined at the Bell state")
        g = model.gamma1
        return paper_case1_matrix(g, model.n_bar), paper_case2_matrix(g, model.n_bar, model.a)
    if mode == "derived":
        rho = bell_state() if rho0 is None else rho0
        return apply_uncorrelated(model, rho), apply_correlated_derived(model, rho)
    raise ValueError(f"unknown mode {mode!r}")


def x_ratio(model: AtomicModel, rho0=None, mode: str = "fixture") -> float:
    """``||L_cor(rho0)|| / ||L_un(rho0)||`` in the Hilbert-Schmidt norm."""
    l_un, l_cor = generator_pair(model, rho0, mode)
    den = hs_norm(l_un)
    if den == 0.0:
        raise ZeroDenominator("uncorrelated generator vanishes on this state")
    return hs_norm(l_cor) / den


@dataclass(frozen=True)
class Case2Discrepancy:
    """Cross-coherence entry of the correlated generator at the Bell state, both ways."""

    gamma: float
    n_bar: float
    a: float
    fixture: float
    derived: float

    @property
    def mismatch(self) -> float:
        return abs(self.fixture - self.derived)


def case2_discrepancy(gamma: float, n: float, a: float) -> Case2Discrepancy:
    """Compare the fixture value ``a N (2+N) gamma / 2`` with the collective dissipator's value.

    The derived entry is read off a first-principles evaluation; in
    closed form it is ``a (2N + 1) gamma / 2``.
    """
    model = AtomicModel(gamma, gamma, a, n)
    derived = apply_correlated_derived(model, bell_state())
    fixture = paper_case2_matrix(gamma, n, a)
    return Case2Discrepancy(gamma, n, a, float(fixture[1, 2].real), float(derived[1, 2].real))


def gibbs_state(n_bar: float) -> DensityMatrix:
    """Product thermal state; each atom has excited/ground populations ``N/(2N+1)``, ``(N+1)/(2N+1)``."""
    z = 2 * n_bar + 1
    single = np.diag([n_bar / z, (n_bar + 1) / z]).astype(complex)
    return DensityMatrix(kron(single, single))


def evolve_rk4(spec: GeneratorSpec, rho0, dt: float, steps: int,
               psd_tol: float = 1e-8) -> list[DensityMatrix]:
    """Integrate ``d rho/dt = L(rho)`` with classic RK4; returns ``steps + 1`` states.

    Raises:
        StepTooLarge: if ``dt * max|rate| > 0.1``.
        PositivityViolation: if a state leaves the positive cone by more than ``psd_tol``.
    """
    if dt <= 0 or steps < 1:
        raise ValueError("dt must be positive and steps at least 1")
    if dt * spec.max_rate > RK4_STABILITY * (1 + 1e-12):
        raise StepTooLarge(f"dt * max rate = {dt * spec.max_rate:.3g} exceeds {RK4_STABILITY}")
    rho = np.array(rho0.matrix if isinstance(rho0, DensityMatrix) else rho0, dtype=complex)
    traj = [DensityMatrix(rho)]
    for step in range(steps):
        k1 = spec(rho)
        k2 = spec(rho + 0.5 * dt * k1)
        k3 = spec(rho + 0.5 * dt * k2)
        k4 = spec(rho + dt * k3)
        rho = rho + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        try:
            traj.append(DensityMatrix(rho, herm_tol=1e-10, trace_tol=1e-9, psd_tol=psd_tol))
        except ValueError as exc:
            raise PositivityViolation(f"step {step + 1}: {exc}") from exc
    return traj
