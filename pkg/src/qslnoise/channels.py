"""Kraus-operator channel families with closed-form time derivatives.

Time dependence enters through the random-telegraph-noise decoherence
function ``phi(nu) = exp(-nu) [cos(u nu) + sin(u nu) / u]`` with
``u = sqrt((4 tau)^2 - 1)`` and scale time ``nu = t / (2 tau)``. For
``tau < 1/4`` the frequency is imaginary and the trigonometric functions
continue to their hyperbolic counterparts, so ``phi`` stays real.

Every family is returned as a :class:`KrausSet` carrying the operators
``K_a(t)`` and their time derivatives ``dK_a/dt``. Correlated variants
are mixed with the uncorrelated ones through a memory parameter ``mu``
as one Kraus set: ``sqrt(1 - mu) * uncorrelated`` followed by
``sqrt(mu) * correlated``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegenerateDerivative, DimensionMismatch
from .matops import (I2, I4, SIGMA_3, SIGMA_MINUS, DensityMatrix, as_matrix,
                     hermitian_eigenvalues, hs_norm, kron, ket)

OVERDAMPED_TAU_MAX = 0.25
COMPLETENESS_TOL = 1e-10
CHOI_TOL = 1e-10

# below these the weight is treated as sitting exactly at a zero
_W_EPS = 1e-14
_DW_EPS = 1e-6

DEGENERATE = "degenerate-derivative"
PAPER_LITERAL = "paper-literal-identity"


@dataclass(frozen=True)
class RtnParams:
    """Telegraph-noise parameters: memory time ``tau`` and physical time ``t``."""

    tau: float
    t: float

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        if not self.t >= 0:
            raise ValueError(f"t must be nonnegative, got {self.t}")

    @property
    def nu(self) -> float:
        return self.t / (2.0 * self.tau)

    @property
    def is_overdamped(self) -> bool:
        return self.tau <= OVERDAMPED_TAU_MAX


@dataclass(frozen=True)
class PhaseDampingParams:
    """Phase-flip weight ``p`` with optional first and second time derivatives."""

    p: float
    dp: float = 0.0
    d2p: float = 0.0
    # 1 - p when known more accurately than by subtraction
    complement: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")

    @property
    def P0(self) -> float:
        return 1.0 - self.p if self.complement is None else self.complement

    @property
    def P3(self) -> float:
        return self.p

    @classmethod
    def from_rtn(cls, params: RtnParams) -> "PhaseDampingParams":
        """Bind ``p = phi(nu)``."""
        return cls(phi(params), phi_rate(params), phi_accel(params), one_minus_phi(params))


@dataclass(frozen=True)
class KrausSet:
    operators: tuple
    derivatives: tuple | None = None
    label: str = ""
    flags: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        ops = tuple(as_matrix(k) for k in self.operators)
        if not ops:
            raise ValueError("a Kraus set needs at least one operator")
        dim = ops[0].shape[0]
        if any(k.shape != (dim, dim) for k in ops):
            raise DimensionMismatch("Kraus operators must share one dimension")
        object.__setattr__(self, "operators", ops)
        if self.derivatives is not None:
            ders = tuple(as_matrix(d) for d in self.derivatives)
            if len(ders) != len(ops) or any(d.shape != (dim, dim) for d in ders):
                raise DimensionMismatch("derivatives must match the operators one to one")
            object.__setattr__(self, "derivatives", ders)
        object.__setattr__(self, "flags", frozenset(self.flags))

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    @property
    def degenerate(self) -> bool:
        return DEGENERATE in self.flags

    def __len__(self) -> int:
        return len(self.operators)

    def completeness_defect(self) -> float:
        s = sum(k.conj().T @ k for k in self.operators)
        return hs_norm(s - np.eye(self.dim))

    def with_scaled_operator(self, index: int, factor: float) -> "KrausSet":
        ops = list(self.operators)
        ops[index] = factor * ops[index]
        ders = None
        if self.derivatives is not None:
            ders = list(self.derivatives)
            ders[index] = factor * ders[index]
        return KrausSet(tuple(ops), ders and tuple(ders), self.label + "/scaled", self.flags)


# -- decoherence function -----------------------------------------------------

def _phi_terms(tau: float, nu: float) -> tuple[float, float, float]:
    """Return ``(C, G, s)`` with ``phi = C + G`` and ``s = (4 tau)^2 - 1``.

    ``C = exp(-nu) cos(u nu)`` and ``G = exp(-nu) sin(u nu) / u``, or their
    hyperbolic forms when ``s < 0``.
    """
    s = (4.0 * tau) ** 2 - 1.0
    if s > 0.0:
        u = math.sqrt(s)
        x = u * nu
        damp = math.exp(-nu)
        return damp * math.cos(x), damp * nu * float(np.sinc(x / math.pi)), s
    if s == 0.0:
        damp = math.exp(-nu)
        return damp, damp * nu, s
    u = math.sqrt(-s)
    x = u * nu
    if x < 20.0:
        damp = math.exp(-nu)
        shc = math.sinh(x) / x if x > 0.0 else 1.0
        return damp * math.cosh(x), damp * nu * shc, s
    up, dn = math.exp(x - nu), math.exp(-x - nu)
    return 0.5 * (up + dn), (up - dn) / (2.0 * u), s


def phi(params: RtnParams) -> float:
    """Decoherence function ``phi(nu)``; equals 1 at ``t = 0``."""
    c, g, _ = _phi_terms(params.tau, params.nu)
    return c + g


def one_minus_phi(params: RtnParams) -> float:
    """``1 - phi`` without cancellation at small ``nu``.

    ``phi`` solves ``phi'' + 2 phi' + 16 tau^2 phi = 0`` with ``phi(0) = 1``,
    ``phi'(0) = 0``; near the origin the power series is summed directly.
    """
    nu, k = params.nu, 16.0 * params.tau**2
    if nu * max(1.0, 4.0 * params.tau) >= 0.5:
        return 1.0 - phi(params)
    a_prev, a_cur = 1.0, 0.0
    total, power, last = 0.0, nu, math.inf
    for n in range(200):
        a_next = -(2.0 * (n + 1) * a_cur + k * a_prev) / ((n + 2) * (n + 1))
        power *= nu
        term = a_next * power
        total -= term
        # single coefficients can vanish, so wait for two small terms in a row
        if max(abs(term), last) <= 1e-18 * abs(total):
            break
        a_prev, a_cur, last = a_cur, a_next, abs(term)
    return total


def dphi_dnu(params: RtnParams) -> float:
    """``-exp(-nu) sin(u nu) (u^2 + 1) / u`` with the same continuation as :func:`phi`."""
    _, g, s = _phi_terms(params.tau, params.nu)
    return -(1.0 + s) * g


def d2phi_dnu2(params: RtnParams) -> float:
    c, g, s = _phi_terms(params.tau, params.nu)
    return (1.0 + s) * (g - c)


def phi_rate(params: RtnParams) -> float:
    """``d phi / dt``."""
    return dphi_dnu(params) / (2.0 * params.tau)


def phi_accel(params: RtnParams) -> float:
    """``d^2 phi / dt^2``."""
    return d2phi_dnu2(params) / (2.0 * params.tau) ** 2


# -- coefficient helpers ------------------------------------------------------

def _sqrt_coefficient(w: float, dw: float, d2w: float) -> tuple[float, float, bool]:
    """Value and time derivative of ``sqrt(w(t))``.

    At a double zero of ``w`` the one-sided limit ``sqrt(w''/2)`` is
    returned and the third element is True.
    """
    w = max(w, 0.0)
    if w > _W_EPS or (w > 0.0 and abs(dw) > _DW_EPS):
        c = math.sqrt(w)
        return c, dw / (2.0 * c), False
    if abs(dw) <= _DW_EPS:
        return math.sqrt(w), math.sqrt(max(d2w, 0.0) / 2.0), True
    raise DegenerateDerivative(f"sqrt of weight {w:.3e} with slope {dw:.3e} has unbounded derivative")


def _weighted_unitaries(terms, label: str, flags=(), strict: bool = False) -> KrausSet:
    """Build ``{sqrt(w) U}`` from ``(w, dw, d2w, U)`` tuples."""
    ops, ders = [], []
    flags = set(flags)
    for w, dw, d2w, u in terms:
        c, dc, deg = _sqrt_coefficient(w, dw, d2w)
        if deg:
            if strict:
                raise DegenerateDerivative(f"{label}: coefficient derivative at a zero weight")
            flags.add(DEGENERATE)
        ops.append(c * u)
        ders.append(dc * u)
    return KrausSet(tuple(ops), tuple(ders), label, frozenset(flags))


def _check_mu(mu: float) -> float:
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mu must lie in [0, 1], got {mu}")
    return float(mu)


def mix(uncorrelated: KrausSet, correlated: KrausSet, mu: float, label: str | None = None) -> KrausSet:
    """Memory mixture ``(1 - mu) E_un + mu E_cor`` realized as a single Kraus set."""
    mu = _check_mu(mu)
    if uncorrelated.dim != correlated.dim:
        raise DimensionMismatch("cannot mix channels of different dimension")
    ops, ders = [], []
    have_ders = uncorrelated.derivatives is not None and correlated.derivatives is not None
    for weight, ks in ((1.0 - mu, uncorrelated), (mu, correlated)):
        if weight == 0.0:
            continue
        a = math.sqrt(weight)
        ops.extend(a * k for k in ks.operators)
        if have_ders:
            ders.extend(a * d for d in ks.derivatives)
    if label is None:
        label = f"{uncorrelated.label}+{correlated.label}(mu={mu:g})"
    flags = set()
    if 1.0 - mu > 0.0:
        flags |= uncorrelated.flags
    if mu > 0.0:
        flags |= correlated.flags
    return KrausSet(tuple(ops), tuple(ders) if have_ders else None, label, frozenset(flags))


# -- random telegraph noise ---------------------------------------------------

def rtn_single_qubit(params: RtnParams, strict: bool = False) -> KrausSet:
    """``K1 = sqrt((1 + phi)/2) I`` and ``K2 = sqrt((1 - phi)/2) sigma_3``.

    At ``t = 0`` the second coefficient has a double zero; its derivative
    is reported as the one-sided limit and the set is flagged (or
    :class:`DegenerateDerivative` is raised when ``strict``).
    """
    f, df, d2f = phi(params), phi_rate(params), phi_accel(params)
    if abs(f) > 1.0 + 1e-12:
        raise ValueError(f"phi = {f} outside [-1, 1]")
    terms = [((1.0 + f) / 2.0, df / 2.0, d2f / 2.0, I2),
             (one_minus_phi(params) / 2.0, -df / 2.0, -d2f / 2.0, SIGMA_3)]
    return _weighted_unitaries(terms, "rtn", strict=strict)


def product_two_qubit(single: KrausSet) -> KrausSet:
    """Independent two-qubit extension ``{K_i (x) K_j}``, ordered ``(1,1), (1,2), (2,1), (2,2)``."""
    if single.dim != 2:
        raise DimensionMismatch("product extension needs a single-qubit Kraus set")
    ks, ds = single.operators, single.derivatives
    ops, ders = [], []
    for i in range(len(ks)):
        for j in range(len(ks)):
            ops.append(kron(ks[i], ks[j]))
            if ds is not None:
                ders.append(kron(ds[i], ks[j]) + kron(ks[i], ds[j]))
    return KrausSet(tuple(ops), tuple(ders) if ds is not None else None,
                    f"{single.label}/uncorrelated", single.flags)


def rtn_correlated(params: RtnParams, strict: bool = False) -> KrausSet:
    """Both qubits receive the same telegraph error: ``sqrt((1 +/- phi)/2) sigma_k (x) sigma_k``."""
    f, df, d2f = phi(params), phi_rate(params), phi_accel(params)
    zz = kron(SIGMA_3, SIGMA_3)
    terms = [((1.0 + f) / 2.0, df / 2.0, d2f / 2.0, I4),
             (one_minus_phi(params) / 2.0, -df / 2.0, -d2f / 2.0, zz)]
    return _weighted_unitaries(terms, "rtn/correlated", strict=strict)


def rtn_two_qubit(params: RtnParams, mu: float = 0.0, strict: bool = False) -> KrausSet:
    un = product_two_qubit(rtn_single_qubit(params, strict=strict))
    cor = rtn_correlated(params, strict=strict)
    return mix(un, cor, mu, label=f"rtn-product(mu={mu:g})")


# -- phase damping ------------------------------------------------------------

def phase_damping_two_qubit(p, mu: float = 0.0, strict: bool = False) -> KrausSet:
    """Two-qubit phase damping built on ``{I, sigma_3}`` with weights ``P0 = 1-p``, ``P3 = p``.

    Uncorrelated operators are ``sqrt(P_i P_j) sigma_i (x) sigma_j``,
    correlated ones ``sqrt(P_k) sigma_k (x) sigma_k``.

    Args:
        p: a :class:`PhaseDampingParams` (carries ``dp/dt``) or a bare float.
        mu: probability that the two uses are correlated.
    """
    if not isinstance(p, PhaseDampingParams):
        p = PhaseDampingParams(float(p))
    mu = _check_mu(mu)
    weights = {0: (p.P0, -p.dp, -p.d2p), 3: (p.P3, p.dp, p.d2p)}
    paulis = {0: I2, 3: SIGMA_3}
    un_terms = []
    for i in (0, 3):
        for j in (0, 3):
            wi, dwi, d2wi = weights[i]
            wj, dwj, d2wj = weights[j]
            un_terms.append((wi * wj, dwi * wj + wi * dwj,
                             d2wi * wj + 2.0 * dwi * dwj + wi * d2wj,
                             kron(paulis[i], paulis[j])))
    cor_terms = [(*weights[k], kron(paulis[k], paulis[k])) for k in (0, 3)]
    un = _weighted_unitaries(un_terms, "phase-damping/uncorrelated", strict=strict)
    cor = _weighted_unitaries(cor_terms, "phase-damping/correlated", strict=strict)
    return mix(un, cor, mu, label=f"phase-damping(mu={mu:g})")


def phase_damping_rtn(params: RtnParams, mu: float = 0.0, strict: bool = False) -> KrausSet:
    """Phase damping with the flip weight bound to ``p = phi(nu)`` (so ``p = 1`` at ``t = 0``)."""
    return phase_damping_two_qubit(PhaseDampingParams.from_rtn(params), mu, strict=strict)


# -- amplitude damping --------------------------------------------------------

def amplitude_damping_two_qubit(p: float, mu: float = 0.0, dp: float = 0.0, d2p: float = 0.0,
                                strict: bool = False) -> KrausSet:
    """Standard two-qubit amplitude damping with decay probability ``p``.

    Uncorrelated part: product of ``K1 = diag(sqrt(1-p), 1)`` and
    ``K2 = sqrt(p) |0><1|`` (excited state first). Correlated part:
    ``E0 = diag(sqrt(1-p), 1, 1, 1)`` and ``E1 = sqrt(p) |00><11|``, a
    joint decay of the doubly excited state.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    mu = _check_mu(mu)
    flags = set()
    keep, dkeep, deg1 = _sqrt_coefficient(1.0 - p, -dp, -d2p)
    lose, dlose, deg2 = _sqrt_coefficient(p, dp, d2p)
    if deg1 or deg2:
        if strict:
            raise DegenerateDerivative("amplitude damping coefficient derivative at a zero weight")
        flags.add(DEGENERATE)

    excited = np.diag([1.0, 0.0]).astype(complex)
    ground = np.diag([0.0, 1.0]).astype(complex)
    k1, dk1 = keep * excited + ground, dkeep * excited
    k2, dk2 = lose * SIGMA_MINUS, dlose * SIGMA_MINUS
    single = KrausSet((k1, k2), (dk1, dk2), "amplitude-damping", frozenset(flags))
    un = product_two_qubit(single)

    top = np.zeros((4, 4), dtype=complex)
    top[0, 0] = 1.0
    jump = np.outer(ket("00"), ket("11").conj())
    e0 = keep * top + (I4 - top)
    cor = KrausSet((e0, lose * jump), (dkeep * top, dlose * jump),
                   "amplitude-damping/correlated", frozenset(flags))
    return mix(un, cor, mu, label=f"amplitude-damping(mu={mu:g})")


def amplitude_damping_literal(f: float, mu: float = 0.0, df: float = 0.0, d2f: float = 0.0,
                              strict: bool = False) -> KrausSet:
    """The two diagonal operators ``sqrt((1 +/- phi)/2) I`` taken verbatim as a two-qubit set.

    Both operators are multiples of the identity, so the channel is the
    identity map and the correlated and uncorrelated sets coincide. The
    result carries the ``paper-literal-identity`` flag.
    """
    mu = _check_mu(mu)
    terms = [((1.0 + f) / 2.0, df / 2.0, d2f / 2.0, I4),
             ((1.0 - f) / 2.0, -df / 2.0, -d2f / 2.0, I4)]
    base = _weighted_unitaries(terms, "amplitude-damping/paper-literal", flags=(PAPER_LITERAL,),
                               strict=strict)
    return mix(base, base, mu, label=f"amplitude-damping-literal(mu={mu:g})")


def amplitude_damping_rtn(params: RtnParams, mu: float = 0.0, variant: str = "standard",
                          strict: bool = False) -> KrausSet:
    """Amplitude damping driven by telegraph noise.

    ``standard`` binds the decay probability to ``p = 1 - phi^2``;
    ``paper-literal`` uses :func:`amplitude_damping_literal`.
    """
    f, df, d2f = phi(params), phi_rate(params), phi_accel(params)
    if variant == "standard":
        p = min(max(one_minus_phi(params) * (1.0 + f), 0.0), 1.0)
        dp = -2.0 * f * df
        d2p = -2.0 * (df * df + f * d2f)
        return amplitude_damping_two_qubit(p, mu, dp, d2p, strict=strict)
    if variant == "paper-literal":
        return amplitude_damping_literal(f, mu, df, d2f, strict=strict)
    raise ValueError(f"unknown amplitude damping variant {variant!r}")


FAMILIES = ("rtn-product", "phase-damping", "amplitude-damping")
VARIANTS = ("standard", "paper-literal")


def family_channel(family: str, params: RtnParams, mu: float, variant: str = "standard",
                   strict: bool = False) -> KrausSet:
    """Dispatch on a family name as used by the sweeps."""
    if family == "rtn-product":
        return rtn_two_qubit(params, mu, strict=strict)
    if family == "phase-damping":
        return phase_damping_rtn(params, mu, strict=strict)
    if family == "amplitude-damping":
        return amplitude_damping_rtn(params, mu, variant, strict=strict)
    raise ValueError(f"unknown channel family {family!r}")


def family_weight(family: str, f: float, variant: str = "standard") -> float:
    """The scalar noise weight ``p`` a family derives from ``phi``."""
    if family == "phase-damping":
        return f
    if family == "amplitude-damping" and variant == "standard":
        return 1.0 - f * f
    return (1.0 - f) / 2.0


# -- application and validation -----------------------------------------------

def apply_channel(k: KrausSet, rho) -> DensityMatrix:
    """``sum_a K_a rho K_a^dagger``."""
    m = np.asarray(rho.matrix if isinstance(rho, DensityMatrix) else rho, dtype=complex)
    if m.shape != (k.dim, k.dim):
        raise DimensionMismatch(f"state of shape {m.shape} does not fit a {k.dim}-dim channel")
    out = sum(a @ m @ a.conj().T for a in k.operators)
    return DensityMatrix(out)


def choi_matrix(k: KrausSet) -> np.ndarray:
    """``sum_a vec(K_a) vec(K_a)^dagger`` with column-stacking ``vec``."""
    vecs = [a.reshape(-1, order="F") for a in k.operators]
    return sum(np.outer(v, v.conj()) for v in vecs)


@dataclass(frozen=True)
class CptpReport:
    completeness_defect: float
    choi_min_eigenvalue: float

    def ok(self, completeness_tol: float = COMPLETENESS_TOL, choi_tol: float = CHOI_TOL) -> bool:
        return self.completeness_defect <= completeness_tol and self.choi_min_eigenvalue >= -choi_tol


def validate_cptp(k: KrausSet) -> CptpReport:
    lam = hermitian_eigenvalues(choi_matrix(k))
    return CptpReport(k.completeness_defect(), float(lam[0]))


def max_trace_residual(k: KrausSet, states: Sequence) -> float:
    """Largest ``|tr E(rho) - 1|`` over the given states, without state validation."""
    worst = 0.0
    for rho in states:
        m = np.asarray(rho.matrix if isinstance(rho, DensityMatrix) else rho, dtype=complex)
        out = sum(a @ m @ a.conj().T for a in k.operators)
        worst = max(worst, abs(np.trace(out) - 1.0))
    return float(worst)
