"""Dense complex matrix kernel for 2x2 and 4x4 operator work.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.

Basis convention
----------------
Single-qubit basis is ordered ``|1>, |0>`` (excited first), so the
lowering operator ``sigma_minus = |0><1|`` sends index 0 to index 1.
Two-qubit operators use the induced ordering ``|11>, |10>, |01>, |00>``.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import NotHermitian

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
EIG_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, SIGMA_1, SIGMA_2, SIGMA_3)
# |1> is index 0, |0> is index 1
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)

KET_1 = np.array([1, 0], dtype=complex)
KET_0 = np.array([0, 1], dtype=complex)


def as_matrix(a) -> np.ndarray:
    """Coerce to a square complex128 array, raising ValueError otherwise."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    return m


def dagger(a) -> np.ndarray:
    return np.conj(as_matrix(a)).T


def trace(a) -> complex:
    return complex(np.trace(as_matrix(a)))


def kron(a, b) -> np.ndarray:
    """Tensor product; entry ``(i*db + k, j*db + l)`` equals ``a[i, j] * b[k, l]``."""
    a, b = as_matrix(a), as_matrix(b)
    n = a.shape[0] * b.shape[0]
    return np.einsum("ij,kl->ikjl", a, b).reshape(n, n)


def hs_norm(a) -> float:
    """Hilbert-Schmidt (Frobenius) norm ``sqrt(tr[a^dagger a])``."""
    m = as_matrix(a)
    return math.sqrt(float(np.sum(m.real**2 + m.imag**2)))


def hermiticity_defect(a) -> float:
    m = as_matrix(a)
    return float(np.max(np.abs(m - m.conj().T)))


def hermitian_eigenvalues(a, tol: float = EIG_TOL, herm_tol: float = 1e-10,
                          max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each pivot ``(p, q)`` is first made real by a diagonal phase, then
    annihilated with a real plane rotation. Sweeps stop once the
    off-diagonal mass falls below ``tol`` times the matrix norm.

    Returns the eigenvalues in ascending order.

    Raises:
        NotHermitian: if ``max|a - a^dagger| > herm_tol``.
    """
    m = as_matrix(a)
    defect = hermiticity_defect(m)
    if defect > herm_tol:
        raise NotHermitian(f"matrix is not Hermitian (defect {defect:.3e})")
    m = 0.5 * (m + m.conj().T)
    n = m.shape[0]
    scale = hs_norm(m)
    if n == 1 or scale == 0.0:
        return np.sort(np.diag(m).real)
    target = tol * scale
    for _ in range(max_sweeps):
        if hs_norm(m - np.diag(np.diag(m))) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p, q]
                r = abs(apq)
                if r <= 1e-300 or r < 1e-3 * target / n:
                    continue
                phase = apq / r
                m[:, q] *= phase.conjugate()
                m[q, :] *= phase
                theta = (m[q, q].real - m[p, p].real) / (2.0 * r)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = m[:, p].copy()
                col_q = m[:, q].copy()
                m[:, p] = c * col_p - s * col_q
                m[:, q] = s * col_p + c * col_q
                row_p = m[p, :].copy()
                row_q = m[q, :].copy()
                m[p, :] = c * row_p - s * row_q
                m[q, :] = s * row_p + c * row_q
                m[p, q] = m[q, p] = 0.0
    return np.sort(np.diag(m).real)


def ket(bits: str) -> np.ndarray:
    """Computational basis ket from a bit string, e.g. ``ket("10")``."""
    v = np.ones(1, dtype=complex)
    for b in bits:
        v = np.kron(v, KET_1 if b == "1" else KET_0)
    return v


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


@lru_cache(maxsize=None)
def bell_state() -> "DensityMatrix":
    """The Bell state ``(|00> + |11>)/sqrt(2)``: corner entries 1/2 in this basis ordering.

    Cached; the returned state is read-only.
    """
    return DensityMatrix(projector((ket("00") + ket("11")) / math.sqrt(2)))


def maximally_mixed(dim: int) -> "DensityMatrix":
    return DensityMatrix(np.eye(dim, dtype=complex) / dim)


def random_density_matrix(dim: int, rng: np.random.Generator, rank: int | None = None) -> "DensityMatrix":
    """Ginibre-distributed mixed state."""
    k = dim if rank is None else rank
    g = rng.normal(size=(dim, k)) + 1j * rng.normal(size=(dim, k))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho / np.trace(rho).real)


class DensityMatrix:
    """A validated quantum state.

    Checks Hermiticity, unit trace and positivity on construction. The
    tolerances can be loosened for integrated trajectories.
    """

    __slots__ = ("matrix", "purity")

    def __init__(self, matrix, *, herm_tol: float = HERMITIAN_TOL,
                 trace_tol: float = TRACE_TOL, psd_tol: float = PSD_TOL):
        m = as_matrix(matrix).copy()
        defect = hermiticity_defect(m)
        if defect > herm_tol:
            raise NotHermitian(f"state is not Hermitian (defect {defect:.3e})")
        tr = np.trace(m)
        if abs(tr - 1.0) > trace_tol:
            raise ValueError(f"state trace is {tr}, expected 1")
        lam = hermitian_eigenvalues(m, herm_tol=max(herm_tol, 1e-10))
        if lam[0] < -psd_tol:
            raise ValueError(f"state is not positive semidefinite (min eigenvalue {lam[0]:.3e})")
        m.setflags(write=False)
        self.matrix = m
        self.purity = float(np.real(np.trace(m @ m)))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim}, purity={self.purity:.6g})"
