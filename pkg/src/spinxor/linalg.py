"""Dense complex matrix helpers and the Hermitian eigensolver.

Matrices are plain ``numpy`` complex128 arrays. The eigensolver is a cyclic
complex Jacobi method; ``unitary_exponential`` builds ``exp(-i H t)`` from it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

SWEEP_CAP = 100
HERMITIAN_TOL = 1e-12


class LinalgError(ValueError):
    pass


class DimensionError(LinalgError):
    pass


class HermiticityError(LinalgError):
    pass


class ConvergenceError(LinalgError):
    pass


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def residual(self, m: np.ndarray) -> float:
        """Frobenius norm of ``M V - V diag(w)``."""
        v = self.eigenvectors
        return frobenius_norm(m @ v - v * self.eigenvalues)

    def orthonormality_defect(self) -> float:
        return unitarity_defect(self.eigenvectors)


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise LinalgError("matrix has non-finite entries")
    return a


def identity(dim: int) -> np.ndarray:
    if dim < 1:
        raise DimensionError(f"dimension must be positive, got {dim}")
    return np.eye(dim, dtype=complex)


def multiply(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def adjoint(m) -> np.ndarray:
    return as_matrix(m).conj().T


def frobenius_norm(m) -> float:
    return float(np.linalg.norm(np.asarray(m), "fro"))


def unitarity_defect(u) -> float:
    u = as_matrix(u)
    return frobenius_norm(u.conj().T @ u - np.eye(u.shape[0]))


def hermiticity_defect(m) -> float:
    """Relative Hermiticity defect ``|M - M^H|_F / max(1, |M|_F)``."""
    m = as_matrix(m)
    return frobenius_norm(m - m.conj().T) / max(1.0, frobenius_norm(m))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    # Phase-align a[p, q] to a real positive value, then apply the real
    # symmetric Jacobi rotation that zeroes it.
    apq = a[p, q]
    b = abs(apq)
    phase = apq / b
    app, aqq = a[p, p].real, a[q, q].real
    tau = (aqq - app) / (2.0 * b)
    t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c
    # Column block of the unitary acting on (p, q).
    g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
    idx = [p, q]
    a[:, idx] = a[:, idx] @ g
    a[idx, :] = g.conj().T @ a[idx, :]
    v[:, idx] = v[:, idx] @ g
    a[p, q] = a[q, p] = 0.0
    a[p, p] = app - t * b
    a[q, q] = aqq + t * b


def jacobi_eigen(m: np.ndarray, sweep_cap: int = SWEEP_CAP) -> tuple[np.ndarray, np.ndarray, int]:
    """Cyclic complex Jacobi on a Hermitian matrix.

    Returns unsorted ``(eigenvalues, eigenvectors, sweeps)``. Within each sweep
    the pairs are visited row by row; pairs already below the threshold are
    skipped.
    """
    a = np.array(m, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = frobenius_norm(a)
    if n == 1 or scale == 0.0:
        return a.diagonal().real.copy(), v, 0
    eps = np.finfo(float).eps
    target = (eps * scale) ** 2
    for sweep in range(1, sweep_cap + 1):
        off = frobenius_norm(a - np.diag(a.diagonal())) ** 2
        if off <= target:
            return a.diagonal().real.copy(), v, sweep - 1
        # Small rotations cost as much as big ones; skip the negligible pairs.
        skip = eps * scale / n
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > skip:
                    _rotate(a, v, p, q)
    off = frobenius_norm(a - np.diag(a.diagonal())) ** 2
    if off <= target:
        return a.diagonal().real.copy(), v, sweep_cap
    raise ConvergenceError(f"Jacobi did not converge within {sweep_cap} sweeps")


def lapack_eigen(m: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
    w, v = np.linalg.eigh(m)
    return w, v, 0


Eigensolver = Callable[[np.ndarray], "tuple[np.ndarray, np.ndarray, int]"]

SOLVERS: dict[str, Eigensolver] = {"jacobi": jacobi_eigen, "lapack": lapack_eigen}


def hermitian_eigen(m, tol: float = HERMITIAN_TOL, solver: str = "jacobi") -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    ``solver="lapack"`` swaps the Jacobi sweep for ``numpy.linalg.eigh``; it is
    used on hot paths (the coefficient search) where thousands of small
    diagonalizations are needed.
    """
    m = as_matrix(m)
    defect = hermiticity_defect(m)
    if defect > tol:
        raise HermiticityError(f"matrix is not Hermitian (relative defect {defect:.3e} > {tol:.1e})")
    # Symmetrize so round-off in the input cannot leak into the rotations.
    h = 0.5 * (m + m.conj().T)
    w, v, _ = SOLVERS[solver](h)
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(np.asarray(w, dtype=float)[order], v[:, order])


def unitary_exponential(h, duration: float = 1.0, tol: float = HERMITIAN_TOL,
                        solver: str = "jacobi") -> np.ndarray:
    """``exp(-i h duration)`` assembled as ``V diag(exp(-i w t)) V^H``."""
    eig = hermitian_eigen(h, tol=tol, solver=solver)
    v = eig.eigenvectors
    return (v * np.exp(-1j * eig.eigenvalues * duration)) @ v.conj().T
