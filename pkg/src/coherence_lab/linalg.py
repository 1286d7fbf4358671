"""Complex linear algebra for states in a fixed reference basis.

The incoherent (reference) basis is always the computational basis, indexed
0..d-1.  Values are immutable after construction and safe to share between
threads; every operation here is a pure function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    NoConvergenceError,
    NotHermitianError,
    ZeroVectorError,
)
from .tolerances import EIGEN_SWEEP_CAP, TOLERANCES


def _as_complex_vector(values) -> np.ndarray:
    vec = np.array(values, dtype=np.complex128)
    if vec.ndim != 1 or vec.size < 1:
        raise ValueError(f"expected a 1-d complex vector, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise ValueError("vector has non-finite components")
    return vec


@dataclass(frozen=True, eq=False)
class StateVector:
    """Unit-norm complex amplitude vector in the reference basis."""

    amps: np.ndarray

    def __post_init__(self):
        amps = _as_complex_vector(self.amps)
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > TOLERANCES.norm:
            raise ValueError(f"state vector norm is {norm!r}, not 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return self.amps.size


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive-semidefinite, unit-trace complex matrix.

    The spectrum is computed once at construction (it doubles as the
    positivity check) and cached for entropy evaluations.
    """

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] < 1:
            raise ValueError(f"expected a square matrix, got shape {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise ValueError("matrix has non-finite entries")
        herm_defect = float(np.max(np.abs(mat - mat.conj().T)))
        if herm_defect > TOLERANCES.hermitian:
            raise NotHermitianError(
                f"matrix deviates from Hermitian by {herm_defect:.3e}"
            )
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > TOLERANCES.norm:
            raise ValueError(f"trace is {trace!r}, not 1")
        eigs = hermitian_eigenvalues(mat)
        if eigs[-1] < -TOLERANCES.psd:
            raise ValueError(f"matrix has negative eigenvalue {eigs[-1]:.3e}")
        mat.setflags(write=False)
        eigs.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "_eigenvalues", eigs)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Real eigenvalues in descending order (cached at construction)."""
        return self._eigenvalues

    @classmethod
    def from_pure(cls, state: StateVector) -> "DensityMatrix":
        """Projector onto a pure state."""
        return cls(np.outer(state.amps, state.amps.conj()))


@dataclass(frozen=True, eq=False)
class DiagonalDistribution:
    """Probability vector: the diagonal of a dephased state."""

    probs: np.ndarray

    def __post_init__(self):
        probs = np.array(self.probs, dtype=np.float64)
        if probs.ndim != 1 or probs.size < 1:
            raise ValueError(f"expected a 1-d probability vector, got shape {probs.shape}")
        if not np.all(np.isfinite(probs)):
            raise ValueError("probabilities have non-finite entries")
        if probs.min() < -TOLERANCES.psd:
            raise ValueError(f"negative probability {probs.min():.3e}")
        probs = np.clip(probs, 0.0, None)
        total = float(probs.sum())
        if abs(total - 1.0) > TOLERANCES.norm:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @property
    def dim(self) -> int:
        return self.probs.size


def normalize(raw) -> StateVector:
    """Scale a raw complex vector to unit norm, preserving its direction.

    Raises ZeroVectorError when the norm is at or below the degeneracy
    threshold.
    """
    vec = _as_complex_vector(raw)
    norm = float(np.linalg.norm(vec))
    if norm <= TOLERANCES.zero_vector:
        raise ZeroVectorError(f"cannot normalize vector with norm {norm:.3e}")
    return StateVector(vec / norm)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b> = sum_i conj(a_i) * b_i."""
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimensions differ: {a.dim} vs {b.dim}")
    return complex(np.vdot(a.amps, b.amps))


def dephase_pure(state: StateVector) -> DiagonalDistribution:
    """Squared-amplitude distribution of a pure state (its dephased diagonal)."""
    return DiagonalDistribution(np.abs(state.amps) ** 2)


def dephase_mixed(rho: DensityMatrix) -> DiagonalDistribution:
    """Diagonal of a density matrix with all off-diagonal entries removed."""
    return DiagonalDistribution(rho.matrix.diagonal().real)


def _offdiagonal_norm(mat: np.ndarray) -> float:
    off = mat - np.diag(mat.diagonal())
    return float(np.linalg.norm(off))


def hermitian_eigenvalues(
    matrix,
    *,
    convergence: float = TOLERANCES.eigen_convergence,
    sweep_cap: int = EIGEN_SWEEP_CAP,
) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted descending.

    Cyclic Jacobi rotations on the full complex matrix: each sweep visits all
    upper-triangle pivots in row order and annihilates them with a unitary
    plane rotation.  Iteration stops once the off-diagonal Frobenius norm
    drops below ``convergence``; exceeding ``sweep_cap`` sweeps raises
    NoConvergenceError.
    """
    a = np.array(matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    defect = float(np.max(np.abs(a - a.conj().T)))
    if defect > TOLERANCES.hermitian:
        raise NotHermitianError(f"matrix deviates from Hermitian by {defect:.3e}")
    d = a.shape[0]
    if d == 1:
        return np.array([a[0, 0].real])

    # Fold round-off dust into an exactly Hermitian iterate.
    a = (a + a.conj().T) / 2.0

    sweeps = 0
    while _offdiagonal_norm(a) > convergence:
        if sweeps >= sweep_cap:
            raise NoConvergenceError(
                f"off-diagonal norm {_offdiagonal_norm(a):.3e} after {sweep_cap} sweeps"
            )
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                phase = apq / r
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * r)
                sign = 1.0 if tau >= 0.0 else -1.0
                t = sign / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # Unitary V = [[c, s], [-s*conj(phase), c*conj(phase)]] acting
                # on the (p, q) plane; A <- V^dagger A V.
                w = np.conj(phase)
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * w * col_q
                a[:, q] = s * col_p + c * w * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * row_p + c * phase * row_q
                # The rotation annihilates the pivot; clear the residual dust.
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
        sweeps += 1

    eigs = np.sort(a.diagonal().real)[::-1].copy()
    return eigs
