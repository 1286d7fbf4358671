"""Entropy functionals and the relative entropy of coherence.

All entropies are in bits (logarithm base 2); with that convention the binary
entropy peaks at exactly 1, which is what makes the dimension-independent
coherence-gain ceiling come out as 1.  The 0*log(0) = 0 convention is applied
pointwise, and probabilities below ``TOLERANCES.prob_floor`` are treated as
exactly zero so round-off dust cannot inject -inf terms.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConsistencyError, DomainError
from .linalg import DensityMatrix, DiagonalDistribution, StateVector, dephase_mixed
from .tolerances import TOLERANCES


def _clamped_nonnegative(value: float, slop: float, what: str) -> float:
    """Clamp tiny negative round-off to 0; fail loudly on anything worse."""
    if value < -slop:
        raise ConsistencyError(f"{what} = {value!r} is below the -{slop:g} slop window")
    # value + 0.0 folds -0.0 into +0.0.
    return 0.0 if value < 0.0 else value + 0.0


def _entropy_of_probs(probs: np.ndarray) -> float:
    p = probs[probs > TOLERANCES.prob_floor]
    if p.size == 0:
        return 0.0
    value = float(-(p * np.log2(p)).sum())
    return _clamped_nonnegative(value, TOLERANCES.entropy_slop, "entropy")


def shannon_entropy(dist: DiagonalDistribution) -> float:
    """H(p) = -sum_i p_i log2 p_i, in [0, log2 d]."""
    return _entropy_of_probs(dist.probs)


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2 (1-x) on [0, 1].

    Symmetric about 1/2, where it attains its maximum value 1.
    """
    x = float(x)
    if not math.isfinite(x) or x < -TOLERANCES.entropy_slop or x > 1.0 + TOLERANCES.entropy_slop:
        raise DomainError(f"binary entropy argument {x!r} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    value = 0.0
    for p in (x, 1.0 - x):
        if p > TOLERANCES.prob_floor:
            value -= p * math.log2(p)
    return _clamped_nonnegative(value, TOLERANCES.entropy_slop, "binary entropy")


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho): Shannon entropy of the eigenvalue spectrum, in bits."""
    eigs = np.clip(rho.eigenvalues(), 0.0, None)
    return _entropy_of_probs(eigs)


def relative_entropy_coherence(rho: DensityMatrix) -> float:
    """C(rho) = S(rho_diag) - S(rho), the relative entropy of coherence.

    Non-negative for every valid density matrix; values inside the
    ``coherence_slop`` round-off window are clamped to 0.
    """
    s_diag = _entropy_of_probs(dephase_mixed(rho).probs)
    s_full = von_neumann_entropy(rho)
    return _clamped_nonnegative(
        s_diag - s_full, TOLERANCES.coherence_slop, "relative entropy of coherence"
    )


def pure_state_coherence(state: StateVector) -> float:
    """Coherence of a pure state: Shannon entropy of its squared amplitudes.

    Equals ``relative_entropy_coherence`` on the corresponding projector, but
    needs no eigensolver.
    """
    return _entropy_of_probs(np.abs(state.amps) ** 2)
