"""Two-term superpositions, pair classification, and their exact identities.

A superposition ``alpha*|phi> + beta*|psi>`` of unit states with
``|alpha|^2 + |beta|^2 = 1`` has squared norm ``1 + 2*Re(conj(alpha)*beta*
<phi|psi>)``, so it is unit-norm exactly when the branches are orthogonal.
The sum and difference branches are tied together by two algebraic
identities that hold for every input:

* norm identity:   ||a*phi + b*psi||^2 + ||a*phi - b*psi||^2 = 2
* mixing identity: the equal mixture of the two dephased branches equals the
  ``|alpha|^2 / |beta|^2`` mixture of the dephased inputs, componentwise.

Both are exposed as residual computations so they can be swept as property
checks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionMismatchError, ZeroVectorError
from .linalg import StateVector, inner_product, normalize
from .tolerances import TOLERANCES


class PairKind(enum.Enum):
    """How two states relate in the reference basis.

    ARBITRARY is a sampling directive only; ``classify_pair`` returns one of
    the other three.
    """

    DISJOINT_SUPPORT = "DisjointSupport"
    ORTHOGONAL_SAME_SPACE = "OrthogonalSameSpace"
    NON_ORTHOGONAL = "NonOrthogonal"
    ARBITRARY = "Arbitrary"


@dataclass(frozen=True)
class PairClass:
    tag: PairKind
    overlap: complex


@dataclass(frozen=True)
class SuperpositionCoefficients:
    """Complex pair (alpha, beta) with |alpha|^2 + |beta|^2 = 1."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        alpha = complex(self.alpha)
        beta = complex(self.beta)
        for name, value in (("alpha", alpha), ("beta", beta)):
            if not (np.isfinite(value.real) and np.isfinite(value.imag)):
                raise ValueError(f"{name} has non-finite components: {value!r}")
        total = abs(alpha) ** 2 + abs(beta) ** 2
        if abs(total - 1.0) > TOLERANCES.norm:
            raise ValueError(f"|alpha|^2 + |beta|^2 = {total!r}, not 1")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def alpha_sq(self) -> float:
        return abs(self.alpha) ** 2

    @property
    def beta_sq(self) -> float:
        return abs(self.beta) ** 2


@dataclass(frozen=True, eq=False)
class SuperposedState:
    """Raw two-term superposition with its norm and normalized form.

    ``normalized`` is None when the branches cancel (norm at or below the
    degeneracy threshold); callers that need the normalized state decide
    whether that is an error.
    """

    raw: np.ndarray
    s: float
    normalized: Optional[StateVector]

    def __post_init__(self):
        raw = np.array(self.raw, dtype=np.complex128)
        raw.setflags(write=False)
        object.__setattr__(self, "raw", raw)


def _require_same_dim(phi: StateVector, psi: StateVector) -> None:
    if phi.dim != psi.dim:
        raise DimensionMismatchError(f"dimensions differ: {phi.dim} vs {psi.dim}")


def superpose(
    coeffs: SuperpositionCoefficients, phi: StateVector, psi: StateVector
) -> SuperposedState:
    """Form alpha*|phi> + beta*|psi> and record its norm."""
    _require_same_dim(phi, psi)
    raw = coeffs.alpha * phi.amps + coeffs.beta * psi.amps
    s = float(np.linalg.norm(raw))
    normalized = StateVector(raw / s) if s > TOLERANCES.zero_vector else None
    return SuperposedState(raw=raw, s=s, normalized=normalized)


def t_states(
    coeffs: SuperpositionCoefficients, phi: StateVector, psi: StateVector
) -> tuple[StateVector, StateVector]:
    """Normalized sum and difference branches (T1, T2).

    T1 = (alpha*phi + beta*psi)/||.||, T2 = (alpha*phi - beta*psi)/||.||.
    Raises ZeroVectorError naming the branch that degenerated.
    """
    _require_same_dim(phi, psi)
    raw_plus = coeffs.alpha * phi.amps + coeffs.beta * psi.amps
    raw_minus = coeffs.alpha * phi.amps - coeffs.beta * psi.amps
    if float(np.linalg.norm(raw_plus)) <= TOLERANCES.zero_vector:
        raise ZeroVectorError("sum branch (T1) of the superposition is degenerate")
    if float(np.linalg.norm(raw_minus)) <= TOLERANCES.zero_vector:
        raise ZeroVectorError("difference branch (T2) of the superposition is degenerate")
    return normalize(raw_plus), normalize(raw_minus)


def classify_pair(phi: StateVector, psi: StateVector) -> PairClass:
    """Classify a state pair for bound routing.

    DisjointSupport (no shared basis index, checked amplitude-wise) takes
    precedence over OrthogonalSameSpace (vanishing overlap); everything else
    is NonOrthogonal.
    """
    _require_same_dim(phi, psi)
    overlap = inner_product(phi, psi)
    shared = float(np.minimum(np.abs(phi.amps), np.abs(psi.amps)).max())
    if shared <= TOLERANCES.support:
        tag = PairKind.DISJOINT_SUPPORT
    elif abs(overlap) <= TOLERANCES.overlap:
        tag = PairKind.ORTHOGONAL_SAME_SPACE
    else:
        tag = PairKind.NON_ORTHOGONAL
    return PairClass(tag=tag, overlap=overlap)


def mixing_identity_residual(
    coeffs: SuperpositionCoefficients, phi: StateVector, psi: StateVector
) -> float:
    """Max-abs componentwise residual of the dephased mixing identity.

    (1/2)|a*phi + b*psi|_i^2 + (1/2)|a*phi - b*psi|_i^2 must equal
    |a|^2 |phi_i|^2 + |b|^2 |psi_i|^2 for every index i.  Stated with the
    raw (unnormalized) branches, this covers the normalized form too: the
    branch norms are exactly the weights the normalized version uses.
    """
    _require_same_dim(phi, psi)
    raw_plus = coeffs.alpha * phi.amps + coeffs.beta * psi.amps
    raw_minus = coeffs.alpha * phi.amps - coeffs.beta * psi.amps
    lhs = 0.5 * np.abs(raw_plus) ** 2 + 0.5 * np.abs(raw_minus) ** 2
    rhs = coeffs.alpha_sq * np.abs(phi.amps) ** 2 + coeffs.beta_sq * np.abs(psi.amps) ** 2
    return float(np.max(np.abs(lhs - rhs)))


def norm_identity_residual(
    coeffs: SuperpositionCoefficients, phi: StateVector, psi: StateVector
) -> float:
    """|s_plus^2 + s_minus^2 - 2| for the sum and difference branches."""
    _require_same_dim(phi, psi)
    raw_plus = coeffs.alpha * phi.amps + coeffs.beta * psi.amps
    raw_minus = coeffs.alpha * phi.amps - coeffs.beta * psi.amps
    s_plus_sq = float(np.linalg.norm(raw_plus) ** 2)
    s_minus_sq = float(np.linalg.norm(raw_minus) ** 2)
    return abs(s_plus_sq + s_minus_sq - 2.0)
