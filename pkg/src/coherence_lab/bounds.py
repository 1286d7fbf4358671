"""The four superposition-coherence relations as checkable reports.

Writing C(.) for the relative entropy of coherence of a pure state,
a = |alpha|^2, b = |beta|^2, h for the binary entropy, and s for the norm of
the raw superposition, the evaluated relations are:

* T1_EQUALITY  (disjoint support, s = 1):
      C(omega) = a*C(phi) + b*C(psi) + h(a)
* GAIN_LE_1    (disjoint support):
      C(omega) - a*C(phi) - b*C(psi) <= 1
* T2_UPPER     (orthogonal branches, s = 1):
      C(omega) <= 2*[a*C(phi) + b*C(psi) + h(a)]
* T3_UPPER     (any non-degenerate superposition):
      s^2*C(T1) <= 2*[a*C(phi) + b*C(psi) + h(a)]
* T4_LOWER_A/B (any non-degenerate superposition):
      s^2*C(T1) >= (a/2)*C(phi) - b*C(psi) - (s^2+b)*h(b/(s^2+b))
      s^2*C(T1) >= (b/2)*C(psi) - a*C(phi) - (s^2+a)*h(a/(s^2+a))

Slack sign conventions: upper bounds report rhs - lhs, lower bounds report
lhs - rhs, and the equality reports the absolute residual |lhs - rhs|.  A
report is satisfied when slack >= -tolerance (equality: residual <=
tolerance).
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .entropy import binary_entropy, pure_state_coherence
from .errors import WrongPairClassError, ZeroVectorError
from .linalg import StateVector
from .superpose import (
    PairClass,
    PairKind,
    SuperposedState,
    SuperpositionCoefficients,
    classify_pair,
    superpose,
)
from .tolerances import TOLERANCES

T1_EQUALITY = "T1_EQUALITY"
GAIN_LE_1 = "GAIN_LE_1"
T2_UPPER = "T2_UPPER"
T3_UPPER = "T3_UPPER"
T4_LOWER_A = "T4_LOWER_A"
T4_LOWER_B = "T4_LOWER_B"

ALL_BOUND_IDS = (T1_EQUALITY, GAIN_LE_1, T2_UPPER, T3_UPPER, T4_LOWER_A, T4_LOWER_B)

EQUALITY_BOUNDS = frozenset({T1_EQUALITY})
UPPER_BOUNDS = frozenset({GAIN_LE_1, T2_UPPER, T3_UPPER})
LOWER_BOUNDS = frozenset({T4_LOWER_A, T4_LOWER_B})


@dataclass(frozen=True)
class BoundReport:
    """One bound evaluation: sides, signed slack, and verdict."""

    bound_id: str
    lhs: float
    rhs: float
    slack: float
    satisfied: bool
    tolerance: float
    inputs_digest: str

    def to_dict(self) -> dict:
        return {
            "bound_id": self.bound_id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "satisfied": self.satisfied,
            "tolerance": self.tolerance,
            "inputs_digest": self.inputs_digest,
        }


def inputs_digest(
    coeffs: SuperpositionCoefficients, phi: StateVector, psi: StateVector
) -> str:
    """Stable hex digest of an input triple (little-endian complex128 bytes)."""
    payload = np.concatenate(
        [np.array([coeffs.alpha, coeffs.beta]), phi.amps, psi.amps]
    ).astype("<c16")
    digest = hashlib.sha256()
    digest.update(b"coherence-lab/1:")
    digest.update(struct.pack("<I", phi.dim))
    digest.update(payload.tobytes())
    return digest.hexdigest()[:16]


class _PairContext:
    """Shared quantities for evaluating several bounds on one input triple."""

    def __init__(
        self,
        coeffs: SuperpositionCoefficients,
        phi: StateVector,
        psi: StateVector,
    ):
        self.coeffs = coeffs
        self.phi = phi
        self.psi = psi

    @cached_property
    def pair_class(self) -> PairClass:
        return classify_pair(self.phi, self.psi)

    @cached_property
    def superposed(self) -> SuperposedState:
        return superpose(self.coeffs, self.phi, self.psi)

    @cached_property
    def coherence_phi(self) -> float:
        return pure_state_coherence(self.phi)

    @cached_property
    def coherence_psi(self) -> float:
        return pure_state_coherence(self.psi)

    @cached_property
    def coherence_t1(self) -> float:
        if self.superposed.normalized is None:
            raise ZeroVectorError("superposition norm is numerically zero")
        return pure_state_coherence(self.superposed.normalized)

    @cached_property
    def weighted_mix(self) -> float:
        c = self.coeffs
        return (
            c.alpha_sq * self.coherence_phi
            + c.beta_sq * self.coherence_psi
            + binary_entropy(c.alpha_sq)
        )

    @cached_property
    def digest(self) -> str:
        return inputs_digest(self.coeffs, self.phi, self.psi)


def _equality_report(
    bound_id: str, lhs: float, rhs: float, tolerance: float, digest: str
) -> BoundReport:
    residual = abs(lhs - rhs)
    return BoundReport(
        bound_id=bound_id,
        lhs=lhs,
        rhs=rhs,
        slack=residual,
        satisfied=residual <= tolerance,
        tolerance=tolerance,
        inputs_digest=digest,
    )


def _upper_report(
    bound_id: str, lhs: float, rhs: float, tolerance: float, digest: str
) -> BoundReport:
    slack = rhs - lhs
    return BoundReport(
        bound_id=bound_id,
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        satisfied=slack >= -tolerance,
        tolerance=tolerance,
        inputs_digest=digest,
    )


def _lower_report(
    bound_id: str, lhs: float, rhs: float, tolerance: float, digest: str
) -> BoundReport:
    slack = lhs - rhs
    return BoundReport(
        bound_id=bound_id,
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        satisfied=slack >= -tolerance,
        tolerance=tolerance,
        inputs_digest=digest,
    )


def _require_disjoint(ctx: _PairContext) -> None:
    if ctx.pair_class.tag is not PairKind.DISJOINT_SUPPORT:
        raise WrongPairClassError(
            f"pair classified as {ctx.pair_class.tag.value}; disjoint support required"
        )


def _theorem1(ctx: _PairContext, tolerance: float) -> BoundReport:
    _require_disjoint(ctx)
    lhs = ctx.coherence_t1
    rhs = ctx.weighted_mix
    return _equality_report(T1_EQUALITY, lhs, rhs, tolerance, ctx.digest)


def _max_gain(ctx: _PairContext, tolerance: float) -> BoundReport:
    _require_disjoint(ctx)
    c = ctx.coeffs
    gain = ctx.coherence_t1 - c.alpha_sq * ctx.coherence_phi - c.beta_sq * ctx.coherence_psi
    return _upper_report(GAIN_LE_1, gain, 1.0, tolerance, ctx.digest)


def _theorem2(ctx: _PairContext, tolerance: float) -> BoundReport:
    if abs(ctx.pair_class.overlap) > TOLERANCES.overlap:
        raise WrongPairClassError(
            f"|<phi|psi>| = {abs(ctx.pair_class.overlap):.3e} exceeds the "
            f"orthogonality threshold {TOLERANCES.overlap:g}"
        )
    lhs = ctx.coherence_t1
    rhs = 2.0 * ctx.weighted_mix
    return _upper_report(T2_UPPER, lhs, rhs, tolerance, ctx.digest)


def _theorem3(ctx: _PairContext, tolerance: float) -> BoundReport:
    s_sq = ctx.superposed.s ** 2
    lhs = s_sq * ctx.coherence_t1
    rhs = 2.0 * ctx.weighted_mix
    return _upper_report(T3_UPPER, lhs, rhs, tolerance, ctx.digest)


def _theorem4(ctx: _PairContext, tolerance: float) -> tuple[BoundReport, BoundReport]:
    c = ctx.coeffs
    s_sq = ctx.superposed.s ** 2
    lhs = s_sq * ctx.coherence_t1
    rhs_a = (
        0.5 * c.alpha_sq * ctx.coherence_phi
        - c.beta_sq * ctx.coherence_psi
        - (s_sq + c.beta_sq) * binary_entropy(c.beta_sq / (s_sq + c.beta_sq))
    )
    rhs_b = (
        0.5 * c.beta_sq * ctx.coherence_psi
        - c.alpha_sq * ctx.coherence_phi
        - (s_sq + c.alpha_sq) * binary_entropy(c.alpha_sq / (s_sq + c.alpha_sq))
    )
    return (
        _lower_report(T4_LOWER_A, lhs, rhs_a, tolerance, ctx.digest),
        _lower_report(T4_LOWER_B, lhs, rhs_b, tolerance, ctx.digest),
    )


def theorem1_equality(
    coeffs: SuperpositionCoefficients,
    phi: StateVector,
    psi: StateVector,
    *,
    tolerance: float = TOLERANCES.bound_slack,
) -> BoundReport:
    """Disjoint-support equality: the superposition coherence equals the
    weighted branch coherences plus the binary entropy of the weight."""
    return _theorem1(_PairContext(coeffs, phi, psi), tolerance)


def max_gain(
    coeffs: SuperpositionCoefficients,
    phi: StateVector,
    psi: StateVector,
    *,
    tolerance: float = TOLERANCES.bound_slack,
) -> BoundReport:
    """Coherence gain over the weighted branch average is at most 1 bit,
    independent of dimension (disjoint support)."""
    return _max_gain(_PairContext(coeffs, phi, psi), tolerance)


def theorem2_upper(
    coeffs: SuperpositionCoefficients,
    phi: StateVector,
    psi: StateVector,
    *,
    tolerance: float = TOLERANCES.bound_slack,
) -> BoundReport:
    """Orthogonal-branch upper bound: twice the weighted mix."""
    return _theorem2(_PairContext(coeffs, phi, psi), tolerance)


def theorem3_upper(
    coeffs: SuperpositionCoefficients,
    phi: StateVector,
    psi: StateVector,
    *,
    tolerance: float = TOLERANCES.bound_slack,
) -> BoundReport:
    """General upper bound on s^2 * C(T1), valid for non-orthogonal branches."""
    return _theorem3(_PairContext(coeffs, phi, psi), tolerance)


def theorem4_lower(
    coeffs: SuperpositionCoefficients,
    phi: StateVector,
    psi: StateVector,
    *,
    tolerance: float = TOLERANCES.bound_slack,
) -> tuple[BoundReport, BoundReport]:
    """Two-branch lower bound on s^2 * C(T1) for arbitrary normalized inputs.

    Both branch inequalities hold individually; the effective lower bound is
    the larger rhs.  Both are reported even when negative (vacuous), since
    tightness analysis needs the raw values.
    """
    return _theorem4(_PairContext(coeffs, phi, psi), tolerance)


def evaluate_all(
    coeffs: SuperpositionCoefficients,
    phi: StateVector,
    psi: StateVector,
    *,
    tolerance: float = TOLERANCES.bound_slack,
) -> list[BoundReport]:
    """Evaluate every bound applicable to the pair's classification.

    Disjoint support: equality, gain ceiling, orthogonal upper bound, and
    both lower-bound branches.  Orthogonal same-space: orthogonal upper bound
    plus lower bounds.  Non-orthogonal: general upper bound plus lower
    bounds.  The lower bounds are skipped when the superposition norm is
    numerically zero.
    """
    ctx = _PairContext(coeffs, phi, psi)
    tag = ctx.pair_class.tag
    reports: list[BoundReport] = []
    if tag is PairKind.DISJOINT_SUPPORT:
        reports.append(_theorem1(ctx, tolerance))
        reports.append(_max_gain(ctx, tolerance))
        reports.append(_theorem2(ctx, tolerance))
    elif tag is PairKind.ORTHOGONAL_SAME_SPACE:
        reports.append(_theorem2(ctx, tolerance))
    else:
        reports.append(_theorem3(ctx, tolerance))
    if ctx.superposed.s > TOLERANCES.zero_vector:
        reports.extend(_theorem4(ctx, tolerance))
    return reports
