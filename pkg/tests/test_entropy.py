"""Entropy functionals: frozen oracle values and the two mixing inequalities."""

import math

import numpy as np
import pytest

from coherence_lab import (
    DensityMatrix,
    DiagonalDistribution,
    DomainError,
    StateVector,
    binary_entropy,
    normalize,
    pure_state_coherence,
    relative_entropy_coherence,
    shannon_entropy,
    von_neumann_entropy,
)

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def shannon_oracle(probs) -> float:
    """Independent direct-sum entropy in bits."""
    return -sum(p * math.log2(p) for p in probs if p > 0.0)


def random_distribution(rng, dim):
    raw = rng.random(dim) + 1e-3
    return raw / raw.sum()


# --- shannon -----------------------------------------------------------------


def test_shannon_deterministic_distribution():
    assert shannon_entropy(DiagonalDistribution([1.0, 0.0])) == 0.0


def test_shannon_uniform_qubit():
    assert abs(shannon_entropy(DiagonalDistribution([0.5, 0.5])) - 1.0) < 1e-15


def test_shannon_dyadic_example():
    value = shannon_entropy(DiagonalDistribution([0.5, 0.25, 0.25]))
    assert abs(value - 1.5) < 1e-15


def test_shannon_matches_oracle_on_random_distributions():
    rng = np.random.default_rng(21)
    for _ in range(100):
        probs = random_distribution(rng, int(rng.integers(2, 17)))
        assert abs(
            shannon_entropy(DiagonalDistribution(probs)) - shannon_oracle(probs)
        ) < 1e-12


# --- binary entropy ----------------------------------------------------------


def test_binary_entropy_endpoints():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0


def test_binary_entropy_maximum():
    assert binary_entropy(0.5) == 1.0


def test_binary_entropy_one_third():
    expected = math.log2(3.0) - 2.0 / 3.0  # = 0.9182958340544896
    assert abs(binary_entropy(1.0 / 3.0) - expected) < 1e-15
    assert abs(expected - 0.918296) < 1e-6


def test_binary_entropy_symmetric():
    rng = np.random.default_rng(8)
    for x in rng.random(50):
        assert abs(binary_entropy(x) - binary_entropy(1.0 - x)) < 1e-12


def test_binary_entropy_domain():
    with pytest.raises(DomainError):
        binary_entropy(1.1)
    with pytest.raises(DomainError):
        binary_entropy(-0.1)
    # Round-off beyond an endpoint is tolerated and clamped.
    assert binary_entropy(1.0 + 1e-13) == 0.0


# --- von Neumann -------------------------------------------------------------


def test_von_neumann_pure_projector_is_zero():
    rng = np.random.default_rng(9)
    state = normalize(rng.standard_normal(4) + 1j * rng.standard_normal(4))
    rho = DensityMatrix.from_pure(state)
    assert von_neumann_entropy(rho) < 1e-12


def test_von_neumann_maximally_mixed():
    for dim in (2, 3, 8):
        rho = DensityMatrix(np.eye(dim) / dim)
        assert abs(von_neumann_entropy(rho) - math.log2(dim)) < 1e-12


def test_von_neumann_diagonal_example():
    rho = DensityMatrix(np.diag([0.3, 0.7]))
    expected = shannon_oracle([0.3, 0.7])  # = 0.8812908992306927
    assert abs(von_neumann_entropy(rho) - expected) < 1e-12
    assert abs(expected - 0.881291) < 1e-6


# --- relative entropy of coherence --------------------------------------------


def test_coherence_of_incoherent_state_is_zero():
    assert relative_entropy_coherence(DensityMatrix(np.diag([0.3, 0.7]))) == 0.0


def test_coherence_of_plus_projector_is_one():
    plus = StateVector([INV_SQRT2, INV_SQRT2])
    value = relative_entropy_coherence(DensityMatrix.from_pure(plus))
    assert abs(value - 1.0) < 1e-12


def test_pure_path_matches_eigensolver_path():
    rng = np.random.default_rng(10)
    for _ in range(100):
        dim = int(rng.integers(2, 9))
        state = normalize(rng.standard_normal(dim) + 1j * rng.standard_normal(dim))
        via_matrix = relative_entropy_coherence(DensityMatrix.from_pure(state))
        via_amplitudes = pure_state_coherence(state)
        assert abs(via_matrix - via_amplitudes) < 1e-8


# --- pure-state coherence -----------------------------------------------------


def test_pure_coherence_basis_state():
    assert pure_state_coherence(StateVector([1.0, 0.0])) == 0.0


def test_pure_coherence_uniform_superposition():
    assert abs(pure_state_coherence(StateVector([INV_SQRT2, INV_SQRT2])) - 1.0) < 1e-15


def test_pure_coherence_biased_superposition():
    state = StateVector([math.sqrt(0.9), math.sqrt(0.1)])
    expected = shannon_oracle([0.9, 0.1])  # = h(0.9) = 0.46899559358928117
    assert abs(pure_state_coherence(state) - expected) < 1e-12
    assert abs(expected - 0.468996) < 1e-6


# --- mixing inequalities -------------------------------------------------------


def _entropy_triple(rng):
    dim = int(rng.integers(2, 17))
    p = random_distribution(rng, dim)
    q = random_distribution(rng, dim)
    lam = float(rng.uniform(0.01, 0.99))
    return p, q, lam


def test_entropy_concavity_sweep():
    rng = np.random.default_rng(12)
    for _ in range(1000):
        p, q, lam = _entropy_triple(rng)
        mixed = shannon_entropy(DiagonalDistribution(lam * p + (1 - lam) * q))
        average = lam * shannon_entropy(DiagonalDistribution(p)) + (
            1 - lam
        ) * shannon_entropy(DiagonalDistribution(q))
        assert average <= mixed + 1e-12


def test_entropy_mixing_upper_bound_sweep():
    rng = np.random.default_rng(13)
    for _ in range(1000):
        p, q, lam = _entropy_triple(rng)
        mixed = shannon_entropy(DiagonalDistribution(lam * p + (1 - lam) * q))
        average = lam * shannon_entropy(DiagonalDistribution(p)) + (
            1 - lam
        ) * shannon_entropy(DiagonalDistribution(q))
        assert mixed <= average + binary_entropy(lam) + 1e-12


def test_mixing_upper_bound_tight_on_disjoint_supports():
    rng = np.random.default_rng(14)
    for _ in range(100):
        half = int(rng.integers(1, 9))
        p = np.concatenate([random_distribution(rng, half), np.zeros(half)])
        q = np.concatenate([np.zeros(half), random_distribution(rng, half)])
        lam = float(rng.uniform(0.01, 0.99))
        mixed = shannon_entropy(DiagonalDistribution(lam * p + (1 - lam) * q))
        average = lam * shannon_entropy(DiagonalDistribution(p)) + (
            1 - lam
        ) * shannon_entropy(DiagonalDistribution(q))
        assert abs(mixed - (average + binary_entropy(lam))) < 1e-12


def test_concavity_tight_on_identical_distributions():
    rng = np.random.default_rng(15)
    for _ in range(100):
        p = random_distribution(rng, int(rng.integers(2, 17)))
        lam = float(rng.uniform(0.01, 0.99))
        mixed = shannon_entropy(DiagonalDistribution(lam * p + (1 - lam) * p))
        assert abs(mixed - shannon_entropy(DiagonalDistribution(p))) < 1e-12
