"""Deterministic random primitives shared by ensembles and search.

Generator scheme (stable by construction, documented here on purpose):

* Sub-seed derivation: the k-th sub-seed of a 64-bit master seed is the k-th
  output of SplitMix64 seeded with the master, i.e. the SplitMix64 finalizer
  applied to ``master + (k+1) * GOLDEN mod 2^64``.  The finalizer is a
  bijection on 64-bit words and the golden-ratio stride is odd, so sub-seeds
  never collide for a fixed master.
* Stream: each sub-seed keys a counter-based Philox generator (numpy's
  ``Philox`` bit generator), whose raw uniform doubles are platform-stable.
* Gaussians: Box-Muller on consecutive uniforms; a complex Gaussian consumes
  exactly one uniform pair (radius and angle).
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def subseed(master: int, index: int) -> int:
    """The ``index``-th output of SplitMix64 seeded with ``master``."""
    z = (master + (index + 1) * _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def make_generator(seed: int) -> np.random.Generator:
    """Counter-based Philox stream keyed by a 64-bit seed."""
    return np.random.Generator(np.random.Philox(key=seed & MASK64))


def _box_muller(gen: np.random.Generator, pairs: int) -> tuple[np.ndarray, np.ndarray]:
    # 1 - U keeps the radius argument in (0, 1]; log(0) is unreachable.
    u1 = 1.0 - gen.random(pairs)
    u2 = gen.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    return radius * np.cos(angle), radius * np.sin(angle)


def standard_normals(gen: np.random.Generator, n: int) -> np.ndarray:
    """n independent N(0, 1) reals via Box-Muller."""
    pairs = (n + 1) // 2
    first, second = _box_muller(gen, pairs)
    return np.concatenate([first, second])[:n]


def complex_normals(gen: np.random.Generator, n: int) -> np.ndarray:
    """n independent standard complex Gaussians (N(0,1) real and imaginary parts)."""
    first, second = _box_muller(gen, n)
    return first + 1j * second
