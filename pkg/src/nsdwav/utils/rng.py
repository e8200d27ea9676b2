"""Seeded, splittable random streams.

Every stochastic quantity in nsdwav is drawn from a Philox (counter-based) stream keyed
by a seed derived from ``(master_seed, *keys)`` through :class:`numpy.random.SeedSequence`,
so results never depend on evaluation order or on the number of workers.
"""
import numpy as np

_SEED_MASK = (1 << 64) - 1


def _entropy(value: int) -> int:
    """Map any Python integer onto the non-negative range SeedSequence accepts"""
    return int(value) & _SEED_MASK


def derive_seed(seed: int, *keys: int) -> int:
    """Deterministic non-negative 63-bit child seed of ``seed`` for the key path ``keys``"""
    sequence = np.random.SeedSequence([_entropy(seed)] + [_entropy(k) for k in keys])
    return int(sequence.generate_state(1, dtype=np.uint64)[0]) >> 1


def philox_stream(seed: int) -> np.random.Generator:
    """A Philox generator keyed by ``seed``"""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(_entropy(seed))))


def open_uniforms(stream: np.random.Generator, size) -> np.ndarray:
    """Uniforms on the open interval (0, 1), one 64-bit draw per value in order"""
    tiny = np.finfo(float).tiny
    return np.clip(stream.random(size), tiny, 1.0 - np.finfo(float).epsneg)
