"""Hard term-by-term and block thresholding rules"""
import math
from typing import Dict, List, Mapping, Sequence, Union

import numpy as np

from nsdwav.errors import BlockOutOfRange
from nsdwav.model import CoefficientTree

BlockThresholds = Union[float, Mapping[int, Sequence[float]]]


def term_mask(tree: CoefficientTree, lambda0: float, cutoff: int) -> Dict[int, np.ndarray]:
    """Keep ``beta_ij`` iff ``|beta_ij| > lambda0`` and ``i <= cutoff``"""
    if lambda0 < 0:
        raise ValueError(f"Threshold must be non-negative, got {lambda0}")
    return {
        level: (np.abs(detail) > lambda0) & (level <= cutoff)
        for level, detail in tree.iter_details()
    }


def term_threshold_apply(
    tree: CoefficientTree, lambda0: float, cutoff: int
) -> CoefficientTree:
    """Term-by-term hard thresholding.

    Levels ``i0 <= i <= min(cutoff, i2 - 1)`` keep the coefficients with
    ``|beta_ij| > lambda0``; every level above ``cutoff`` is zeroed. The approximation
    coefficients are untouched.
    """
    return tree.masked(term_mask(tree, lambda0, cutoff))


def block_partition(level: int, block_length: int) -> List[range]:
    """Consecutive non-overlapping blocks ``[k l, min((k + 1) l, 2**level))``.

    The last block is shorter when ``l`` does not divide ``2**level``.
    """
    if level < 0:
        raise BlockOutOfRange(f"Level must be non-negative, got {level}")
    if block_length < 1:
        raise BlockOutOfRange(f"Block length must be positive, got {block_length}")
    size = 2**level
    return [
        range(start, min(start + block_length, size))
        for start in range(0, size, block_length)
    ]


def block_energy(
    tree: CoefficientTree, level: int, block: range, block_length: int
) -> float:
    """``B_ik = l^{-1} sum_{j in block} beta_ij^2``, always dividing by the nominal ``l``."""
    detail = tree.detail(level)
    if len(block) == 0 or block.start < 0 or block.stop > detail.size:
        raise BlockOutOfRange(
            f"Block {block.start}..{block.stop - 1} outside level {level} "
            f"(0..{detail.size - 1})"
        )
    values = detail[block.start : block.stop]
    return float(np.dot(values, values) / block_length)


def level_block_energies(detail: np.ndarray, block_length: int) -> np.ndarray:
    """:func:`block_energy` of every block of one level"""
    block_count = math.ceil(detail.size / block_length)
    padded = np.zeros(block_count * block_length)
    padded[: detail.size] = detail**2
    return padded.reshape(block_count, block_length).sum(axis=1) / block_length


def _level_thresholds(lambda_sq: BlockThresholds, level: int, block_count: int):
    if isinstance(lambda_sq, Mapping):
        values = np.asarray(lambda_sq[level], dtype=float)
        if values.shape != (block_count,):
            raise BlockOutOfRange(
                f"Level {level} has {block_count} blocks but {values.size} thresholds"
            )
    else:
        values = np.full(block_count, float(lambda_sq))
    if np.any(values < 0):
        raise ValueError("Block thresholds must be non-negative")
    return values


def block_mask(
    tree: CoefficientTree, lambda_sq: BlockThresholds, block_length: int
) -> Dict[int, np.ndarray]:
    """Coefficient masks keeping whole blocks with ``B_ik > lambda^2``"""
    masks = {}
    for level, detail in tree.iter_details():
        energies = level_block_energies(detail, block_length)
        kept = energies > _level_thresholds(lambda_sq, level, energies.size)
        masks[level] = np.repeat(kept, block_length)[: detail.size]
    return masks


def block_threshold_apply(
    tree: CoefficientTree, lambda_sq: BlockThresholds, block_length: int
) -> CoefficientTree:
    """Block hard thresholding on every detail level ``i0 <= i <= i2 - 1``.

    Parameters
    ----------
    tree: CoefficientTree
        Empirical coefficients.
    lambda_sq: Union[float, Mapping[int, Sequence[float]]]
        One squared threshold for every block, or per level a sequence holding the
        squared threshold of each block of :func:`block_partition`.
    block_length: int
        Nominal block length ``l``.

    Returns
    -------
    :class:`CoefficientTree`
        Blocks with ``B_ik > lambda^2`` unchanged, all other detail blocks zeroed.
    """
    return tree.masked(block_mask(tree, lambda_sq, block_length))
