"""
Random streams - seeded, splittable PCG64 streams

Work is cut into fixed-size blocks (or batches). Block k always draws from
SeedSequence(seed, spawn_key=(k,)), so the numbers a trial sees depend only on
the seed and its block, never on how many workers run the blocks.
"""

from typing import List, NamedTuple, Sequence

import numpy as np


class Block(NamedTuple):
    """
    A contiguous range of trials drawn from one stream
    """
    index: int
    start: int
    count: int


def stream(seed: int, key: int) -> np.random.Generator:
    """
    Independent generator for block `key` of a run seeded with `seed`
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(key,))))


def split_blocks(total: int, block_size: int) -> List[Block]:
    """
    Cut `total` trials into blocks of `block_size` (the last one may be shorter)
    """
    return [
        Block(index, start, min(block_size, total - start))
        for index, start in enumerate(range(0, total, block_size))
    ]


def uniform_box(rng: np.random.Generator, low: Sequence[float], high: Sequence[float], count: int) -> np.ndarray:
    """
    (count, len(low)) array drawn uniformly from the box [low, high]
    """
    return rng.uniform(np.asarray(low, dtype=np.float64), np.asarray(high, dtype=np.float64), size=(count, len(low)))


def uniform_rows(rng: np.random.Generator, low: Sequence[float], high: Sequence[float], count: int) -> List[List[float]]:
    """
    uniform_box() as Python floats
    """
    return uniform_box(rng, low, high, count).tolist()


def uniform_values(rng: np.random.Generator, low: float, high: float, count: int) -> List[float]:
    return rng.uniform(low, high, size=count).tolist()


__all__ = ["Block", "stream", "split_blocks", "uniform_box", "uniform_rows", "uniform_values"]
