"""
Helper Functions for the Quantum State Discrimination Toolkit
Provides reusable utility functions across the toolkit
"""

import math
from typing import Any, Generator, Iterable, List, Set

RADICAND_CLIP = 1e-12


def clipped_sqrt(value: float, clip: float = RADICAND_CLIP) -> float:
    """
    Square root that absorbs rounding below zero

    Args:
        value: Radicand
        clip: Negative radicands down to -clip are treated as zero

    Returns:
        sqrt(max(value, 0))

    Raises:
        ValueError: If value < -clip
    """
    if value < -clip:
        raise ValueError(f"Negative radicand {value:.3e}")
    return math.sqrt(max(value, 0.0))


def chunks(lst: List[Any], n: int) -> Generator[List[Any], None, None]:
    """
    Split a list into chunks of specified size

    Args:
        lst: List to split
        n: Chunk size

    Yields:
        List chunks
    """
    for i in range(0, len(lst), n):
        yield lst[i:i + n]


def format_index_set(indices: Iterable[int]) -> str:
    """
    Render an index set as sorted, space-separated integers ("" when empty)
    """
    return " ".join(str(i) for i in sorted(indices))


def parse_index_set(text: str) -> Set[int]:
    """
    Parse the output of format_index_set, also accepting commas

    Args:
        text: e.g. "0 1" or "0,1"

    Returns:
        Set of integer indices
    """
    tokens = text.replace(",", " ").split()
    return {int(t) for t in tokens}
