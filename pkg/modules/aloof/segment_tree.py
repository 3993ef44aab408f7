"""
Segment tree over candidate cuts: point updates and leftmost-minimum query
"""
import math
from typing import Sequence, Tuple

class MinSegmentTree:
    """
    Array-backed binary tree with the root at index 1; children of node v
    are 2v and 2v + 1. Each node keeps the minimum of its segment and the
    leftmost position attaining it.
    """

    def __init__(self, values: Sequence[float]):
        size = 1
        while size < max(1, len(values)):
            size *= 2
        self._size = size
        self._value = [math.inf] * (2 * size)
        self._position = [-1] * (2 * size)
        for i, v in enumerate(values):
            self._value[size + i] = v
            self._position[size + i] = i
        for v in range(size - 1, 0, -1):
            self._pull(v)

    def _pull(self, v: int):
        left, right = 2 * v, 2 * v + 1
        # left segment holds smaller positions, so it wins ties
        if self._value[left] <= self._value[right]:
            self._value[v] = self._value[left]
            self._position[v] = self._position[left]
        else:
            self._value[v] = self._value[right]
            self._position[v] = self._position[right]

    def update(self, position: int, value: float):
        v = self._size + position
        self._value[v] = value
        v //= 2
        while v:
            self._pull(v)
            v //= 2

    def minimum(self) -> Tuple[float, int]:
        """(minimum value, leftmost position attaining it); position is -1 when empty"""
        return self._value[1], self._position[1]

    def __getitem__(self, position: int) -> float:
        return self._value[self._size + position]
