"""
Sorted category sequences with one category moved

Removing a row changes the statistics of its category only, so the
sequence ordered by (mean, code) changes by relocating that one entry.
"""
from typing import NamedTuple, Optional

import numpy as np

from modules.splits.impurity import ImpurityKind
from modules.splits.search import PrefixScan, scan_prefixes
from .naive import side_of_left_out

class SequenceWithout(NamedTuple):
    """The sorted sequence with one category taken out, with its statistics"""
    codes: np.ndarray
    means: np.ndarray
    cnt: np.ndarray
    s: np.ndarray
    ss: np.ndarray

    @classmethod
    def build(cls, seq: np.ndarray, position: int, cnt: np.ndarray, s: np.ndarray,
              ss: np.ndarray) -> 'SequenceWithout':
        rest = np.delete(seq, position)
        return cls(rest, s[rest] / cnt[rest], cnt[rest], s[rest], ss[rest])

def relocated_scan(kind: ImpurityKind, rest: SequenceWithout, code: int, nk: float, sk: float, ssk: float,
                   min_leaf: int):
    """
    Prefix scan after reinserting `code` with statistics (nk, sk, ssk)

    Returns (scan or None when fewer than two categories remain, position of
    the category in the new sequence or -1 when it was emptied).
    """
    if nk > 0:
        mk = sk / nk
        at = int(np.count_nonzero((rest.means < mk) | ((rest.means == mk) & (rest.codes < code))))
        cnt = np.insert(rest.cnt, at, nk)
        s = np.insert(rest.s, at, sk)
        ss = np.insert(rest.ss, at, ssk)
    else:
        at = -1
        cnt, s, ss = rest.cnt, rest.s, rest.ss
    if cnt.size < 2:
        return None, at
    return scan_prefixes(kind, cnt, s, ss, np.ones(cnt.size - 1, dtype=bool), min_leaf), at

def left_out_term(stat_i: float, scan: Optional[PrefixScan], at: int, total_n: float, total_s: float):
    """R for the left-out row from the scan of the remaining rows; also reports whether a split was found"""
    if scan is None or scan.position < 0:
        return (stat_i - total_s / total_n) ** 2, False
    right_n = scan.total_n - scan.left_n
    left = side_of_left_out(at <= scan.position, at >= 0, scan.left_n, right_n)
    if left:
        mean = scan.left_s / scan.left_n
    else:
        mean = (scan.total_s - scan.left_s) / right_n
    return (stat_i - mean) ** 2, True
