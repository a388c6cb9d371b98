"""Peak-interest seeding: one-sided IQR fence over the normalized timeline."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import EmptySeries
from .segments import Segment


@dataclass(frozen=True)
class IqrConfig:
    """Upper Tukey fence Q3 + k*(Q3 - Q1); quartiles by linear interpolation at q*(n-1)."""

    k: float = 1.5

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"fence multiplier must be >= 0, got {self.k}")


def _quartiles_exact(values):
    """Quartiles in exact arithmetic; used when the series is not plain floats.

    Keeps the detector affine-equivariant bit-for-bit on rational inputs.
    """
    ordered = sorted(values)
    n = len(ordered)

    def at(q: Fraction):
        pos = q * (n - 1)
        lo = math.floor(pos)
        frac = pos - lo
        if frac == 0:
            return ordered[lo]
        return ordered[lo] + (ordered[lo + 1] - ordered[lo]) * frac

    return at(Fraction(1, 4)), at(Fraction(3, 4))


def detect_seed_bins(values, cfg: IqrConfig = IqrConfig()):
    """Flag bins strictly above the upper IQR fence.

    One-sided: only unusually high interest is a seed. Strict `>` means a
    constant series flags nothing. Accepts float sequences (numpy path) or
    exact-number sequences such as Fraction (exact path); returns a boolean
    array / list matching the input kind.
    """
    n = len(values)
    if n == 0:
        raise EmptySeries("cannot detect seeds on an empty series")

    arr = np.asarray(values)
    if arr.dtype.kind == "f" or arr.dtype.kind == "i":
        arr = arr.astype(float)
        q1, q3 = np.quantile(arr, [0.25, 0.75], method="linear")
        fence = q3 + cfg.k * (q3 - q1)
        return arr > fence

    q1, q3 = _quartiles_exact(list(values))
    k = Fraction(cfg.k)
    fence = q3 + k * (q3 - q1)
    return [v > fence for v in values]


def group_seed_segments(mask, bin_s: float, values) -> list[Segment]:
    """Turn maximal runs of flagged bins into seed segments.

    A run over bins [i, j] becomes [i*bin, (j+1)*bin) scored by the mean of
    `values` (the normalized series) over the run.
    """
    if bin_s <= 0:
        raise ValueError(f"bin must be > 0, got {bin_s}")
    segments: list[Segment] = []
    run_start = None
    for i, flagged in enumerate(mask):
        if flagged and run_start is None:
            run_start = i
        elif not flagged and run_start is not None:
            segments.append(_run_segment(run_start, i, bin_s, values))
            run_start = None
    if run_start is not None:
        segments.append(_run_segment(run_start, len(mask), bin_s, values))
    return segments


def _run_segment(i: int, j: int, bin_s: float, values) -> Segment:
    score = float(sum(float(v) for v in values[i:j]) / (j - i))
    return Segment(start=i * bin_s, end=j * bin_s, score=score, source="v1_seed")
