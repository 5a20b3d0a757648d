"""Golay complementary pair primitives.

Biphase (+1/-1) sequences, their aperiodic correlations, and the classic
recursive doubling construction.  A pair (x, y) of equal length L is
complementary when the autocorrelations cancel at every nonzero lag:

    C_x[k] + C_y[k] = 2 L delta_k.

Correlations of biphase inputs are carried out in exact integer arithmetic
(int64), so complementarity is checked exactly rather than to a tolerance.
The correlation convention throughout is the matched-filter one,

    C_ab[k] = sum_l a[l + k] conj(b[l]),   k = -(L-1) .. L-1,

which is precisely ``np.correlate(a, b, "full")`` with lags ascending.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

__all__ = [
    "CorrelationProfile",
    "GolayPair",
    "as_biphase",
    "autocorrelation",
    "cross_correlation",
    "is_golay_pair",
    "generate_golay_pair",
    "reverse",
    "length64_pair",
    "save_sequence",
    "load_sequence",
]


def as_biphase(seq) -> np.ndarray:
    """Validate a +1/-1 sequence and return it as an int64 array.

    Accepts any array-like whose entries compare equal to +1 or -1
    (ints, floats, a pre-built array).  Anything else is rejected.
    """
    arr = np.asarray(seq)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D sequence, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("empty sequence is not a valid biphase sequence")
    if not np.all((arr == 1) | (arr == -1)):
        raise ValueError("biphase sequences must contain only +1 and -1 entries")
    if np.iscomplexobj(arr):
        arr = arr.real
    return arr.astype(np.int64)


@dataclass(frozen=True)
class CorrelationProfile:
    """Aperiodic correlation values indexed by lag.

    ``values[i]`` holds the correlation at lag ``lags[i]``; lags run
    -(L-1) .. L-1 in ascending order.  Indexing by lag is supported
    directly: ``profile[0]`` is the zero-lag value.
    """

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 1 or v.size % 2 == 0:
            raise ValueError("correlation profile must have odd length 2L-1")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def length(self) -> int:
        """Length L of the underlying sequences."""
        return (self.values.size + 1) // 2

    @property
    def lags(self) -> np.ndarray:
        L = self.length
        return np.arange(-(L - 1), L)

    def __getitem__(self, lag: int):
        L = self.length
        if not -(L - 1) <= lag <= L - 1:
            raise IndexError(f"lag {lag} outside [-{L - 1}, {L - 1}]")
        return self.values[lag + L - 1]

    def to_table(self) -> list:
        """Explicit (lag, value) rows; avoids off-by-one ambiguity on disk."""
        return [[int(k), v.item()] for k, v in zip(self.lags, self.values)]


def autocorrelation(s) -> CorrelationProfile:
    """Aperiodic autocorrelation of a biphase sequence, exact in int64."""
    arr = as_biphase(s)
    return CorrelationProfile(np.correlate(arr, arr, "full"))


def cross_correlation(a, b) -> CorrelationProfile:
    """Aperiodic cross-correlation C_ab[k] = sum_l a[l+k] b[l].

    Both sequences must be biphase and of equal length.  Reduces to
    :func:`autocorrelation` when ``a`` and ``b`` coincide.
    """
    aa, bb = as_biphase(a), as_biphase(b)
    if aa.size != bb.size:
        raise ValueError(f"length mismatch: {aa.size} vs {bb.size}")
    return CorrelationProfile(np.correlate(aa, bb, "full"))


def is_golay_pair(x, y) -> bool:
    """True when the autocorrelations cancel exactly at every nonzero lag."""
    xx, yy = as_biphase(x), as_biphase(y)
    if xx.size != yy.size:
        raise ValueError(f"length mismatch: {xx.size} vs {yy.size}")
    total = np.correlate(xx, xx, "full") + np.correlate(yy, yy, "full")
    expected = np.zeros_like(total)
    expected[xx.size - 1] = 2 * xx.size
    return bool(np.array_equal(total, expected))


@dataclass(frozen=True)
class GolayPair:
    """A validated complementary pair of biphase sequences.

    Construction checks complementarity exactly and raises ``ValueError``
    otherwise.  Unpacks like a tuple: ``x, y = pair``.
    """

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        xx, yy = as_biphase(self.x), as_biphase(self.y)
        if not is_golay_pair(xx, yy):
            raise ValueError("sequences are not a complementary pair")
        xx.setflags(write=False)
        yy.setflags(write=False)
        object.__setattr__(self, "x", xx)
        object.__setattr__(self, "y", yy)

    @property
    def length(self) -> int:
        return int(self.x.size)

    def __iter__(self):
        return iter((self.x, self.y))

    def save(self, path) -> None:
        payload = {"x": self.x.tolist(), "y": self.y.tolist()}
        Path(path).write_text(json.dumps(payload) + "\n")

    @classmethod
    def load(cls, path) -> "GolayPair":
        data = json.loads(Path(path).read_text())
        try:
            return cls(x=data["x"], y=data["y"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed pair file {path}: {exc}") from exc


def generate_golay_pair(log2_length: int) -> GolayPair:
    """Complementary pair of length 2**log2_length by recursive doubling.

    Starting from the seed pair ([1], [1]), each step maps (x, y) to
    (x || y, x || -y), which preserves complementarity while doubling
    the length.
    """
    if log2_length < 0 or int(log2_length) != log2_length:
        raise ValueError("log2_length must be a nonnegative integer")
    x = np.array([1], dtype=np.int64)
    y = np.array([1], dtype=np.int64)
    for _ in range(int(log2_length)):
        x, y = np.concatenate([x, y]), np.concatenate([x, -y])
    return GolayPair(x=x, y=y)


def reverse(s) -> np.ndarray:
    """Time-reversed copy of a biphase sequence."""
    return as_biphase(s)[::-1].copy()


def length64_pair() -> GolayPair:
    """The bundled length-64 complementary pair used by the experiments."""
    text = resources.files("compwave").joinpath("data/length64_pair.json").read_text()
    data = json.loads(text)
    return GolayPair(x=data["x"], y=data["y"])


def save_sequence(path, s) -> None:
    """Write a biphase sequence as a JSON array of +1/-1 integers."""
    Path(path).write_text(json.dumps(as_biphase(s).tolist()) + "\n")


def load_sequence(path) -> np.ndarray:
    """Read a JSON array of +1/-1 integers back into an int64 array."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed sequence file {path}: {exc}") from exc
    return as_biphase(data)
