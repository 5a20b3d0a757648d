"""Discrete cross-ambiguity maps of weighted complementary pulse trains.

For a pair (x, y) transmitted under a +/-1 schedule p and received with
complex weights w, the composite ambiguity at lag k and slow-time angle
theta splits into two terms,

    A(k, theta) = 1/2 (C_x[k] + C_y[k]) f_w(theta)
                + 1/2 (C_x[k] - C_y[k]) f_z(theta),

where z = p * w and f_v(theta) = sum_n v_n exp(j n theta) is the
slow-time response of a coefficient vector v.  For a complementary pair
the first term is exactly 2 L delta_k f_w, so every nonzero lag is
controlled by f_z alone and the zero lag carries L f_w.  The delay axis
obeys the same algebra with delay angles in place of Doppler angles.

Angles are dimensionless phase increments per pulse (radians).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .golay import as_biphase, is_golay_pair

__all__ = [
    "slow_time_response",
    "evaluation_grid",
    "AmbiguityMap",
    "discrete_ambiguity",
    "closed_form_ambiguity",
    "delay_ambiguity",
    "SidelobeMetrics",
    "sidelobe_metrics",
    "write_two_column_csv",
]


def _fmt(v) -> str:
    """Float cell with 17 significant digits (exact float64 round trip)."""
    return format(float(v), ".17g")


def _fmtc(c) -> str:
    """Complex cell as re+imj, parseable by Python's complex()."""
    c = complex(c)
    return f"{c.real:.17g}{c.imag:+.17g}j"


def slow_time_response(coeffs, angles) -> np.ndarray:
    """f_v(theta) = sum_n v_n exp(j n theta), evaluated at each angle."""
    v = np.asarray(coeffs, dtype=complex).ravel()
    ang = np.atleast_1d(np.asarray(angles, dtype=float))
    return np.exp(1j * np.outer(ang, np.arange(v.size))) @ v


def evaluation_grid(lo: float, hi: float, count: int = 2001) -> np.ndarray:
    """Uniform angle grid used to evaluate maps (distinct from design grids)."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if count == 1:
        return np.array([float(lo)])
    return np.linspace(float(lo), float(hi), int(count))


def _pair_arrays(pair):
    x, y = pair
    xx, yy = as_biphase(x), as_biphase(y)
    if xx.size != yy.size:
        raise ValueError(f"pair length mismatch: {xx.size} vs {yy.size}")
    return xx, yy


def _schedule_weights(p, w):
    pp = as_biphase(p)
    ww = np.asarray(w, dtype=complex).ravel()
    if pp.size != ww.size:
        raise ValueError(f"schedule/weight length mismatch: {pp.size} vs {ww.size}")
    return pp, ww


@dataclass(frozen=True)
class AmbiguityMap:
    """Sampled map A(k, theta): rows are lags -(L-1)..L-1, columns angles."""

    values: np.ndarray
    angles: np.ndarray
    kind: str = "doppler"
    n_pulses: int = None

    def __post_init__(self):
        vals = np.atleast_2d(np.asarray(self.values, dtype=complex))
        ang = np.atleast_1d(np.asarray(self.angles, dtype=float))
        if vals.shape[0] % 2 == 0:
            raise ValueError("lag axis must have odd length 2L-1")
        if vals.shape[1] != ang.size:
            raise ValueError("angle axis does not match the number of columns")
        vals.setflags(write=False)
        ang.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "angles", ang)

    @property
    def sequence_length(self) -> int:
        return (self.values.shape[0] + 1) // 2

    @property
    def lags(self) -> np.ndarray:
        L = self.sequence_length
        return np.arange(-(L - 1), L)

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.values)

    @property
    def peak(self) -> float:
        return float(self.magnitude.max())

    @property
    def mainlobe(self) -> np.ndarray:
        """The zero-lag row A(0, theta)."""
        return self.values[self.sequence_length - 1]

    def sidelobe_peaks(self) -> np.ndarray:
        """max_{k != 0} |A(k, theta)| per angle."""
        mag = self.magnitude
        return np.delete(mag, self.sequence_length - 1, axis=0).max(axis=0)

    @property
    def db(self) -> np.ndarray:
        """20 log10 of the magnitude, normalized so the global peak is 0 dB."""
        mag = self.magnitude
        peak = mag.max()
        if peak == 0:
            raise ValueError("all-zero map has no dB normalization")
        with np.errstate(divide="ignore"):
            return 20.0 * np.log10(mag / peak)

    def lag_index(self, lag: int) -> int:
        L = self.sequence_length
        if not -(L - 1) <= lag <= L - 1:
            raise ValueError(f"lag {lag} outside [-{L - 1}, {L - 1}]")
        return int(lag + L - 1)

    def angle_index(self, angle: float) -> int:
        idx = int(np.argmin(np.abs(self.angles - angle)))
        span = max(1.0, float(self.angles.max() - self.angles.min()))
        if abs(self.angles[idx] - angle) > 1e-9 * span:
            raise ValueError(f"angle {angle} not on the evaluation grid")
        return idx

    def metadata(self) -> dict:
        return {
            "L": self.sequence_length,
            "N": self.n_pulses,
            "kind": self.kind,
            "interval": [float(self.angles.min()), float(self.angles.max())],
            "normalization_peak": self.peak,
        }

    def to_csv(self, path) -> None:
        """Complex values; header row of angles, first column of lags."""
        lines = ["lag," + ",".join(_fmt(a) for a in self.angles)]
        for lag, row in zip(self.lags, self.values):
            lines.append(f"{lag}," + ",".join(_fmtc(c) for c in row))
        Path(path).write_text("\n".join(lines) + "\n")

    def db_to_csv(self, path, reference: float = None) -> None:
        """dB magnitudes in the same layout as :meth:`to_csv`.

        Normalized to the map's own peak by default; pass ``reference``
        to express the map relative to an external peak (values may then
        exceed 0 dB).
        """
        if reference is None:
            db = self.db
        else:
            if reference <= 0:
                raise ValueError("reference peak must be positive")
            with np.errstate(divide="ignore"):
                db = 20.0 * np.log10(self.magnitude / float(reference))
        lines = ["lag," + ",".join(_fmt(a) for a in self.angles)]
        for lag, row in zip(self.lags, db):
            lines.append(f"{lag}," + ",".join(_fmt(v) for v in row))
        Path(path).write_text("\n".join(lines) + "\n")

    def save_metadata(self, path) -> None:
        Path(path).write_text(json.dumps(self.metadata(), indent=2) + "\n")


def _two_term_map(pair, p, w, angles, kind, closed_form: bool) -> AmbiguityMap:
    x, y = _pair_arrays(pair)
    pp, ww = _schedule_weights(p, w)
    ang = np.atleast_1d(np.asarray(angles, dtype=float))
    cx = np.correlate(x, x, "full")
    cy = np.correlate(y, y, "full")
    phases = np.exp(1j * np.outer(ang, np.arange(pp.size)))
    fw = phases @ ww
    fz = phases @ (pp * ww)
    if closed_form:
        values = 0.5 * np.outer(cx - cy, fz)
        values[x.size - 1, :] = x.size * fw
    else:
        values = 0.5 * np.outer(cx + cy, fw) + 0.5 * np.outer(cx - cy, fz)
    return AmbiguityMap(values=values, angles=ang, kind=kind, n_pulses=int(pp.size))


def discrete_ambiguity(pair, p, w, angles, kind: str = "doppler") -> AmbiguityMap:
    """Direct two-term evaluation of A(k, theta); works for any biphase pair.

    Parameters
    ----------
    pair : GolayPair or (x, y)
        Equal-length biphase sequences.
    p, w : array-like
        +/-1 transmit schedule and complex receive weights, length N.
    angles : array-like
        Evaluation angles (radians per pulse).
    kind : str
        Axis label carried into the map metadata ("doppler" or "delay").
    """
    return _two_term_map(pair, p, w, angles, kind, closed_form=False)


def closed_form_ambiguity(pair, p, w, angles, kind: str = "doppler") -> AmbiguityMap:
    """Map via the complementary-pair reduction.

    Nonzero lags reduce to 1/2 (C_x - C_y)[k] f_z(theta) and the zero lag
    to L f_w(theta).  Requires an exactly complementary pair; other pairs
    are rejected because the reduction does not hold for them.
    """
    x, y = _pair_arrays(pair)
    if not is_golay_pair(x, y):
        raise ValueError("closed form requires a complementary pair")
    return _two_term_map(pair, p, w, angles, kind, closed_form=True)


def delay_ambiguity(pair, p, w, angles) -> AmbiguityMap:
    """Delay-axis map B(i, alpha): same algebra, delay angles per pulse."""
    return _two_term_map(pair, p, w, angles, "delay", closed_form=False)


@dataclass(frozen=True)
class SidelobeMetrics:
    """Per-angle mainlobe profile and peak-to-reference sidelobe levels.

    ``prsl_db`` compares the worst nonzero-lag magnitude at each angle to
    a fixed reference peak (the map's own mainlobe maximum unless one is
    supplied); ``relative_prsl_db`` normalizes per angle by |A(0, theta)|
    instead, so it can reach +inf where the mainlobe vanishes.
    """

    angles: np.ndarray
    profile: np.ndarray
    prsl_db: np.ndarray
    relative_prsl_db: np.ndarray
    reference_peak: float

    def profile_to_csv(self, path) -> None:
        write_two_column_csv(path, self.angles, self.profile, ("angle", "mainlobe_magnitude"))

    def prsl_to_csv(self, path) -> None:
        write_two_column_csv(path, self.angles, self.prsl_db, ("angle", "prsl_db"))


def sidelobe_metrics(amap: AmbiguityMap, reference_peak: float = None) -> SidelobeMetrics:
    """Sidelobe metrics of a map; rejects the all-zero map."""
    mag = amap.magnitude
    if not mag.any():
        raise ValueError("all-zero map has no sidelobe metrics")
    L = amap.sequence_length
    profile = mag[L - 1]
    side = np.delete(mag, L - 1, axis=0).max(axis=0)
    ref = float(profile.max()) if reference_peak is None else float(reference_peak)
    with np.errstate(divide="ignore", invalid="ignore"):
        prsl = 20.0 * np.log10(side / ref)
        relative = 20.0 * np.log10(side / profile)
    return SidelobeMetrics(
        angles=amap.angles,
        profile=profile,
        prsl_db=prsl,
        relative_prsl_db=relative,
        reference_peak=ref,
    )


def write_two_column_csv(path, first, second, labels=("angle", "value")) -> None:
    """Two-column CSV with 17-significant-digit cells."""
    first = np.atleast_1d(np.asarray(first, dtype=float))
    second = np.atleast_1d(np.asarray(second, dtype=float))
    if first.size != second.size:
        raise ValueError("column length mismatch")
    lines = [f"{labels[0]},{labels[1]}"]
    lines.extend(f"{_fmt(a)},{_fmt(b)}" for a, b in zip(first, second))
    Path(path).write_text("\n".join(lines) + "\n")
