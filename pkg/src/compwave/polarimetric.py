"""Dual-polarization (four-channel) ambiguity analysis.

Transmitting the pair on two orthogonal polarizations under a shared
+/-1 schedule (x on V when p_n = +1 and on H otherwise, with the
time-reversed partner sequences on the opposite channel) yields four
discrete cross-ambiguity channels: the co-polar maps VV and HH and the
cross-polar maps VH and HV.  The co-polar maps share the single-antenna
two-term structure and differ only in the sign of the schedule term;
the cross-polar maps collapse to

    VH(k, theta) = C_xy[k] f_z(theta),
    HV(k, theta) = C_yx[k] f_z(theta),

because the reversal correlations obey C_yrev,xrev = C_xy and
C_xrev,yrev = C_yx (checked numerically on every call against the
unreduced two-term forms).  One condition therefore governs everything:
if f_z vanishes on the grid, the co-polar sidelobes and both
cross-polar channels vanish together, and the scattering matrix can be
read off the output matrix U = H [[VV, VH], [HV, HH]].
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ambiguity import AmbiguityMap, discrete_ambiguity, slow_time_response
from .design import ResilienceGrid
from .golay import as_biphase

__all__ = [
    "ScatteringMatrix",
    "PolarimetricAmbiguity",
    "polarimetric_ambiguities",
    "output_matrix",
    "cross_channel_nulls",
]


@dataclass(frozen=True)
class ScatteringMatrix:
    """Per-target scattering coefficients h_vv, h_vh, h_hv, h_hh."""

    h_vv: complex
    h_vh: complex
    h_hv: complex
    h_hh: complex

    @property
    def matrix(self) -> np.ndarray:
        return np.array(
            [[complex(self.h_vv), complex(self.h_vh)], [complex(self.h_hv), complex(self.h_hh)]]
        )

    @classmethod
    def identity(cls) -> "ScatteringMatrix":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_matrix(cls, mat) -> "ScatteringMatrix":
        m = np.asarray(mat, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"scattering matrix must be 2x2, got {m.shape}")
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])


@dataclass(frozen=True)
class PolarimetricAmbiguity:
    """The four channel maps over common lag and angle axes."""

    vv: AmbiguityMap
    hh: AmbiguityMap
    vh: AmbiguityMap
    hv: AmbiguityMap

    @property
    def channels(self) -> dict:
        return {"vv": self.vv, "hh": self.hh, "vh": self.vh, "hv": self.hv}


def polarimetric_ambiguities(pair, p, w, angles, kind: str = "doppler") -> PolarimetricAmbiguity:
    """All four channel maps for a pair under schedule p and weights w.

    VV is computed by :func:`~compwave.ambiguity.discrete_ambiguity` and
    is bit-identical to the single-antenna map.  The cross-polar maps
    are built from their reduced single-term forms after verifying,
    on this very input, that those agree with the unreduced two-term
    forms involving the reversal correlations.
    """
    x, y = pair
    x, y = as_biphase(x), as_biphase(y)
    if x.size != y.size:
        raise ValueError(f"pair length mismatch: {x.size} vs {y.size}")
    pp = as_biphase(p)
    ww = np.asarray(w, dtype=complex).ravel()
    if pp.size != ww.size:
        raise ValueError(f"schedule/weight length mismatch: {pp.size} vs {ww.size}")
    ang = np.atleast_1d(np.asarray(angles, dtype=float))

    vv = discrete_ambiguity((x, y), pp, ww, ang, kind=kind)

    cx = np.correlate(x, x, "full")
    cy = np.correlate(y, y, "full")
    cxy = np.correlate(x, y, "full")
    cyx = np.correlate(y, x, "full")
    c_yr_xr = np.correlate(y[::-1], x[::-1], "full")
    c_xr_yr = np.correlate(x[::-1], y[::-1], "full")

    phases = np.exp(1j * np.outer(ang, np.arange(pp.size)))
    fw = phases @ ww
    fz = phases @ (pp * ww)

    hh_vals = 0.5 * np.outer(cx + cy, fw) - 0.5 * np.outer(cx - cy, fz)
    vh_full = 0.5 * np.outer(cxy - c_yr_xr, fw) + 0.5 * np.outer(cxy + c_yr_xr, fz)
    hv_full = 0.5 * np.outer(cyx - c_xr_yr, fw) + 0.5 * np.outer(cyx + c_xr_yr, fz)
    vh_vals = np.outer(cxy, fz)
    hv_vals = np.outer(cyx, fz)

    scale = max(np.abs(vh_vals).max(), np.abs(hv_vals).max(), 1.0)
    if np.abs(vh_full - vh_vals).max() > 1e-12 * scale or np.abs(hv_full - hv_vals).max() > 1e-12 * scale:
        raise RuntimeError("reversal-correlation reduction failed; channel forms disagree")

    n = int(pp.size)
    return PolarimetricAmbiguity(
        vv=vv,
        hh=AmbiguityMap(values=hh_vals, angles=ang, kind=kind, n_pulses=n),
        vh=AmbiguityMap(values=vh_vals, angles=ang, kind=kind, n_pulses=n),
        hv=AmbiguityMap(values=hv_vals, angles=ang, kind=kind, n_pulses=n),
    )


def output_matrix(scattering: ScatteringMatrix, amb: PolarimetricAmbiguity, lag: int, angle: float) -> np.ndarray:
    """U = H [[VV, VH], [HV, HH]] at one (lag, angle) point.

    The lag must lie on the map's lag axis and the angle on its
    evaluation grid; anything else raises ``ValueError``.
    """
    i = amb.vv.lag_index(lag)
    j = amb.vv.angle_index(angle)
    channel = np.array(
        [
            [amb.vv.values[i, j], amb.vh.values[i, j]],
            [amb.hv.values[i, j], amb.hh.values[i, j]],
        ]
    )
    return scattering.matrix @ channel


def cross_channel_nulls(p, w, grid, tol: float = 1e-10):
    """Does f_z vanish on the grid?  Returns (ok, worst relative residual).

    The single condition sum_n p_n w_n e^{j n theta} = 0 at every grid
    angle makes the co-polar sidelobes vanish and zeroes both
    cross-polar channels; it is the same condition the null-space
    design solves.  The residual is max_m |f_z(theta_m)| / ||p*w||_2.
    """
    pp = as_biphase(p)
    ww = np.asarray(w, dtype=complex).ravel()
    if pp.size != ww.size:
        raise ValueError(f"schedule/weight length mismatch: {pp.size} vs {ww.size}")
    angles = grid.angles if isinstance(grid, ResilienceGrid) else np.atleast_1d(np.asarray(grid, dtype=float))
    z = pp * ww
    residual = float(np.abs(slow_time_response(z, angles)).max() / np.linalg.norm(z))
    return residual <= tol, residual
