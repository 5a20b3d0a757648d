"""Null-space design of resilient pulse trains.

A train of N pulses alternates the two sequences of a complementary pair
according to a +/-1 schedule p and weights the receiver output of pulse n
by a complex w_n.  Range sidelobes inside a Doppler (or delay) interval
vanish when the combined vector z = p * w is orthogonal to every row of
the phase matrix

    E[m, n] = exp(j n theta_m),

one row per constraint angle theta_m.  This module builds E, computes an
orthonormal basis of its numerical null space, and splits a null vector
into the schedule/weight factors

    p_n = sign(Re z_n)   (ties to +1),      w_n = p_n z_n,

so that p * w reproduces z exactly.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "EmptyNullSpaceError",
    "ResilienceGrid",
    "design_matrix",
    "null_space_basis",
    "extract_design",
    "WaveformDesign",
    "design_from_vector",
    "null_space_design",
    "DesignReport",
    "validate_design",
]

GRID_KINDS = ("doppler", "delay")


class EmptyNullSpaceError(RuntimeError):
    """Raised when the constraint matrix has full column rank."""


@dataclass(frozen=True)
class ResilienceGrid:
    """Constraint angles with their axis label and covering interval.

    Angles are stored sorted with duplicates removed.  ``kind`` records
    whether the angles live on the Doppler axis or the delay axis; the
    arithmetic is identical, the label only travels into metadata.
    """

    angles: np.ndarray
    kind: str = "doppler"
    interval: tuple = None

    def __post_init__(self):
        ang = np.unique(np.atleast_1d(np.asarray(self.angles, dtype=float)))
        if ang.size == 0:
            raise ValueError("a resilience grid needs at least one angle")
        if self.kind not in GRID_KINDS:
            raise ValueError(f"kind must be one of {GRID_KINDS}, got {self.kind!r}")
        interval = self.interval
        if interval is None:
            interval = (float(ang[0]), float(ang[-1]))
        lo, hi = float(interval[0]), float(interval[1])
        if not lo <= hi:
            raise ValueError(f"interval endpoints out of order: [{lo}, {hi}]")
        if ang[0] < lo - 1e-12 or ang[-1] > hi + 1e-12:
            raise ValueError("grid angles fall outside the stated interval")
        ang.setflags(write=False)
        object.__setattr__(self, "angles", ang)
        object.__setattr__(self, "interval", (lo, hi))

    @property
    def m(self) -> int:
        """Number of constraint angles."""
        return int(self.angles.size)

    @classmethod
    def uniform(cls, lo: float, hi: float, count: int, kind: str = "doppler") -> "ResilienceGrid":
        """Evenly spaced angles over [lo, hi] inclusive.

        ``count`` = 1 collapses to the single angle lo.  Duplicate angles
        (possible when lo == hi) are merged.
        """
        if count < 1:
            raise ValueError("count must be at least 1")
        if count == 1:
            angles = np.array([float(lo)])
        else:
            angles = np.linspace(float(lo), float(hi), int(count))
        return cls(angles=angles, kind=kind, interval=(float(lo), float(hi)))


def design_matrix(grid, n_pulses: int) -> np.ndarray:
    """Phase matrix E with entries exp(j n theta_m), shape (M, N).

    ``grid`` may be a :class:`ResilienceGrid` or a bare array of angles.
    N < 2 is rejected: a single pulse admits no nontrivial schedule.
    """
    if n_pulses < 2:
        raise ValueError("need at least 2 pulses for a nontrivial design")
    angles = grid.angles if isinstance(grid, ResilienceGrid) else np.atleast_1d(np.asarray(grid, dtype=float))
    return np.exp(1j * np.outer(angles, np.arange(n_pulses)))


def null_space_basis(matrix: np.ndarray, rtol: float = None) -> np.ndarray:
    """Orthonormal basis of the numerical null space, shape (N, U).

    Columns are the right singular vectors whose singular values fall at
    or below ``max(M, N) * eps * sigma_max`` (the LAPACK-style default;
    pass ``rtol`` to override the relative threshold).  Each column's
    phase is canonicalized so its largest-magnitude entry is real and
    positive, making the basis deterministic across runs.

    Raises
    ------
    EmptyNullSpaceError
        If every singular value sits above the threshold, i.e. the
        matrix has full column rank and only the zero vector maps to 0.
    """
    E = np.atleast_2d(np.asarray(matrix))
    m, n = E.shape
    _, sv, vh = np.linalg.svd(E)
    if rtol is None:
        tol = max(m, n) * np.finfo(float).eps * (sv[0] if sv.size else 0.0)
    else:
        tol = rtol * (sv[0] if sv.size else 0.0)
    rank = int((sv > tol).sum())
    if rank >= n:
        raise EmptyNullSpaceError(
            f"constraint matrix has full column rank ({m} rows, {n} columns): "
            "no nonzero vector satisfies all constraints"
        )
    basis = vh[rank:].conj().T
    # fix the arbitrary SVD phase: largest-|.| entry of each column -> positive real
    for u in range(basis.shape[1]):
        col = basis[:, u]
        pivot = col[np.argmax(np.abs(col))]
        basis[:, u] = col * (np.conj(pivot) / np.abs(pivot))
    return basis


def extract_design(zhat: np.ndarray):
    """Split a nonzero complex vector into (p, w) with p * w == zhat exactly.

    p_n is +1 when Re(zhat_n) >= 0, else -1; w_n = p_n zhat_n.  Since
    p_n in {+1, -1}, the product p * w reproduces zhat bit for bit.
    """
    z = np.asarray(zhat, dtype=complex).ravel()
    if not np.any(z != 0):
        raise ValueError("cannot extract a design from the zero vector")
    p = np.where(z.real >= 0, 1, -1).astype(np.int64)
    w = p * z
    return p, w


@dataclass(frozen=True)
class WaveformDesign:
    """A pulse-train design: +/-1 schedule p, complex weights w.

    ``grid`` is the constraint grid the design was built against (None
    for closed-form baseline schemes) and ``residual`` the relative
    constraint residual ||E (p*w)||_2 / ||w||_2 measured at build time.
    ``scheme`` tags baseline constructions ("bd", "ptm"); None means a
    null-space design.
    """

    p: np.ndarray
    w: np.ndarray
    grid: ResilienceGrid = None
    residual: float = None
    scheme: str = None

    def __post_init__(self):
        from .golay import as_biphase

        p = as_biphase(self.p)
        w = np.asarray(self.w, dtype=complex).ravel()
        if p.size != w.size:
            raise ValueError(f"schedule/weight length mismatch: {p.size} vs {w.size}")
        if not np.any(w != 0):
            raise ValueError("all-zero weight vector")
        p.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "w", w)

    @property
    def n_pulses(self) -> int:
        return int(self.p.size)

    @property
    def z(self) -> np.ndarray:
        """Combined vector p * w fed to the constraint matrix."""
        return self.p * self.w

    def to_dict(self) -> dict:
        grid = self.grid
        out = {
            "N": self.n_pulses,
            "kind": None if grid is None else grid.kind,
            "interval": None if grid is None else [grid.interval[0], grid.interval[1]],
            "M": None if grid is None else grid.m,
            "p": self.p.tolist(),
            "w": [[float(c.real), float(c.imag)] for c in self.w],
            "residual": None if self.residual is None else float(self.residual),
        }
        if self.scheme is not None:
            out["scheme"] = self.scheme
        return out

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")

    @classmethod
    def from_dict(cls, data: dict) -> "WaveformDesign":
        try:
            p = data["p"]
            w = np.array([complex(re, im) for re, im in data["w"]])
            grid = None
            if data.get("interval") is not None:
                lo, hi = data["interval"]
                grid = ResilienceGrid.uniform(lo, hi, int(data["M"]), kind=data.get("kind") or "doppler")
            return cls(p=p, w=w, grid=grid, residual=data.get("residual"), scheme=data.get("scheme"))
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"malformed design payload: {exc}") from exc

    @classmethod
    def load(cls, path) -> "WaveformDesign":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed design file {path}: {exc}") from exc
        try:
            return cls.from_dict(data)
        except ValueError as exc:
            raise ValueError(f"{path}: {exc}") from exc


def design_from_vector(zhat: np.ndarray, grid: ResilienceGrid) -> WaveformDesign:
    """Wrap a null vector as a WaveformDesign, recording its residual."""
    p, w = extract_design(zhat)
    E = design_matrix(grid, p.size)
    residual = float(np.linalg.norm(E @ (p * w)) / np.linalg.norm(w))
    return WaveformDesign(p=p, w=w, grid=grid, residual=residual)


def null_space_design(
    n_pulses: int,
    interval,
    constraints: int = None,
    kind: str = "doppler",
    basis_index: int = 0,
    rtol: float = None,
) -> WaveformDesign:
    """Design a resilient train for ``interval`` from the null space of E.

    Parameters
    ----------
    n_pulses : int
        Train length N (at least 2).
    interval : (float, float)
        Endpoints of the resilience interval.
    constraints : int, optional
        Number M of uniformly spaced constraint angles; defaults to N - 1.
    kind : str
        "doppler" or "delay"; arithmetic is identical on both axes.
    basis_index : int
        Which basis column becomes the design (default: first).
    rtol : float, optional
        Override for the null-space rank threshold.

    With M >= N the matrix is generically full rank; a warning is issued
    before the attempt and :class:`EmptyNullSpaceError` propagates if the
    numerical null space is indeed empty.
    """
    if n_pulses < 2:
        raise ValueError("need at least 2 pulses for a nontrivial design")
    m = n_pulses - 1 if constraints is None else int(constraints)
    if m < 1:
        raise ValueError("need at least one constraint angle")
    if m >= n_pulses:
        warnings.warn(
            f"{m} constraint angles with only {n_pulses} pulses: the constraint "
            "matrix may have full column rank and an empty null space",
            stacklevel=2,
        )
    lo, hi = float(interval[0]), float(interval[1])
    grid = ResilienceGrid.uniform(lo, hi, m, kind=kind)
    basis = null_space_basis(design_matrix(grid, n_pulses), rtol=rtol)
    if not 0 <= basis_index < basis.shape[1]:
        raise ValueError(f"basis_index {basis_index} outside 0..{basis.shape[1] - 1}")
    return design_from_vector(basis[:, basis_index], grid)


@dataclass(frozen=True)
class DesignReport:
    """Residuals of the two usability conditions for a design.

    ``nullspace_residual`` is ||E (p*w)||_2 / ||w||_2 (must be ~0 for the
    sidelobes to vanish on the grid); ``mainlobe_residual`` is
    ||E w||_2 / ||w||_2 (must stay clearly nonzero or the mainlobe
    vanishes with the sidelobes).
    """

    nullspace_residual: float
    mainlobe_residual: float
    null_tol: float
    mainlobe_tol: float

    @property
    def nullspace_ok(self) -> bool:
        return self.nullspace_residual <= self.null_tol

    @property
    def mainlobe_ok(self) -> bool:
        return self.mainlobe_residual > self.mainlobe_tol

    @property
    def ok(self) -> bool:
        return self.nullspace_ok and self.mainlobe_ok

    def to_dict(self) -> dict:
        return {
            "nullspace_residual": float(self.nullspace_residual),
            "mainlobe_residual": float(self.mainlobe_residual),
            "null_tol": float(self.null_tol),
            "mainlobe_tol": float(self.mainlobe_tol),
            "nullspace_ok": self.nullspace_ok,
            "mainlobe_ok": self.mainlobe_ok,
            "ok": self.ok,
        }


def validate_design(
    design: WaveformDesign,
    matrix: np.ndarray = None,
    null_tol: float = 1e-10,
    mainlobe_tol: float = 1e-3,
) -> DesignReport:
    """Check the emitted-design conditions against the constraint matrix.

    Uses ``design.grid`` to rebuild E when ``matrix`` is not supplied.
    """
    if matrix is None:
        if design.grid is None:
            raise ValueError("design carries no grid; pass the constraint matrix explicitly")
        matrix = design_matrix(design.grid, design.n_pulses)
    wnorm = np.linalg.norm(design.w)
    return DesignReport(
        nullspace_residual=float(np.linalg.norm(matrix @ design.z) / wnorm),
        mainlobe_residual=float(np.linalg.norm(matrix @ design.w) / wnorm),
        null_tol=null_tol,
        mainlobe_tol=mainlobe_tol,
    )
