"""SNR-driven selection of a vector from the constraint null space.

The output SNR of a weighted train scales with ||w||_1^2 / ||w||_2^2,
which ranges from 1 (all energy in one pulse) to N (uniform weights).
Any vector in the null space of the constraint matrix keeps the
sidelobes suppressed, so the remaining freedom (the combination
lambda of basis columns, z = Z lambda) can be spent maximizing that
ratio.  Since the p/w split preserves magnitudes (|w_n| = |z_n|), the
ratio of w equals the ratio of Z lambda and the search can run on
lambda directly, minimizing the reciprocal

    g(lambda) = ||Z lambda||_2^2 / ||Z lambda||_1^2.

Two searchers are provided: picking the basis column with the largest
1-norm (``basis_selection``), and a restarted cyclic coordinate descent
over complex lambda (``coordinate_descent``, alias ``hcd``).  g is
scale-invariant, non-convex, and cheap per evaluation, so each scalar
sub-problem is solved derivative-free: a coarse magnitude/phase grid
around the incumbent followed by golden-section refinement on the real
and imaginary parts.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .design import ResilienceGrid, WaveformDesign, design_from_vector

__all__ = [
    "snr_ratio",
    "basis_selection",
    "OptimizerReport",
    "coordinate_descent",
    "hcd",
    "design_from_lambda",
]


def snr_ratio(w) -> float:
    """(sum |w_n|)^2 / sum |w_n|^2, the weight factor of output SNR.

    Lies in [1, N]; 1 for a single nonzero entry, N for uniform
    magnitudes.  Invariant under scaling of w.
    """
    ww = np.asarray(w, dtype=complex).ravel()
    if not np.any(ww != 0):
        raise ValueError("snr_ratio undefined for the zero vector")
    mags = np.abs(ww)
    l1 = mags.sum()
    return float(l1 * l1 / (mags * mags).sum())


def basis_selection(Z: np.ndarray) -> np.ndarray:
    """Basis column with the largest 1-norm (ties -> lowest index).

    For unit 2-norm columns this maximizes the SNR ratio over the
    vertex set {z_1 .. z_U}; convex mixing cannot do better in 1-norm.
    """
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    if Z.size == 0 or Z.shape[1] < 1:
        raise ValueError("empty basis")
    norms = np.abs(Z).sum(axis=0)
    return Z[:, int(np.argmax(norms))].copy()


def _objective(v: np.ndarray) -> float:
    """g = ||v||_2^2 / ||v||_1^2; +inf at v = 0 so zero is never accepted."""
    mags = np.abs(v)
    l1 = mags.sum()
    if l1 == 0.0:
        return math.inf
    return float((mags * mags).sum() / (l1 * l1))


def _golden_min(f, a: float, b: float, iters: int = 40):
    """Golden-section minimum of f on [a, b]; returns (argmin, value)."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (c, fc) if fc < fd else (d, fd)


def _minimize_coordinate(base: np.ndarray, zu: np.ndarray, lam_u: complex, g_cur: float):
    """Best value for one coordinate with the others frozen.

    ``base`` is Z lambda minus this coordinate's contribution, so each
    candidate c evaluates as g(base + zu * c).  Coarse stage: 32 phases
    x 17 log-spaced magnitudes (0 included) around the incumbent scale.
    Refinement: alternating golden sections on Re and Im with a halving
    bracket until the relative improvement drops below 1e-10.
    """
    scale = max(abs(lam_u), 1e-3)
    mags = np.concatenate([[0.0], scale * np.logspace(-2.0, 2.0, 16)])
    phases = np.exp(2j * np.pi * np.arange(32) / 32)
    cands = np.concatenate([[lam_u], np.outer(mags, phases).ravel()])
    V = base[:, None] + np.outer(zu, cands)
    absV = np.abs(V)
    l1 = absV.sum(axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        g = np.where(l1 > 0, (absV * absV).sum(axis=0) / (l1 * l1), np.inf)
    i = int(np.argmin(g))
    best, g_best = complex(cands[i]), float(g[i])

    def eval_at(c: complex) -> float:
        return _objective(base + zu * c)

    step = max(abs(best), scale)
    g_prev = g_best
    for _ in range(60):
        t, gt = _golden_min(lambda r: eval_at(complex(r, best.imag)), best.real - step, best.real + step)
        if gt < g_best:
            best, g_best = complex(t, best.imag), gt
        t, gt = _golden_min(lambda s: eval_at(complex(best.real, s)), best.imag - step, best.imag + step)
        if gt < g_best:
            best, g_best = complex(best.real, t), gt
        step *= 0.5
        if g_prev - g_best <= 1e-10 * max(abs(g_prev), 1e-300):
            break
        g_prev = g_best
    return best, g_best


@dataclass(frozen=True)
class OptimizerReport:
    """Outcome of a coordinate-descent run, winner plus full audit trail.

    ``traces[r]`` lists the objective after every coordinate decision of
    restart r; each is non-increasing because updates that fail to
    strictly decrease the objective are reverted.  ``snr`` is the ratio
    1/objective of the winning lambda.
    """

    best_lambda: np.ndarray
    objective: float
    snr: float
    winner: int
    traces: list
    restarts: int
    sweeps: int
    eps: float
    seed: int = None
    metadata: dict = None

    def to_dict(self) -> dict:
        out = {
            "objective": float(self.objective),
            "snr": float(self.snr),
            "winner": int(self.winner),
            "restarts": int(self.restarts),
            "sweeps": int(self.sweeps),
            "eps": float(self.eps),
            "seed": self.seed,
            "best_lambda": [[float(c.real), float(c.imag)] for c in self.best_lambda],
            "traces": [[float(g) for g in t] for t in self.traces],
        }
        if self.metadata is not None:
            out["metadata"] = self.metadata
        return out

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")


def coordinate_descent(
    Z: np.ndarray,
    restarts: int = 20,
    sweeps: int = 100,
    eps: float = 1e-6,
    seed: int = None,
    metadata: dict = None,
) -> OptimizerReport:
    """Restarted cyclic coordinate descent on g(lambda) over complex lambda.

    Restart 0 starts at the basis-selection vertex, so the returned ratio
    never falls below basis selection's; the remaining restarts draw
    standard complex Gaussian starts from a seeded generator.  lambda is
    rescaled to ||Z lambda||_2 = 1 after each sweep (harmless by scale
    invariance) and a restart stops early once the sweep moves lambda by
    no more than ``eps`` in 2-norm.
    """
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    n_rows, width = Z.shape
    if Z.size == 0 or width < 1:
        raise ValueError("empty basis")
    if restarts < 1 or sweeps < 1:
        raise ValueError("restarts and sweeps must be at least 1")
    if not eps > 0:
        raise ValueError("eps must be positive")
    rng = np.random.default_rng(seed)
    vertex = int(np.argmax(np.abs(Z).sum(axis=0)))

    best_lam, best_g, best_r = None, math.inf, -1
    traces = []
    for r in range(restarts):
        if r == 0:
            lam = np.zeros(width, dtype=complex)
            lam[vertex] = 1.0
        else:
            lam = rng.standard_normal(width) + 1j * rng.standard_normal(width)
            if not np.any(Z @ lam != 0):
                lam = np.zeros(width, dtype=complex)
                lam[vertex] = 1.0
        lam = lam / np.linalg.norm(Z @ lam)
        g_cur = _objective(Z @ lam)
        trace = [g_cur]
        for _ in range(sweeps):
            lam_prev = lam.copy()
            for u in range(width):
                base = Z @ lam - Z[:, u] * lam[u]
                cand, g_new = _minimize_coordinate(base, Z[:, u], complex(lam[u]), g_cur)
                if g_new < g_cur:
                    lam[u] = cand
                    g_cur = g_new
                trace.append(g_cur)
            lam = lam / np.linalg.norm(Z @ lam)
            if np.linalg.norm(lam - lam_prev) <= eps:
                break
        traces.append(trace)
        if g_cur < best_g:
            best_lam, best_g, best_r = lam, g_cur, r

    return OptimizerReport(
        best_lambda=best_lam,
        objective=best_g,
        snr=1.0 / best_g,
        winner=best_r,
        traces=traces,
        restarts=restarts,
        sweeps=sweeps,
        eps=eps,
        seed=seed,
        metadata=metadata,
    )


hcd = coordinate_descent


def design_from_lambda(Z: np.ndarray, lam, grid: ResilienceGrid) -> WaveformDesign:
    """Design from the combined null vector Z lambda.

    The p/w split preserves magnitudes, so snr_ratio of the design's w
    equals ||Z lambda||_1^2 / ||Z lambda||_2^2 exactly; the combined
    vector stays in the null space, so the design residual stays small.
    """
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    ll = np.asarray(lam, dtype=complex).ravel()
    if ll.size != Z.shape[1]:
        raise ValueError(f"lambda length {ll.size} does not match basis width {Z.shape[1]}")
    v = Z @ ll
    if not np.any(v != 0):
        raise ValueError("Z @ lambda is the zero vector")
    return design_from_vector(v, grid)
