"""Literature comparison schemes: binomial design and the PTM schedule.

Both fix p and w in closed form instead of solving for a null vector.
The binomial design alternates the pair strictly and weights pulse n by
the binomial coefficient C(N-1, n), which turns the schedule term into
(1 - e^{j theta})^{N-1}: an order-(N-1) null at theta = 0 that buys a
flat near-zero-Doppler response at the price of SNR (heavily unequal
weights) and of sidelobes that climb steeply at large Doppler.  The PTM
schedule keeps uniform weights and takes the transmit signs from the
Thue-Morse parity sequence, clearing sidelobes only near zero Doppler.
"""
from __future__ import annotations

import math

import numpy as np

from .design import WaveformDesign

__all__ = ["binomial_design", "ptm_schedule"]


def binomial_design(n_pulses: int) -> WaveformDesign:
    """Alternating schedule with binomial weights, scheme tag "bd".

    Coefficients are exact integers (arbitrary precision for large N)
    converted to float only at the boundary, so ratios stay uncorrupted
    by overflow.
    """
    if n_pulses < 2:
        raise ValueError("binomial design needs at least 2 pulses")
    w = np.array([float(math.comb(n_pulses - 1, k)) for k in range(n_pulses)])
    p = np.where(np.arange(n_pulses) % 2 == 0, 1, -1)
    return WaveformDesign(p=p, w=w.astype(complex), scheme="bd")


def ptm_schedule(n_pulses: int) -> WaveformDesign:
    """Thue-Morse transmit signs with uniform weights, scheme tag "ptm".

    p_n is +1 when the binary digit sum of n is even, else -1; for N not
    a power of two this is the length-N prefix of the infinite sequence.
    """
    if n_pulses < 1:
        raise ValueError("need at least 1 pulse")
    p = np.array([1 if n.bit_count() % 2 == 0 else -1 for n in range(n_pulses)])
    return WaveformDesign(p=p, w=np.ones(n_pulses, dtype=complex), scheme="ptm")
