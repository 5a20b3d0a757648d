"""Whole-axis suppression versus the binomial and Thue-Morse baselines.

The null-space machinery is not limited to a narrow interval: with
M = N-1 constraint angles spread over [0, pi] the 48-pulse train keeps
its range sidelobes below -80 dB across the entire axis.  The binomial
design concentrates its null at theta = 0 (flat there, steep climb
after), and the Thue-Morse schedule only clears the immediate
neighborhood of zero Doppler.
"""
import numpy as np

from compwave import (
    binomial_design,
    discrete_ambiguity,
    evaluation_grid,
    length64_pair,
    null_space_design,
    ptm_schedule,
    sidelobe_metrics,
    snr_ratio,
)

N = 48
pair = length64_pair()
angles = evaluation_grid(0.0, np.pi, 2001)

designs = {
    "null-space": null_space_design(N, (0.0, np.pi)),
    "binomial": binomial_design(N),
    "thue-morse": ptm_schedule(N),
}

metrics = {}
for name, design in designs.items():
    amap = discrete_ambiguity(pair, design.p, design.w, angles)
    metrics[name] = sidelobe_metrics(amap)

print(f"{'design':<12} {'snr_ratio':>9}  {'PRSL@0.1':>9} {'PRSL@0.5':>9} "
      f"{'PRSL@1.5':>9} {'PRSL@3.0':>9}  {'worst':>9}")
for name, design in designs.items():
    m = metrics[name]
    cells = []
    for theta in (0.1, 0.5, 1.5, 3.0):
        idx = int(np.argmin(np.abs(angles - theta)))
        cells.append(f"{m.prsl_db[idx]:>9.1f}")
    print(f"{name:<12} {snr_ratio(design.w):>9.2f}  " + " ".join(cells)
          + f"  {m.prsl_db.max():>9.1f}")

print("""
Reading the table: the null-space design holds every angle below -80 dB
and keeps a healthy SNR ratio.  The binomial design is unbeatable right
at zero Doppler but pays twice, in SNR (heavily unequal weights) and in
sidelobes past theta ~ 1.  Thue-Morse keeps uniform weights (SNR ratio
N) yet only suppresses near zero.""")
