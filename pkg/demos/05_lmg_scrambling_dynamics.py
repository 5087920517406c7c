"""
Scrambling dynamics in the Lipkin-Meshkov-Glick chain
=====================================================

A logical qubit encoded into the fully polarized Dicke states |0>^N, |1>^N
is evolved under H = -(2/N) S_z^2 - 2h S_x and read out from a single site.
Three regimes appear around the dynamical phase transition at h = 1/2, and
the scrambling time grows logarithmically with the chain length.
"""

import math

import numpy as np

from scramblemeter import SeesawConfig, imin_timeseries, logfit
from scramblemeter.lmg import scrambling_time_direct

cfg = SeesawConfig(restarts=4, seed=42)
N = 60
grid = [0.25 * i for i in range(81)]  # t in [0, 20]

print("accessible min-information of one site, N =", N)
print("%6s  %8s  %8s  %8s" % ("t", "h=0.2", "h=0.5", "h=2.0"))
series = {h: imin_timeseries(N, h, grid, cfg, threads=4) for h in (0.2, 0.5, 2.0)}
for i in range(0, len(grid), 8):
    row = [series[h][i].value_bits for h in (0.2, 0.5, 2.0)]
    print("%6.2f  %8.4f  %8.4f  %8.4f" % (grid[i], *row))

print("""
subcritical h = 0.2: no scrambling, the value stays near one bit
critical    h = 0.5: sharp dip followed by a chaotic revival
supercritical h = 2: monotone decay toward zero
""")

# scrambling time vs chain length at eps = 0.05: a fast scrambler
eps = 0.05
print("t_scramb(N) at h = 2, threshold %.2f bits" % eps)
pts = []
for n in (40, 80, 160, 320):
    ts = scrambling_time_direct(n, 2.0, eps, t_max=60.0, t_step=0.1, cfg=cfg)
    pts.append((n, ts))
    print("  N = %4d   t_scramb = %s" % (n, "%.2f" % ts if math.isfinite(ts) else "inf"))
slope, intercept, r2 = logfit(pts)
print("fit t_scramb = %.2f ln N + %.2f   (r^2 = %.4f)" % (slope, intercept, r2))
