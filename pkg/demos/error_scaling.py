"""Logical error rate vs physical error rate, closed form against Monte Carlo.

Sweeps the bit-flip model over a grid of chip sizes and physical rates,
prints the CSV, and shows the two headline behaviors: the log-log slope
grows with n, and p_L at fixed small p_phys drops as the chip grows.
"""
import numpy as np

import lhzkit as lk
from lhzkit.errormodel import sweep, sweep_csv

ns = (3, 5, 7, 9)
ps = np.geomspace(1e-5, 1e-2, 7)

rows = sweep(ns, ps)
print(sweep_csv(rows))

print("log-log slope of p_L vs p_phys over the small-p end:")
small = np.geomspace(1e-5, 1e-4, 6)
for n in ns:
    pls = [lk.logical_error_probability(lk.ErrorParams.uniform(p, n)).p_L
           for p in small]
    slope = np.polyfit(np.log(small), np.log(pls), 1)[0]
    print(f"  n={n}: slope {slope:.2f}")

print("\np_L at p_phys=1e-4 (odd n; suppression with chip size):")
for n in (5, 7, 9, 11, 13):
    pl = lk.logical_error_probability(lk.ErrorParams.uniform(1e-4, n)).p_L
    print(f"  n={n:2d}: {pl:.3e}")

print("\nclosed form vs Monte Carlo at n=5:")
for p in (1e-3, 3e-3, 1e-2):
    params = lk.ErrorParams.uniform(p, 5)
    closed = lk.logical_error_probability(params).p_L
    mc = lk.monte_carlo_logical_error(params, 200_000, seed=1)
    print(f"  p_phys={p:g}: closed {closed:.3e}  "
          f"mc {mc.p_L:.3e} +/- {mc.std_err:.1e}")
