# %% [markdown]
# # Three ways to evaluate Ai and Bi
#
# The library carries a Maclaurin series, a modified-Bessel form and two
# asymptotic expansions. Near the origin the series wins; far out the
# expansions are cheaper and more accurate. The hybrid evaluator switches at
# |xi| = 6 and every value reports the route it took and an error estimate.

# %%
from __future__ import annotations

import math

import numpy as np

from qbouncer.airy import (
    airy,
    airy_arrays,
    asymptotic_neg_arrays,
    asymptotic_pos_arrays,
    bessel_arrays,
    series_arrays,
)

# %% [markdown]
# Start at the origin, where the series reduces to the two stored constants.

# %%
ai0, bi0 = airy(0.0)
print(ai0)
print(bi0)

# %% [markdown]
# Compare routes where they overlap. On (0, 6] the series and Bessel forms
# agree to a few parts in 1e12; around 6 the asymptotic expansion takes over.

# %%
xs = np.array([0.5, 2.0, 4.0, 6.0])
s, b = series_arrays(xs), bessel_arrays(xs)
for x, a1, a2 in zip(xs, s.ai, b.ai):
    print(f"xi={x:4.1f}  series={a1: .15e}  bessel={a2: .15e}  diff={abs(a1 - a2):.1e}")

# %%
for t in (5.5, 6.0, 6.5):
    ser = series_arrays(np.array([t]))
    asy = asymptotic_pos_arrays(np.array([t]))
    print(f"Ai({t})  series={ser.ai[0]:.15e} (+-{ser.ai_err[0]:.0e})  "
          f"asymptotic={asy.ai[0]:.15e} (+-{asy.ai_err[0]:.0e})")

# %%
for t in (5.5, 6.0, 6.5):
    ser = series_arrays(np.array([-t]))
    asy = asymptotic_neg_arrays(np.array([t]))
    print(f"Ai(-{t})  series={ser.ai[0]: .15e}  asymptotic={asy.ai[0]: .15e}")

# %% [markdown]
# The Wronskian Ai Bi' - Ai' Bi = 1/pi is a cheap global check across the
# whole switchover range.

# %%
r = airy_arrays(np.linspace(-6, 6, 241))
w = r.ai * r.bip - r.aip * r.bi
print("max |W - 1/pi| =", np.max(np.abs(w - 1 / math.pi)))

# %% [markdown]
# Route bookkeeping for a sweep:

# %%
from collections import Counter

print(Counter(via.value for _, via in airy_arrays(np.linspace(-10, 10, 201)).route))
