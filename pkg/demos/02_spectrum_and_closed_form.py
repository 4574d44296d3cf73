# %% [markdown]
# # Bouncer levels: Airy zeros against the closed form
#
# The dimensionless levels are the zeros of Ai(-lambda). A one-line closed
# form comes from keeping only the sine in the large-argument expansion.
# How good is it?

# %%
from __future__ import annotations

import numpy as np

from qbouncer.bouncer import energy_asymptotic, energy_exact, make_system
from qbouncer.spectrum import build_spectrum, fit_scaling_exponent

spec = build_spectrum(200)

# %%
for e in list(spec)[:6]:
    print(f"n={e.n}  exact={e.lambda_exact:.12f}  closed form={e.lambda_asym:.12f}  rel={e.rel_error:.2e}")

# %% [markdown]
# The relative error is largest for the ground state and decays after that,
# staying below 1% everywhere.

# %%
errs = spec.rel_errors[:100]
print(f"worst over n <= 100: {errs.max():.5f} at n = {np.argmax(errs) + 1}")
print(f"n = 100: {errs[-1]:.2e}")

# %% [markdown]
# The levels grow like n^(2/3). A log-log fit away from the ground state
# recovers the exponent.

# %%
print("fitted exponent on n in [10, 200]:", fit_scaling_exponent(spec, 10, 200))

# %% [markdown]
# In SI units for a cesium atom (the default constants) the ground state
# is of order 1e-11 eV and sits a fraction of a micron above the floor.

# %%
cs = make_system()
e1 = energy_exact(cs, 1)
print(f"z0 = {cs.z0:.4e} m, E1 = {e1:.4e} J = {e1 / 1.602176634e-19:.4e} eV")
print(f"closed form E1 = {energy_asymptotic(cs, 1):.4e} J")
