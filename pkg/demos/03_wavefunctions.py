# %% [markdown]
# # Eigenstates of the bouncer
#
# Level n is a shifted Airy function, cut off at the floor. Its normalization
# follows from a quadrature and is checked against a closed form.

# %%
from __future__ import annotations

import numpy as np

from qbouncer.bouncer import (
    count_nodes,
    eigenstate,
    eval_wavefunction,
    expectation_z,
    natural_system,
    overlap,
)

nat = natural_system()
states = [eigenstate(nat, n) for n in range(1, 6)]

# %%
for s in states:
    print(f"n={s.n}  lambda={s.lam:.10f}  C_n={s.norm_const:.10f}  nodes={count_nodes(s, nat)}")

# %% [markdown]
# Orthonormality, by direct quadrature:

# %%
gram = np.array([[overlap(a, b, nat) for b in states] for a in states])
print(np.round(gram, 12))

# %% [markdown]
# The mean height is two thirds of the classical turning point.

# %%
for s in states:
    print(f"n={s.n}  <z>={expectation_z(s, nat):.10f}  (2/3) z_turn={2 / 3 * s.turning_point:.10f}")

# %% [markdown]
# A coarse text profile of the third state.

# %%
s3 = states[2]
z = np.linspace(0, 1.5 * s3.turning_point, 40)
phi = eval_wavefunction(s3, nat, z)
for zi, p in zip(z, phi):
    bar = int(round(30 * p / np.abs(phi).max()))
    print(f"{zi:6.2f} " + (" " * (30 + bar) + "*" if bar < 0 else " " * 30 + "*" * max(bar, 1)))
