# %% [markdown]
# # An independent check by finite differences
#
# Discretize -u'' + x u = lambda u on [0, L] with Dirichlet ends and find the
# low eigenvalues by Sturm bisection. Nothing here touches the Airy code.

# %%
from __future__ import annotations

import numpy as np

from qbouncer.oracle_fd import convergence_study, richardson, solve_fd
from qbouncer.spectrum import build_spectrum

exact = build_spectrum(10).exact

# %%
coarse = solve_fd(10, 2000, 20.0)
fine = solve_fd(10, 4000, 20.0)
extrap = richardson(coarse.eigenvalues, fine.eigenvalues)
for n, (a, b, r, e) in enumerate(zip(coarse.eigenvalues, fine.eigenvalues, extrap, exact), 1):
    print(f"n={n:2d}  h={coarse.h:.4f}: {a:.8f}  h/2: {b:.8f}  extrapolated: {r:.10f}  airy: {e:.10f}")

# %% [markdown]
# The error falls like h^2, which is what justifies the extrapolation.

# %%
study = convergence_study(1, [250, 500, 1000, 2000])
for h, lam in study.points:
    print(f"h={h:.5f}  lambda_1={lam:.12f}  err={lam - exact[0]: .2e}")
print("observed order:", study.order)

# %% [markdown]
# Same machinery, flat potential on [0, pi]: eigenvalues k^2.

# %%
print(solve_fd(5, 4000, np.pi, potential=np.zeros_like).eigenvalues)
