# %% [markdown]
# # How faithful can a separable probe be?
#
# For a four-term product mixture the determinant is ``36 P1 P2 P3 P4 Va Vb``
# with ``Va``, ``Vb`` the signed volumes of the two Bloch-vector tetrahedra.
# Regular tetrahedra with equal weights give the largest value, 1/27.

# %%
import numpy as np

from aapt import geometry as geo
from aapt.states import optimal_separable_spec, random_separable

# %%
spec = optimal_separable_spec()
print("optimal tau diagonal:", np.diag(spec.tau()))
print("closed-form det:", geo.separable_sinisterness(spec), "vs -1/27 =", -1 / 27)

rng = np.random.default_rng(0)
dets = [abs(geo.separable_sinisterness(random_separable(rng))) for _ in range(20000)]
print("largest |det| among 20000 random mixtures:", max(dets))

best_spec, best = geo.maximize_separable_det(seed=3, restarts=3)
print("optimiser:", abs(best), "weights:", np.round(best_spec.weights, 4))

# %% [markdown]
# With ``N`` system qubits the same construction uses regular simplices in
# ``4**N - 1`` dimensions; the condition number grows like ``4**N``.

# %%
for n in range(1, 5):
    rep = geo.qubit_scaling(n)
    print(f"N={n}  M={rep.m:4d}  kappa={rep.kappa:6.0f}  log10|det|={rep.log10_det_abs:.3f}")
