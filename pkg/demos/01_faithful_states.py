# %% [markdown]
# # Which two-qubit states can probe a channel?
#
# A state is a usable probe when its Pauli correlation matrix ``tau`` is
# invertible.  The determinant of ``tau`` ("sinisterness") decides that, and
# its condition number says how much measurement noise gets amplified.

# %%
import numpy as np

from aapt import analyze, bell_state, tau_from_rho, werner_state, x_state
from aapt.states import concurrence_pure, random_pure

np.set_printoptions(precision=4, suppress=True)

# %%
for name, rho in [
    ("Bell phi+", bell_state("phi+")),
    ("Werner p=1/3", werner_state(1 / 3)),
    ("Werner p=0", werner_state(0.0)),
    ("X diag(1, 1/3, 1/3, 1/3)", x_state([1 / 3] * 3)),
]:
    rep = analyze(tau_from_rho(rho))
    print(f"{name:26s} det={rep.sinisterness:+.5f} kappa={rep.kappa:.3f} faithful={rep.faithful}")

# %% [markdown]
# For pure states the determinant is fixed by entanglement alone: it is
# minus the fourth power of the concurrence.

# %%
rng = np.random.default_rng(1)
for _ in range(5):
    rho = random_pure(rng)
    c = concurrence_pure(rho)
    print(f"C={c:.4f}  -C^4={-c**4:+.6f}  det={analyze(tau_from_rho(rho)).sinisterness:+.6f}")
