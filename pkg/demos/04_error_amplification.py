# %% [markdown]
# # Noise amplification is bounded by the condition number
#
# Add Gaussian noise to the measured output correlations and compare the
# relative error of the reconstructed transfer matrix with the relative
# error of the data.

# %%
import numpy as np

from aapt import NoiseModel, aapt_batch, bell_state, condition_number, tau_from_rho, werner_state
from aapt.channels import random_channel

channel = random_channel(11)
for name, rho in [("Bell", bell_state()), ("Werner 1/3", werner_state(1 / 3))]:
    tau = tau_from_rho(rho)
    runs = aapt_batch(tau, channel, NoiseModel.gaussian(0.01, seed=5), runs=2000)
    ratios = np.array([r.error_ratio() for r in runs])
    print(f"{name:10s} kappa={condition_number(tau):.3f} mean ratio={ratios.mean():.3f} max ratio={ratios.max():.3f}")
