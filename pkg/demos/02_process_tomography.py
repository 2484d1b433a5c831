# %% [markdown]
# # Reconstructing a channel with and without an ancilla
#
# Standard tomography sends four single-qubit states through the channel.
# The ancilla-assisted scheme sends one half of a correlated pair and
# reads off the transfer matrix as ``tau_out @ inv(tau_in)``.

# %%
import numpy as np

from aapt import aapt, bell_state, named_channel, sqpt, tau_from_rho, werner_state
from aapt.channels import chi_from_chi_tilde, random_channel

np.set_printoptions(precision=4, suppress=True)

# %%
channel = named_channel("amplitude_damping", gamma=0.3)
print("true transfer matrix\n", channel.chi_tilde())
print("SQPT\n", sqpt(channel).chi_tilde_hat)
print("AAPT with a Bell pair\n", aapt(tau_from_rho(bell_state()), channel).chi_tilde_hat)

# %% [markdown]
# Any faithful state works, even a separable one, and the process matrix
# follows from the transfer matrix by a fixed linear map.

# %%
channel = random_channel(7)
result = aapt(tau_from_rho(werner_state(1 / 3)), channel)
print("error vs truth:", result.error_vs_truth)
print("chi round trip:", np.linalg.norm(chi_from_chi_tilde(result.chi_tilde_hat) - channel.chi()))
