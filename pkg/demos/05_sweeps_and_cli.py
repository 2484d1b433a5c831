# %% [markdown]
# # Seeded sweeps
#
# A sweep draws each sample from its own generator keyed on the master seed
# and the sample index, so reruns and parallel runs write the same CSV.
# The ``aapt sweep`` command reads the same config from a JSON file.

# %%
import io

from aapt import cli
from aapt.sweep import SweepConfig, rows_to_csv, run_sweep

config = SweepConfig(state_family="werner-grid", sample_count=7, sigma=0.01, seed=2)
text = rows_to_csv(run_sweep(config))
print(text)
assert text == rows_to_csv(run_sweep(config))

# %%
out = io.StringIO()
cli.main(["scaling", "--max-n", "3"], out=out)
print(out.getvalue())
