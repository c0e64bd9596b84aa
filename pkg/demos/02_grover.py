# %% [markdown]
# # Grover search on a single qudit
#
# The circuit is a multi-target Hadamard, then t rounds of oracle
# (controlled-Z on all qubits) and diffusion (H, X, controlled-Z, X, H).
# Depths add gate by gate.

# %%
from quditc import build_grover, comparison_table, run_grover
from quditc.grover import success_curve, to_markdown
from quditc.schedule import merge_adjacent

rows = comparison_table(range(3, 8))
print(to_markdown(rows))

# %% [markdown]
# The percentage column is the marked amplitude sin((2t+1) asin(1/sqrt(D))).
# The measured success probability is its square; the simulation reproduces
# it to 1e-9.

# %%
for r in rows:
    print(r.n, f"{r.theoretical_probability:.6f}", f"{r.simulated_probability:.6f}")

# %% [markdown]
# ## Where the depth goes

# %%
print(build_grover(4, 15, 1).metrics().to_text())

# %% [markdown]
# ## Marking a different entry
# X layers around the oracle add 4 to the depth per iteration; the success
# probability does not change.

# %%
print(run_grover(3, 0, 2))

# %% [markdown]
# ## Success probability vs iterations

# %%
for t, p in enumerate(success_curve(5, 31, 10), start=1):
    print(t, f"{p:.4f}", "#" * int(40 * p))

# %% [markdown]
# ## Merging layers across gate boundaries
# Not part of the depth accounting above; shown for comparison.

# %%
for n in range(3, 8):
    c = build_grover(n, 2 ** n - 1, rows[n - 3].iterations)
    print(n, c.program.depth, merge_adjacent(c.program).depth)
