# %% [markdown]
# # Compiling qubit gates onto one qudit
#
# Three qubits map onto a qudit with 8 computational levels plus an ancilla
# (level 8). Each gate becomes layers of two-level rotations; rotations in one
# layer commute and run in parallel.

# %%
import numpy as np

from quditc import ControlledZ, Hadamard, check_equivalence, index_to_bits, synth_gate
from quditc.synth import explain, synth_cnot, synth_mcz, synth_not, synth_t

for d in range(8):
    print(d, index_to_bits(d, 3))

# %% [markdown]
# ## Hadamard on the first qubit
# Four y-rotations pair levels whose first bit differs, then two full turns
# remove the -1 left on the upper levels.

# %%
h = synth_gate(Hadamard({1}), 3)
print(explain(h))
print(check_equivalence(h).describe())

# %% [markdown]
# ## Hadamard on every qubit: 14 rotations, depth 4

# %%
h_all = synth_gate(Hadamard({1, 2, 3}), 3)
print(h_all.rotation_count, h_all.depth)

# %% [markdown]
# ## CNOT on 16 levels, T, parallel NOTs, controlled-Z

# %%
for rec in (synth_cnot({1}, 2, 4), synth_t(2, 3), synth_not({1, 2}, 3), synth_mcz({1, 3}, {2}, 4)):
    print(explain(rec))
    print("  ->", check_equivalence(rec).describe())
    print()

# %% [markdown]
# ## Controlled-Z cost does not grow with the number of controls

# %%
for n in range(2, 8):
    rec = synth_gate(ControlledZ(range(1, n), {n}), n)
    print(f"N={n}: {rec.rotation_count} rotation, depth {rec.depth}")

# %% [markdown]
# ## T without the ancilla
# Pairing each q_t=0 level with its q_t=1 partner under R_z(pi/4) gives T up to a
# global phase: the program is exp(-i pi/8) T. The equivalence check reports
# the phase q with q * U = T (here exp(i pi/8)) instead of accepting it.

# %%
res = check_equivalence(synth_t(1, 3, use_ancilla=False))
print(res.describe())
print(np.angle(res.global_phase) / np.pi, "* pi")
