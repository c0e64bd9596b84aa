"""Reference qubit-basis gate matrices and equivalence checks for compiled programs."""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .core import ControlledNot, ControlledZ, GateSpec, Hadamard, Not, T, bit
from .simulate import program_unitary
from .synth import SynthesisRecord

EQUIV_ATOL = 1e-10

I2 = np.eye(2, dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
T_GATE = np.diag([1, np.exp(1j * np.pi / 4)])
P1 = np.diag([0, 1]).astype(complex)


def kron_all(factors) -> np.ndarray:
    return reduce(np.kron, factors, np.eye(1, dtype=complex))


def _local(ops: dict[int, np.ndarray], n: int) -> np.ndarray:
    """Tensor product with ``ops[q]`` on qubit ``q`` (q_1 leftmost), identity elsewhere."""
    return kron_all(ops.get(q, I2) for q in range(1, n + 1))


def qubit_gate_matrix(spec: GateSpec, n: int) -> np.ndarray:
    spec.check(n)
    if isinstance(spec, Hadamard):
        return _local({q: H for q in spec.targets}, n)
    if isinstance(spec, Not):
        return _local({q: X for q in spec.targets}, n)
    if isinstance(spec, T):
        return _local({spec.target: T_GATE}, n)
    if isinstance(spec, ControlledNot):
        # I - P + P (x) X, with P the all-controls-one projector
        proj = {q: P1 for q in spec.controls}
        return np.eye(2 ** n, dtype=complex) - _local(proj, n) + _local({**proj, spec.target: X}, n)
    if isinstance(spec, ControlledZ):
        proj = _local({q: P1 for q in spec.action}, n)
        return np.eye(2 ** n, dtype=complex) - 2 * proj
    raise ValueError(f"not a gate spec: {spec!r}")


def qubit_gate_matrix_bruteforce(spec: GateSpec, n: int) -> np.ndarray:
    """Same matrices built entry by entry from each gate's action on basis states."""
    spec.check(n)
    d = 2 ** n
    u = np.zeros((d, d), dtype=complex)
    for col in range(d):
        bits = [bit(col, q, n) for q in range(1, n + 1)]
        if isinstance(spec, Hadamard):
            for row in range(d):
                rbits = [bit(row, q, n) for q in range(1, n + 1)]
                if any(rbits[q - 1] != bits[q - 1] for q in range(1, n + 1) if q not in spec.targets):
                    continue
                sign = (-1) ** sum(rbits[q - 1] & bits[q - 1] for q in spec.targets)
                u[row, col] = sign / np.sqrt(2) ** len(spec.targets)
            continue
        phase = 1
        if isinstance(spec, Not):
            for q in spec.targets:
                bits[q - 1] ^= 1
        elif isinstance(spec, T):
            if bits[spec.target - 1]:
                phase = np.exp(1j * np.pi / 4)
        elif isinstance(spec, ControlledNot):
            if all(bits[c - 1] for c in spec.controls):
                bits[spec.target - 1] ^= 1
        elif all(bits[q - 1] for q in spec.action):
            phase = -1
        u[int("".join(map(str, bits)), 2), col] = phase
    return u


@dataclass(frozen=True)
class EquivalenceResult:
    equal: bool
    max_abs_deviation: float
    global_phase: complex | None
    ancilla_decoupled: bool
    ancilla_phase: complex

    def describe(self) -> str:
        status = "equal" if self.equal else "NOT equal"
        gp = "none" if self.global_phase is None else f"{self.global_phase.real:+.6f}{self.global_phase.imag:+.6f}j"
        return (
            f"{status}: max deviation {self.max_abs_deviation:.3e}, global phase {gp}, "
            f"ancilla {'decoupled' if self.ancilla_decoupled else 'COUPLED'}"
        )


def compare_unitaries(u_qudit: np.ndarray, u_qubit: np.ndarray, atol: float = EQUIV_ATOL) -> EquivalenceResult:
    """Compare a ``(D+1)``-level qudit unitary against a ``D x D`` qubit unitary.

    ``global_phase`` is the ``q`` with ``q * U_qudit ~= U_qubit`` on the
    computational levels, or None when no such phase exists.
    """
    d = u_qubit.shape[0]
    comp = u_qudit[:d, :d]
    dev = float(np.max(np.abs(comp - u_qubit)))
    off = np.concatenate([u_qudit[d, :d], u_qudit[:d, d]])
    anc_phase = complex(u_qudit[d, d])
    decoupled = bool(np.max(np.abs(off), initial=0.0) < atol and abs(abs(anc_phase) - 1) < atol)

    # phase estimate from the overlap; verified below
    overlap = np.vdot(comp, u_qubit)
    phase = None
    if abs(overlap) > atol:
        q = overlap / abs(overlap)
        if np.max(np.abs(q * comp - u_qubit)) < atol:
            phase = complex(q)
    equal = dev < atol and decoupled
    return EquivalenceResult(equal, dev, phase, decoupled, anc_phase)


def check_equivalence(record: SynthesisRecord, atol: float = EQUIV_ATOL) -> EquivalenceResult:
    n = record.program.shape.n
    return compare_unitaries(program_unitary(record.program), qubit_gate_matrix(record.spec, n), atol)


def qubit_grover_depth(n: int, t: int) -> int:
    """Qubit Grover depth with linear-depth multi-controlled Z: oracle 8N-20, diffusion 8N-14."""
    if n < 3 or t < 1:
        raise ValueError(f"need n >= 3 and t >= 1, got n={n}, t={t}")
    return t * (16 * n - 34) + 2


def gate_sweep(n: int) -> list[GateSpec]:
    """Every H/X target set, T target, CNOT control set and CZ control/target split on n qubits."""
    from itertools import combinations

    qubits = range(1, n + 1)
    specs: list[GateSpec] = []
    for m in qubits:
        for targets in combinations(qubits, m):
            specs += [Hadamard(targets), Not(targets)]
    for t in qubits:
        specs.append(T(t))
    for t in qubits:
        others = [q for q in qubits if q != t]
        for c in range(1, n):
            specs += [ControlledNot(cs, t) for cs in combinations(others, c)]
    for a in qubits:
        for action in combinations(qubits, a):
            for k in range(1, a + 1):
                for targets in combinations(action, k):
                    specs.append(ControlledZ(set(action) - set(targets), targets))
    return specs
