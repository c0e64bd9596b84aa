"""Grover search on a single qudit: circuit construction, iteration choice, reports."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .core import ControlledZ, Hadamard, Not, RotationProgram, SystemShape, bit
from .oracle import qubit_grover_depth
from .schedule import DepthMetrics, concat, metrics
from .simulate import apply_program, ground_state, probabilities
from .synth import synth_gate


def grover_angle(n: int) -> float:
    return math.asin(2 ** (-n / 2))


def optimal_iterations(n: int) -> int:
    """Iterations reaching the first maximum of the marked amplitude."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return round(math.pi / (4 * grover_angle(n)) - 0.5)


def theoretical_success(n: int, t: int) -> tuple[float, float]:
    """Marked amplitude ``sin((2t+1) theta)`` and its square."""
    if n < 2 or t < 1:
        raise ValueError(f"need n >= 2 and t >= 1, got n={n}, t={t}")
    amp = math.sin((2 * t + 1) * grover_angle(n))
    return amp, amp * amp


@dataclass(frozen=True)
class GroverCircuit:
    """A compiled Grover circuit together with its labelled gate sequence."""

    n: int
    marked: int
    iterations: int
    gates: tuple[tuple[str, RotationProgram], ...]

    @property
    def program(self) -> RotationProgram:
        return concat([p for _, p in self.gates])

    def metrics(self) -> DepthMetrics:
        return metrics(self.program, self.gates)


def build_grover(n: int, marked: int, t: int) -> GroverCircuit:
    shape = SystemShape(n)
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not 0 <= marked < shape.d:
        raise ValueError(f"marked level {marked} out of range 0..{shape.d - 1}")
    if t < 1:
        raise ValueError(f"need t >= 1, got {t}")

    everyone = range(1, n + 1)
    h_all = synth_gate(Hadamard(everyone), shape).program
    x_all = synth_gate(Not(everyone), shape).program
    mcz = synth_gate(ControlledZ(range(1, n), {n}), shape).program
    zeros = [q for q in everyone if not bit(marked, q, n)]
    x_marked = synth_gate(Not(zeros), shape).program if zeros else None

    gates = [("superposition H", h_all)]
    for i in range(1, t + 1):
        if x_marked is not None:
            gates.append((f"oracle X [{i}]", x_marked))
        gates.append((f"oracle CZ [{i}]", mcz))
        if x_marked is not None:
            gates.append((f"oracle X' [{i}]", x_marked))
        gates += [
            (f"diffusion H [{i}]", h_all),
            (f"diffusion X [{i}]", x_all),
            (f"diffusion CZ [{i}]", mcz),
            (f"diffusion X' [{i}]", x_all),
            (f"diffusion H' [{i}]", h_all),
        ]
    return GroverCircuit(n, marked, t, tuple(gates))


@dataclass(frozen=True)
class GroverReport:
    n: int
    d: int
    marked: int
    iterations: int
    qudit_depth: int
    qudit_rotation_count: int
    qubit_depth_linear: int | None
    theoretical_amplitude: float
    theoretical_probability: float
    simulated_probability: float
    max_ancilla_amplitude: float

    def to_json(self) -> dict:
        return asdict(self)


def run_grover(n: int, marked: int | None = None, t: int | str = "auto") -> GroverReport:
    """Simulate Grover from the ground state. ``marked`` defaults to ``D-1``."""
    shape = SystemShape(n)
    marked = shape.d - 1 if marked is None else marked
    if t == "auto" or t is None:
        t = optimal_iterations(n)
    circuit = build_grover(n, marked, int(t))

    state = ground_state(shape)
    max_anc = 0.0
    for _, program in circuit.gates:
        state = apply_program(state, program)
        max_anc = max(max_anc, abs(state.ancilla_amplitude))
    m = circuit.metrics()
    amp, prob = theoretical_success(n, circuit.iterations)
    return GroverReport(
        n=n,
        d=shape.d,
        marked=marked,
        iterations=circuit.iterations,
        qudit_depth=m.depth,
        qudit_rotation_count=m.rotation_count,
        qubit_depth_linear=qubit_grover_depth(n, circuit.iterations) if n >= 3 else None,
        theoretical_amplitude=amp,
        theoretical_probability=prob,
        simulated_probability=float(probabilities(state)[marked]),
        max_ancilla_amplitude=float(max_anc),
    )


def comparison_table(n_values) -> list[GroverReport]:
    """One auto-iteration report per qubit count, all-ones marked entry."""
    return [run_grover(n) for n in n_values]


TABLE_COLUMNS = (
    "N", "D", "iterations", "theoretical_amplitude_pct", "theoretical_probability_pct",
    "simulated_probability_pct", "qudit_depth", "qubit_depth_linear", "qudit_rotation_count",
)


def table_rows(reports, digits: int = 12) -> list[list[str]]:
    def f(x):
        return format(x, f".{digits}g")

    rows = []
    for r in reports:
        rows.append([
            str(r.n), str(r.d), str(r.iterations),
            f(100 * r.theoretical_amplitude), f(100 * r.theoretical_probability),
            f(100 * r.simulated_probability),
            str(r.qudit_depth), "" if r.qubit_depth_linear is None else str(r.qubit_depth_linear),
            str(r.qudit_rotation_count),
        ])
    return rows


def to_markdown(reports) -> str:
    lines = [
        "| N (D) | t | amplitude | probability | qudit depth | qubit depth |",
        "|---|---|---|---|---|---|",
    ]
    for r in reports:
        qubit = "-" if r.qubit_depth_linear is None else str(r.qubit_depth_linear)
        lines.append(
            f"| {r.n} (D = {r.d}) | {r.iterations} | {100 * r.theoretical_amplitude:.2f}% "
            f"| {100 * r.theoretical_probability:.2f}% | {r.qudit_depth} | {qubit} |"
        )
    return "\n".join(lines)


def success_curve(n: int, marked: int, t_max: int) -> np.ndarray:
    """Simulated marked-level probability after 1..t_max iterations, from one run."""
    circuit = build_grover(n, marked, 1)
    per_iter = concat([p for _, p in circuit.gates[1:]])
    state = apply_program(ground_state(n), circuit.gates[0][1])
    out = []
    for _ in range(t_max):
        state = apply_program(state, per_iter)
        out.append(probabilities(state)[marked])
    return np.array(out)
