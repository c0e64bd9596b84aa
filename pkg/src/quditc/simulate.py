"""Dense statevector simulation of rotation programs on a single qudit."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import Rotation, RotationProgram, SystemShape, as_shape, rotation_matrix


@dataclass(frozen=True)
class QuditState:
    shape: SystemShape
    amplitudes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "shape", as_shape(self.shape))
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (self.shape.total_levels,):
            raise ValueError(
                f"expected {self.shape.total_levels} amplitudes, got shape {amps.shape}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def ancilla_amplitude(self) -> complex:
        return complex(self.amplitudes[self.shape.ancilla])

    def to_json(self) -> list[list[float]]:
        return [[float(a.real), float(a.imag)] for a in self.amplitudes]

    @classmethod
    def from_json(cls, pairs: Sequence[Sequence[float]]) -> "QuditState":
        try:
            amps = [complex(re, im) for re, im in pairs]
        except (TypeError, ValueError) as exc:
            raise ValueError("state must be a list of [re, im] pairs") from exc
        total = len(amps)
        d = total - 1
        if d < 2 or d & (d - 1):
            raise ValueError(f"state length {total} is not 2**n + 1")
        return cls(SystemShape(d.bit_length() - 1), amps)


def ground_state(shape: SystemShape | int) -> QuditState:
    shape = as_shape(shape)
    amps = np.zeros(shape.total_levels, dtype=complex)
    amps[0] = 1.0
    return QuditState(shape, amps)


def basis_state(shape: SystemShape | int, level: int) -> QuditState:
    shape = as_shape(shape)
    amps = np.zeros(shape.total_levels, dtype=complex)
    amps[level] = 1.0
    return QuditState(shape, amps)


def _rotate_inplace(amps: np.ndarray, r: Rotation) -> None:
    j, k = r.levels
    if k >= amps.shape[0]:
        raise ValueError(f"rotation levels {r.levels} out of range for {amps.shape[0]} levels")
    b = r.block()
    a_j, a_k = amps[j], amps[k]
    amps[j] = b[0, 0] * a_j + b[0, 1] * a_k
    amps[k] = b[1, 0] * a_j + b[1, 1] * a_k


def _apply_layer_inplace(amps: np.ndarray, layer: Sequence[Rotation]) -> None:
    if not layer:
        return
    levels = [lv for r in layer for lv in r.levels]
    if len(set(levels)) != len(levels) or max(levels) >= amps.shape[0]:
        # shared levels (e.g. several rotations against the ancilla): go one by one
        for r in layer:
            _rotate_inplace(amps, r)
        return
    idx = np.array([r.levels for r in layer])
    blocks = np.array([r.block() for r in layer])
    pairs = amps[idx]
    amps[idx] = np.einsum("rab,rb...->ra...", blocks, pairs)


def apply_rotation(state: QuditState, r: Rotation) -> QuditState:
    r.check(state.shape)
    amps = state.amplitudes.copy()
    _rotate_inplace(amps, r)
    return QuditState(state.shape, amps)


def apply_layer(state: QuditState, layer: Iterable[Rotation]) -> QuditState:
    layer = tuple(layer)
    for r in layer:
        r.check(state.shape)
    amps = state.amplitudes.copy()
    _apply_layer_inplace(amps, layer)
    return QuditState(state.shape, amps)


def apply_program(state: QuditState, program: RotationProgram) -> QuditState:
    if program.shape != state.shape:
        raise ValueError(f"program is for n={program.shape.n}, state for n={state.shape.n}")
    return QuditState(state.shape, evolve(program, state.amplitudes))


def evolve(program: RotationProgram, amplitudes: np.ndarray) -> np.ndarray:
    """Apply ``program`` to raw amplitudes: a vector, or a matrix whose columns are states."""
    amps = np.array(amplitudes, dtype=complex)
    if amps.shape[0] != program.shape.total_levels:
        raise ValueError(f"expected {program.shape.total_levels} rows, got {amps.shape[0]}")
    for layer in program.layers:
        _apply_layer_inplace(amps, layer)
    return amps


def trace_program(state: QuditState, programs: Iterable[RotationProgram]) -> list[QuditState]:
    """States after each program in sequence (gate boundaries), starting state excluded."""
    out = []
    for p in programs:
        state = apply_program(state, p)
        out.append(state)
    return out


def program_unitary(program: RotationProgram) -> np.ndarray:
    u = np.eye(program.shape.total_levels, dtype=complex)
    for r in program.rotations():
        u = rotation_matrix(r, program.shape) @ u
    return u


def probabilities(state: QuditState) -> np.ndarray:
    return np.abs(state.amplitudes) ** 2
