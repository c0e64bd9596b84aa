"""Compile qubit-specified gates into layers of two-level rotations on one qudit.

Every construction follows the same pattern: one layer of rotations that
realizes the permutation/superposition between paired levels, followed (when the
first layer leaves stray ``-1`` phases) by a layer of full-turn rotations. A
full turn acts as ``-I`` on its two levels, so pairing up the phased levels, or
pairing a single phased level with the ancilla, removes the phases.

Sign conventions (``R(theta) = exp(-i*theta*(sigma . n)/2)``, lower level first):

* ``R_y(-pi/2)`` on ``(l, u)`` is ``H`` followed by ``-1`` on ``u``.
* ``R_y(-pi)`` on ``(l, u)`` is ``X`` followed by ``-1`` on ``u``.
* ``R_z(-pi/2)`` on ``(a, D)`` puts ``exp(i*pi/4)`` on ``a``.

With these signs every correction lands on upper levels.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    ControlledNot,
    ControlledZ,
    GateSpec,
    Hadamard,
    Not,
    Rotation,
    RotationProgram,
    SystemShape,
    T,
    as_shape,
    bit,
)

# angles in units of pi/4
HADAMARD_Y = -2
NOT_Y = -4
FULL_TURN = 8
T_Z_ANCILLA = -2
# gives exp(-i*pi/8) * T on each (l, u) pair; see synth_t
T_Z_PAIRED = 1


@dataclass(frozen=True)
class SynthesisRecord:
    spec: GateSpec
    program: RotationProgram
    pairings: tuple[tuple[tuple[int, int], ...], ...]
    uses_ancilla: bool

    @property
    def rotation_count(self) -> int:
        return self.program.rotation_count

    @property
    def depth(self) -> int:
        return self.program.depth

    @property
    def label(self) -> str:
        return self.spec.label


def _record(spec, shape, layers) -> SynthesisRecord:
    layers = [tuple(layer) for layer in layers if layer]
    program = RotationProgram(shape, layers)
    pairings = tuple(tuple(r.levels for r in layer) for layer in layers)
    return SynthesisRecord(spec, program, pairings, program.touches_ancilla())


def correction_layer(levels: Sequence[int], shape: SystemShape, axis: str = "x") -> list[Rotation]:
    """Full-turn rotations that flip the sign of every level in ``levels``.

    Levels are sorted and paired neighbour to neighbour; an odd one out is
    paired with the ancilla.
    """
    levels = sorted(levels)
    layer = [Rotation(axis, FULL_TURN, (a, b)) for a, b in zip(levels[::2], levels[1::2])]
    if len(levels) % 2:
        layer.append(Rotation(axis, FULL_TURN, (levels[-1], shape.ancilla)))
    return layer


def _mask(qubits, n: int) -> int:
    m = 0
    for q in qubits:
        m |= 1 << (n - q)
    return m


def synth_hadamard(targets, shape) -> SynthesisRecord:
    shape = as_shape(shape)
    spec = Hadamard(targets)
    spec.check(shape.n)
    n, d = shape.n, shape.d
    layers = []
    for t in sorted(spec.targets):
        step = 1 << (n - t)
        layers.append([Rotation("y", HADAMARD_Y, (l, l + step)) for l in range(d) if not bit(l, t, n)])
    # each y-layer leaves -1 on its upper levels; net sign is the target-bit parity
    mask = _mask(spec.targets, n)
    odd = [a for a in range(d) if bin(a & mask).count("1") % 2]
    layers.append(correction_layer(odd, shape))
    return _record(spec, shape, layers)


def synth_not(targets, shape) -> SynthesisRecord:
    shape = as_shape(shape)
    spec = Not(targets)
    spec.check(shape.n)
    n, d = shape.n, shape.d
    lead = min(spec.targets)
    mask = _mask(spec.targets, n)
    # lowest-indexed target is the most significant flipped bit, so l < l ^ mask
    pairs = [(l, l ^ mask) for l in range(d) if not bit(l, lead, n)]
    y_layer = [Rotation("y", NOT_Y, p) for p in pairs]
    fix = correction_layer([u for _, u in pairs], shape)
    return _record(spec, shape, [y_layer, fix])


def synth_t(target: int, shape, use_ancilla: bool = True) -> SynthesisRecord:
    """T on qubit ``target``.

    With the ancilla, each level with the target bit set gets its own
    ``R_z(-pi/2)`` against level ``D``. Without it, each ``(l, u)`` pair gets
    ``R_z(pi/4)``, which is ``exp(-i*pi/8) * T``. That global phase cannot be
    removed: D/2 pi/4 z-rotations without the ancilla never give T exactly.
    """
    shape = as_shape(shape)
    spec = T(int(target), use_ancilla)
    spec.check(shape.n)
    n, d, t = shape.n, shape.d, spec.target
    if use_ancilla:
        layer = [Rotation("z", T_Z_ANCILLA, (a, shape.ancilla)) for a in range(d) if bit(a, t, n)]
    else:
        step = 1 << (n - t)
        layer = [Rotation("z", T_Z_PAIRED, (l, l + step)) for l in range(d) if not bit(l, t, n)]
    return _record(spec, shape, [layer])


def synth_cnot(controls, target: int, shape) -> SynthesisRecord:
    shape = as_shape(shape)
    spec = ControlledNot(controls, int(target))
    spec.check(shape.n)
    n, d = shape.n, shape.d
    cmask = _mask(spec.controls, n)
    step = 1 << (n - spec.target)
    pairs = [(l, l + step) for l in range(d) if l & cmask == cmask and not bit(l, spec.target, n)]
    y_layer = [Rotation("y", NOT_Y, p) for p in pairs]
    fix = correction_layer([u for _, u in pairs], shape)
    return _record(spec, shape, [y_layer, fix])


def synth_mcz(controls, targets, shape) -> SynthesisRecord:
    shape = as_shape(shape)
    spec = ControlledZ(controls, targets)
    spec.check(shape.n)
    mask = _mask(spec.action, shape.n)
    phased = [a for a in range(shape.d) if a & mask == mask]
    return _record(spec, shape, [correction_layer(phased, shape, axis="z")])


def synth_gate(spec: GateSpec, shape) -> SynthesisRecord:
    if isinstance(spec, Hadamard):
        return synth_hadamard(spec.targets, shape)
    if isinstance(spec, Not):
        return synth_not(spec.targets, shape)
    if isinstance(spec, T):
        return synth_t(spec.target, shape, spec.use_ancilla)
    if isinstance(spec, ControlledNot):
        return synth_cnot(spec.controls, spec.target, shape)
    if isinstance(spec, ControlledZ):
        return synth_mcz(spec.controls, spec.targets, shape)
    raise ValueError(f"not a gate spec: {spec!r}")


def explain(record: SynthesisRecord) -> str:
    """Pairing table: one line per level mapping, then the layers right to left."""
    n = record.program.shape.n
    lines = [f"{record.label} on D={record.program.shape.d} (+ ancilla level {record.program.shape.ancilla})"]
    for i, layer in enumerate(record.program.layers):
        lines.append(f"  layer {i + 1}:")
        for r in layer:
            j, k = r.levels
            bj = format(j, f"0{n}b")
            bk = "anc" if k == record.program.shape.ancilla else format(k, f"0{n}b")
            lines.append(f"    {str(r):<28} |{bj}> <-> |{bk}>")
    ops = [" ".join(str(r) for r in layer) for layer in reversed(record.program.layers)]
    lines.append("  operator: " + " * ".join("{" + op + "}" for op in ops))
    return "\n".join(lines)
