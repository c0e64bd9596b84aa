"""Qubit/qudit basis mapping, the two-level rotation data model, and rotation matrices.

A system of ``n`` qubits maps onto a single qudit with ``D = 2**n`` computational
levels plus one ancillary level at index ``D``. Level ``d`` corresponds to the
big-endian bit string ``q_1 q_2 ... q_n`` (``q_1`` is the most significant bit).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

AXES = ("x", "y", "z")

_INV_SQRT2 = 1.0 / math.sqrt(2.0)
# cos/sin of (k * pi/4) for k mod 8, exact where it matters (even angle_eighths).
_COS_QUARTER = (1.0, _INV_SQRT2, 0.0, -_INV_SQRT2, -1.0, -_INV_SQRT2, 0.0, _INV_SQRT2)
_SIN_QUARTER = (0.0, _INV_SQRT2, 1.0, _INV_SQRT2, 0.0, -_INV_SQRT2, -1.0, -_INV_SQRT2)


@dataclass(frozen=True)
class SystemShape:
    """Size of the qudit equivalent to ``n`` qubits."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool) or self.n < 1:
            raise ValueError(f"qubit count must be a positive integer, got {self.n!r}")

    @property
    def d(self) -> int:
        return 2 ** self.n

    @property
    def ancilla(self) -> int:
        return self.d

    @property
    def total_levels(self) -> int:
        return self.d + 1


def as_shape(shape: SystemShape | int) -> SystemShape:
    return shape if isinstance(shape, SystemShape) else SystemShape(int(shape))


@dataclass(frozen=True)
class Rotation:
    """One two-level rotation ``exp(-i*theta*(sigma . n)/2)`` on levels ``(j, k)``.

    The angle is stored as an integer multiple of pi/4: ``theta = angle_eighths * pi/4``.
    (The name counts eighths of a half turn.) Level ``j`` is the first basis vector
    of the 2x2 block.
    """

    axis: str
    angle_eighths: int
    levels: tuple[int, int]

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if not isinstance(self.angle_eighths, (int, np.integer)) or isinstance(self.angle_eighths, bool):
            raise ValueError(f"angle_eighths must be an integer, got {self.angle_eighths!r}")
        j, k = self.levels
        object.__setattr__(self, "levels", (int(j), int(k)))
        object.__setattr__(self, "angle_eighths", int(self.angle_eighths))
        if not 0 <= j < k:
            raise ValueError(f"levels must satisfy 0 <= j < k, got {self.levels}")

    @property
    def angle(self) -> float:
        return self.angle_eighths * math.pi / 4

    @property
    def is_diagonal(self) -> bool:
        """True for z-rotations and for any full-turn (+-I) rotation."""
        return self.axis == "z" or self.angle_eighths % 8 == 0

    def check(self, shape: SystemShape | int) -> None:
        shape = as_shape(shape)
        if self.levels[1] > shape.d:
            raise ValueError(f"rotation levels {self.levels} out of range for D={shape.d}")

    def block(self) -> np.ndarray:
        """The 2x2 unitary acting on ``(j, k)``."""
        # theta/2 = angle_eighths * pi/8
        if self.angle_eighths % 2 == 0:
            q = (self.angle_eighths // 2) % 8
            c, s = _COS_QUARTER[q], _SIN_QUARTER[q]
        else:
            half = self.angle_eighths * math.pi / 8
            c, s = math.cos(half), math.sin(half)
        if self.axis == "x":
            return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
        if self.axis == "y":
            return np.array([[c, -s], [s, c]], dtype=complex)
        return np.array([[c - 1j * s, 0.0], [0.0, c + 1j * s]], dtype=complex)

    def to_json(self) -> dict:
        return {"axis": self.axis, "angle_eighths": self.angle_eighths, "levels": list(self.levels)}

    @classmethod
    def from_json(cls, obj: dict) -> "Rotation":
        try:
            j, k = obj["levels"]
            return cls(obj["axis"], obj["angle_eighths"], (j, k))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed rotation: {obj!r}") from exc

    def __str__(self):
        theta = _format_angle(self.angle_eighths)
        return f"R_{self.axis}^({self.levels[0]},{self.levels[1]})({theta})"


def _format_angle(eighths: int) -> str:
    if eighths == 0:
        return "0"
    g = math.gcd(abs(eighths), 4)
    num, den = eighths // g, 4 // g
    sign = "-" if num < 0 else ""
    num = abs(num)
    top = "pi" if num == 1 else f"{num}pi"
    return f"{sign}{top}" if den == 1 else f"{sign}{top}/{den}"


Layer = tuple[Rotation, ...]


@dataclass(frozen=True)
class RotationProgram:
    """Ordered layers of rotations; rotations within one layer are meant to commute."""

    shape: SystemShape
    layers: tuple[Layer, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "shape", as_shape(self.shape))
        layers = tuple(tuple(layer) for layer in self.layers)
        object.__setattr__(self, "layers", layers)
        for layer in layers:
            for r in layer:
                r.check(self.shape)

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def rotation_count(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def rotations(self) -> Iterable[Rotation]:
        for layer in self.layers:
            yield from layer

    def touches_ancilla(self) -> bool:
        return any(r.levels[1] == self.shape.ancilla for r in self.rotations())

    def to_json(self) -> dict:
        return {"n": self.shape.n, "layers": [[r.to_json() for r in layer] for layer in self.layers]}

    @classmethod
    def from_json(cls, obj: dict) -> "RotationProgram":
        try:
            n = obj["n"]
            layers = [[Rotation.from_json(r) for r in layer] for layer in obj["layers"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed program: {exc}") from exc
        return cls(SystemShape(n), layers)


def index_to_bits(d: int, n: int) -> str:
    """Big-endian bit string ``q_1 ... q_n`` of level ``d``."""
    if n < 1 or not 0 <= d < 2 ** n:
        raise ValueError(f"level {d} out of range for {n} qubits")
    return format(d, f"0{n}b")


def bits_to_index(bits: str | Sequence[int]) -> int:
    if isinstance(bits, str):
        s = bits
    else:
        s = "".join(str(int(b)) for b in bits)
    if not s or any(ch not in "01" for ch in s):
        raise ValueError(f"malformed bit string {bits!r}")
    return int(s, 2)


def bit(d: int, qubit: int, n: int) -> int:
    """Value of qubit ``q_qubit`` (1-based) in level ``d``."""
    return (d >> (n - qubit)) & 1


def pair_partner(d: int, t: int, shape: SystemShape | int) -> int:
    """Level equal to ``d`` with qubit ``t`` flipped."""
    shape = as_shape(shape)
    if not 0 <= d < shape.d:
        raise ValueError(f"level {d} out of range for D={shape.d}")
    if not 1 <= t <= shape.n:
        raise ValueError(f"qubit {t} out of range 1..{shape.n}")
    return d ^ (1 << (shape.n - t))


def rotation_matrix(r: Rotation, shape: SystemShape | int) -> np.ndarray:
    shape = as_shape(shape)
    r.check(shape)
    u = np.eye(shape.total_levels, dtype=complex)
    idx = np.array(r.levels)
    u[np.ix_(idx, idx)] = r.block()
    return u


# ---- qubit-semantics gate descriptions --------------------------------------

def _qubit_set(values) -> frozenset[int]:
    if isinstance(values, (int, np.integer)):
        values = (values,)
    return frozenset(int(v) for v in values)


def _check_range(indices: Iterable[int], n: int) -> None:
    for q in indices:
        if not 1 <= q <= n:
            raise ValueError(f"qubit index {q} out of range 1..{n}")


@dataclass(frozen=True)
class Hadamard:
    targets: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "targets", _qubit_set(self.targets))

    def check(self, n: int) -> None:
        if not self.targets:
            raise ValueError("Hadamard needs at least one target")
        _check_range(self.targets, n)

    @property
    def label(self) -> str:
        return f"H{sorted(self.targets)}"


@dataclass(frozen=True)
class Not:
    targets: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "targets", _qubit_set(self.targets))

    def check(self, n: int) -> None:
        if not self.targets:
            raise ValueError("NOT needs at least one target")
        _check_range(self.targets, n)

    @property
    def label(self) -> str:
        return f"X{sorted(self.targets)}"


@dataclass(frozen=True)
class T:
    target: int
    use_ancilla: bool = True

    def check(self, n: int) -> None:
        _check_range((self.target,), n)

    @property
    def label(self) -> str:
        return f"T[{self.target}]"


@dataclass(frozen=True)
class ControlledNot:
    controls: frozenset[int]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "controls", _qubit_set(self.controls))

    def check(self, n: int) -> None:
        if not self.controls:
            raise ValueError("CNOT needs at least one control")
        _check_range(self.controls | {self.target}, n)
        if self.target in self.controls:
            raise ValueError("CNOT target is also a control")

    @property
    def label(self) -> str:
        return f"CNOT{sorted(self.controls)}->{self.target}"


@dataclass(frozen=True)
class ControlledZ:
    controls: frozenset[int]
    targets: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "controls", _qubit_set(self.controls))
        object.__setattr__(self, "targets", _qubit_set(self.targets))

    @property
    def action(self) -> frozenset[int]:
        return self.controls | self.targets

    def check(self, n: int) -> None:
        if not self.targets:
            raise ValueError("controlled-Z needs at least one target")
        if self.controls & self.targets:
            raise ValueError("controls and targets overlap")
        _check_range(self.action, n)

    @property
    def label(self) -> str:
        return f"CZ{sorted(self.controls)}->{sorted(self.targets)}"


GateSpec = Hadamard | Not | T | ControlledNot | ControlledZ


def gate_to_json(spec: GateSpec) -> dict:
    if isinstance(spec, Hadamard):
        return {"h": {"targets": sorted(spec.targets)}}
    if isinstance(spec, Not):
        return {"x": {"targets": sorted(spec.targets)}}
    if isinstance(spec, T):
        body = {"target": spec.target}
        if not spec.use_ancilla:
            body["use_ancilla"] = False
        return {"t": body}
    if isinstance(spec, ControlledNot):
        return {"cnot": {"controls": sorted(spec.controls), "target": spec.target}}
    if isinstance(spec, ControlledZ):
        return {"mcz": {"controls": sorted(spec.controls), "targets": sorted(spec.targets)}}
    raise TypeError(f"not a gate spec: {spec!r}")


def gate_from_json(obj: dict) -> GateSpec:
    """Parse ``{"h": {"targets": [1]}}`` style gate encodings."""
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ValueError(f"gate must be a single-key object, got {obj!r}")
    (kind, body), = obj.items()
    if not isinstance(body, dict):
        raise ValueError(f"gate body must be an object, got {body!r}")
    try:
        if kind == "h":
            return Hadamard(body["targets"])
        if kind == "x":
            return Not(body["targets"])
        if kind == "t":
            return T(int(body["target"]), bool(body.get("use_ancilla", True)))
        if kind == "cnot":
            return ControlledNot(body["controls"], int(body["target"]))
        if kind == "mcz":
            return ControlledZ(body.get("controls", []), body["targets"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed {kind!r} gate: {body!r}") from exc
    raise ValueError(f"unknown gate kind {kind!r}")
