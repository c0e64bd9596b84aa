"""Layer commutation checks, depth metrics, and program concatenation/merging."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import Rotation, RotationProgram, SystemShape, as_shape

COMMUTE_ATOL = 1e-12


def _restricted(r: Rotation, levels: Sequence[int]) -> np.ndarray:
    pos = {lv: i for i, lv in enumerate(levels)}
    m = np.eye(len(levels), dtype=complex)
    idx = [pos[lv] for lv in r.levels]
    m[np.ix_(idx, idx)] = r.block()
    return m


def commutes(a: Rotation, b: Rotation, shape: SystemShape | int | None = None) -> bool:
    """Whether two rotations commute, decided on the joint span of their levels."""
    if shape is not None:
        a.check(shape)
        b.check(shape)
    if not set(a.levels) & set(b.levels):
        return True
    levels = sorted(set(a.levels) | set(b.levels))
    ma, mb = _restricted(a, levels), _restricted(b, levels)
    return bool(np.max(np.abs(ma @ mb - mb @ ma)) < COMMUTE_ATOL)


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    layer: int | None = None
    pair: tuple[Rotation, Rotation] | None = None

    def __bool__(self):
        return self.valid

    def describe(self) -> str:
        if self.valid:
            return "valid"
        a, b = self.pair
        return f"layer {self.layer}: {a} does not commute with {b}"


def _first_conflict(layer: Sequence[Rotation]):
    for i, a in enumerate(layer):
        for b in layer[i + 1:]:
            if not commutes(a, b):
                return a, b
    return None


def validate_program(p: RotationProgram) -> ValidationResult:
    for i, layer in enumerate(p.layers):
        bad = _first_conflict(layer)
        if bad is not None:
            return ValidationResult(False, i, bad)
    return ValidationResult(True)


@dataclass(frozen=True)
class DepthMetrics:
    rotation_count: int
    depth: int
    per_gate: list[tuple[str, int, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "rotation_count": self.rotation_count,
            "depth": self.depth,
            "per_gate": [{"gate": g, "rotation_count": c, "depth": d} for g, c, d in self.per_gate],
        }

    def to_text(self) -> str:
        rows = [("gate", "rotations", "depth")]
        rows += [(g, str(c), str(d)) for g, c, d in self.per_gate]
        rows.append(("total", str(self.rotation_count), str(self.depth)))
        width = max(len(r[0]) for r in rows)
        return "\n".join(f"{g:<{width}}  {c:>9}  {d:>5}" for g, c, d in rows)


def metrics(p: RotationProgram, gates: Iterable[tuple[str, RotationProgram]] | None = None) -> DepthMetrics:
    """Rotation count and depth of ``p``, with an optional per-gate breakdown.

    ``gates`` lists the labelled pieces ``p`` was concatenated from; their totals
    must add up to ``p``'s.
    """
    per_gate = [(label, g.rotation_count, g.depth) for label, g in (gates or ())]
    if per_gate:
        if sum(c for _, c, _ in per_gate) != p.rotation_count or sum(d for *_, d in per_gate) != p.depth:
            raise ValueError("per-gate breakdown does not add up to the program totals")
    return DepthMetrics(p.rotation_count, p.depth, per_gate)


def concat(programs: Sequence[RotationProgram], shape: SystemShape | int | None = None) -> RotationProgram:
    """Run ``programs`` back to back. Depths add; nothing is merged."""
    if not programs:
        if shape is None:
            raise ValueError("concat of no programs needs an explicit shape")
        return RotationProgram(as_shape(shape), ())
    first = programs[0].shape
    if shape is not None and as_shape(shape) != first:
        raise ValueError("shape mismatch")
    layers = []
    for p in programs:
        if p.shape != first:
            raise ValueError(f"shape mismatch: n={p.shape.n} vs n={first.n}")
        layers.extend(p.layers)
    return RotationProgram(first, layers)


def merge_adjacent(p: RotationProgram) -> RotationProgram:
    """Greedily fold each layer into the one before it when every cross pair commutes.

    A layer is merged as a whole or not at all, so the product of the two
    layers is unchanged.
    """
    merged: list[list[Rotation]] = []
    for layer in p.layers:
        if merged and all(commutes(a, b) for a in merged[-1] for b in layer):
            merged[-1].extend(layer)
        else:
            merged.append(list(layer))
    return RotationProgram(p.shape, merged)
