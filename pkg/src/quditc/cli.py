"""Command-line entry point: ``quditc {synth,run,depth,grover,table,verify}``.

Exit codes: 0 success, 2 usage/parse error, 3 validation or equivalence failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .core import GateSpec, RotationProgram, SystemShape, bits_to_index, gate_from_json, gate_to_json
from .grover import TABLE_COLUMNS, comparison_table, run_grover, table_rows, to_markdown
from .oracle import check_equivalence, gate_sweep
from .schedule import concat, merge_adjacent, metrics, validate_program
from .simulate import QuditState, apply_program, ground_state, probabilities
from .synth import explain, synth_gate

EXIT_OK, EXIT_USAGE, EXIT_INVALID = 0, 2, 3


class UsageError(Exception):
    pass


class ValidationFailure(Exception):
    pass


def float_digits() -> int:
    raw = os.environ.get("QUDITC_FLOAT_DIGITS", "12")
    try:
        digits = int(raw)
    except ValueError:
        raise UsageError(f"QUDITC_FLOAT_DIGITS must be an integer, got {raw!r}")
    if not 1 <= digits <= 17:
        raise UsageError("QUDITC_FLOAT_DIGITS must be in 1..17")
    return digits


def _round(obj, digits):
    if isinstance(obj, float):
        return float(format(obj, f".{digits}g"))
    if isinstance(obj, dict):
        return {k: _round(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v, digits) for v in obj]
    return obj


def dump_json(obj) -> str:
    return json.dumps(_round(obj, float_digits()), indent=2)


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")


def _load_json(source: str, what: str):
    try:
        return json.loads(source)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed {what} JSON: {exc}")


def _read_json_file(path: str, what: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {what} file: {exc}")
    return _load_json(text, what)


@dataclass(frozen=True)
class CircuitFile:
    n: int
    gates: tuple[GateSpec, ...]

    def to_json(self) -> dict:
        return {"n": self.n, "gates": [gate_to_json(g) for g in self.gates]}

    @classmethod
    def from_json(cls, obj) -> "CircuitFile":
        if not isinstance(obj, dict) or "n" not in obj or not isinstance(obj.get("gates", []), list):
            raise ValueError("circuit must be an object with 'n' and a 'gates' list")
        n = obj["n"]
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"circuit n must be a positive integer, got {n!r}")
        gates = tuple(gate_from_json(g) for g in obj.get("gates", []))
        for g in gates:
            g.check(n)
        return cls(n, gates)


def _parse_n_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad qubit range {text!r}; use N or LO..HI")
    if lo < 1 or hi < lo:
        raise UsageError(f"bad qubit range {text!r}")
    return list(range(lo, hi + 1))


# ---- commands ---------------------------------------------------------------

def cmd_synth(args) -> int:
    try:
        spec = gate_from_json(_load_json(args.gate, "gate"))
        record = synth_gate(spec, SystemShape(args.n))
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.format == "table":
        text = explain(record) + f"\nrotations {record.rotation_count}, depth {record.depth}"
    else:
        text = dump_json({
            "gate": gate_to_json(spec),
            "n": args.n,
            "rotation_count": record.rotation_count,
            "depth": record.depth,
            "uses_ancilla": record.uses_ancilla,
            "pairings": [[list(p) for p in layer] for layer in record.pairings],
            "program": record.program.to_json(),
        })
    _write(text, args.out)
    if args.explain and args.format != "table":
        print(explain(record), file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return EXIT_OK


def _probability_csv(state: QuditState, digits: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["level", "bits", "probability"])
    n = state.shape.n
    for level, p in enumerate(probabilities(state)):
        bits = "ancilla" if level == state.shape.ancilla else format(level, f"0{n}b")
        w.writerow([level, bits, format(float(p), f".{digits}g")])
    return buf.getvalue()


def cmd_run(args) -> int:
    try:
        circuit = CircuitFile.from_json(_read_json_file(args.circuit, "circuit"))
    except ValueError as exc:
        raise UsageError(str(exc))
    shape = SystemShape(circuit.n)
    if args.state:
        try:
            state = QuditState.from_json(_read_json_file(args.state, "state"))
        except ValueError as exc:
            raise UsageError(str(exc))
        if state.shape != shape:
            raise UsageError(f"state is for n={state.shape.n}, circuit for n={shape.n}")
    else:
        state = ground_state(shape)

    records = [synth_gate(g, shape) for g in circuit.gates]
    program = concat([r.program for r in records], shape)
    check = validate_program(program)
    if not check:
        raise ValidationFailure(check.describe())
    final = apply_program(state, program)
    digits = float_digits()
    _write(dump_json(final.to_json()), args.state_out)
    _write(_probability_csv(final, digits), args.probs_out)
    m = metrics(program, [(r.label, r.program) for r in records])
    print(m.to_text() if args.format == "table" else dump_json(m.to_json()))
    return EXIT_OK


def cmd_depth(args) -> int:
    try:
        program = RotationProgram.from_json(_read_json_file(args.program, "program"))
    except ValueError as exc:
        raise UsageError(str(exc))
    check = validate_program(program)
    if not check:
        raise ValidationFailure(check.describe())
    m = metrics(program)
    out = m.to_json()
    if args.merge:
        merged = merge_adjacent(program)
        out["merged_depth"] = merged.depth
    if args.format == "table":
        text = m.to_text()
        if args.merge:
            text += f"\nmerged depth {out['merged_depth']}"
    else:
        text = dump_json(out)
    _write(text, None)
    return EXIT_OK


def cmd_grover(args) -> int:
    if args.n < 2:
        raise UsageError("grover needs --n >= 2")
    marked = None
    if args.marked is not None:
        try:
            marked = bits_to_index(args.marked)
        except ValueError as exc:
            raise UsageError(str(exc))
        if len(args.marked) != args.n:
            raise UsageError(f"--marked must have {args.n} bits")
    if args.iterations == "auto":
        t = "auto"
    else:
        try:
            t = int(args.iterations)
        except ValueError:
            raise UsageError("--iterations must be a positive integer or 'auto'")
        if t < 1:
            raise UsageError("--iterations must be >= 1")
    report = run_grover(args.n, marked, t)
    if args.format == "table":
        digits = float_digits()
        rows = [(k, format(v, f".{digits}g") if isinstance(v, float) else str(v))
                for k, v in report.to_json().items()]
        width = max(len(k) for k, _ in rows)
        text = "\n".join(f"{k:<{width}}  {v}" for k, v in rows)
    else:
        text = dump_json(report.to_json())
    _write(text, None)
    return EXIT_OK


def cmd_table(args) -> int:
    if args.n_min < 2 or args.n_max < args.n_min:
        raise UsageError("need 2 <= --n-min <= --n-max")
    reports = comparison_table(range(args.n_min, args.n_max + 1))
    if args.format == "markdown":
        text = to_markdown(reports)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(TABLE_COLUMNS)
        w.writerows(table_rows(reports, float_digits()))
        text = buf.getvalue()
    _write(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = []
    for n in _parse_n_range(args.n):
        for spec in gate_sweep(n):
            res = check_equivalence(synth_gate(spec, SystemShape(n)))
            results.append({
                "n": n,
                "gate": gate_to_json(spec),
                "label": spec.label,
                "equal": res.equal,
                "max_abs_deviation": res.max_abs_deviation,
                "ancilla_decoupled": res.ancilla_decoupled,
            })
    failed = [r for r in results if not r["equal"]]
    report = {"checked": len(results), "failed": len(failed), "results": results}
    if args.json_out:
        _write(dump_json(report), args.json_out)
    for r in failed:
        print(f"FAIL n={r['n']} {r['label']}: deviation {r['max_abs_deviation']:.3e}")
    print(f"verify: {len(results) - len(failed)}/{len(results)} gates equivalent")
    return EXIT_INVALID if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quditc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="compile one gate")
    p.add_argument("--gate", required=True, help='gate JSON, e.g. \'{"h":{"targets":[1]}}\'')
    p.add_argument("--n", type=int, required=True, help="qubit count")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--explain", action="store_true", help="also print the pairing table")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("run", help="compile and simulate a circuit file")
    p.add_argument("--circuit", required=True)
    p.add_argument("--state", help="input state JSON (default ground state)")
    p.add_argument("--state-out", help="final state JSON (default stdout)")
    p.add_argument("--probs-out", help="probability CSV (default stdout)")
    p.add_argument("--format", choices=("json", "table"), default="json", help="metrics format")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("depth", help="rotation count and depth of a program file")
    p.add_argument("--program", required=True)
    p.add_argument("--merge", action="store_true", help="also report depth after merging layers")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("grover", help="simulate Grover search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--marked", help="marked bit string (default all ones)")
    p.add_argument("--iterations", default="auto")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_grover)

    p = sub.add_parser("table", help="Grover depth/accuracy comparison table")
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="check every compiled gate against the qubit matrices")
    p.add_argument("--n", default="1..5", help="N or LO..HI (default 1..5)")
    p.add_argument("--json-out", help="write the full JSON report here")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"quditc {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationFailure as exc:
        print(f"quditc {args.command}: invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
