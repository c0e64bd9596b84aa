import cmath
import math

import numpy as np
import pytest

from quditc.core import ControlledNot, ControlledZ, Hadamard, Not, Rotation, RotationProgram, SystemShape, T
from quditc.oracle import (
    check_equivalence,
    compare_unitaries,
    gate_sweep,
    qubit_gate_matrix,
    qubit_gate_matrix_bruteforce,
    qubit_grover_depth,
)
from quditc.synth import SynthesisRecord, synth_gate, synth_hadamard


def test_t_phase_on_010():
    u = qubit_gate_matrix(T(2), 3)
    assert abs(u[2, 2] - cmath.exp(1j * math.pi / 4)) < 1e-15
    assert u[0, 0] == 1 and u[5, 5] == 1


@pytest.mark.parametrize("n", range(1, 6))
def test_full_cz_is_single_phase(n):
    expected = np.eye(2 ** n)
    expected[-1, -1] = -1
    assert np.array_equal(qubit_gate_matrix(ControlledZ(range(1, n), {n}), n), expected)


def test_hadamard_all_column_zero():
    col = qubit_gate_matrix(Hadamard({1, 2, 3}), 3)[:, 0]
    np.testing.assert_allclose(col, np.full(8, 1 / math.sqrt(8)), atol=1e-15)


def test_cnot_is_big_endian():
    u = qubit_gate_matrix(ControlledNot({1}, 2), 2)
    assert np.array_equal(u, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


@pytest.mark.parametrize("n", range(1, 6))
def test_kron_matches_bruteforce(n):
    for spec in gate_sweep(n):
        assert np.max(np.abs(qubit_gate_matrix(spec, n) - qubit_gate_matrix_bruteforce(spec, n))) < 1e-12


@pytest.mark.parametrize("n", range(1, 8))
def test_unitary_and_orders(n):
    specs = gate_sweep(n) if n <= 4 else [Hadamard(range(1, n + 1)), Not({1, n}), T(n), ControlledNot(range(1, n), n), ControlledZ({1}, {n})]
    eye = np.eye(2 ** n)
    for spec in specs:
        u = qubit_gate_matrix(spec, n)
        assert np.max(np.abs(u.conj().T @ u - eye)) < 1e-12
        if isinstance(spec, T):
            assert np.max(np.abs(np.linalg.matrix_power(u, 8) - eye)) < 1e-12
            assert np.max(np.abs(np.linalg.matrix_power(u, 4) - eye)) > 1
        else:
            assert np.max(np.abs(u @ u - eye)) < 1e-12


def test_multi_hadamard_is_product():
    u12 = qubit_gate_matrix(Hadamard({1, 2}), 3)
    prod = qubit_gate_matrix(Hadamard({1}), 3) @ qubit_gate_matrix(Hadamard({2}), 3)
    assert np.max(np.abs(u12 - prod)) < 1e-12


@pytest.mark.parametrize("n", range(1, 6))
def test_every_gate_equivalent(n):
    for spec in gate_sweep(n):
        res = check_equivalence(synth_gate(spec, n))
        assert res.equal, (spec, res.describe())
        assert res.global_phase is not None and abs(res.global_phase - 1) < 1e-10


def test_sign_flipped_hadamard_fails():
    rec = synth_hadamard({1}, 3)
    flipped = [Rotation("y", 2, r.levels) for r in rec.program.layers[0]]
    bad = SynthesisRecord(rec.spec, RotationProgram(SystemShape(3), [flipped, rec.program.layers[1]]), rec.pairings, False)
    res = check_equivalence(bad)
    assert not res.equal
    assert abs(res.max_abs_deviation - math.sqrt(2)) < 1e-12


def test_identity_program_is_not_hadamard():
    rec = synth_hadamard({2}, 2)
    empty = SynthesisRecord(rec.spec, RotationProgram(SystemShape(2)), (), False)
    assert not check_equivalence(empty).equal


def test_global_phase_is_reported_not_accepted():
    u = np.eye(5, dtype=complex)
    u[:4, :4] *= 1j
    res = compare_unitaries(u, np.eye(4))
    assert not res.equal
    assert abs(res.global_phase + 1j) < 1e-12


def test_ancilla_coupling_detected():
    u = np.eye(3, dtype=complex)
    u[[1, 2]] = u[[2, 1]]
    res = compare_unitaries(u, np.diag([1, 0]))
    assert not res.ancilla_decoupled and not res.equal


@pytest.mark.parametrize("n,t,depth", [(3, 2, 30), (4, 3, 92), (5, 4, 186), (6, 6, 374), (7, 8, 626)])
def test_qubit_grover_depth_table(n, t, depth):
    assert qubit_grover_depth(n, t) == depth


def test_qubit_grover_depth_components():
    for n in range(3, 10):
        for t in range(1, 5):
            # oracle 8N-20 plus diffusion 8N-14 per iteration, plus the initial H layer pair
            assert qubit_grover_depth(n, t) == t * ((8 * n - 20) + (8 * n - 14)) + 2
    with pytest.raises(ValueError):
        qubit_grover_depth(2, 1)
    with pytest.raises(ValueError):
        qubit_grover_depth(3, 0)


def test_gate_sweep_size():
    # H and X: 2(2^n - 1); T: n; CNOT: n(2^(n-1) - 1); CZ: sum over action sets of (2^a - 1)
    for n in range(1, 6):
        cz = sum(math.comb(n, a) * (2 ** a - 1) for a in range(1, n + 1))
        assert len(gate_sweep(n)) == 2 * (2 ** n - 1) + n + n * (2 ** (n - 1) - 1) + cz
