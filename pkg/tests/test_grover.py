import math

import numpy as np
import pytest

from quditc.grover import (
    build_grover,
    comparison_table,
    optimal_iterations,
    run_grover,
    success_curve,
    theoretical_success,
    to_markdown,
)
from quditc.simulate import apply_program, ground_state


def textbook_grover(n, marked, t):
    """Marked-level probability from plain D x D matrices: uniform start, reflections."""
    d = 2 ** n
    s = np.full(d, 1 / math.sqrt(d))
    oracle = np.eye(d)
    oracle[marked, marked] = -1
    diffusion = 2 * np.outer(s, s) - np.eye(d)
    psi = s.copy()
    for _ in range(t):
        psi = diffusion @ (oracle @ psi)
    return abs(psi[marked]) ** 2


@pytest.mark.parametrize("n,t", [(3, 2), (5, 4), (7, 8), (2, 1), (4, 3), (6, 6)])
def test_optimal_iterations(n, t):
    assert optimal_iterations(n) == t


def test_theoretical_success_values():
    amp, prob = theoretical_success(3, 2)
    assert round(100 * amp, 2) == 97.23
    assert abs(prob - amp ** 2) < 1e-15
    # sin^2(5 asin(1/sqrt 8)) = 121/128 exactly
    assert abs(prob - 121 / 128) < 1e-12
    assert round(100 * theoretical_success(6, 6)[0], 2) == 99.83
    with pytest.raises(ValueError):
        theoretical_success(3, 0)


@pytest.mark.parametrize("n,marked,t,depth", [(3, 7, 2, 32), (4, 15, 3, 53), (3, 0, 2, 40)])
def test_build_depth(n, marked, t, depth):
    assert build_grover(n, marked, t).metrics().depth == depth


def test_build_errors():
    with pytest.raises(ValueError):
        build_grover(3, 8, 1)
    with pytest.raises(ValueError):
        build_grover(3, 1, 0)
    with pytest.raises(ValueError):
        build_grover(1, 0, 1)


@pytest.mark.parametrize("n", range(2, 9))
def test_depth_identity(n):
    t = optimal_iterations(n)
    m = build_grover(n, 2 ** n - 1, t).metrics()
    assert m.depth == t * (2 * n + 8) + n + 1


def test_per_gate_split():
    m = build_grover(4, 15, 2).metrics()
    depth = {label: d for label, _, d in m.per_gate}
    assert depth["superposition H"] == 5
    assert depth["oracle CZ [1]"] == 1
    diffusion = [d for label, _, d in m.per_gate if label.startswith("diffusion") and label.endswith("[1]")]
    assert sum(diffusion) == 2 * 4 + 7


def test_run_grover_rows():
    r = run_grover(3, 7)
    assert (r.iterations, r.qudit_depth, r.qubit_depth_linear) == (2, 32, 30)
    assert abs(r.simulated_probability - 0.9453125) < 1e-9
    assert round(100 * r.theoretical_amplitude, 2) == 97.23
    r = run_grover(5, 31)
    assert (r.iterations, r.qudit_depth, r.qubit_depth_linear) == (4, 78, 186)
    assert round(100 * r.theoretical_amplitude, 2) == 99.96
    r = run_grover(2, 3, 1)
    assert abs(r.simulated_probability - 1) < 1e-9
    assert r.qubit_depth_linear is None


def test_marked_zero_matches_theory():
    r = run_grover(3, 0, 2)
    assert r.qudit_depth == 40
    assert abs(r.simulated_probability - theoretical_success(3, 2)[1]) < 1e-9


@pytest.mark.parametrize("n", [2, 3, 4])
def test_agrees_with_textbook_matrices(n):
    for marked in range(2 ** n):
        for t in (1, 2, 3):
            assert abs(run_grover(n, marked, t).simulated_probability - textbook_grover(n, marked, t)) < 1e-9


@pytest.mark.parametrize("n", range(2, 6))
def test_marked_level_equivariance(n):
    probs = [run_grover(n, m, 2).simulated_probability for m in range(2 ** n)]
    assert max(probs) - min(probs) < 1e-9


@pytest.mark.parametrize("n", range(3, 8))
def test_monotone_first_sweep(n):
    curve = success_curve(n, 2 ** n - 1, optimal_iterations(n))
    assert np.all(np.diff(curve) > 0)


def test_success_curve_matches_runs():
    curve = success_curve(3, 5, 4)
    for t in range(1, 5):
        assert abs(curve[t - 1] - run_grover(3, 5, t).simulated_probability) < 1e-12


def test_ancilla_untouched_at_gate_boundaries():
    for n in range(2, 7):
        for marked in (0, 2 ** n - 1, 1):
            assert run_grover(n, marked).max_ancilla_amplitude < 1e-12


def test_comparison_table():
    rows = comparison_table(range(3, 8))
    assert [r.iterations for r in rows] == [2, 3, 4, 6, 8]
    assert [r.qudit_depth for r in rows] == [32, 53, 78, 127, 184]
    assert [r.qubit_depth_linear for r in rows] == [30, 92, 186, 374, 626]
    reference = [97.23, 98.05, 99.96, 99.83, 99.78]
    for r, pct in zip(rows, reference):
        assert abs(100 * r.theoretical_amplitude - pct) < 0.005
    assert len(comparison_table([4])) == 1
    md = to_markdown(rows)
    assert "| 3 (D = 8) | 2 | 97.23%" in md


def test_final_state_from_build():
    c = build_grover(3, 6, 2)
    s = apply_program(ground_state(3), c.program)
    assert abs(abs(s.amplitudes[6]) ** 2 - 121 / 128) < 1e-9
