"""Propagator tests: adiabatic limits, decoupling, convergence order, assembly."""

import math

import numpy as np
import pytest

from adiabatic_sim.errors import CapacityError, DomainError, ShapeError
from adiabatic_sim.evolution import (
    Schedule,
    assemble_bv,
    assemble_simon,
    evolve_full,
    evolve_two_level,
    simon_branch_amplitude,
)
from adiabatic_sim.hamiltonians import (
    InterpolatedHamiltonian,
    TwoLevelBlock,
    bv_driver,
    bv_interpolated,
    simon_interpolated,
)
from adiabatic_sim.oracles import BvMask, bv_eval, simon_build, simon_eval
from adiabatic_sim.qstate import SIGMA_X, StateVector, inner, plus_state

E0 = np.array([1.0, 0.0], dtype=complex)
E1 = np.array([0.0, 1.0], dtype=complex)
PLUS = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)


def bv_target(mask: BvMask) -> StateVector:
    """Independent construction of 2^(-n/2) sum_w |w>|f(w)>."""
    amps = np.zeros(1 << (mask.n + 1), dtype=complex)
    for w in range(1 << mask.n):
        amps[2 * w + bv_eval(mask, w)] = 1.0 / math.sqrt(1 << mask.n)
    return StateVector(mask.n, 1, amps)


def simon_target(oracle) -> StateVector:
    """Independent construction of 2^(-n/2) sum_w |w>|g(w)>."""
    n, m = oracle.n, oracle.n - 1
    amps = np.zeros(1 << (n + m), dtype=complex)
    for w in range(1 << n):
        amps[(w << m) + simon_eval(oracle, w)] = 1.0 / math.sqrt(1 << n)
    return StateVector(n, m, amps)


def test_schedule_validation():
    with pytest.raises(DomainError):
        Schedule(0.0, 10)
    with pytest.raises(DomainError):
        Schedule(1.0, 0)
    assert Schedule(2.0, 4).dt == pytest.approx(0.5)


def test_frozen_driver_leaves_ground_state_fixed():
    # H(s) = H_d for all s; |+>|+> is its zero eigenvector, so no phase at all
    n = 2
    driver = bv_driver(n)
    frozen = InterpolatedHamiltonian(driver, driver, (n, 1))
    psi0 = plus_state(n, 1)
    result = evolve_full(frozen, psi0, Schedule(3.0, 300))
    assert np.max(np.abs(result.final_state.amps - psi0.amps)) <= 1e-12


def test_full_evolution_reaches_bv_target():
    mask = BvMask(2, 2)
    target = bv_target(mask)
    result = evolve_full(bv_interpolated(mask), plus_state(2, 1), Schedule(50.0, 5000), target)
    assert result.fidelity_to_target >= 0.999
    assert result.norm_drift <= 1e-9


def test_diabatic_quench_matches_sudden_approximation():
    mask = BvMask(2, 2)
    target = bv_target(mask)
    psi0 = plus_state(2, 1)
    sudden = abs(inner(target, psi0)) ** 2
    assert sudden == pytest.approx(0.5, abs=1e-12)
    result = evolve_full(bv_interpolated(mask), psi0, Schedule(0.01, 10), target)
    assert result.fidelity_to_target == pytest.approx(sudden, abs=0.02)
    assert result.fidelity_to_target < 0.6


def test_two_level_adiabatic_limit():
    phi0 = evolve_two_level(TwoLevelBlock(0, "bv"), Schedule(50.0, 5000))
    assert abs(phi0[0]) ** 2 >= 0.999
    assert abs(float(np.vdot(phi0, phi0).real) - 1.0) <= 1e-9


@pytest.mark.parametrize("kind", ["bv", "simon"])
@pytest.mark.parametrize("T", [1.0, 5.0, 50.0])
def test_branch_conjugation_identity(kind, T):
    sched = Schedule(T, int(100 * T))
    phi0 = evolve_two_level(TwoLevelBlock(0, kind), sched)
    phi1 = evolve_two_level(TwoLevelBlock(1, kind), sched)
    assert np.max(np.abs(phi1 - SIGMA_X @ phi0)) <= 1e-12


def test_step_doubling_quarters_the_error():
    reference = evolve_two_level(TwoLevelBlock(0, "bv"), Schedule(5.0, 1 << 16))
    errors = []
    for steps in (250, 500, 1000):
        phi = evolve_two_level(TwoLevelBlock(0, "bv"), Schedule(5.0, steps))
        errors.append(np.max(np.abs(phi - reference)))
    for coarse, fine in zip(errors, errors[1:]):
        assert 3.0 <= coarse / fine <= 5.0


def test_assemble_bv_ideal_branches():
    psi = assemble_bv(BvMask(2, 2), E0, E1)
    expected = np.zeros(8, dtype=complex)
    for w, f in [(0, 0), (1, 0), (2, 1), (3, 1)]:
        expected[2 * w + f] = 0.5
    np.testing.assert_allclose(psi.amps, expected, atol=1e-15)


def test_assemble_bv_plus_branches_give_initial_state():
    psi = assemble_bv(BvMask(3, 5), PLUS, PLUS)
    np.testing.assert_allclose(psi.amps, plus_state(3, 1).amps, atol=1e-15)


def test_assemble_bv_matches_full_evolution():
    mask = BvMask(3, 5)
    sched = Schedule(50.0, 5000)
    full = evolve_full(bv_interpolated(mask), plus_state(3, 1), sched)
    phi0 = evolve_two_level(TwoLevelBlock(0, "bv"), sched)
    phi1 = evolve_two_level(TwoLevelBlock(1, "bv"), sched)
    factored = assemble_bv(mask, phi0, phi1)
    assert np.max(np.abs(full.final_state.amps - factored.amps)) <= 1e-8


def test_assemble_simon_ideal_branches():
    oracle = simon_build(2, 3)
    psi = assemble_simon(oracle, E0, E1)
    expected = np.zeros(8, dtype=complex)
    for w in range(4):
        expected[(w << 1) + simon_eval(oracle, w)] = 0.5
    np.testing.assert_allclose(psi.amps, expected, atol=1e-15)


@pytest.mark.parametrize("T", [5.0, 50.0])
def test_assemble_simon_coset_grouping(T):
    # amplitudes are constant on cosets {w, w xor a} for ideal and evolved branches
    oracle = simon_build(3, 5)
    sched = Schedule(T, int(100 * T))
    phi0 = evolve_two_level(TwoLevelBlock(0, "simon"), sched)
    phi1 = evolve_two_level(TwoLevelBlock(1, "simon"), sched)
    mat = assemble_simon(oracle, phi0, phi1).as_matrix()
    for w in range(8):
        np.testing.assert_allclose(mat[w], mat[w ^ 5], atol=1e-15)


def test_assemble_simon_matches_full_evolution():
    oracle = simon_build(3, 5)
    sched = Schedule(50.0, 5000)
    full = evolve_full(simon_interpolated(oracle), plus_state(3, 2), sched)
    phi0 = evolve_two_level(TwoLevelBlock(0, "simon"), sched)
    phi1 = evolve_two_level(TwoLevelBlock(1, "simon"), sched)
    factored = assemble_simon(oracle, phi0, phi1)
    assert np.max(np.abs(full.final_state.amps - factored.amps)) <= 1e-8


def test_full_state_fidelity_is_register_size_independent():
    sched = Schedule(50.0, 5000)
    fidelities = []
    for n in (2, 3, 4):
        mask = BvMask(n, (1 << n) - 1)
        result = evolve_full(
            bv_interpolated(mask), plus_state(n, 1), sched, bv_target(mask)
        )
        fidelities.append(result.fidelity_to_target)
    assert max(fidelities) - min(fidelities) <= 1e-8


def test_simon_branch_amplitude_matches_assembled_state():
    oracle = simon_build(3, 3, scramble_seed=1)
    sched = Schedule(5.0, 500)
    phi0 = evolve_two_level(TwoLevelBlock(0, "simon"), sched)
    phi1 = evolve_two_level(TwoLevelBlock(1, "simon"), sched)
    mat = assemble_simon(oracle, phi0, phi1).as_matrix()
    for w in range(8):
        for y in range(4):
            assert simon_branch_amplitude(oracle, phi0, phi1, w, y) == pytest.approx(
                complex(mat[w, y]), abs=1e-14
            )


def test_evolve_full_validation():
    mask = BvMask(2, 1)
    h = bv_interpolated(mask)
    with pytest.raises(ShapeError):
        evolve_full(h, plus_state(3, 1), Schedule(1.0, 10))
    bad = StateVector(2, 1, np.full(8, 0.1, dtype=complex))
    with pytest.raises(DomainError):
        evolve_full(h, bad, Schedule(1.0, 10))


def test_assemble_capacity_checked_before_allocation():
    with pytest.raises(CapacityError):
        assemble_bv(BvMask(26, 1), E0, E1)
    with pytest.raises(CapacityError):
        assemble_simon(simon_build(14, 1, materialize_table=False), E0, E1)


def test_assemble_rejects_unnormalized_branches():
    with pytest.raises(DomainError):
        assemble_bv(BvMask(2, 1), 2.0 * E0, E1)


def test_evolution_is_bit_identical_within_a_build():
    sched = Schedule(5.0, 500)
    first = evolve_two_level(TwoLevelBlock(0, "simon"), sched)
    second = evolve_two_level(TwoLevelBlock(0, "simon"), sched)
    assert np.array_equal(first, second)
    mask = BvMask(2, 2)
    h = bv_interpolated(mask)
    a = evolve_full(h, plus_state(2, 1), sched).final_state.amps
    b = evolve_full(h, plus_state(2, 1), sched).final_state.amps
    assert np.array_equal(a, b)
