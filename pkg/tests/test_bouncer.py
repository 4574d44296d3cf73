import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qbouncer.airy import CONSTANTS
from qbouncer.bouncer import (
    Eigenstate,
    eigenstate,
    energy_asymptotic,
    energy_exact,
    eval_wavefunction,
    expectation_potential,
    expectation_z,
    make_system,
    natural_system,
    overlap,
    count_nodes,
)
from qbouncer.errors import DomainError
from qbouncer.spectrum import lambda_asymptotic, lambda_exact

LAMBDA_1 = 2.338107410459767
# (hbar^2 / 2 m^2 g)^(1/3) for the values below, 30-digit mpmath arithmetic
CESIUM_Z0 = 2.26622872761837126797706898061e-07


@pytest.fixture(scope="module")
def nat():
    return natural_system()


@pytest.fixture(scope="module")
def states(nat):
    return [eigenstate(nat, n) for n in range(1, 11)]


def test_natural_units(nat):
    assert nat.z0 == pytest.approx(1.0, rel=1e-15)
    assert nat.e_scale == pytest.approx(1.0, rel=1e-15)
    assert energy_exact(nat, 1) == pytest.approx(lambda_exact(1), rel=1e-15)


def test_cesium_scale():
    cs = make_system(2.2069e-25, 9.81, 1.0546e-34)
    assert cs.z0 == pytest.approx(CESIUM_Z0, rel=1e-14)
    assert 1e-7 < cs.z0 < 1e-6


@pytest.mark.parametrize("args", [(-1.0, 9.81, 1e-34), (1.0, 0.0, 1e-34), (1.0, 9.81, math.nan), (1.0, math.inf, 1.0)])
def test_make_system_domain(args):
    with pytest.raises(DomainError):
        make_system(*args)


@settings(max_examples=100)
@given(st.floats(1e-30, 1e-20), st.floats(0.1, 100.0), st.floats(1e-35, 1e-33))
def test_two_energy_scale_forms_agree(m, g, hbar):
    s = make_system(m, g, hbar)
    assert s.e_scale == pytest.approx(hbar**2 / (2 * m * s.z0**2), rel=1e-12)
    assert s.z0 == pytest.approx((hbar**2 / (2 * m**2 * g)) ** (1 / 3), rel=1e-14)


def test_closed_form_energy_is_scaled_closed_form_zero():
    rng = np.random.default_rng(7)
    for m, g in zip(10 ** rng.uniform(-30, -20, 100), rng.uniform(0.1, 100, 100)):
        s = make_system(m, g, 1.054571817e-34)
        for n in (1, 7, 50):
            e24 = energy_asymptotic(s, n)
            assert abs(e24 - s.e_scale * lambda_asymptotic(n)) / e24 < 1e-12


def test_asymptotic_energy_natural_units(nat):
    assert energy_asymptotic(nat, 1) == pytest.approx(2.320251, abs=1e-6)
    with pytest.raises(DomainError):
        energy_asymptotic(nat, 0)


def test_closed_form_energy_within_one_percent():
    cs = make_system()
    for n in range(1, 51):
        assert abs(energy_asymptotic(cs, n) / energy_exact(cs, n) - 1) < 0.01


def test_energy_ratios_and_ordering():
    a, b = make_system(), make_system(1e-26, 3.0, 1e-34)
    ea = [energy_exact(a, n) for n in range(1, 21)]
    eb = [energy_exact(b, n) for n in range(1, 21)]
    assert np.all(np.diff(ea) > 0)
    assert np.allclose(np.array(ea) / ea[0], np.array(eb) / eb[0], rtol=1e-12, atol=0)


def test_unit_covariance_under_gravity_scaling():
    base = make_system()
    for s in (0.5, 3.0, 17.0):
        other = make_system(base.mass, s * base.g, base.hbar)
        for n in (2, 5, 9):
            r0 = energy_exact(base, n) / energy_exact(base, 1)
            r1 = energy_exact(other, n) / energy_exact(other, 1)
            assert r0 == pytest.approx(r1, rel=1e-12)


def test_eigenstate_fields(nat, states):
    for st_ in states:
        assert st_.energy == pytest.approx(nat.e_scale * st_.lam, rel=1e-15)
        assert st_.turning_point == pytest.approx(nat.z0 * st_.lam, rel=1e-15)
        assert st_.norm_const > 0


def test_norm_matches_closed_form_in_si_units():
    cs = make_system()
    for n in (1, 4):
        st_ = eigenstate(cs, n)
        lam = lambda_exact(n)
        from qbouncer.airy import airy

        closed = 1 / (math.sqrt(cs.z0) * abs(airy(-lam)[0].derivative))
        assert st_.norm_const == pytest.approx(closed, rel=1e-8)
        assert overlap(st_, st_, cs) == pytest.approx(1.0, abs=1e-8)


def test_boundary_condition(nat, states):
    for st_ in states:
        assert abs(eval_wavefunction(st_, nat, 0.0)) < 1e-10 * st_.norm_const
        # floor is impenetrable
        assert eval_wavefunction(st_, nat, -1.0) == 0.0
        # approaching z = 0 from above
        assert abs(eval_wavefunction(st_, nat, 1e-12)) < 1e-10 * st_.norm_const


def test_value_at_turning_point(nat, states):
    for st_ in states[:3]:
        assert eval_wavefunction(st_, nat, st_.turning_point) == pytest.approx(
            CONSTANTS.c1 * st_.norm_const, rel=1e-12)


def test_tail_decays_monotonically(nat, states):
    st_ = states[2]
    z = np.linspace(st_.turning_point + 1.0, st_.turning_point + 12.0, 200)
    phi = eval_wavefunction(st_, nat, z)
    assert np.all(phi > 0) and np.all(np.diff(phi) < 0)
    assert phi[-1] < 1e-10 * st_.norm_const


def test_ground_state_shape(nat, states):
    g = states[0]
    z = np.linspace(0, g.x_cut, 5001)[1:]
    phi = eval_wavefunction(g, nat, z)
    assert np.all(phi > 0)
    interior_max = np.flatnonzero((phi[1:-1] > phi[:-2]) & (phi[1:-1] > phi[2:]))
    assert len(interior_max) == 1


def test_node_count(nat, states):
    assert [count_nodes(s, nat) for s in states] == list(range(10))


def test_orthonormality(nat, states):
    for a in states:
        for b in states:
            if b.n < a.n:
                continue
            assert abs(overlap(a, b, nat) - (a.n == b.n)) < 1e-7, (a.n, b.n)


def test_mean_height_is_two_thirds_of_turning_point(nat, states):
    for st_ in states:
        assert expectation_z(st_, nat) == pytest.approx(2 / 3 * st_.turning_point, rel=1e-6)
    assert expectation_z(states[0], nat) == pytest.approx(1.5587, abs=1e-4)


def test_virial_energy_partition():
    cs = make_system()
    for n in (1, 3, 10):
        st_ = eigenstate(cs, n)
        assert expectation_potential(st_, cs) == pytest.approx(2 / 3 * st_.energy, rel=1e-6)


def test_mean_height_doubles_with_z0(nat):
    # z0 scales as g^(-1/3): g / 8 doubles it
    big = make_system(nat.mass, nat.g / 8, nat.hbar)
    assert big.z0 == pytest.approx(2 * nat.z0, rel=1e-14)
    a, b = eigenstate(nat, 2), eigenstate(big, 2)
    assert expectation_z(b, big) == pytest.approx(2 * expectation_z(a, nat), rel=1e-9)


def test_eigenstate_is_frozen(states):
    with pytest.raises(AttributeError):
        states[0].n = 5
    assert isinstance(states[0], Eigenstate)
