import math

import numpy as np
import pytest

from xsteer.measures import full_report
from xsteer.processes import (
    ChannelParameterError,
    ZeroProbabilityOutcomeError,
    accelerate,
    accelerate_oracle,
    accelerated_params,
    ad_survival,
    amplitude_damping_kraus,
    apply_local_channel,
    bell_project_swap,
    completeness_defect,
    dephasing_coherence,
    dephasing_kraus,
    swap_bell_mixtures,
)
from xsteer.qstate import (
    BellIndex,
    InvalidStateError,
    bell_mixture,
    check_density,
    from_x_params,
    is_x_structured,
    random_x_state,
    x_params_from_density,
)

R_MAX = math.pi / 4.0
INV_2SQ2 = 1.0 / (2.0 * math.sqrt(2.0))


# ---------------------------------------------------------------------------
# acceleration
# ---------------------------------------------------------------------------

def test_zero_acceleration_is_identity_on_mixture_family():
    for nu in np.linspace(0.0, 1.0, 11):
        np.testing.assert_allclose(
            accelerate(nu, 0.0, 0.0), from_x_params(bell_mixture(nu)), atol=1e-15
        )
    np.testing.assert_allclose(
        accelerate(1.0, 0.0, 0.0), BellIndex.PHI_PLUS.projector, atol=1e-15
    )


def test_single_qubit_acceleration_coefficients():
    # accelerating one qubit of psi+ by r = pi/4
    p = accelerated_params(0.0, R_MAX, 0.0)
    np.testing.assert_allclose(p.diagonal, [0.25, 0.0, 0.25, 0.5], atol=1e-15)
    assert abs(p.c14 - INV_2SQ2) < 1e-15
    assert p.c23 == 0.0
    # and of phi+: same populations on the swapped slots
    q = accelerated_params(1.0, R_MAX, 0.0)
    np.testing.assert_allclose(q.diagonal, [0.0, 0.25, 0.5, 0.25], atol=1e-15)
    assert abs(q.c23 - INV_2SQ2) < 1e-15
    assert q.c14 == 0.0


def test_accelerated_populations_sum_to_one():
    for nu in np.linspace(0.0, 1.0, 5):
        for ra in np.linspace(0.0, R_MAX, 5):
            for rb in np.linspace(0.0, R_MAX, 5):
                p = accelerated_params(nu, ra, rb)
                assert abs(sum(p.diagonal) - 1.0) <= 1e-12


def test_accelerate_matches_oracle_on_grid():
    for nu in np.linspace(0.0, 1.0, 5):
        for ra in np.linspace(0.0, R_MAX, 5):
            for rb in np.linspace(0.0, R_MAX, 5):
                closed = accelerate(nu, ra, rb)
                brute = accelerate_oracle(nu, ra, rb)
                assert np.max(np.abs(closed - brute)) < 1e-10


def test_accelerate_oracle_specific_points():
    np.testing.assert_allclose(
        accelerate_oracle(1.0, 0.0, 0.0), BellIndex.PHI_PLUS.projector, atol=1e-15
    )
    np.testing.assert_allclose(
        accelerate_oracle(0.0, R_MAX, 0.0), accelerate(0.0, R_MAX, 0.0), atol=1e-12
    )
    np.testing.assert_allclose(
        accelerate_oracle(0.3, 0.2, 0.5), accelerate(0.3, 0.2, 0.5), atol=1e-12
    )


def test_accelerate_rejects_out_of_range():
    with pytest.raises(InvalidStateError, match="nu"):
        accelerate(1.2, 0.1, 0.1)
    with pytest.raises(InvalidStateError, match="r_a"):
        accelerate(0.5, -0.1, 0.1)
    with pytest.raises(InvalidStateError, match="r_b"):
        accelerate(0.5, 0.1, 1.0)


def test_accelerated_state_is_valid_density():
    for nu, ra, rb in ((0.0, 0.3, 0.7), (0.5, R_MAX, R_MAX), (1.0, 0.1, 0.0)):
        check_density(accelerate(nu, ra, rb))


# ---------------------------------------------------------------------------
# amplitude damping
# ---------------------------------------------------------------------------

def test_ad_survival_at_zero_time():
    for r in (0.01, 0.1, 1.0, 1.9):
        assert ad_survival(r, 0.0) == 1.0


def test_ad_survival_matches_printed_formula():
    # for g/gamma = 0.1 the oscillation rate is sqrt(0.19) ~ 0.435890
    lam = math.sqrt(0.19)
    assert abs(lam - 0.435890) < 1e-6
    for tau in (0.7, 3.3, 10.0, 25.0):
        ref = math.exp(-0.1 * tau) * (
            math.cos(lam * tau / 2.0) + (0.1 / lam) * math.sin(lam * tau / 2.0)
        ) ** 2
        assert abs(ad_survival(0.1, tau) - ref) < 1e-14


def test_ad_survival_bounded_and_decaying():
    for r in (0.01, 0.1, 0.5):
        taus = np.linspace(0.0, 400.0, 2000)
        vals = [ad_survival(r, t) for t in taus]
        assert max(vals) <= 1.0
        assert min(vals) >= 0.0
    assert ad_survival(0.1, 600.0) < 1e-6


def test_ad_rejects_overdamped_rate():
    for r in (2.0, 2.5):
        with pytest.raises(ChannelParameterError, match="g/gamma"):
            ad_survival(r, 1.0)
    with pytest.raises(ChannelParameterError):
        amplitude_damping_kraus(-0.1, 1.0)
    with pytest.raises(ChannelParameterError):
        amplitude_damping_kraus(0.1, -1.0)


def test_ad_kraus_identity_at_zero_time():
    k1, k2 = amplitude_damping_kraus(0.1, 0.0)
    np.testing.assert_allclose(k1, np.eye(2), atol=0)
    np.testing.assert_allclose(k2, np.zeros((2, 2)), atol=0)


def test_ad_kraus_completeness():
    for r in (0.01, 0.1):
        for tau in np.linspace(0.0, 100.0, 100):
            assert completeness_defect(amplitude_damping_kraus(r, tau)) <= 1e-12


def test_ad_long_time_relaxes_to_ground():
    ops = amplitude_damping_kraus(0.1, 600.0)
    target = np.diag([1.0, 0, 0, 0]).astype(complex)
    for seed in range(5):
        rho = from_x_params(random_x_state(seed))
        out = apply_local_channel(rho, ops, ops)
        assert np.max(np.abs(out - target)) < 1e-3


# ---------------------------------------------------------------------------
# dephasing
# ---------------------------------------------------------------------------

def test_dephasing_coherence_values():
    assert dephasing_coherence(0.1, 0.0) == 1.0
    expected = math.exp(-0.5 * (1.0 + 10.0 * (math.exp(-0.1) - 1.0)))
    assert abs(dephasing_coherence(0.1, 1.0) - expected) < 1e-15
    assert abs(dephasing_coherence(0.1, 1.0) - 0.976104) < 1e-6
    assert dephasing_coherence(0.1, 500.0) < 1e-10


def test_dephasing_kraus_identity_at_zero_time():
    k1, k2 = dephasing_kraus(0.01, 0.0)
    np.testing.assert_allclose(k1, np.eye(2), atol=0)
    np.testing.assert_allclose(k2, np.zeros((2, 2)), atol=0)


def test_dephasing_kraus_completeness():
    for r in (0.01, 0.1):
        for tau in np.linspace(0.0, 100.0, 100):
            assert completeness_defect(dephasing_kraus(r, tau)) <= 1e-12


def test_dephasing_scales_coherences_quadratically():
    for tau in (0.5, 2.0, 7.0):
        p = dephasing_coherence(0.1, tau)
        ops = dephasing_kraus(0.1, tau)
        for seed in range(5):
            params = random_x_state(seed)
            out = apply_local_channel(from_x_params(params), ops, ops)
            got = x_params_from_density(out)
            np.testing.assert_allclose(got.diagonal, params.diagonal, atol=1e-14)
            assert abs(got.c14 - params.c14 * p * p) < 1e-14
            assert abs(got.c23 - params.c23 * p * p) < 1e-14


def test_dephasing_kills_coherences_at_long_times():
    ops = dephasing_kraus(0.1, 500.0)
    params = bell_mixture(0.3)
    got = x_params_from_density(apply_local_channel(from_x_params(params), ops, ops))
    np.testing.assert_allclose(got.diagonal, params.diagonal, atol=1e-14)
    assert abs(got.c14) < 1e-12
    assert abs(got.c23) < 1e-12


# ---------------------------------------------------------------------------
# generic channel application
# ---------------------------------------------------------------------------

def test_identity_channel_leaves_state_unchanged():
    identity = [np.eye(2, dtype=complex)]
    rho = from_x_params(random_x_state(11))
    np.testing.assert_allclose(apply_local_channel(rho, identity, identity), rho, atol=0)


def test_full_damping_projects_everything_to_ground():
    ops = [
        np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex),
        np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex),
    ]
    target = np.diag([1.0, 0, 0, 0]).astype(complex)
    for seed in range(10):
        rho = from_x_params(random_x_state(seed))
        np.testing.assert_allclose(apply_local_channel(rho, ops, ops), target, atol=1e-14)


def test_apply_local_channel_rejects_incomplete_sets():
    broken = [np.array([[1.0, 0.0], [0.0, 0.5]], dtype=complex)]
    with pytest.raises(ChannelParameterError, match="trace preserving"):
        apply_local_channel(np.eye(4, dtype=complex) / 4, broken, broken)


def test_channel_outputs_stay_valid_x_states():
    for seed in range(20):
        rho = from_x_params(random_x_state(seed))
        for ops in (amplitude_damping_kraus(0.1, 3.0), dephasing_kraus(0.01, 5.0)):
            out = apply_local_channel(rho, ops, ops)
            check_density(out)
            assert is_x_structured(out)


# ---------------------------------------------------------------------------
# entanglement swapping
# ---------------------------------------------------------------------------

def _oracle_swap(rho12, rho34, ket23):
    # index-by-index projection onto the Bell vector on qubits 2 and 3,
    # then normalization; no Kronecker products involved
    out = np.zeros((4, 4), dtype=complex)
    for q1 in range(2):
        for q4 in range(2):
            for p1 in range(2):
                for p4 in range(2):
                    val = 0.0
                    for q2 in range(2):
                        for q3 in range(2):
                            for p2 in range(2):
                                for p3 in range(2):
                                    amp = np.conj(ket23[2 * q2 + q3]) * ket23[2 * p2 + p3]
                                    val += (
                                        amp
                                        * rho12[2 * q1 + q2, 2 * p1 + p2]
                                        * rho34[2 * q3 + q4, 2 * p3 + p4]
                                    )
                    out[2 * q1 + q4, 2 * p1 + p4] = val
    return out / np.trace(out)


def test_swap_of_psi_pairs_returns_psi():
    pair = from_x_params(bell_mixture(0.0))
    out = bell_project_swap(pair, pair, BellIndex.PSI_PLUS)
    np.testing.assert_allclose(out, BellIndex.PSI_PLUS.projector, atol=1e-12)


def test_swap_of_phi_pairs_is_maximally_steerable():
    pair = from_x_params(bell_mixture(1.0))
    out = bell_project_swap(pair, pair, BellIndex.PSI_PLUS)
    # two phi+ pairs swap into a psi+ pair
    np.testing.assert_allclose(out, BellIndex.PSI_PLUS.projector, atol=1e-12)
    assert abs(full_report(out).s - 1.0) < 1e-9


def test_swap_at_half_is_unsteerable():
    assert full_report(swap_bell_mixtures(0.5)).s == 0.0


def test_swap_closed_form_for_mixture_family():
    # swapping two nu mixtures through psi+ lands on the mixture at 2 nu (1 - nu)
    for nu in np.linspace(0.0, 1.0, 21):
        out = swap_bell_mixtures(nu)
        expected = from_x_params(bell_mixture(2.0 * nu * (1.0 - nu)))
        np.testing.assert_allclose(out, expected, atol=1e-12)


def test_swap_matches_bruteforce_oracle():
    for seed in range(10):
        rho12 = from_x_params(random_x_state(seed))
        rho34 = from_x_params(random_x_state(seed + 500))
        for which in BellIndex:
            expected = _oracle_swap(rho12, rho34, which.ket)
            got = bell_project_swap(rho12, rho34, which)
            np.testing.assert_allclose(got, expected, atol=1e-12)


def test_swap_outputs_valid_for_all_outcomes():
    for nu in np.linspace(0.0, 1.0, 9):
        pair = from_x_params(bell_mixture(nu))
        for which in BellIndex:
            out = bell_project_swap(pair, pair, which)
            check_density(out)


def test_swap_zero_probability_outcome_rejected():
    ground = np.diag([1.0, 0, 0, 0]).astype(complex)
    with pytest.raises(ZeroProbabilityOutcomeError):
        bell_project_swap(ground, ground, BellIndex.PHI_PLUS)
