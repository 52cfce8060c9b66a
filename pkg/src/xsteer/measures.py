"""Steering and entropy-squeezing measures for two-qubit states.

The quantities computed here are built from the outcome statistics of the
three Pauli measurements applied to both qubits:

* conditional Shannon entropies H(sigma_i^B | sigma_i^A) per axis,
* the steering functional I_AB with its closed form for X states,
* the normalized one-way steering degree S in [0, 1],
* the exponentiated conditional entropies Xi_i = exp(H_i) and the
  squeezing quadratures E_x, E_y with their average Z.

All entropies are in nats.  The steering threshold for a qubit pair is
2 ln 2 and the maximum of the functional, reached on Bell states, is 6 ln 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .qstate import (
    XStateParams,
    check_density,
    is_x_structured,
    partial_trace_b,
    x_params_from_density,
)

LN2 = math.log(2.0)
TWO_LN2 = 2.0 * LN2
SIX_LN2 = 6.0 * LN2

# Raw measurement probabilities this far below zero indicate a broken input,
# not rounding noise.
NEGATIVE_PROBABILITY_TOL = -1e-10
# Allowed disagreement between the closed-form functional and the entropy
# identity before full_report treats it as a formula bug.
PATH_AGREEMENT_TOL = 1e-9

_SQ2 = 1.0 / math.sqrt(2.0)


class NegativeProbabilityError(ValueError):
    """A raw measurement probability fell below the rounding-noise floor."""


class PathDisagreementError(RuntimeError):
    """Closed-form and entropy-identity evaluations of I_AB disagree."""


class PauliAxis(Enum):
    X = "x"
    Y = "y"
    Z = "z"

    @property
    def eigenbasis(self) -> np.ndarray:
        """2x2 matrix whose columns are the +1 and -1 eigenvectors.

        Conventions: Z -> |0>, |1>;  X -> (|0> +- |1>)/sqrt(2);
        Y -> (|0> +- i|1>)/sqrt(2).  Probabilities are phase independent,
        so any consistent phase choice gives the same distributions.
        """
        if self is PauliAxis.Z:
            return np.eye(2, dtype=complex)
        if self is PauliAxis.X:
            return np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex)
        return np.array([[_SQ2, _SQ2], [1j * _SQ2, -1j * _SQ2]], dtype=complex)


def _clean_probabilities(p: np.ndarray) -> np.ndarray:
    if float(np.min(p)) < NEGATIVE_PROBABILITY_TOL:
        raise NegativeProbabilityError(
            f"raw probability {float(np.min(p)):.3e} below {NEGATIVE_PROBABILITY_TOL:.0e}"
        )
    p = np.clip(p, 0.0, 1.0)
    return p / p.sum()


def joint_distribution(rho: np.ndarray, axis: PauliAxis) -> np.ndarray:
    """Outcome probabilities of measuring `axis` on both qubits.

    Ordering is (n, m) = (+,+), (+,-), (-,+), (-,-) with the first label
    for qubit A.
    """
    basis = np.kron(axis.eigenbasis, axis.eigenbasis)
    p = np.real(np.einsum("ji,jk,ki->i", basis.conj(), np.asarray(rho, dtype=complex), basis))
    return _clean_probabilities(p)


def marginal_distribution(rho_a: np.ndarray, axis: PauliAxis) -> np.ndarray:
    """Outcome probabilities (+, -) of measuring `axis` on a single qubit."""
    basis = axis.eigenbasis
    p = np.real(np.einsum("ji,jk,ki->i", basis.conj(), np.asarray(rho_a, dtype=complex), basis))
    return _clean_probabilities(p)


def shannon_entropy(p) -> float:
    """- sum p ln p in nats, with the 0 ln 0 = 0 convention."""
    total = 0.0
    for x in np.asarray(p, dtype=float).ravel():
        if x > 0.0:
            total -= x * math.log(x)
    return total


def conditional_entropy(rho: np.ndarray, axis: PauliAxis) -> float:
    """H(joint outcomes) minus H(outcomes of the reduced state of A), in nats."""
    joint = joint_distribution(rho, axis)
    marginal = marginal_distribution(partial_trace_b(rho), axis)
    return shannon_entropy(joint) - shannon_entropy(marginal)


@dataclass(frozen=True)
class XCoefficients:
    """Probability offsets of an X state.

    x[i][j] shifts the j-th joint outcome of axis i: the joint probabilities
    along x and y are (1 + x_ij)/4 and along z they are the populations
    (1 + x_3j)/4.  a[k] shifts the z marginal of qubit A.
    """

    x: np.ndarray  # shape (3, 4)
    a: np.ndarray  # shape (2,)


def x_coefficients(p: XStateParams) -> XCoefficients:
    p.validate()
    t = 2.0 * (p.c14 + p.c23)
    u = 2.0 * (p.c23 - p.c14)
    x = np.array(
        [
            [t, t, -t, -t],
            [u, u, -u, -u],
            [4.0 * p.d1 - 1.0, 4.0 * p.d2 - 1.0, 4.0 * p.d3 - 1.0, 4.0 * p.d4 - 1.0],
        ]
    )
    az = p.d1 + p.d2 - p.d3 - p.d4
    return XCoefficients(x=x, a=np.array([-az, az]))


def _u_ln_u(u: float) -> float:
    return u * math.log(u) if u > 0.0 else 0.0


def steering_functional(p: XStateParams) -> float:
    """Closed-form steering functional I_AB of an X state, in nats.

    I_AB = sum_ij (1 + x_ij)/2 ln(1 + x_ij) - sum_k (1 + a_k) ln(1 + a_k),
    where terms with 1 + x = 0 contribute nothing.  For every valid state it
    equals 6 ln 2 - 2 (H_x + H_y + H_z); values above 2 ln 2 certify
    steering from A to B.
    """
    coeff = x_coefficients(p)
    total = 0.0
    for row in coeff.x:
        for xij in row:
            total += 0.5 * _u_ln_u(1.0 + xij)
    for ak in coeff.a:
        total -= _u_ln_u(1.0 + ak)
    return total


def neur_bound(n: int) -> float:
    """Entropic uncertainty bound (N/2) ln(N/2) + (1 + N/2) ln(1 + N/2).

    Defined for an even number N >= 2 of measurement outcomes; N = 2 gives
    the qubit threshold 2 ln 2.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError(f"bound is defined for even n >= 2, got {n}")
    half = n / 2.0
    return half * math.log(half) + (1.0 + half) * math.log(1.0 + half)


def one_way_steering(p: XStateParams) -> float:
    """Normalized one-way steering degree S = max{0, (I_AB - 2ln2)/(4ln2)}."""
    return max(0.0, (steering_functional(p) - TWO_LN2) / (SIX_LN2 - TWO_LN2))


def xi(rho: np.ndarray, axis: PauliAxis) -> float:
    """Exponentiated conditional entropy exp(H_i)."""
    return math.exp(conditional_entropy(rho, axis))


def squeezing_factor(rho: np.ndarray, axis: PauliAxis) -> float:
    """Entropy-squeezing quadrature E_i = max{0, 2/sqrt(Xi_z) - Xi_i}, i in {x, y}.

    Positive values certify squeezing of the chosen quadrature relative to
    the z reference; both quadratures reach 1 on a Bell state.
    """
    if axis is PauliAxis.Z:
        raise ValueError("squeezing quadratures are defined for the x and y axes only")
    return max(0.0, 2.0 / math.sqrt(xi(rho, PauliAxis.Z)) - xi(rho, axis))


def steerability_z(rho: np.ndarray) -> float:
    """Average of the two squeezing quadratures, clamped at zero."""
    e_x = squeezing_factor(rho, PauliAxis.X)
    e_y = squeezing_factor(rho, PauliAxis.Y)
    return max(0.0, 0.5 * (e_x + e_y))


@dataclass(frozen=True)
class SteeringReport:
    """Every derived quantity for one state.

    h_cond and xi are ordered (x, y, z); entropies are in nats.
    """

    h_cond: tuple[float, float, float]
    i_ab: float
    s: float
    xi: tuple[float, float, float]
    e_x: float
    e_y: float
    z: float


def full_report(rho: np.ndarray) -> SteeringReport:
    """Compute all steering and squeezing quantities for one state.

    For X-structured inputs I_AB is evaluated both through the closed form
    and through the entropy identity 6 ln 2 - 2 sum H_i; a disagreement
    beyond 1e-9 raises PathDisagreementError since it signals a formula
    transcription bug rather than bad input.
    """
    rho = check_density(rho)
    h = tuple(conditional_entropy(rho, ax) for ax in (PauliAxis.X, PauliAxis.Y, PauliAxis.Z))
    identity_value = SIX_LN2 - 2.0 * (h[0] + h[1] + h[2])
    if is_x_structured(rho):
        closed = steering_functional(x_params_from_density(rho))
        if abs(closed - identity_value) > PATH_AGREEMENT_TOL:
            raise PathDisagreementError(
                f"I_AB closed form {closed!r} vs entropy identity {identity_value!r}"
            )
        i_ab = closed
    else:
        i_ab = identity_value
    s = max(0.0, (i_ab - TWO_LN2) / (SIX_LN2 - TWO_LN2))
    xis = tuple(math.exp(v) for v in h)
    reference = 2.0 / math.sqrt(xis[2])
    e_x = max(0.0, reference - xis[0])
    e_y = max(0.0, reference - xis[1])
    z = max(0.0, 0.5 * (e_x + e_y))
    return SteeringReport(h_cond=h, i_ab=i_ab, s=s, xi=xis, e_x=e_x, e_y=e_y, z=z)
