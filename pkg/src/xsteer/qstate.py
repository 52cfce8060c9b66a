"""Construction and algebra of one- and two-qubit density operators.

Everything downstream works on plain complex numpy arrays in the standard
computational basis |00>, |01>, |10>, |11| with qubit A as the left Kronecker
factor.  The compact six-parameter form of an X state (nonzero entries only on
the main diagonal and anti-diagonal, all real) is carried by `XStateParams`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

# Validation tolerances for density operators.
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_TOL = -1e-10
X_STRUCTURE_TOL = 1e-10


class InvalidStateError(ValueError):
    """A density operator or parameter set violates a state invariant."""


@dataclass(frozen=True)
class XStateParams:
    """Six real parameters of a two-qubit X state.

    d1..d4 are the diagonal entries (populations) in the order
    |00>, |01>, |10>, |11>;  c14 and c23 are the real anti-diagonal
    coherences sitting at positions (1,4) and (2,3) of the matrix.
    """

    d1: float
    d2: float
    d3: float
    d4: float
    c14: float
    c23: float

    @property
    def diagonal(self) -> tuple[float, float, float, float]:
        return (self.d1, self.d2, self.d3, self.d4)

    def validate(self) -> "XStateParams":
        """Check normalization and positivity of the two 2x2 blocks.

        Raises InvalidStateError naming the offending field.
        """
        for name, value in zip(("d1", "d2", "d3", "d4"), self.diagonal):
            if not 0.0 <= value <= 1.0:
                raise InvalidStateError(f"{name} must lie in [0, 1], got {value}")
        total = self.d1 + self.d2 + self.d3 + self.d4
        if abs(total - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"diagonal entries must sum to 1, got {total!r}")
        if self.c14 * self.c14 > self.d1 * self.d4 + 1e-12:
            raise InvalidStateError(
                f"c14^2 = {self.c14 ** 2} exceeds d1*d4 = {self.d1 * self.d4}; "
                "outer 2x2 block is not positive semidefinite"
            )
        if self.c23 * self.c23 > self.d2 * self.d3 + 1e-12:
            raise InvalidStateError(
                f"c23^2 = {self.c23 ** 2} exceeds d2*d3 = {self.d2 * self.d3}; "
                "inner 2x2 block is not positive semidefinite"
            )
        return self


class BellIndex(Enum):
    """The four maximally entangled two-qubit states.

    PSI_PLUS is (|00> + |11>)/sqrt(2) and PHI_PLUS is (|01> + |10>)/sqrt(2);
    the minus variants carry a relative minus sign.
    """

    PSI_PLUS = "psi"
    PHI_PLUS = "phi"
    PSI_MINUS = "psi-minus"
    PHI_MINUS = "phi-minus"

    @property
    def ket(self) -> np.ndarray:
        s = 1.0 / math.sqrt(2.0)
        vec = {
            BellIndex.PSI_PLUS: [s, 0.0, 0.0, s],
            BellIndex.PSI_MINUS: [s, 0.0, 0.0, -s],
            BellIndex.PHI_PLUS: [0.0, s, s, 0.0],
            BellIndex.PHI_MINUS: [0.0, s, -s, 0.0],
        }[self]
        return np.array(vec, dtype=complex)

    @property
    def projector(self) -> np.ndarray:
        k = self.ket
        return np.outer(k, k.conj())


def check_density(rho: np.ndarray, name: str = "state") -> np.ndarray:
    """Validate Hermiticity, unit trace and positive semidefiniteness.

    Works for any 2^n x 2^n operator; returns the input unchanged so it can
    be used inline.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidStateError(f"{name} must be a square matrix, got shape {rho.shape}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > HERMITICITY_TOL:
        raise InvalidStateError(f"{name} is not Hermitian (defect {herm:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidStateError(f"{name} does not have unit trace (trace {tr!r})")
    lo = float(np.min(np.linalg.eigvalsh(rho)))
    if lo < EIGENVALUE_TOL:
        raise InvalidStateError(f"{name} is not positive semidefinite (min eigenvalue {lo:.3e})")
    return rho


def from_x_params(p: XStateParams) -> np.ndarray:
    """Build the 4x4 density operator for a validated X-state parameter set."""
    p.validate()
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3] = p.d1, p.d2, p.d3, p.d4
    rho[0, 3] = rho[3, 0] = p.c14
    rho[1, 2] = rho[2, 1] = p.c23
    return rho


def is_x_structured(rho: np.ndarray, tol: float = X_STRUCTURE_TOL) -> bool:
    """True when every entry off the diagonal and anti-diagonal is negligible."""
    mask = np.ones((4, 4), dtype=bool)
    for i, j in ((0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0), (1, 2), (2, 1)):
        mask[i, j] = False
    return float(np.max(np.abs(np.asarray(rho)[mask]))) <= tol


def x_params_from_density(rho: np.ndarray, tol: float = X_STRUCTURE_TOL) -> XStateParams:
    """Read the six X-state parameters back out of a density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if not is_x_structured(rho, tol):
        raise InvalidStateError("density matrix is not X structured")
    picked = np.array([rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3], rho[0, 3], rho[1, 2]])
    if np.max(np.abs(picked.imag)) > tol:
        raise InvalidStateError("X entries carry a non-negligible imaginary part")
    d1, d2, d3, d4, c14, c23 = picked.real
    return XStateParams(d1, d2, d3, d4, c14, c23)


def bell_mixture(nu: float) -> XStateParams:
    """Convex mixture nu * phi+ plus (1 - nu) * psi+ in X-parameter form.

    At nu = 0 the state is (|00> + |11>)/sqrt(2), at nu = 1 it is
    (|01> + |10>)/sqrt(2); in between it stays an X state with diagonal
    ((1-nu)/2, nu/2, nu/2, (1-nu)/2) and coherences c14 = (1-nu)/2,
    c23 = nu/2.
    """
    if not 0.0 <= nu <= 1.0:
        raise InvalidStateError(f"mixing parameter nu must lie in [0, 1], got {nu}")
    w = (1.0 - nu) / 2.0
    v = nu / 2.0
    return XStateParams(w, v, v, w, c14=w, c23=v)


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, left factor first."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace(rho: np.ndarray, keep: tuple[int, ...]) -> np.ndarray:
    """Trace out all qubits not listed in `keep` (indices from the left).

    The kept qubits stay in their original relative order.
    """
    rho = np.asarray(rho, dtype=complex)
    n = rho.shape[0].bit_length() - 1
    if rho.shape != (2 ** n, 2 ** n):
        raise InvalidStateError(f"expected a 2^n x 2^n matrix, got shape {rho.shape}")
    keep = tuple(keep)
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:n])
    col = list(letters[n:2 * n])
    for q in range(n):
        if q not in keep:
            col[q] = row[q]
    out = "".join(row[q] for q in keep) + "".join(col[q] for q in keep)
    reduced = np.einsum("".join(row + col) + "->" + out, rho.reshape((2,) * (2 * n)))
    dim = 2 ** len(keep)
    return reduced.reshape(dim, dim)


def partial_trace_b(rho: np.ndarray) -> np.ndarray:
    """Reduced state of qubit A: (Tr_B rho)[m, n] = sum_k rho[2m+k, 2n+k]."""
    return partial_trace(rho, keep=(0,))


def random_x_state(seed: int) -> XStateParams:
    """Deterministic random X state, valid by construction.

    Diagonals come from a normalized positive 4-vector; each coherence is
    drawn uniformly inside the bound set by its 2x2 block, so the result
    always passes `validate`.
    """
    rng = np.random.default_rng(seed)
    raw = rng.random(4) + 1e-9
    d = raw / raw.sum()
    c14 = rng.uniform(-1.0, 1.0) * math.sqrt(d[0] * d[3])
    c23 = rng.uniform(-1.0, 1.0) * math.sqrt(d[1] * d[2])
    return XStateParams(float(d[0]), float(d[1]), float(d[2]), float(d[3]), float(c14), float(c23))
