"""Reference states: computational basis, GHZ, W, pseudopure and thermal mixtures."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensor import ATOL_ALGEBRA


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized n-qubit state vector."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        if amps.size != 2**self.n:
            raise ValueError(f"expected {2**self.n} amplitudes, got {amps.size}")
        if abs(np.linalg.norm(amps) - 1.0) > ATOL_ALGEBRA:
            raise ValueError("amplitudes are not normalized")
        object.__setattr__(self, "amplitudes", amps)

    def density(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True, eq=False)
class PseudopureState:
    """Mixture (1-eps) * identity/2**n + eps * |core><core|."""

    n: int
    epsilon: float
    core: PureState

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon {self.epsilon} out of [0, 1]")
        if self.core.n != self.n:
            raise ValueError("core state qubit count mismatch")


@dataclass(frozen=True)
class ThermalProductState:
    """[p|0><0| + (1-p)|1><1|]^(tensor n), a diagonal product state."""

    n: int
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p {self.p} out of [0, 1]")


def basis_state(n: int, index: int = 0) -> PureState:
    amps = np.zeros(2**n, dtype=complex)
    amps[index] = 1.0
    return PureState(n, amps)


def make_ghz(n: int) -> PureState:
    """(|0...0> + |1...1>) / sqrt(2)."""
    if n < 2:
        raise ValueError("GHZ state needs n >= 2")
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = amps[-1] = 1 / np.sqrt(2.0)
    return PureState(n, amps)


def make_w(n: int) -> PureState:
    """Equal superposition of all single-excitation basis states."""
    if n < 2:
        raise ValueError("W state needs n >= 2")
    amps = np.zeros(2**n, dtype=complex)
    for k in range(n):
        amps[2**k] = 1 / np.sqrt(n)
    return PureState(n, amps)


def pseudopure_matrix(s: PseudopureState) -> np.ndarray:
    dim = 2**s.n
    return (1 - s.epsilon) * np.eye(dim, dtype=complex) / dim + s.epsilon * s.core.density()


def thermal_matrix(t: ThermalProductState) -> np.ndarray:
    diag = np.array([1.0])
    for _ in range(t.n):
        diag = np.kron(diag, np.array([t.p, 1 - t.p]))
    return np.diag(diag).astype(complex)
