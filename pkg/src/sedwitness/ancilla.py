"""Assumption-free witness readout through one uninitialized ancilla qubit.

The ancilla starts in the thermal state p|0><0| + (1-p)|1><1| and is joined
to the register as the leftmost qubit.  After the disentangling step V^dag,
a CnNOT flips the ancilla exactly when the register is in |0...0> (all
controls are zero-conditional), so the ancilla polarization encodes
P(0...0) and

    Tr(rho W) = c - 1/2 + Tr(rho_a_out Z) / (2 (2p - 1)).

No diagonality condition on V^dag rho V is required.  Readout is modeled as
a nondestructive ensemble average: Tr(rho Z_ancilla) with no state update.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .tensor import X, Z, dagger, kron, partial_trace

ILL_CONDITIONED_P = 1e-6  # guard: 1/(2p-1) amplification stays below 5e5


@dataclass(frozen=True)
class AncillaConfig:
    p: float
    n: int

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p {self.p} out of [0, 1]")
        if abs(2 * self.p - 1) <= ILL_CONDITIONED_P:
            raise ValueError("ancilla polarization too close to 1/2; readout ill-conditioned")
        if self.n < 1:
            raise ValueError("register needs at least one qubit")


@dataclass(frozen=True, eq=False)
class Stage:
    v: np.ndarray
    c: float
    label: str = ""


@dataclass(frozen=True, eq=False)
class ConcatSpec:
    stages: tuple[Stage, ...]

    def __post_init__(self):
        if not self.stages:
            raise ValueError("need at least one stage")
        dim = self.stages[0].v.shape[0]
        for s in self.stages:
            v = np.asarray(s.v, dtype=complex)
            if v.shape != (dim, dim):
                raise ValueError("all stage entanglers must share the register dimension")
            if np.max(np.abs(v @ dagger(v) - np.eye(dim))) > 1e-12:
                raise ValueError(f"stage {s.label!r} entangler is not unitary")


@lru_cache(maxsize=None)
def _flip_on_all_zero(n: int) -> np.ndarray:
    """CnNOT on n+1 qubits: ancilla (qubit 1) flips iff register = |0...0>."""
    dim = 2**n
    proj0 = np.zeros((dim, dim), dtype=complex)
    proj0[0, 0] = 1.0
    return kron(X, proj0) + kron(np.eye(2, dtype=complex), np.eye(dim) - proj0)


def _ancilla_matrix(p: float) -> np.ndarray:
    return np.diag([p, 1 - p]).astype(complex)


def _readout_z(joint: np.ndarray) -> float:
    rho_a = partial_trace(joint, [1])
    return float(np.trace(rho_a @ Z).real)


def ancilla_readout(rho_in: np.ndarray, v: np.ndarray, c: float, cfg: AncillaConfig) -> float:
    """Witness value Tr(rho (c*1 - V|0..0><0..0|V^dag)) from one ancilla polarization."""
    rho_in = np.asarray(rho_in, dtype=complex)
    dim = 2**cfg.n
    if rho_in.shape != (dim, dim) or v.shape != (dim, dim):
        raise ValueError("dimension mismatch with ancilla configuration")
    sigma = dagger(v) @ rho_in @ v
    joint = kron(_ancilla_matrix(cfg.p), sigma)
    cn = _flip_on_all_zero(cfg.n)
    joint = cn @ joint @ dagger(cn)
    trz = _readout_z(joint)
    return c - 0.5 + trz / (2 * (2 * cfg.p - 1))


def intermediate_identities(rho_in: np.ndarray, v: np.ndarray, cfg: AncillaConfig) -> dict:
    """Return P(0...0) and Tr(rho_a_out Z) and check the two readout identities."""
    rho_in = np.asarray(rho_in, dtype=complex)
    sigma = dagger(v) @ rho_in @ v
    p_tilde = float(sigma[0, 0].real)
    joint = kron(_ancilla_matrix(cfg.p), sigma)
    cn = _flip_on_all_zero(cfg.n)
    joint = cn @ joint @ dagger(cn)
    trz = _readout_z(joint)
    residual_trz = abs(trz - (1 - 2 * cfg.p) * (2 * p_tilde - 1))
    residual_ptilde = abs(p_tilde - (0.5 - trz / (2 * (2 * cfg.p - 1))))
    if residual_trz > 1e-12 or residual_ptilde > 1e-12:
        raise AssertionError(
            f"readout identities violated: {residual_trz:.3e}, {residual_ptilde:.3e}"
        )
    return {
        "p": cfg.p,
        "n": cfg.n,
        "p_tilde": p_tilde,
        "tr_ancilla_z": trz,
        "residual_trz": residual_trz,
        "residual_ptilde": residual_ptilde,
    }


def run_concatenated(rho_in: np.ndarray, spec: ConcatSpec, cfg: AncillaConfig) -> list[float]:
    """Read several witnesses in one run: per stage disentangle, flip, read,
    then un-compute before the next stage."""
    rho_in = np.asarray(rho_in, dtype=complex)
    dim = 2**cfg.n
    if rho_in.shape != (dim, dim) or spec.stages[0].v.shape != (dim, dim):
        raise ValueError("dimension mismatch with ancilla configuration")
    eye_a = np.eye(2, dtype=complex)
    cn = _flip_on_all_zero(cfg.n)
    joint = kron(_ancilla_matrix(cfg.p), rho_in)
    values = []
    for stage in spec.stages:
        vfull = kron(eye_a, stage.v)
        joint = dagger(vfull) @ joint @ vfull
        joint = cn @ joint @ dagger(cn)
        trz = _readout_z(joint)
        values.append(stage.c - 0.5 + trz / (2 * (2 * cfg.p - 1)))
        joint = dagger(cn) @ joint @ cn
        joint = vfull @ joint @ dagger(vfull)
    return values
