"""Probabilistic gate-noise superoperator and the (p, h) sweep.

Each gate succeeds with probability p_s = h**k, where k is the number of
qubits the gate touches (controls included); on failure the touched block
is replaced by the maximally mixed state:

    E(rho) = p_s U rho U^dag + (1 - p_s) Tr_t(rho) (x) 1/2**len(t)

with the mixed factor re-embedded at the gate's qubit positions.  The sweep
prepares a thermal product state, runs the noisy entangler, then compares
the conventional witness (noiseless direct trace) with the single-run
readout whose measurement circuit (disentangler followed by the expanded
V'^dag circuit) is itself noisy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import (
    Circuit,
    Gate,
    circuit_unitary,
    dagger_circuit,
    expand_multicontrolled,
    gate_matrix,
    ghz_entangler,
    vprime_dagger_circuit,
    w_entangler,
)
from .sed import SedDecomposition, build_vprime
from .states import PureState, ThermalProductState, thermal_matrix
from .tensor import Z, dagger, embed_gate, kron, n_qubits, partial_trace, reorder_qubits
from .witness import GHZ_CLASS_C, W_CLASS_C, biseparable_c


@dataclass(frozen=True)
class NoiseModel:
    h: float

    def __post_init__(self):
        if not 0.0 <= self.h <= 1.0:
            raise ValueError(f"h {self.h} out of [0, 1]")

    def p_success(self, gate: Gate) -> float:
        return self.h ** len(gate.qubits())


@dataclass(frozen=True)
class SweepRecord:
    p: float
    h: float
    value_conv: float
    value_sed: float
    value_ancilla: float | None = None


def apply_noisy_gate(rho: np.ndarray, g: Gate, model: NoiseModel) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    n = n_qubits(rho.shape[0])
    touched = sorted(g.qubits())
    if touched and touched[-1] > n:
        raise ValueError("gate does not fit the state dimension")
    u = gate_matrix(g, n)
    ps = model.p_success(g)
    ideal = u @ rho @ dagger(u)
    if ps == 1.0:
        return ideal
    keep = [q for q in range(1, n + 1) if q not in touched]
    mixed = kron(partial_trace(rho, keep), np.eye(2 ** len(touched), dtype=complex) / 2 ** len(touched))
    mixed = reorder_qubits(mixed, keep + touched)
    return ps * ideal + (1 - ps) * mixed


def simulate_noisy(c: Circuit, rho0: np.ndarray, model: NoiseModel) -> np.ndarray:
    rho = np.asarray(rho0, dtype=complex)
    if rho.shape[0] != 2**c.n:
        raise ValueError("state dimension does not match circuit register")
    for g in c.gates:
        rho = apply_noisy_gate(rho, g, model)
    return rho


def _witness_setup(n: int, witness_kind: str) -> tuple[Circuit, float]:
    """Entangler circuit and witness constant for the sweep."""
    kind = witness_kind.lower()
    if kind == "ghz":
        entangler = ghz_entangler(n)
        c = GHZ_CLASS_C if n == 3 else 0.5
    elif kind == "w":
        entangler = w_entangler(n)
        c = W_CLASS_C if n == 3 else biseparable_c(PureState(n, circuit_unitary(entangler)[:, 0]))
    else:
        raise ValueError(f"unknown witness kind {witness_kind!r}")
    return entangler, c


def sed_readout_value(rho: np.ndarray, measurement: Circuit, dec: SedDecomposition, model: NoiseModel) -> float:
    """Noisy measurement circuit followed by noiseless Z readouts."""
    n = dec.n
    rho_f = simulate_noisy(measurement, rho, model)
    value = dec.a0
    for k in range(1, n + 1):
        zk = embed_gate(Z, [n - k + 1], n)
        value += dec.a[k - 1] * np.trace(rho_f @ zk).real
    return float(value)


def sweep(
    n: int,
    grid_p,
    grid_h,
    witness_kind: str = "ghz",
    seed: int = 0,
    entangler_mode: str = "witness",
) -> list[SweepRecord]:
    """Noise sweep over the (p, h) grid, p-major order.

    entangler_mode "witness" prepares the witness target through the noisy
    entangler; "identity" skips preparation (the register stays in the
    separable thermal state) while the measurement circuit is unchanged.
    The superoperator is deterministic; `seed` is recorded for any future
    randomized decompositions.
    """
    del seed  # deterministic pipeline
    grid_p = [float(p) for p in grid_p]
    grid_h = [float(h) for h in grid_h]
    if any(not 0 <= v <= 1 for v in grid_p + grid_h):
        raise ValueError("grid values must lie in [0, 1]")
    entangler, c = _witness_setup(n, witness_kind)
    core = build_vprime(n)
    dec = SedDecomposition(core.n, core.vprime, core.b, core.a, c=c)
    v = circuit_unitary(entangler)
    psi_in = v[:, 0]
    w_conv = c * np.eye(2**n, dtype=complex) - np.outer(psi_in, psi_in.conj())
    prep = entangler if entangler_mode == "witness" else Circuit(n, ())
    if entangler_mode not in ("witness", "identity"):
        raise ValueError(f"unknown entangler mode {entangler_mode!r}")
    measurement = dagger_circuit(entangler).then(expand_multicontrolled(vprime_dagger_circuit(n)))
    records = []
    for p in grid_p:
        rho0 = thermal_matrix(ThermalProductState(n, p))
        for h in grid_h:
            model = NoiseModel(h)
            rho_prep = simulate_noisy(prep, rho0, model)
            value_conv = float(np.trace(w_conv @ rho_prep).real)
            value_sed = sed_readout_value(rho_prep, measurement, dec, model)
            records.append(SweepRecord(p, h, value_conv, value_sed))
    return records


def sweep_csv(records: list[SweepRecord]) -> str:
    lines = ["p,h,value_conv,value_sed"]
    for r in records:
        lines.append(f"{r.p:.12g},{r.h:.12g},{r.value_conv:.12g},{r.value_sed:.12g}")
    return "\n".join(lines) + "\n"


def grid_values(lo: float, hi: float, step: float) -> list[float]:
    """Inclusive grid with exact endpoints."""
    if step <= 0 or hi < lo:
        raise ValueError("need step > 0 and hi >= lo")
    count = int(round((hi - lo) / step)) + 1
    return [float(v) for v in np.linspace(lo, hi, count)]


def zero_crossing_h(records: list[SweepRecord], p: float, field: str = "value_sed") -> float | None:
    """Smallest h of the contiguous negative run ending at the largest h.

    Returns None when the value at the largest grid h is non-negative.
    """
    row = sorted((r for r in records if abs(r.p - p) < 1e-12), key=lambda r: -r.h)
    crossing = None
    for r in row:
        if getattr(r, field) < 0:
            crossing = r.h
        else:
            break
    return crossing
