"""Single-experiment-detectable form of a witness.

The witness is rewritten as a0 + U^dag (sum_k a_k Z_k) U with U = V'^dag V^dag,
so that one simultaneous ensemble readout of the single-qubit polarizations
z_k recovers the conventional witness value, provided the state after the
disentangling step V^dag is diagonal.  V' is built by induction from an
explicit 4x4 solution:

    V'_{n+1} = U_bd * U_p * (I (x) V'_n)

where U_p swaps the first and last qubits and U_bd = diag(I, H, ..., H).
Coefficients halve at each induction step and the new leading coefficient
is -1/2, giving the closed forms b = -2**-n, a_1 = a_2 = 3 * 2**-(n+1) and
a_k = -2**(k-n-1) for k >= 3.

Coefficient/slot pairing: a_k multiplies Z on tensor slot n-k+1 counted
from the left, so a_1 sits on the last qubit and a_n on the first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensor import H, I2, SWAP, Z, dagger, embed_gate, haar_unitary
from .witness import Witness

DIAGONAL_ATOL = 1e-10  # audit threshold for the diagonal-rho_out precondition


def vprime2() -> tuple[np.ndarray, float, np.ndarray]:
    """The explicit two-qubit solution (V'_2, b, (a_1, a_2))."""
    w = np.exp(2j * np.pi / 3)
    s = 1 / np.sqrt(3.0)
    v = np.array(
        [
            [0, 0, 0, 1],
            [s, s, s, 0],
            [s * w, s * w.conjugate(), s, 0],
            [s * w.conjugate(), s * w, s, 0],
        ],
        dtype=complex,
    )
    return v, -0.25, np.array([3 / 8, 3 / 8])


def permutation_up(n_plus_1: int) -> np.ndarray:
    """SWAP between the first and last qubit of an (n+1)-qubit register."""
    if n_plus_1 < 2:
        raise ValueError("permutation needs at least 2 qubits")
    return embed_gate(SWAP, [1, n_plus_1], n_plus_1)


def blockdiag_ubd(n_plus_1: int) -> np.ndarray:
    """Block-diagonal unitary diag(I, H, ..., H); self-inverse."""
    if n_plus_1 < 2:
        raise ValueError("block-diagonal unitary needs at least 2 qubits")
    dim = 2**n_plus_1
    out = np.zeros((dim, dim), dtype=complex)
    out[0:2, 0:2] = I2
    for blk in range(1, dim // 2):
        out[2 * blk : 2 * blk + 2, 2 * blk : 2 * blk + 2] = H
    return out


@dataclass(frozen=True, eq=False)
class SedDecomposition:
    """V'_n with its coefficients; c is attached from the associated witness."""

    n: int
    vprime: np.ndarray
    b: float
    a: np.ndarray  # a[k-1] = a_k
    c: float | None = None

    @property
    def a0(self) -> float:
        if self.c is None:
            raise ValueError("no witness constant attached; use sed_decomposition()")
        return self.c + self.b


@dataclass(frozen=True, eq=False)
class SedMeasurementResult:
    z: np.ndarray  # z[k-1] = Tr(U rho U^dag Z on slot n-k+1)
    value: float
    diagonal_ok: bool


def build_vprime(n: int) -> SedDecomposition:
    """Inductive construction of V'_n and its coefficients (no witness attached)."""
    if n < 2:
        raise ValueError("SED decomposition needs n >= 2")
    v, b, a = vprime2()
    a = list(a)
    for m in range(3, n + 1):
        v = blockdiag_ubd(m) @ permutation_up(m) @ np.kron(I2, v)
        b = b / 2
        a = [x / 2 for x in a] + [-0.5]
    return SedDecomposition(n, v, b, np.array(a))


def sed_decomposition(w: Witness) -> SedDecomposition:
    core = build_vprime(w.n)
    return SedDecomposition(core.n, core.vprime, core.b, core.a, c=w.c)


def weighted_z_sum(n: int, b: float, a: np.ndarray) -> np.ndarray:
    """b * identity + sum_k a_k Z placed on tensor slot n-k+1."""
    out = b * np.eye(2**n, dtype=complex)
    for k in range(1, n + 1):
        out += a[k - 1] * embed_gate(Z, [n - k + 1], n)
    return out


def conjugated_observable(dec: SedDecomposition) -> np.ndarray:
    """V' (b + sum_k a_k Z_k) V'^dag; diagonal should be (-1, 0, ..., 0)."""
    return dec.vprime @ weighted_z_sum(dec.n, dec.b, dec.a) @ dagger(dec.vprime)


def sed_measure(rho_in: np.ndarray, v_entangler: np.ndarray, dec: SedDecomposition) -> SedMeasurementResult:
    """Simulate the single-run readout: apply U = V'^dag V^dag, read all z_k.

    diagonal_ok audits the precondition that V^dag rho_in V is diagonal;
    the value is reported either way but equals the conventional witness
    expectation only when the audit passes.
    """
    rho_in = np.asarray(rho_in, dtype=complex)
    n = dec.n
    dim = 2**n
    if rho_in.shape != (dim, dim) or v_entangler.shape != (dim, dim):
        raise ValueError("dimension mismatch between state, entangler and decomposition")
    rho_out = dagger(v_entangler) @ rho_in @ v_entangler
    off = rho_out - np.diag(np.diag(rho_out))
    diagonal_ok = bool(np.max(np.abs(off)) <= DIAGONAL_ATOL)
    sigma = dagger(dec.vprime) @ rho_out @ dec.vprime
    z = np.empty(n)
    for k in range(1, n + 1):
        z[k - 1] = np.trace(sigma @ embed_gate(Z, [n - k + 1], n)).real
    value = dec.a0 + float(np.dot(dec.a, z))
    return SedMeasurementResult(z, value, diagonal_ok)


def verify_equality(n: int, trials: int = 100, seed: int = 0) -> dict:
    """Check the readout against the direct witness trace on random states.

    Each trial draws a random diagonal rho_out (symmetric Dirichlet) and a
    Haar-random entangler V, sets rho_in = V rho_out V^dag, and compares the
    SED readout with Tr(W_conv rho_in).  The witness constant cancels in the
    comparison; a fixed c = 1/2 is used.
    """
    if n < 2:
        raise ValueError("verify_equality needs n >= 2")
    rng = np.random.default_rng(seed)
    c = 0.5
    core = build_vprime(n)
    dec = SedDecomposition(core.n, core.vprime, core.b, core.a, c=c)
    dim = 2**n
    zero_proj = np.zeros((dim, dim), dtype=complex)
    zero_proj[0, 0] = 1.0
    max_dev = 0.0
    for _ in range(trials):
        diag = rng.dirichlet(np.ones(dim))
        v = haar_unitary(dim, rng)
        rho_in = v @ np.diag(diag).astype(complex) @ dagger(v)
        conv = c - np.trace((v @ zero_proj @ dagger(v)) @ rho_in).real
        res = sed_measure(rho_in, v, dec)
        max_dev = max(max_dev, abs(res.value - conv))
        if not res.diagonal_ok:
            raise AssertionError("rho_out unexpectedly non-diagonal in verify_equality")
    return {
        "n": n,
        "trials": trials,
        "seed": seed,
        "max_deviation": max_dev,
        "tolerance": 1e-10,
        "passed": bool(max_dev <= 1e-10),
    }
