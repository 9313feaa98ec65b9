"""Dense complex linear algebra for multi-qubit states and operators.

Qubit ordering convention used everywhere in this package: qubit 1 is the
LEFTMOST tensor factor, i.e. the most significant bit of a computational
basis index.  A register of n qubits lives in a 2**n dimensional space and
basis index ``i`` carries the bit string ``format(i, f"0{n}b")`` with
qubit 1 first.
"""

from __future__ import annotations

import numpy as np

# default tolerances: algebraic identities vs physics-level assertions
ATOL_ALGEBRA = 1e-12
ATOL_PHYSICS = 1e-10

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)

_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def dagger(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T


def n_qubits(dim: int) -> int:
    """Number of qubits for a Hilbert-space dimension that must be 2**n."""
    n = int(dim).bit_length() - 1
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with `a` as the left (more significant) factor."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def is_hermitian(m: np.ndarray, atol: float | None = None) -> bool:
    if atol is None:
        atol = ATOL_ALGEBRA
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and np.max(np.abs(m - m.conj().T)) <= atol


def _check_qubits(qubits, n, what="target"):
    qubits = [int(q) for q in qubits]
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"duplicate {what} qubits: {qubits}")
    for q in qubits:
        if not 1 <= q <= n:
            raise ValueError(f"{what} qubit {q} out of range 1..{n}")
    return qubits


def reorder_qubits(m: np.ndarray, order: list[int]) -> np.ndarray:
    """Reorder a 2**n matrix whose i-th slot currently holds qubit order[i].

    Returns the matrix with qubits in natural order 1..n.
    """
    n = len(order)
    t = np.asarray(m, dtype=complex).reshape((2,) * (2 * n))
    axes = [order.index(q) for q in range(1, n + 1)]
    axes = axes + [a + n for a in axes]
    return t.transpose(axes).reshape(2**n, 2**n)


def embed_gate(g: np.ndarray, targets, n: int) -> np.ndarray:
    """Embed a gate acting on `targets` (ordered, 1-based) into an n-qubit operator.

    The gate's own qubit ordering maps onto `targets` left to right; all
    other qubits get the identity.
    """
    g = np.asarray(g, dtype=complex)
    targets = _check_qubits(targets, n)
    k = len(targets)
    if g.shape != (2**k, 2**k):
        raise ValueError(f"gate dim {g.shape} does not match {k} target qubits")
    rest = [q for q in range(1, n + 1) if q not in targets]
    full = np.kron(g, np.eye(2 ** (n - k), dtype=complex))
    return reorder_qubits(full, list(targets) + rest)


def partial_trace(m: np.ndarray, keep) -> np.ndarray:
    """Trace out all qubits not listed in `keep` (1-based, order preserved)."""
    m = np.asarray(m, dtype=complex)
    n = n_qubits(m.shape[0])
    keep = _check_qubits(keep, n, what="keep")
    if not keep:
        return np.array([[np.trace(m)]], dtype=complex)
    pool = iter(_LETTERS)
    row, col = {}, {}
    for q in range(1, n + 1):
        if q in keep:
            row[q] = next(pool)
            col[q] = next(pool)
        else:
            row[q] = col[q] = next(pool)
    sub = (
        "".join(row[q] for q in range(1, n + 1))
        + "".join(col[q] for q in range(1, n + 1))
        + "->"
        + "".join(row[q] for q in keep)
        + "".join(col[q] for q in keep)
    )
    k = len(keep)
    return np.einsum(sub, m.reshape((2,) * (2 * n))).reshape(2**k, 2**k)


def partial_transpose(m: np.ndarray, subsystem) -> np.ndarray:
    """Transpose the listed qubits only; involutive."""
    m = np.asarray(m, dtype=complex)
    n = n_qubits(m.shape[0])
    subsystem = _check_qubits(subsystem, n, what="subsystem")
    t = m.reshape((2,) * (2 * n))
    axes = list(range(2 * n))
    for q in subsystem:
        axes[q - 1], axes[n + q - 1] = axes[n + q - 1], axes[q - 1]
    return t.transpose(axes).reshape(m.shape)


def max_schmidt_sq(psi: np.ndarray, bipartition) -> float:
    """Largest squared Schmidt coefficient of `psi` across the bipartition.

    `bipartition` lists the qubits of one side; the value is the squared
    largest singular value of psi reshaped across the cut, in (0, 1].
    """
    psi = np.asarray(psi, dtype=complex).ravel()
    n = n_qubits(psi.size)
    if abs(np.linalg.norm(psi) - 1.0) > ATOL_ALGEBRA:
        raise ValueError("state vector is not normalized")
    part = _check_qubits(bipartition, n, what="bipartition")
    if not part or len(part) >= n:
        raise ValueError("bipartition must be a nonempty proper subset of 1..n")
    rest = [q for q in range(1, n + 1) if q not in part]
    mat = (
        psi.reshape((2,) * n)
        .transpose([q - 1 for q in part] + [q - 1 for q in rest])
        .reshape(2 ** len(part), 2 ** len(rest))
    )
    s = np.linalg.svd(mat, compute_uv=False)
    return float(s[0] ** 2)


def min_eigenvalue_hermitian(m: np.ndarray) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    m = np.asarray(m, dtype=complex)
    if not is_hermitian(m, atol=ATOL_PHYSICS):
        raise ValueError("matrix is not Hermitian")
    return float(np.linalg.eigvalsh(m)[0])


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed random unitary via QR with phase correction."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    ph = np.diag(r).copy()
    ph /= np.abs(ph)
    return q * ph


def random_density_matrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Full-rank random density matrix (Wishart construction)."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real
