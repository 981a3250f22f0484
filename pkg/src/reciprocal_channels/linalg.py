"""Dense linear algebra, entropies and Haar sampling.

States and operators are plain complex ``numpy`` arrays. Validation helpers
(:func:`check_density_matrix`, :func:`check_probability_vector`) enforce the
numerical tolerances used throughout the package. All logarithms are base 2.
"""

import numpy as np

from .errors import DimensionError, InvalidDistributionError, InvalidStateError

#: Eigenvalues below this value are treated as exact zeros in entropies.
ZERO_EIG_TOL = 1e-12
#: Eigenvalues in [-NEG_EIG_TOL, 0) are floating-point noise, below it an error.
NEG_EIG_TOL = 1e-10
HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
NORM_TOL = 1e-12
PROB_CLAMP_TOL = 1e-12
PROB_SUM_TOL = 1e-10

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)


def as_square(a, name="matrix"):
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionError(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    return a


def hermitian_part(a):
    return (a + a.conj().T) / 2


def check_density_matrix(rho, atol=NEG_EIG_TOL):
    """Validate ``rho`` as a density matrix and return it as a complex array.

    Raises:
        InvalidStateError: if ``rho`` is not Hermitian, not unit-trace or has an
            eigenvalue below ``-atol``.
    """
    rho = as_square(rho, "density matrix")
    if np.max(np.abs(rho - rho.conj().T)) >= HERMITIAN_TOL:
        raise InvalidStateError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) >= TRACE_TOL:
        raise InvalidStateError(f"density matrix has trace {np.trace(rho).real:.3g}, expected 1")
    if np.linalg.eigvalsh(hermitian_part(rho))[0] < -atol:
        raise InvalidStateError("density matrix has a negative eigenvalue")
    return rho


def check_pure_state(psi):
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1 or psi.size < 1:
        raise InvalidStateError("pure state must be a non-empty vector")
    if abs(np.linalg.norm(psi) - 1) >= NORM_TOL:
        raise InvalidStateError("pure state is not normalized")
    return psi


def check_probability_vector(p):
    """Validate a probability vector; weights within 1e-12 of [0, 1] are clamped."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size < 1:
        raise InvalidDistributionError("probability vector must be a non-empty 1-D array")
    if not np.all(np.isfinite(p)):
        raise InvalidDistributionError("probability vector has non-finite entries")
    if np.any(p < -PROB_CLAMP_TOL) or np.any(p > 1 + PROB_CLAMP_TOL):
        raise InvalidDistributionError("probability weights must lie in [0, 1]")
    if abs(p.sum() - 1) >= PROB_SUM_TOL:
        raise InvalidDistributionError(f"probability weights sum to {p.sum():.12g}, expected 1")
    return np.clip(p, 0.0, 1.0)


def entropy_of_weights(w):
    w = w[w > ZERO_EIG_TOL]
    return float(-np.sum(w * np.log2(w))) + 0.0


def spectrum(h):
    """Eigenvalues (ascending) of the Hermitian part of ``h``."""
    return np.linalg.eigvalsh(hermitian_part(as_square(h)))


def entropy_of_spectrum(eigenvalues):
    """Von Neumann entropy from eigenvalues, after the noise clean-up rules."""
    ev = np.asarray(eigenvalues, dtype=float)
    if ev.size and ev.min() < -NEG_EIG_TOL:
        raise InvalidStateError(f"negative eigenvalue {ev.min():.3g} in entropy argument")
    return entropy_of_weights(np.clip(ev, 0.0, None))


def von_neumann_entropy(rho):
    """Von Neumann entropy ``-tr(rho log2 rho)`` in bits.

    >>> round(von_neumann_entropy(np.eye(2) / 2), 12)
    1.0
    """
    rho = as_square(rho, "density matrix")
    if np.max(np.abs(rho - rho.conj().T)) >= HERMITIAN_TOL:
        raise InvalidStateError("density matrix is not Hermitian")
    ev = np.linalg.eigvalsh(hermitian_part(rho))
    if abs(ev.sum() - 1) >= TRACE_TOL:
        raise InvalidStateError("density matrix does not have unit trace")
    return entropy_of_spectrum(ev)


def shannon_entropy(p):
    """Shannon entropy in bits, with 0 log 0 = 0."""
    return entropy_of_weights(check_probability_vector(p))


def trace_norm(a):
    """Schatten-1 norm: the sum of singular values."""
    return float(np.linalg.svd(as_square(a), compute_uv=False).sum())


def tensor(*ops):
    """Kronecker product, first factor outermost."""
    if not ops:
        raise DimensionError("tensor needs at least one operand")
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def partial_trace(x, dA, dB, keep="A"):
    """Trace out one factor of an operator on C^dA (x) C^dB.

    Args:
        x: operator of dimension ``dA * dB``.
        dA, dB: subsystem dimensions, ``A`` is the outer index.
        keep: ``"A"`` or ``"B"``, the subsystem that survives.
    """
    x = as_square(x)
    if x.shape[0] != dA * dB:
        raise DimensionError(f"operator dimension {x.shape[0]} != {dA}*{dB}")
    x4 = x.reshape(dA, dB, dA, dB)
    if keep == "A":
        return np.einsum("ikjk->ij", x4)
    if keep == "B":
        return np.einsum("kikj->ij", x4)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def ket_to_dm(psi):
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def as_generator(seed):
    """Turn an int / SeedSequence / Generator / None into a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _complex_gaussian(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def haar_random_pure(d, seed=None):
    """Haar-distributed pure state: a normalized complex Gaussian vector."""
    return haar_random_pure_batch(d, 1, seed)[0]


def haar_random_pure_batch(d, n, seed=None):
    """``n`` independent Haar pure states, one per row."""
    if d < 2:
        raise DimensionError("Haar sampling needs d >= 2")
    z = _complex_gaussian(as_generator(seed), (n, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def haar_random_unitary(d, seed=None):
    """Haar unitary from the QR decomposition of a Ginibre matrix."""
    return haar_random_unitary_batch(d, 1, seed)[0]


def haar_random_unitary_batch(d, n, seed=None):
    if d < 2:
        raise DimensionError("Haar sampling needs d >= 2")
    z = _complex_gaussian(as_generator(seed), (n, d, d))
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r, axis1=1, axis2=2)
    # fix the phase freedom of QR so the distribution is exactly Haar
    return q * (diag / np.abs(diag))[:, None, :]


def random_density_matrix(d, seed=None, rank=None):
    """Random mixed state ``G G^dag / tr`` from a d x rank Ginibre matrix."""
    g = _complex_gaussian(as_generator(seed), (d, rank or d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def bloch_to_density(r):
    """Qubit state (1 + r.sigma)/2 for a Bloch vector with |r| <= 1."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise DimensionError("Bloch vector must have 3 components")
    norm = np.linalg.norm(r)
    if norm > 1 + NORM_TOL:
        raise InvalidStateError(f"Bloch vector has length {norm:.6g} > 1")
    if norm > 1:
        r = r / norm
    return (np.eye(2, dtype=complex) + sum(c * s for c, s in zip(r, PAULIS))) / 2


def density_to_bloch(rho):
    rho = as_square(rho)
    if rho.shape != (2, 2):
        raise DimensionError("Bloch vectors are defined for qubits only")
    return np.array([np.trace(rho @ s).real for s in PAULIS])
