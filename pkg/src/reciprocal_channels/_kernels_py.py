"""Pure-numpy reference versions of the Monte-Carlo kernels."""

import numpy as np


def pure_state_fidelities(choi, states):
    """Fidelities <psi|Phi(|psi><psi|)|psi> for each row of ``states``.

    With the normalized Choi matrix J of Phi the fidelity equals
    ``d <conj(psi) psi| J |conj(psi) psi>``.
    """
    states = np.asarray(states, dtype=complex)
    n, d = states.shape
    if choi.shape != (d * d, d * d):
        raise ValueError("choi matrix does not match state dimension")
    vec = (states.conj()[:, :, None] * states[:, None, :]).reshape(n, d * d)
    return d * np.einsum("na,ab,nb->n", vec.conj(), choi, vec).real


def twirl_choi_sum(choi, unitaries):
    """Sum over U of (U^T (x) U^dag) J (conj(U) (x) U)."""
    unitaries = np.asarray(unitaries, dtype=complex)
    n, d, _ = unitaries.shape
    if choi.shape != (d * d, d * d):
        raise ValueError("choi matrix does not match unitary dimension")
    kmat = np.einsum("nia,nkb->nabik", unitaries, unitaries.conj()).reshape(n, d * d, d * d)
    return (kmat @ choi @ kmat.conj().transpose(0, 2, 1)).sum(axis=0)
