"""Numerical oracles that check the closed forms independently.

Nothing here uses a capacity formula: mutual information is maximized
directly, output entropy is minimized over pure states, and fidelities and
twirls are Monte-Carlo averages over Haar samples. Stochastic routines take a
seed and split it per batch with :class:`numpy.random.SeedSequence`, so a
given ``(seed, N, restarts)`` always produces the same result.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import kernels
from .channels import (
    ChannelRep,
    apply,
    apply_extended,
    kraus_from_choi,
    max_entangled,
    require_channel,
)
from .linalg import (
    ZERO_EIG_TOL,
    check_density_matrix,
    entropy_of_spectrum,
    haar_random_pure_batch,
    haar_random_unitary,
    haar_random_unitary_batch,
    hermitian_part,
)

MC_BATCH = 10_000


@dataclass
class OptimizationResult:
    optimum_value: float
    optimizer_state: np.ndarray
    iterations: int
    converged: bool
    restarts_used: int


def _seed_sequence(seed):
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(seed)


def _entropy(h):
    return entropy_of_spectrum(np.linalg.eigvalsh(hermitian_part(h)))


def _mutual_information(rho, channel):
    nu, vecs = np.linalg.eigh(hermitian_part(rho))
    keep = nu > ZERO_EIG_TOL
    nu, vecs = nu[keep], vecs[:, keep]
    rank = nu.size
    # purification sum_k sqrt(nu_k) |k>_A |v_k>_S, ancilla of dimension rank(rho)
    psi = (vecs * np.sqrt(nu)).T.reshape(rank * channel.d_in)
    joint = apply_extended(channel, np.outer(psi, psi.conj()), rank)
    return entropy_of_spectrum(nu) + _entropy(apply(channel, rho)) - _entropy(joint)


def mutual_information(rho, channel):
    """Quantum mutual information ``S(rho) + S(Phi(rho)) - S((Id (x) Phi)(psi_rho))``."""
    require_channel(channel)
    rho = check_density_matrix(rho)
    return _mutual_information(rho, channel)


def _factor_to_state(params, d):
    """Lower-triangular factor with real diagonal -> normalized L L^dag."""
    low = np.zeros((d, d), dtype=complex)
    low[np.diag_indices(d)] = params[:d]
    rows, cols = np.tril_indices(d, -1)
    m = rows.size
    low[rows, cols] = params[d:d + m] + 1j * params[d + m:]
    rho = low @ low.conj().T
    tr = np.trace(rho).real
    if tr <= 1e-300:
        return np.eye(d, dtype=complex) / d
    return rho / tr


def _state_to_factor(rho, d):
    low = np.linalg.cholesky(hermitian_part(rho) + 1e-14 * np.eye(d))
    rows, cols = np.tril_indices(d, -1)
    entries = low[rows, cols]
    return np.concatenate([np.diag(low).real, entries.real, entries.imag])


def _random_start(d, rng):
    u = haar_random_unitary(d, rng)
    w = rng.dirichlet(np.ones(d))
    return u @ np.diag(w) @ u.conj().T


def maximize_mutual_information(
    channel, tol=1e-8, restarts=3, seed=0, max_rounds=30, start_maximally_mixed=True
):
    """Maximize ``I(rho, Phi)`` over input states.

    Nelder-Mead runs on the entries of a triangular factor ``L`` with
    ``rho = L L^dag / tr(L L^dag)``. Starts: the maximally mixed state plus
    ``restarts`` states with a Haar-random eigenbasis and a flat-Dirichlet
    spectrum. Each start re-launches the simplex from its current best point
    until a round improves the value by less than ``tol``.

    ``start_maximally_mixed=False`` drops the 1/d start, which is useful to
    check that the random starts reach the optimum on their own.
    """
    require_channel(channel)
    if tol <= 0 or restarts < 1:
        raise ValueError("tol must be positive and restarts >= 1")
    d = channel.d_in
    children = _seed_sequence(seed).spawn(restarts)
    starts = [np.eye(d, dtype=complex) / d] if start_maximally_mixed else []
    starts += [_random_start(d, np.random.default_rng(c)) for c in children]

    def objective(x):
        return -_mutual_information(_factor_to_state(x, d), channel)

    best = None
    total_iters = 0
    all_converged = True
    for rho0 in starts:
        x = _state_to_factor(rho0, d)
        value = objective(x)
        converged = False
        for _ in range(max_rounds):
            res = minimize(
                objective,
                x,
                method="Nelder-Mead",
                options={"xatol": 1e-10, "fatol": tol * 1e-2, "maxiter": 400 * x.size, "adaptive": True},
            )
            total_iters += int(res.nit)
            improvement = value - res.fun
            if res.fun < value:
                x, value = res.x, res.fun
            if improvement < tol:
                converged = True
                break
        all_converged &= converged
        if best is None or -value > best[0]:
            best = (-value, _factor_to_state(x, d))
    return OptimizationResult(best[0], best[1], total_iters, all_converged, len(starts))


def _output_entropy_and_gradient(psi, kraus):
    sigma = sum(m @ np.outer(psi, psi.conj()) @ m.conj().T for m in kraus)
    vals, vecs = np.linalg.eigh(hermitian_part(sigma))
    clipped = np.clip(vals, 0.0, None)
    value = entropy_of_spectrum(clipped)
    logs = np.log2(np.maximum(clipped, 1e-300)) + 1 / math.log(2)
    g_op = -(vecs * logs) @ vecs.conj().T
    grad = 2 * sum(m.conj().T @ g_op @ m @ psi for m in kraus)
    return value, grad


def min_output_entropy(channel, tol=1e-8, restarts=3, seed=0, max_iter=5000):
    """Minimize ``S(Phi(|psi><psi|))`` over pure states.

    Riemannian gradient descent on the unit sphere with Armijo backtracking,
    from ``restarts`` Haar-random starting vectors. Concavity of the entropy
    makes pure inputs sufficient.
    """
    require_channel(channel)
    if tol <= 0 or restarts < 1:
        raise ValueError("tol must be positive and restarts >= 1")
    kraus = kraus_from_choi(channel)
    d = channel.d_in
    starts = haar_random_pure_batch(d, restarts, np.random.default_rng(_seed_sequence(seed)))

    best = None
    total_iters = 0
    all_converged = True
    for psi in starts:
        value, grad = _output_entropy_and_gradient(psi, kraus)
        step = 1.0
        converged = False
        for _ in range(max_iter):
            total_iters += 1
            tangent = grad - np.vdot(psi, grad).real * psi
            slope = np.vdot(tangent, tangent).real
            if slope < 1e-28:
                converged = True
                break
            step = min(step * 2, 1.0)
            while step > 1e-14:
                trial = psi - step * tangent
                trial /= np.linalg.norm(trial)
                t_value, t_grad = _output_entropy_and_gradient(trial, kraus)
                if t_value <= value - 1e-4 * step * slope:
                    break
                step /= 2
            else:
                converged = True
                break
            improvement = value - t_value
            psi, value, grad = trial, t_value, t_grad
            if improvement < tol * 1e-4:
                converged = True
                break
        all_converged &= converged
        if best is None or value < best[0]:
            best = (value, psi)
    state = np.outer(best[1], best[1].conj())
    return OptimizationResult(best[0], state, total_iters, all_converged, restarts)


def sample_fidelities(channel, n, seed=0):
    """Per-sample fidelities on ``n`` Haar-random pure inputs."""
    require_channel(channel)
    d = channel.dim
    choi = np.ascontiguousarray(channel.choi, dtype=np.complex128)
    sizes = [MC_BATCH] * (n // MC_BATCH) + ([n % MC_BATCH] if n % MC_BATCH else [])
    children = _seed_sequence(seed).spawn(len(sizes))
    out = [
        kernels.pure_state_fidelities(choi, np.ascontiguousarray(haar_random_pure_batch(d, size, np.random.default_rng(c))))
        for size, c in zip(sizes, children)
    ]
    return np.concatenate(out)


def mc_average_fidelity(channel, n=100_000, seed=0):
    """Monte-Carlo Haar average of the pure-state fidelity: ``(mean, stderr)``."""
    if n < 1000:
        raise ValueError("Monte-Carlo averages need n >= 1000")
    f = sample_fidelities(channel, n, seed)
    return float(f.mean()), float(f.std(ddof=1) / math.sqrt(n))


def twirl_channel_mc(channel, n=100_000, seed=0):
    """Monte-Carlo estimate of ``int dU U^dag Phi(U . U^dag) U``."""
    require_channel(channel)
    if n < 1000:
        raise ValueError("Monte-Carlo averages need n >= 1000")
    d = channel.dim
    choi = np.ascontiguousarray(channel.choi, dtype=np.complex128)
    sizes = [MC_BATCH] * (n // MC_BATCH) + ([n % MC_BATCH] if n % MC_BATCH else [])
    children = _seed_sequence(seed).spawn(len(sizes))
    total = np.zeros_like(choi)
    for size, c in zip(sizes, children):
        us = np.ascontiguousarray(haar_random_unitary_batch(d, size, np.random.default_rng(c)))
        total += kernels.twirl_choi_sum(choi, us)
    return ChannelRep(total / n, d, d, f"twirl({channel.name})")


def dc_parameter_estimate(channel):
    """Affine coordinate of the closest DC: ``(d^2 <Omega|J|Omega> - 1)/(d^2 - 1)``."""
    d = channel.dim
    omega = max_entangled(d)
    overlap = np.vdot(omega, channel.choi @ omega).real
    return float((d * d * overlap - 1) / (d * d - 1))
