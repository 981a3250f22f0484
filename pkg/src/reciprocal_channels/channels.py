"""Channel construction and manipulation in the Choi representation.

Every linear map is stored as its normalized Choi matrix
``J = (Id (x) Phi)|Omega><Omega|`` with ``|Omega> = sum_i |ii> / sqrt(d)``.
The first tensor factor is the reference copy of the input, the second is the
output. Maps that are not completely positive (the inversion map, mixers with
a parameter outside their CP interval) are representable; they carry
``is_cp = False``.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CPViolationError,
    DimensionError,
    InvalidDistributionError,
    NotAChannelError,
)
from .linalg import as_square, check_probability_vector, partial_trace, tensor

CP_TOL = 1e-9
TP_TOL = 1e-9
KRAUS_TOL = 1e-10
PARAM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ChannelRep:
    """A linear map on operators, held as its normalized Choi matrix.

    The CP and TP flags are computed once at construction, so instances are
    immutable and safe to share between threads.
    """

    choi: np.ndarray
    d_in: int
    d_out: int
    name: str = ""
    is_cp: bool = field(init=False)
    is_tp: bool = field(init=False)
    min_choi_eigenvalue: float = field(init=False)

    def __post_init__(self):
        choi = np.array(self.choi, dtype=complex)
        n = self.d_in * self.d_out
        if choi.shape != (n, n):
            raise DimensionError(f"Choi matrix must be {n}x{n}, got {choi.shape}")
        choi = (choi + choi.conj().T) / 2
        choi.setflags(write=False)
        min_eig = float(np.linalg.eigvalsh(choi)[0])
        reduced = partial_trace(choi, self.d_in, self.d_out, keep="A")
        tp = np.max(np.abs(reduced - np.eye(self.d_in) / self.d_in)) < TP_TOL
        object.__setattr__(self, "choi", choi)
        object.__setattr__(self, "min_choi_eigenvalue", min_eig)
        object.__setattr__(self, "is_cp", min_eig >= -CP_TOL)
        object.__setattr__(self, "is_tp", bool(tp))

    @property
    def dim(self):
        if self.d_in != self.d_out:
            raise DimensionError("channel has different input and output dimensions")
        return self.d_in

    def __call__(self, rho):
        return apply(self, rho)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return (
            f"ChannelRep({self.d_in}->{self.d_out}{label}, "
            f"cp={self.is_cp}, tp={self.is_tp})"
        )


def require_channel(channel):
    """Raise NotAChannelError unless ``channel`` is CP and TP."""
    if not (channel.is_cp and channel.is_tp):
        raise NotAChannelError(
            f"operation requires a CP-TP map; got {channel!r} "
            f"(min Choi eigenvalue {channel.min_choi_eigenvalue:.3g})"
        )
    return channel


def choi_distance(a, b):
    """Largest entrywise deviation between two Choi matrices."""
    return float(np.max(np.abs(a.choi - b.choi)))


# ---------------------------------------------------------------------------
# Weyl operators and Weyl-covariant channels


def max_entangled(d):
    """The normalized maximally entangled vector sum_i |ii>/sqrt(d)."""
    return np.eye(d, dtype=complex).reshape(d * d) / np.sqrt(d)


def omega_projector(d):
    omega = max_entangled(d)
    return np.outer(omega, omega.conj())


def weyl_labels(d):
    """All labels z = (x, y) in the fixed row-major order (x outer)."""
    return [(x, y) for x in range(d) for y in range(d)]


def weyl_index(d, z):
    x, y = z
    return x * d + y


def weyl_operator(d, z):
    """Weyl operator W_(x,y) = U^x V^y.

    ``U`` shifts ``|e_j> -> |e_{j+1 mod d}>`` and ``V`` multiplies ``|e_j>`` by
    ``exp(2 pi i j / d)``. For d = 2 this gives X for (1, 0) and Z for (0, 1).
    """
    if d < 2:
        raise DimensionError("Weyl operators need d >= 2")
    x, y = (int(c) for c in z)
    if not (0 <= x < d and 0 <= y < d):
        raise ValueError(f"Weyl label {z} out of range for d={d}")
    shift = np.roll(np.eye(d, dtype=complex), x, axis=0)
    phases = np.exp(2j * np.pi * y * np.arange(d) / d)
    return shift * phases[None, :]


@dataclass(frozen=True, eq=False)
class WCCSpec:
    """Weight vector over the d^2 Weyl labels in row-major order."""

    d: int
    p: np.ndarray

    def __post_init__(self):
        if self.d < 2:
            raise DimensionError("Weyl-covariant channels need d >= 2")
        p = check_probability_vector(self.p)
        if p.size != self.d**2:
            raise InvalidDistributionError(f"expected {self.d ** 2} weights, got {p.size}")
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    def weight(self, z):
        return float(self.p[weyl_index(self.d, z)])

    def to_json(self):
        return {"type": "wcc", "d": self.d, "p": [float(v) for v in self.p]}


def dc_weyl_distribution(d, lam):
    """Weyl weights of the depolarizing channel with parameter ``lam``.

    ``(1 + (d^2-1) lam)/d^2`` on the identity label, ``(1-lam)/d^2`` elsewhere.
    Entries go negative outside the CP interval.
    """
    p = np.full(d * d, (1 - lam) / d**2)
    p[0] = (1 + (d * d - 1) * lam) / d**2
    return p


def mixer_weyl_distribution(q, lam):
    """Weights of ``lam Phi_q + (1-lam) D_0``: ``(1 + (d^2 q_z - 1) lam)/d^2``."""
    q = np.asarray(q, dtype=float)
    n = q.size
    return (1 + (n * q - 1) * lam) / n


def random_wcc_spec(d, seed=None):
    """Weights drawn uniformly from the probability simplex."""
    rng = np.random.default_rng(seed) if not isinstance(seed, np.random.Generator) else seed
    return WCCSpec(d, rng.dirichlet(np.ones(d * d)))


# ---------------------------------------------------------------------------
# Constructors


def choi_from_kraus(kraus, d_in=None):
    """Normalized Choi matrix of X -> sum_k M_k X M_k^dag."""
    kraus = [np.asarray(m, dtype=complex) for m in kraus]
    d_out, d_in_k = kraus[0].shape
    d_in = d_in or d_in_k
    choi = np.zeros((d_in * d_out, d_in * d_out), dtype=complex)
    for m in kraus:
        # (1 (x) M)|Omega> has amplitude M[a, i]/sqrt(d) on |i, a>
        vec = m.T.reshape(d_in * d_out) / np.sqrt(d_in)
        choi += np.outer(vec, vec.conj())
    return choi


def channel_from_kraus(kraus, name=""):
    kraus = [np.asarray(m, dtype=complex) for m in kraus]
    d_out, d_in = kraus[0].shape
    return ChannelRep(choi_from_kraus(kraus), d_in, d_out, name)


def identity_channel(d):
    return ChannelRep(omega_projector(d), d, d, "identity")


def _check_lambda(lam, lo, hi, allow_non_cp, what):
    if not allow_non_cp and not (lo - PARAM_TOL <= lam <= hi + PARAM_TOL):
        raise CPViolationError(f"{what}: lambda={lam!r} outside the CP interval [{lo:.6g}, {hi:.6g}]")


def depolarizing_channel(d, lam, allow_non_cp=False):
    """Depolarizing channel ``lam Id + (1 - lam) D_0`` on C^d.

    Raises:
        CPViolationError: if ``lam`` is outside ``[-1/(d^2-1), 1]`` and
            ``allow_non_cp`` is false.
    """
    if d < 2:
        raise DimensionError("depolarizing channel needs d >= 2")
    _check_lambda(lam, -1 / (d * d - 1), 1.0, allow_non_cp, "depolarizing channel")
    choi = lam * omega_projector(d) + (1 - lam) * np.eye(d * d) / d**2
    return ChannelRep(choi, d, d, f"DC(d={d}, lambda={lam:.12g})")


def completely_depolarizing(d):
    return depolarizing_channel(d, 0.0)


def wcc_channel(spec):
    """Weyl-covariant channel ``rho -> sum_z p_z W_z rho W_z^dag``."""
    kraus = [
        np.sqrt(spec.p[weyl_index(spec.d, z)]) * weyl_operator(spec.d, z)
        for z in weyl_labels(spec.d)
    ]
    return ChannelRep(choi_from_kraus(kraus), spec.d, spec.d, f"WCC(d={spec.d})")


def mixer_channel(channel, lam):
    """``lam Phi + (1 - lam) D_0``. Complete positivity is recorded, not enforced."""
    if not channel.is_tp:
        raise NotAChannelError("mixer requires a trace-preserving base map")
    d = channel.dim
    choi = lam * channel.choi + (1 - lam) * np.eye(d * d) / d**2
    return ChannelRep(choi, d, d, f"mixer(lambda={lam:.12g})")


def inversion_map(d):
    """Point inversion through 1/d: ``-Id + 2 D_0``. Not completely positive."""
    if d < 2:
        raise DimensionError("inversion map needs d >= 2")
    choi = -omega_projector(d) + 2 * np.eye(d * d) / d**2
    return ChannelRep(choi, d, d, "inversion")


# ---------------------------------------------------------------------------
# Action and composition


def _choi4(channel):
    return channel.choi.reshape(channel.d_in, channel.d_out, channel.d_in, channel.d_out)


def apply(channel, rho):
    """Channel output ``d_in tr_A[(rho^T (x) 1) J]``."""
    rho = as_square(rho)
    if rho.shape[0] != channel.d_in:
        raise DimensionError(f"input has dimension {rho.shape[0]}, channel expects {channel.d_in}")
    return channel.d_in * np.einsum("ji,jkil->kl", rho, _choi4(channel))


def apply_extended(channel, rho_ab, dA):
    """``(Id_A (x) Phi)(rho_AB)`` with the channel acting on the second factor."""
    rho_ab = as_square(rho_ab)
    d = channel.d_in
    if rho_ab.shape[0] != dA * d:
        raise DimensionError(f"joint state has dimension {rho_ab.shape[0]}, expected {dA}*{d}")
    x = rho_ab.reshape(dA, d, dA, d)
    out = channel.d_in * np.einsum("ajbi,jkil->akbl", x, _choi4(channel))
    n = dA * channel.d_out
    return out.reshape(n, n)


def compose(outer, inner):
    """Choi matrix of ``outer o inner`` (``inner`` acts first)."""
    if inner.d_out != outer.d_in:
        raise DimensionError("inner output dimension does not match outer input dimension")
    choi = apply_extended(outer, inner.choi, inner.d_in)
    return ChannelRep(choi, inner.d_in, outer.d_out, f"{outer.name} o {inner.name}".strip(" o"))


def combine(weights, channels):
    """Affine combination ``sum_k w_k Phi_k`` of maps with equal dimensions."""
    first = channels[0]
    choi = sum(w * c.choi for w, c in zip(weights, channels))
    return ChannelRep(choi, first.d_in, first.d_out, "combination")


def conjugate_by(channel, unitary):
    """Map ``rho -> U Phi(rho) U^dag`` (unitary applied at the output)."""
    u = np.asarray(unitary, dtype=complex)
    k = tensor(np.eye(channel.d_in), u)
    return ChannelRep(k @ channel.choi @ k.conj().T, channel.d_in, channel.d_out, channel.name)


def kraus_from_choi(channel):
    """Kraus operators from the Choi eigendecomposition.

    Eigenvalues below 1e-10 are dropped.

    Raises:
        NotAChannelError: if the map is not completely positive.
    """
    if not channel.is_cp:
        raise NotAChannelError("Kraus decomposition requires a completely positive map")
    vals, vecs = np.linalg.eigh(channel.choi)
    kraus = []
    for mu, v in zip(vals[::-1], vecs.T[::-1]):
        if mu < KRAUS_TOL:
            break
        m = np.sqrt(channel.d_in * mu) * v.reshape(channel.d_in, channel.d_out).T
        kraus.append(m)
    return kraus


def cj_spectrum(channel):
    """Eigenvalues of the Choi matrix in descending order."""
    return np.linalg.eigvalsh(channel.choi)[::-1]


def superoperator_matrix(channel):
    """Transfer matrix S with ``vec(Phi(X)) = S vec(X)`` (row-major vec)."""
    j4 = _choi4(channel)
    # Phi(|j><i|)[k, l] = d_in J[j, k, i, l]
    s = channel.d_in * np.einsum("jkil->klji", j4)
    return s.reshape(channel.d_out**2, channel.d_in**2)


# ---------------------------------------------------------------------------
# Stinespring dilation of Weyl-covariant channels


def wcc_isometry(spec):
    """Isometry ``V = sum_z sqrt(p_z) W_z (x) |z>`` from S to S (x) E."""
    d = spec.d
    n_env = d * d
    v = np.zeros((d * n_env, d), dtype=complex)
    for z in weyl_labels(d):
        k = weyl_index(d, z)
        env = np.zeros((n_env, 1))
        env[k, 0] = 1.0
        v += np.sqrt(spec.p[k]) * np.kron(weyl_operator(d, z), env)
    return v


def stinespring_channel(spec, keep="E"):
    """Trace the dilated WCC output over the system (``keep="E"``) or environment.

    Keeping ``E`` gives the complementary channel; keeping ``S`` recovers the
    WCC itself.
    """
    d = spec.d
    n_env = d * d
    v = wcc_isometry(spec)
    d_out = n_env if keep == "E" else d
    trace_keep = "B" if keep == "E" else "A"
    choi = np.zeros((d * d_out, d * d_out), dtype=complex)
    for i in range(d):
        for j in range(d):
            joint = np.outer(v[:, i], v[:, j].conj())
            out = partial_trace(joint, d, n_env, keep=trace_keep)
            choi[i * d_out:(i + 1) * d_out, j * d_out:(j + 1) * d_out] = out / d
    return ChannelRep(choi, d, d_out, f"stinespring-{keep}")


def complementary_wcc(spec):
    """Channel to the d^2-dimensional environment of the WCC dilation."""
    return stinespring_channel(spec, keep="E")


# ---------------------------------------------------------------------------
# JSON channel specifications


def load_spec(text_or_obj):
    """Parse a channel spec from JSON text or an already-decoded dict."""
    if isinstance(text_or_obj, dict):
        return text_or_obj
    try:
        obj = json.loads(text_or_obj)
    except json.JSONDecodeError as exc:
        raise ValueError(f"channel spec is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ValueError("channel spec must be a JSON object")
    return obj


def _number(obj, key):
    try:
        value = obj[key]
    except KeyError:
        raise ValueError(f"channel spec is missing {key!r}") from None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"channel spec field {key!r} must be a number")
    return value


def _dimension(obj):
    d = _number(obj, "d")
    if int(d) != d or d < 2:
        raise ValueError("channel spec field 'd' must be an integer >= 2")
    return int(d)


def resolve_spec(spec):
    """Reduce a spec to its canonical family.

    Returns ``("dc", d, lam)`` or ``("wcc", d, weights)``. Mixers over a DC base
    are DCs with the product parameter; mixers over WCCs are WCCs with the
    mixed weights. Weights may be negative when the spec is not CP.
    """
    spec = load_spec(spec)
    kind = spec.get("type")
    if kind == "dc":
        return ("dc", _dimension(spec), float(_number(spec, "lambda")))
    if kind == "wcc":
        d = _dimension(spec)
        p = spec.get("p")
        if not isinstance(p, list) or len(p) != d * d:
            raise ValueError(f"wcc spec needs a list 'p' of {d * d} weights")
        if any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in p):
            raise ValueError("wcc weights must be numbers")
        return ("wcc", d, np.array(p, dtype=float))
    if kind == "mixer":
        base = spec.get("base")
        if not isinstance(base, dict):
            raise ValueError("mixer spec needs an object 'base'")
        lam = float(_number(spec, "lambda"))
        family, d, param = resolve_spec(base)
        if family == "dc":
            return ("dc", d, lam * param)
        return ("wcc", d, mixer_weyl_distribution(param, lam))
    raise ValueError(f"unknown channel type {kind!r}")


def channel_from_spec(spec):
    """Build the ChannelRep described by a JSON spec.

    Raises:
        CPViolationError: if the resulting Choi matrix is not PSD and the spec
            does not set ``"allow_non_cp": true``.
        ValueError: on malformed specs.
    """
    spec = load_spec(spec)
    allow = bool(spec.get("allow_non_cp", False))
    family, d, param = resolve_spec(spec)
    if family == "dc":
        channel = depolarizing_channel(d, param, allow_non_cp=True)
    else:
        if abs(param.sum() - 1) > 1e-10:
            raise InvalidDistributionError("wcc weights must sum to 1")
        choi = sum(
            w * np.outer(v, v.conj())
            for w, v in zip(param, _weyl_choi_vectors(d))
        )
        channel = ChannelRep(choi, d, d, f"WCC(d={d})")
    if not channel.is_cp and not allow:
        raise CPViolationError(
            f"channel spec is not completely positive (min Choi eigenvalue "
            f"{channel.min_choi_eigenvalue:.3g}); set allow_non_cp to construct it anyway"
        )
    return channel


def _weyl_choi_vectors(d):
    # (1 (x) W_z)|Omega>; these are orthonormal, so weights may be signed here
    return [weyl_operator(d, z).T.reshape(d * d) / np.sqrt(d) for z in weyl_labels(d)]
