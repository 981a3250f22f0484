"""Self-verification suites behind ``reciprocal-channels verify``.

Each check returns a :class:`Check` with the worst residual it observed and
the tolerance it was held to. The output contains no timings, so a fixed seed
gives a byte-identical summary.
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import capacities as cap
from . import channels as ch
from . import oracles
from .linalg import (
    as_generator,
    haar_random_unitary,
    random_density_matrix,
    trace_norm,
)


@dataclass
class Check:
    name: str
    passed: bool
    residual: float
    tolerance: float
    detail: str = ""


def _check(name, residual, tolerance, detail=""):
    residual = float(residual)
    return Check(name, bool(residual <= tolerance), residual, tolerance, detail)


def check_cp_boundary(dims=range(2, 7)):
    worst = 0.0
    for d in dims:
        lo = cap.lambda_min_dc(d)
        at = ch.depolarizing_channel(d, lo).min_choi_eigenvalue
        below = ch.depolarizing_channel(d, lo - 1e-6, allow_non_cp=True).min_choi_eigenvalue
        worst = max(worst, abs(at), 0.0 if below < -1e-8 else 1.0)
    return _check("cp_boundary", worst, 1e-10)


def check_asymmetry_inequality(dims=range(2, 11), points=50):
    worst = 0.0
    qubit_ua = 0.0
    for d in dims:
        bound = abs(cap.lambda_min_dc(d))
        for a in np.linspace(bound / points, bound, points):
            for kind in ("UA", "EA"):
                ratio = cap.asymmetry_ratio_dc(d, a, kind)
                worst = max(worst, -ratio)
                if d == 2 and kind == "UA":
                    qubit_ua = max(qubit_ua, abs(ratio))
    return _check("asymmetry_inequality", max(worst, qubit_ua), 1e-12)


def check_ua_landmark():
    value = cap.asymmetry_ratio_dc(4, 1 / 15, "UA")
    return _check("ua_landmark_d4", abs(value - 0.094), 0.005, f"a_UA(1/15)={value:.6f}")


def check_ea_edge_increasing():
    edge = [cap.asymmetry_ratio_dc(d, abs(cap.lambda_min_dc(d)), "EA") for d in range(2, 11)]
    worst_step = min(b - a for a, b in zip(edge, edge[1:]))
    return _check("ea_edge_increasing_in_d", max(0.0, -worst_step), 0.0, f"a_EA(d=10)={edge[-1]:.6f}")


def check_ea_oracle(cases, seed):
    worst = 0.0
    for k, d in enumerate(cases):
        spec = ch.random_wcc_spec(d, np.random.SeedSequence([seed, 1, k]).generate_state(1)[0])
        res = oracles.maximize_mutual_information(
            ch.wcc_channel(spec), restarts=1, seed=[seed, 2, k], start_maximally_mixed=False
        )
        worst = max(worst, abs(res.optimum_value - cap.c_ea_wcc(spec)))
    res = oracles.maximize_mutual_information(
        ch.depolarizing_channel(3, -1 / 8), restarts=1, seed=seed, start_maximally_mixed=False
    )
    worst = max(worst, abs(res.optimum_value - cap.c_ea_dc(3, -1 / 8)))
    return _check("ea_oracle_vs_closed_form", worst, 1e-6, f"{len(cases) + 1} channels")


def check_cj_spectrum(rng, count=50):
    worst = 0.0
    for k in range(count):
        spec = ch.random_wcc_spec((2, 3, 5)[k % 3], rng)
        spec_vals = ch.cj_spectrum(ch.wcc_channel(spec))
        worst = max(worst, np.max(np.abs(spec_vals - np.sort(spec.p)[::-1])))
    return _check("cj_spectrum_equals_weights", worst, 1e-10)


def check_mover_property(rng):
    worst = 0.0
    for d in (2, 3, 4):
        lo = cap.lambda_min_dc(d)
        for lam in np.linspace(lo, 1, 7):
            f = oracles.sample_fidelities(ch.depolarizing_channel(d, lam), 100, rng.integers(2**32))
            worst = max(worst, np.max(np.abs(f - cap.mover_fidelity(d, lam))))
        worst = max(worst, abs(cap.mover_fidelity(d, lo) - 1 / (d + 1)))
    return _check("mover_fidelity_constant", worst, 1e-10)


def check_avg_fidelity_mc(rng, n, count):
    worst = 0.0
    for k in range(count):
        d = (2, 3)[k % 2]
        spec = ch.random_wcc_spec(d, rng)
        mean, stderr = oracles.mc_average_fidelity(ch.wcc_channel(spec), n, rng.integers(2**32))
        closed = (d * spec.p[0] + 1) / (d + 1)
        worst = max(worst, abs(mean - closed) / (3 * stderr))
    return _check("avg_fidelity_mc_within_3_stderr", worst, 1.0, "residual in units of 3 stderr")


def check_channel_identities(rng, count=30):
    worst = 0.0
    for _ in range(count):
        d = int(rng.integers(2, 5))
        lo = cap.lambda_min_dc(d)
        l1, l2 = rng.uniform(lo, 1, size=2)
        p = rng.uniform()
        dc = ch.depolarizing_channel
        q = ch.random_wcc_spec(d, rng)
        phi = ch.wcc_channel(q)
        cp = cap.cp_range_wcc(q.p, d)
        m1 = rng.uniform(max(cp.lambda_min, -5), min(cp.lambda_max, 5))
        m2 = rng.uniform(max(cp.lambda_min, -5), min(cp.lambda_max, 5))
        a = rng.uniform(0, abs(lo))
        inv = ch.inversion_map(d)
        residuals = [
            ch.choi_distance(ch.compose(dc(d, l1), dc(d, l2)), dc(d, l1 * l2)),
            ch.choi_distance(ch.combine([p, 1 - p], [dc(d, l1), dc(d, l2)]), dc(d, p * l1 + (1 - p) * l2)),
            ch.choi_distance(
                ch.combine([p, 1 - p], [ch.mixer_channel(phi, m1), ch.mixer_channel(phi, m2)]),
                ch.mixer_channel(phi, p * m1 + (1 - p) * m2),
            ),
            ch.choi_distance(ch.compose(dc(d, l1), ch.mixer_channel(phi, m1)), ch.mixer_channel(phi, l1 * m1)),
            ch.choi_distance(ch.mixer_channel(ch.mixer_channel(phi, m1), l2), ch.mixer_channel(phi, l2 * m1)),
            ch.choi_distance(ch.compose(inv, dc(d, a)), dc(d, -a)),
            ch.choi_distance(ch.compose(inv, inv), ch.identity_channel(d)),
            ch.choi_distance(ch.mixer_channel(phi, m1), ch.wcc_channel(cap.mixer_wcc_spec(q, m1))),
        ]
        worst = max(worst, *residuals)
    return _check("channel_identities", worst, 1e-12)


def check_distance_relations(rng, count=50):
    worst = 0.0
    for _ in range(count):
        d = int(rng.integers(2, 5))
        a = rng.uniform(0, abs(cap.lambda_min_dc(d)))
        r1 = random_density_matrix(d, rng)
        r2 = random_density_matrix(d, rng)
        plus, minus = ch.depolarizing_channel(d, a), ch.depolarizing_channel(d, -a)
        base = trace_norm(r1 - r2)
        q = ch.random_wcc_spec(d, rng)
        phi = ch.wcc_channel(q)
        b = rng.uniform(0, cap.cp_range_wcc(q.p, d).reciprocal_bound)
        mp, mm = ch.mixer_channel(phi, b), ch.mixer_channel(phi, -b)
        centre = np.eye(d) / d
        residuals = [
            abs(trace_norm(plus(r1) - plus(r2)) - a * base),
            abs(trace_norm(minus(r1) - minus(r2)) - a * base),
            abs(trace_norm(mp(r1) - mp(r2)) - b * trace_norm(phi(r1) - phi(r2))),
            abs(trace_norm(mm(r1) - mm(r2)) - b * trace_norm(phi(r1) - phi(r2))),
            abs(trace_norm(plus(r1) - minus(r1)) - 2 * trace_norm(plus(r1) - centre)),
            abs(trace_norm(mp(r1) - mm(r1)) - 2 * trace_norm(mm(r1) - centre)),
            abs(trace_norm(ch.inversion_map(d)(r1) - ch.inversion_map(d)(r2)) - base),
        ]
        worst = max(worst, *residuals)
    return _check("distance_relations", worst, 1e-10)


def dc_family_member(q, tol=1e-12):
    """True when three of the four qubit weights coincide and the fourth exceeds 1/4."""
    for k in range(4):
        rest = np.delete(q, k)
        if np.ptp(rest) <= tol and q[k] > 0.25 + tol:
            return k
    return None


def check_wcc_grid(resolution=21):
    rows = cap.wcc_asymmetry_grid(resolution)
    ratios = np.array([r[3] for r in rows])
    best = np.nanmax(ratios)
    argmax = [r for r in rows if r[3] >= best - 1e-9]
    families = set()
    off_family = 0
    for q1, q2, q3, _ in argmax:
        k = dc_family_member(np.array([1 - q1 - q2 - q3, q1, q2, q3]))
        if k is None:
            off_family += 1
        else:
            families.add(k)
    dc_value = cap.asymmetry_ratio_dc(2, 1 / 3, "EA")
    negatives = int(np.sum(ratios < 0))
    residual = abs(best - dc_value) + off_family + (4 - len(families)) + (0 if negatives else 1)
    return _check(
        "wcc_grid_structure",
        residual,
        1e-9,
        f"max={best:.9f}, argmax points={len(argmax)}, negative points={negatives}",
    )


def pauli_channel_smin(p):
    """Minimum output entropy of a qubit Pauli channel from its Bloch contraction."""
    p0, pz, px, py = p  # row-major labels (0,0), (0,1), (1,0), (1,1)
    eta = max(abs(p0 + px - pz - py), abs(p0 + py - px - pz), abs(p0 + pz - px - py))
    w = np.array([(1 + eta) / 2, (1 - eta) / 2])
    w = w[w > 0]
    return float(-np.sum(w * np.log2(w)))


def check_smin_oracle(rng, seed):
    worst = 0.0
    for lam in (-1 / 8, 0.0, 1 / 8, 1 / 2, 1.0):
        res = oracles.min_output_entropy(ch.depolarizing_channel(3, lam), seed=seed)
        worst = max(worst, abs(res.optimum_value - cap.smin_dc(3, lam)))
    for _ in range(3):
        spec = ch.random_wcc_spec(2, rng)
        res = oracles.min_output_entropy(ch.wcc_channel(spec), restarts=4, seed=int(rng.integers(2**32)))
        worst = max(worst, abs(res.optimum_value - pauli_channel_smin(spec.p)))
    return _check("smin_oracle", worst, 1e-6)


def check_twirl(rng, n, tolerance):
    worst = 0.0
    dc = ch.depolarizing_channel(3, -0.1)
    worst = max(worst, ch.choi_distance(oracles.twirl_channel_mc(dc, 1000, 1), dc))
    spec = ch.random_wcc_spec(2, rng)
    tw = oracles.twirl_channel_mc(ch.wcc_channel(spec), n, int(rng.integers(2**32)))
    lam = oracles.dc_parameter_estimate(tw)
    worst = max(worst, trace_norm(tw.choi - ch.depolarizing_channel(2, lam).choi))
    worst = max(worst, abs(cap.avg_output_fidelity(tw) - cap.avg_output_fidelity(ch.wcc_channel(spec))))
    return _check("twirl_projects_onto_dc", worst, tolerance)


def check_unitary_covariance(rng, count=50):
    worst = 0.0
    for _ in range(count):
        d = int(rng.integers(2, 5))
        dc = ch.depolarizing_channel(d, rng.uniform(cap.lambda_min_dc(d), 1))
        u = haar_random_unitary(d, rng)
        rho = random_density_matrix(d, rng)
        worst = max(worst, np.max(np.abs(dc(u @ rho @ u.conj().T) - u @ dc(rho) @ u.conj().T)))
        worst = max(worst, np.max(np.abs(dc(np.eye(d) / d) - np.eye(d) / d)))
    return _check("dc_unitary_covariance", worst, 1e-10)


def check_maximizer_location(rng, count=5, samples=100):
    worst = 0.0
    for _ in range(count):
        d = int(rng.integers(2, 4))
        phi = ch.wcc_channel(ch.random_wcc_spec(d, rng))
        at_centre = oracles.mutual_information(np.eye(d) / d, phi)
        for _ in range(samples):
            rho = random_density_matrix(d, rng, rank=int(rng.integers(1, d + 1)))
            worst = max(worst, oracles.mutual_information(rho, phi) - at_centre)
    return _check("wcc_maximizer_is_maximally_mixed", max(worst, 0.0), 1e-9)


SUITES = {
    "fast": {"oracle_cases": [2, 2, 2, 3], "mc_n": 10_000, "mc_count": 4, "twirl_n": 10_000, "twirl_tol": 2e-2},
    "full": {
        "oracle_cases": [2] * 20 + [3] * 10 + [4] * 2,
        "mc_n": 100_000,
        "mc_count": 10,
        "twirl_n": 100_000,
        "twirl_tol": 5e-3,
    },
}


def run_suite(suite="fast", seed=0):
    """Run every check of ``suite`` and return the summary dict."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    cfg = SUITES[suite]
    rng = as_generator(np.random.SeedSequence(seed))
    checks = [
        check_cp_boundary(),
        check_asymmetry_inequality(),
        check_ua_landmark(),
        check_ea_edge_increasing(),
        check_cj_spectrum(rng),
        check_mover_property(rng),
        check_unitary_covariance(rng),
        check_channel_identities(rng),
        check_distance_relations(rng),
        check_wcc_grid(21),
        check_maximizer_location(rng),
        check_avg_fidelity_mc(rng, cfg["mc_n"], cfg["mc_count"]),
        check_twirl(rng, cfg["twirl_n"], cfg["twirl_tol"]),
        check_smin_oracle(rng, seed),
        check_ea_oracle(cfg["oracle_cases"], seed),
    ]
    return {
        "suite": suite,
        "seed": seed,
        "passed": all(c.passed for c in checks),
        "checks": [{**asdict(c), "residual": _finite(c.residual)} for c in checks],
    }


def _finite(x):
    return x if math.isfinite(x) else str(x)
