"""Instance generation, batch verification, and sweep tables.

``generate`` turns an :class:`InstanceSpec` into a concrete (A, X, Y)
triple, deterministically in the seed. ``verify_all`` runs every applicable
bound over a batch of generated instances and aggregates pass/fail/skip
tallies with worst margins; a nonzero failure count is the harness-level
signal that something is wrong (the bounds are theorems; they must hold).
``sweep_theta`` tabulates the two built-in worked examples across an angle
grid.

Trials are independent; when more than one worker thread is allowed
(``RITZ_BOUNDS_THREADS``, default all cores) they run in a thread pool and
results are aggregated in trial order, so reports are identical regardless
of scheduling.
"""

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import bounds as bnd
from . import linalg
from .errors import (
    AnglesTooLargeError,
    DegenerateCutError,
    HypothesisFailedError,
    NoSeparationError,
    NotInvariantError,
    NotTopKError,
    SingularTError,
    SpecInvalidError,
    GridInvalidError,
)
from .majorization import default_tolerance
from .rng import SplitMix64, mix_seed

_SKIP_ERRORS = {
    AnglesTooLargeError: "angles_too_large",
    NotInvariantError: "not_invariant",
    NoSeparationError: "no_separation",
    HypothesisFailedError: "hypothesis_failed",
    NotTopKError: "not_top_k",
    SingularTError: "singular_t",
    DegenerateCutError: "degenerate_cut",
}

# theorem ids the battery can emit; skip bookkeeping uses this to tally
# "not applicable" outcomes per theorem
MUST_HOLD_IDS = (
    "eigenlist_distance",
    "positive_t_distance",
    "mixed_cos",
    "mixed_tan",
    "mixed_cos_squared",
    "mixed_tan_squared",
    "residual_projection",
    "spread_partial",
    "apriori_mixed",
    "residual_quadratic",
    "apriori_invariant",
    "cor_constant_spread",
    "cor_constant_invariant",
    "cor_sqrt8_spread",
    "cor_sqrt8_invariant",
    "fem_apr1",
    "fem_apr2",
    "fem_apr3",
    "tan_classical",
    "tan_improved",
    "tan_improved_ambient",
    "quadratic_ambient",
    "quadratic_improved",
    "consecutive_eigenvalues",
)
EXPERIMENTAL_IDS = ("conjecture_spread_sin", "conjecture_spread_sin_squared")


@dataclass(frozen=True)
class InstanceSpec:
    """Recipe for one random (A, X, Y) instance.

    spectrum: ("uniform", lo, hi) | ("clustered", gap) | ("explicit", v1, ...)
              | ("exa1", a, b, c, d, theta) | ("exa2", a, b, c, d, theta)
    subspace_mode: ("random_pair",) | ("invariant_plus_perturbation", eps)
              | ("worked_example",)
    invariant_choice: which eigenvectors span the invariant X in
    invariant_plus_perturbation mode: "top", "random", or an explicit tuple
    of 0-based positions in descending eigenvalue order.
    """

    d: int
    k: int
    spectrum: tuple = ("uniform", -1.0, 1.0)
    subspace_mode: tuple = ("random_pair",)
    seed: int = 0
    invariant_choice: object = "top"


def pad_zeros(x, length):
    """Zero-pad a vector on the right to the requested length.

    Comparisons in this package never pad implicitly (unequal lengths are
    errors); padding must be spelled out where a fixed ambient length is
    wanted.
    """
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise SpecInvalidError(f"expected a vector, got shape {v.shape}")
    if length < v.size:
        raise SpecInvalidError(f"cannot pad length {v.size} down to {length}")
    return np.concatenate([v, np.zeros(length - v.size)])


def worked_example(name, a=0.0, b=1.0, c=2.0, d=3.0, theta=math.pi / 6):
    """The two built-in 4x4 diagonal worked examples.

    Both use X = span{e1, e2} and Y = span{e1, cos(theta) e2 + sin(theta) e3}.
    ``exa1`` has diagonal (a, b, c, d); ``exa2`` swaps the last two diagonal
    entries, which is what creates the separation geometry.
    """
    if name not in ("exa1", "exa2"):
        raise SpecInvalidError(f"unknown example {name!r}")
    if not (a < b < c < d):
        raise SpecInvalidError("parameters must satisfy a < b < c < d")
    if not 0.0 < theta < math.pi / 2:
        raise GridInvalidError(f"theta must lie in (0, pi/2), got {theta}")
    diag = (a, b, c, d) if name == "exa1" else (a, b, d, c)
    A = np.diag(np.asarray(diag, dtype=np.complex128))
    X = np.zeros((4, 2), dtype=np.complex128)
    X[0, 0] = 1.0
    X[1, 1] = 1.0
    Y = np.zeros((4, 2), dtype=np.complex128)
    Y[0, 0] = 1.0
    Y[1, 1] = math.cos(theta)
    Y[2, 1] = math.sin(theta)
    return A, X, Y


def _spectrum_values(spec, gen):
    tag = spec.spectrum[0]
    if tag == "uniform":
        _, lo, hi = spec.spectrum
        if not lo < hi:
            raise SpecInvalidError("uniform spectrum needs lo < hi")
        vals = lo + (hi - lo) * gen.uniform(spec.d)
    elif tag == "clustered":
        _, gap = spec.spectrum
        if not gap > 0:
            raise SpecInvalidError("clustered spectrum needs gap > 0")
        centers = max(2, spec.d // 3)
        assign = np.arange(spec.d) % centers
        vals = assign * gap + gap * 1e-3 * (gen.uniform(spec.d) - 0.5)
    elif tag == "explicit":
        vals = np.asarray(spec.spectrum[1:], dtype=float)
        if vals.size != spec.d:
            raise SpecInvalidError(f"explicit spectrum length {vals.size} != d = {spec.d}")
    else:
        raise SpecInvalidError(f"unknown spectrum tag {tag!r}")
    return np.sort(vals)[::-1]


def _haar_unitary(gen, d):
    return linalg.orthonormalize(gen.complex_normal(d, d), 1e-12)


def _invariant_indices(spec, gen):
    choice = spec.invariant_choice
    if isinstance(choice, (tuple, list)):
        idx = sorted(int(i) for i in choice)
        if len(idx) != spec.k or len(set(idx)) != spec.k:
            raise SpecInvalidError("invariant_choice must contain k distinct indices")
        if idx[0] < 0 or idx[-1] >= spec.d:
            raise SpecInvalidError("invariant_choice indices out of range")
        return idx
    if choice == "top":
        return list(range(spec.k))
    if choice == "random":
        perm = np.argsort(gen.uniform(spec.d), kind="stable")
        return sorted(int(i) for i in perm[: spec.k])
    raise SpecInvalidError(f"unknown invariant_choice {choice!r}")


def generate(spec):
    """Deterministically build the (A, X, Y) triple described by spec."""
    if spec.spectrum[0] in ("exa1", "exa2"):
        if spec.subspace_mode[0] != "worked_example":
            raise SpecInvalidError("worked examples require the worked_example subspace mode")
        return worked_example(spec.spectrum[0], *spec.spectrum[1:])
    if spec.subspace_mode[0] == "worked_example":
        raise SpecInvalidError("worked_example subspaces exist only for the worked examples")
    if spec.d < 2:
        raise SpecInvalidError("d must be at least 2")
    if not 1 <= spec.k <= spec.d // 2:
        raise SpecInvalidError("random modes require 1 <= k <= d/2")
    gen = SplitMix64(spec.seed)
    lam = _spectrum_values(spec, gen)
    U = _haar_unitary(gen, spec.d)
    A = linalg.hermitian_part(U @ np.diag(lam.astype(np.complex128)) @ U.conj().T)

    mode = spec.subspace_mode[0]
    if mode == "random_pair":
        X = linalg.orthonormalize(gen.complex_normal(spec.d, spec.k), 1e-12)
        Y = linalg.orthonormalize(gen.complex_normal(spec.d, spec.k), 1e-12)
    elif mode == "invariant_plus_perturbation":
        eps = float(spec.subspace_mode[1])
        if eps < 0:
            raise SpecInvalidError("perturbation size must be >= 0")
        idx = _invariant_indices(spec, gen)
        X = U[:, idx].copy()
        if eps == 0.0:
            Y = X.copy()
        else:
            Y = linalg.orthonormalize(X + eps * gen.complex_normal(spec.d, spec.k), 1e-12)
    else:
        raise SpecInvalidError(f"unknown subspace mode {spec.subspace_mode[0]!r}")
    return A, X, Y


def _positive_definite(gen, k):
    G = gen.complex_normal(k, k)
    T = linalg.hermitian_part(G @ G.conj().T)
    lam = linalg.hermitian_eig(T).eigenvalues
    return T + (0.1 * max(lam[0], 1.0)) * np.eye(k)


def evaluate_instance(A, X, Y, tol=None, seed=0):
    """Run every applicable bound on one instance.

    Returns (reports, skips): the reports list carries every evaluated
    bound (experimental conjecture rows included), skips maps theorem ids
    to the reason their preconditions failed.
    """
    reports = []
    skips = {}
    gen = SplitMix64(mix_seed(seed, 0xB0))

    def run(ids, fn):
        try:
            out = fn()
        except tuple(_SKIP_ERRORS) as exc:
            reason = _SKIP_ERRORS[type(exc)]
            for tid in ids:
                skips[tid] = reason
            return None
        if out is None:
            return None
        if isinstance(out, bnd.BoundReport):
            reports.append(out)
        else:
            reports.extend(r for r in out if r is not None)
        return out

    rx = bnd.rayleigh(A, X)
    ry = bnd.rayleigh(A, Y)
    k = X.shape[1]

    run(("eigenlist_distance",),
        lambda: bnd.eigenlist_distance_bound(rx.rho, ry.rho, X.conj().T @ Y, tol))
    run(("positive_t_distance",),
        lambda: bnd.positive_T_distance_bound(rx.rho, ry.rho, _positive_definite(gen, k), tol))
    run(("mixed_cos",), lambda: bnd.mixed_bound_cos(A, X, Y, tol))
    run(("mixed_tan",), lambda: bnd.mixed_bound_tan(A, X, Y, tol))
    run(("mixed_cos_squared", "mixed_tan_squared"),
        lambda: bnd.squared_mixed_bounds(A, X, Y, tol))
    run(("residual_projection",), lambda: bnd.residual_projection_bound(A, X, Y, tol))
    run(("spread_partial",), lambda: bnd.apriori_spread_partial(A, X, Y, tol))
    run(("apriori_mixed",), lambda: bnd.apriori_mixed_theorem(A, X, Y, tol))

    invariant = bnd._is_invariant(A, rx)
    corollary_ids = ["cor_constant_spread", "cor_sqrt8_spread"]
    if invariant:
        corollary_ids += ["cor_constant_invariant", "cor_sqrt8_invariant"]
    else:
        skips["cor_constant_invariant"] = "not_invariant"
        skips["cor_sqrt8_invariant"] = "not_invariant"
    done = run(tuple(corollary_ids),
               lambda: bnd.apriori_constant_corollary(A, X, Y, invariant=invariant, tol=tol))
    if done is not None and len(done) < len(corollary_ids):
        # the sqrt(8) specialization only applies up to pi/4
        skips.setdefault("cor_sqrt8_spread", "angle_above_pi_4")
        skips.setdefault("cor_sqrt8_invariant",
                         "not_invariant" if not invariant else "angle_above_pi_4")

    if invariant:
        run(("residual_quadratic", "apriori_invariant"),
            lambda: bnd.apriori_invariant_quadratic(A, X, Y, tol))
        top_k = bnd.is_top_k(A, X)
        run(("fem_apr1", "fem_apr2", "fem_apr3"),
            lambda: bnd.fem_reference_bounds(A, X, Y, invariant=True, top_k=top_k, tol=tol))
        if not top_k:
            skips.setdefault("fem_apr3", "not_top_k")
        cert = bnd.dkn_certificate(A, X, Y)
        if cert is None:
            skips["tan_classical"] = "no_separation"
            skips["quadratic_ambient"] = "no_separation"
        else:
            run(("tan_classical",), lambda: bnd.tan_theta_classical(A, X, Y, cert, tol))
            run(("quadratic_ambient",),
                lambda: bnd.quadratic_aposteriori(A, X, Y, cert.delta, "quadratic_ambient", tol))
        improved = run(("tan_improved", "tan_improved_ambient", "quadratic_improved"),
                       lambda: bnd.tan_theta_improved(A, X, Y, tol))
        if improved is not None:
            if improved[1] is None:
                skips["tan_improved_ambient"] = "no_separation"
            delta_prime = improved[0].metadata["delta_prime"]
            run(("quadratic_improved",),
                lambda: bnd.quadratic_aposteriori(A, X, Y, delta_prime, "quadratic_improved", tol))
    else:
        run(("fem_apr1",), lambda: bnd.fem_reference_bounds(A, X, Y, invariant=False, tol=tol))
        for tid in ("residual_quadratic", "apriori_invariant", "fem_apr2", "fem_apr3",
                    "tan_classical", "tan_improved", "tan_improved_ambient",
                    "quadratic_ambient", "quadratic_improved"):
            skips[tid] = "not_invariant"

    run(("consecutive_eigenvalues",), lambda: bnd.consecutive_eigenvalue_bound(A, Y, tol))
    run(EXPERIMENTAL_IDS, lambda: bnd.conjectured_spread_bounds(A, X, Y, tol))
    for rep in reports:
        rep.metadata.setdefault("seed", seed)
    return reports, skips


@dataclass
class TheoremTally:
    passes: int = 0
    failures: int = 0
    skips: dict = field(default_factory=dict)
    worst_margin: float = math.inf

    @property
    def total(self):
        return self.passes + self.failures + sum(self.skips.values())


@dataclass
class RunReport:
    instances: int
    tallies: dict
    experimental: dict
    flagged: list
    elapsed_s: float

    @property
    def total_failures(self):
        return sum(t.failures for t in self.tallies.values())

    def to_dict(self):
        return {
            "instances": self.instances,
            "failures": self.total_failures,
            "elapsed_s": self.elapsed_s,
            "theorems": {
                tid: {
                    "passes": t.passes,
                    "failures": t.failures,
                    "skips": dict(sorted(t.skips.items())),
                    "worst_margin": None if math.isinf(t.worst_margin) else t.worst_margin,
                }
                for tid, t in sorted(self.tallies.items())
            },
            "experimental": {
                tid: dict(info) for tid, info in sorted(self.experimental.items())
            },
            "flagged": list(self.flagged),
        }


def _worker_count(threads=None):
    if threads is None:
        env = os.environ.get("RITZ_BOUNDS_THREADS", "")
        threads = int(env) if env.strip() else (os.cpu_count() or 1)
    return max(1, int(threads))


def verify_all(spec, trials, tol=None, threads=None):
    """Generate ``trials`` instances from spec and check every bound.

    Per-trial seeds are derived from spec.seed, so the report is a pure
    function of (spec, trials, tol) regardless of thread count. Bounds
    whose preconditions fail are tallied as skipped with the reason;
    failed must-hold verdicts are flagged with enough data to replay.
    """
    if trials < 1:
        raise SpecInvalidError("trials must be >= 1")
    start = time.perf_counter()
    tallies = {tid: TheoremTally() for tid in MUST_HOLD_IDS}
    experimental = {
        tid: {"evaluated": 0, "holds": 0, "worst_margin": math.inf}
        for tid in EXPERIMENTAL_IDS
    }
    flagged = []

    def one_trial(t):
        trial_seed = mix_seed(spec.seed, t)
        trial_spec = InstanceSpec(
            d=spec.d, k=spec.k, spectrum=spec.spectrum,
            subspace_mode=spec.subspace_mode, seed=trial_seed,
            invariant_choice=spec.invariant_choice,
        )
        A, X, Y = generate(trial_spec)
        return trial_seed, evaluate_instance(A, X, Y, tol=tol, seed=trial_seed)

    workers = _worker_count(threads)
    pool = None
    if workers == 1:
        results = map(one_trial, range(trials))
    else:
        pool = ThreadPoolExecutor(max_workers=workers)
        results = pool.map(one_trial, range(trials))

    try:
        for t, (trial_seed, (reports, skips)) in enumerate(results):
            seen = set()
            for rep in reports:
                margin = rep.verdict.worst_margin
                if rep.metadata.get("experimental"):
                    info = experimental[rep.theorem_id]
                    info["evaluated"] += 1
                    info["holds"] += int(rep.verdict.holds)
                    info["worst_margin"] = min(info["worst_margin"], margin)
                    continue
                tally = tallies[rep.theorem_id]
                seen.add(rep.theorem_id)
                tally.worst_margin = min(tally.worst_margin, margin)
                if rep.verdict.holds:
                    tally.passes += 1
                else:
                    tally.failures += 1
                    flagged.append({
                        "trial": t,
                        "seed": trial_seed,
                        "theorem": rep.theorem_id,
                        "margin": margin,
                        "spec": {
                            "d": spec.d, "k": spec.k,
                            "spectrum": list(spec.spectrum),
                            "subspace_mode": list(spec.subspace_mode),
                            "invariant_choice": spec.invariant_choice
                            if isinstance(spec.invariant_choice, str)
                            else list(spec.invariant_choice),
                        },
                    })
            for tid, reason in skips.items():
                if tid in tallies and tid not in seen:
                    tallies[tid].skips[reason] = tallies[tid].skips.get(reason, 0) + 1
    finally:
        if pool is not None:
            pool.shutdown()

    for info in experimental.values():
        if math.isinf(info["worst_margin"]):
            info["worst_margin"] = None
    return RunReport(
        instances=trials,
        tallies=tallies,
        experimental=experimental,
        flagged=flagged,
        elapsed_s=time.perf_counter() - start,
    )


def example_report(name, theta, a=0.0, b=1.0, c=2.0, d=3.0, tol=None):
    """Key quantities of one worked example at one angle, as a flat dict."""
    A, X, Y = worked_example(name, a, b, c, d, theta)
    out = {"name": name, "theta": theta}
    if name == "exa1":
        rc = bnd.mixed_bound_cos(A, X, Y, tol)
        rt = bnd.mixed_bound_tan(A, X, Y, tol)
        out.update({
            "lhs": rc.lhs.tolist(),
            "cos_rhs": rc.rhs.tolist(),
            "tan_rhs": rt.rhs.tolist(),
            "lhs_1": float(rc.lhs[0]),
            "cos_rhs_1": float(rc.rhs[0]),
            "tan_rhs_1": float(rt.rhs[0]),
            "cos_margin": rc.verdict.worst_margin,
            "tan_margin": rt.verdict.worst_margin,
            "holds": rc.verdict.holds and rt.verdict.holds,
        })
        return out
    cert = bnd.dkn_certificate(A, X, Y)
    improved, _ = bnd.tan_theta_improved(A, X, Y, tol)
    delta_prime = improved.metadata["delta_prime"]
    quad = bnd.quadratic_aposteriori(A, X, Y, delta_prime, "quadratic_improved", tol)
    i_sp = quad.metadata["norms"].index("schatten_inf")
    out.update({
        "delta": None if cert is None else cert.delta,
        "delta_prime": delta_prime,
        "classical_ratio": None if cert is None else
            float(bnd.rayleigh(A, Y).residual_singulars[0] / cert.delta),
        "improved_ratio": float(improved.rhs[0] / delta_prime),
        "quadratic_spectral_lhs": float(quad.lhs[i_sp]),
        "quadratic_spectral_rhs": float(quad.rhs[i_sp]),
        "holds": improved.verdict.holds and quad.verdict.holds,
    })
    return out


def sweep_theta(name, thetas, a=0.0, b=1.0, c=2.0, d=3.0, tol=None):
    """Tabulate a worked example across an angle grid.

    Returns a list of row dicts (one per angle). Angles must lie strictly
    inside (0, pi/2).
    """
    thetas = [float(t) for t in thetas]
    if not thetas:
        raise GridInvalidError("empty grid")
    for t in thetas:
        if not 0.0 < t < math.pi / 2:
            raise GridInvalidError(f"theta {t} outside (0, pi/2)")
    return [example_report(name, t, a, b, c, d, tol) for t in thetas]
