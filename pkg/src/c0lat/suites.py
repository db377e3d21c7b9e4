"""Named verification suites: seeded, reproducible, and shared between the
command line and the acceptance tests.

Each suite returns a :class:`~c0lat.jordan.VerificationReport`.  Trials are
independent given the seed (trial i derives its generator from seed + i),
so they may run in parallel; the C0LAT_THREADS environment variable caps
the worker count (default: the number of logical processors) and the
merge order is fixed by trial index, keeping reports byte-identical
regardless of parallelism.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import blaschke
from .blaschke import BlaschkeProduct
from .calculus import apply_blaschke, classify_c0, minimal_function, radial_validate
from .jordan import (
    VerificationReport,
    Violation,
    brute_force_lat,
    check_lattice_isomorphism,
    find_quasiaffinity,
    jordan_model,
    theorem97_verifier,
    theorem_x3_verifier,
)
from .modelspace import ModelSpace, compressed_shift, enumerate_lattice
from .sampling import (
    certifiable_c0,
    random_blaschke,
    random_blaschke_with_divisor_cap,
    random_contraction,
    random_divisor,
    random_structured_c0,
    random_unit_disk_points,
    random_unitary,
    random_well_conditioned,
)
from .subspace import (
    Subspace,
    contains,
    distance,
    equals,
    join,
    meet,
    op_norm,
)

__all__ = [
    "SUITES",
    "SuiteConfig",
    "calculus_suite",
    "distributive_suite",
    "duality_suite",
    "jordan_model_suite",
    "lattice_laws_suite",
    "meetjoin_suite",
    "oracle_latmatch_suite",
    "prop14_suite",
    "run_suite",
    "thm97_suite",
    "x3_suite",
]


def thread_count() -> int:
    raw = os.environ.get("C0LAT_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        n = os.cpu_count() or 1
    return n


def _run_trials(trial_fn, trials: int):
    """Evaluate trial_fn(0..trials-1), possibly in parallel, merging results
    deterministically by index.  trial_fn returns (violations, max_residual)."""
    workers = min(thread_count(), max(1, trials))
    if workers <= 1 or trials <= 1:
        results = [trial_fn(i) for i in range(trials)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(trial_fn, range(trials)))
    violations = []
    max_residual = 0.0
    for vs, resid in results:
        violations.extend(vs)
        max_residual = max(max_residual, resid)
    return tuple(violations), max_residual


def _report(suite, seed, trials, violations, max_residual) -> VerificationReport:
    return VerificationReport(
        suite=suite,
        seed=seed,
        trials=trials,
        violations=violations,
        max_residual=max_residual,
    )


# --------------------------------------------------------------------------
# inner-function arithmetic laws

def lattice_laws_suite(trials: int = 100, seed: int = 0, inputs=(), **tols) -> VerificationReport:
    """gcd/lcm lattice laws, the degree formula, the divisibility/equivalence
    biconditional, quotient consistency, and unimodularity on the circle."""
    tol_circle = tols.get("circle", 1e-9)
    extra = tuple(inputs)
    circle = np.exp(2j * np.pi * np.arange(64) / 64)

    def trial(i):
        rng = np.random.default_rng(seed + i)
        pool = random_unit_disk_points(rng, 4, radius=0.85, min_separation=0.1)
        b1 = extra[i % len(extra)] if extra else random_blaschke(rng, 6, pool=pool)
        b2 = random_blaschke(rng, 6, pool=pool)
        b3 = random_blaschke(rng, 6, pool=pool)
        violations = []

        def law(kind, ok):
            if not ok:
                violations.append(Violation(i, kind, 1.0, {}))

        law("gcd-commutative", blaschke.equiv(blaschke.gcd(b1, b2), blaschke.gcd(b2, b1)))
        law("lcm-commutative", blaschke.equiv(blaschke.lcm(b1, b2), blaschke.lcm(b2, b1)))
        law(
            "gcd-associative",
            blaschke.equiv(
                blaschke.gcd(blaschke.gcd(b1, b2), b3),
                blaschke.gcd(b1, blaschke.gcd(b2, b3)),
            ),
        )
        law(
            "lcm-associative",
            blaschke.equiv(
                blaschke.lcm(blaschke.lcm(b1, b2), b3),
                blaschke.lcm(b1, blaschke.lcm(b2, b3)),
            ),
        )
        law("absorption", blaschke.equiv(blaschke.gcd(b1, blaschke.lcm(b1, b2)), b1))
        g, l = blaschke.gcd(b1, b2), blaschke.lcm(b1, b2)
        law("degree-formula", g.degree + l.degree == b1.degree + b2.degree)
        law(
            "quotient-identity",
            blaschke.equiv(blaschke.divide(l, b1), blaschke.divide(b2, g)),
        )
        mutual = blaschke.divides(b1, b2) and blaschke.divides(b2, b1)
        law("divides-equiv", mutual == blaschke.equiv(b1, b2))
        resid = float(np.max(np.abs(np.abs(blaschke.evaluate(b1, circle)) - 1.0)))
        if resid > tol_circle:
            violations.append(Violation(i, "unimodular-boundary", resid, {}))
        return violations, resid

    violations, max_resid = _run_trials(trial, trials)
    return _report("lattice-laws", seed, trials, violations, max_resid)


# --------------------------------------------------------------------------
# the compressed shift is annihilated by its symbol and nothing smaller

def prop14_suite(trials: int = 100, seed: int = 0, inputs=(), **tols) -> VerificationReport:
    """||theta(S(theta))|| below tolerance and ||phi(S(theta))|| above the
    floor for every maximal proper divisor phi."""
    tol_annihilate = tols.get("annihilate", 1e-7)
    floor = tols.get("floor", 1e-3)
    thetas = tuple(inputs)

    def trial(i):
        rng = np.random.default_rng(seed + i)
        theta = thetas[i % len(thetas)] if thetas else random_blaschke(rng, 6, radius=0.85)
        s = compressed_shift(theta).matrix
        violations = []
        resid = float(op_norm(apply_blaschke(s, theta)))
        if resid > tol_annihilate:
            violations.append(Violation(i, "annihilation", resid, {"degree": theta.degree}))
        for z, _ in theta.zeros:
            phi = blaschke.divide(theta, BlaschkeProduct(((z, 1),)))
            low = float(op_norm(apply_blaschke(s, phi)))
            if low <= floor:
                violations.append(
                    Violation(i, "maximality", low, {"dropped": [z.real, z.imag]})
                )
        return violations, resid

    violations, max_resid = _run_trials(trial, trials)
    return _report("prop14", seed, trials, violations, max_resid)


# --------------------------------------------------------------------------
# meet/join of divisor subspaces against lcm/gcd

def meetjoin_suite(trials: int = 200, seed: int = 0, inputs=(), **tols) -> VerificationReport:
    """Numerical meet/join of two divisor subspaces equals the lcm/gcd
    divisor subspaces; inclusion between them reverses divisibility."""
    tol = tols.get("distance", 1e-7)
    thetas = tuple(inputs)

    def trial(i):
        rng = np.random.default_rng(seed + i)
        theta = thetas[i % len(thetas)] if thetas else random_blaschke(rng, 5, radius=0.85)
        space = ModelSpace(theta)
        phi1, phi2 = random_divisor(rng, theta), random_divisor(rng, theta)
        m1, m2 = space.divisor_subspace(phi1), space.divisor_subspace(phi2)
        violations = []
        d_meet = distance(meet(m1, m2), space.divisor_subspace(blaschke.lcm(phi1, phi2)))
        d_join = distance(join(m1, m2), space.divisor_subspace(blaschke.gcd(phi1, phi2)))
        if d_meet > tol:
            violations.append(Violation(i, "meet-lcm", d_meet, {}))
        if d_join > tol:
            violations.append(Violation(i, "join-gcd", d_join, {}))
        if contains(m2, m1) != blaschke.divides(phi2, phi1):
            violations.append(Violation(i, "inclusion-reversal", 1.0, {}))
        return violations, max(d_meet, d_join)

    violations, max_resid = _run_trials(trial, trials)
    return _report("propq-meetjoin", seed, trials, violations, max_resid)


# --------------------------------------------------------------------------
# the divisor lattice is distributive (exhaustive triples)

def distributive_suite(trials: int = 20, seed: int = 0, inputs=(), **tols) -> VerificationReport:
    """Exhaustive distributive-identity check over the enumerated invariant
    lattice of each theta, through meet/join index tables built with the
    subspace equality tolerance."""
    del tols
    thetas = tuple(inputs)

    def trial(i):
        rng = np.random.default_rng(seed + i)
        theta = (
            thetas[i % len(thetas)]
            if thetas
            else random_blaschke_with_divisor_cap(rng, divisor_cap=12)
        )
        entries = enumerate_lattice(theta)
        subs = [s for _, s in entries]
        count = len(subs)
        violations = []

        def locate(s: Subspace):
            for idx, e in enumerate(subs):
                if s.dim == e.dim and equals(s, e):
                    return idx
            return None

        meet_idx = np.empty((count, count), dtype=int)
        join_idx = np.empty((count, count), dtype=int)
        for a in range(count):
            for b in range(a, count):
                lo = locate(meet(subs[a], subs[b]))
                hi = locate(join(subs[a], subs[b]))
                if lo is None or hi is None:
                    violations.append(Violation(i, "closure", 1.0, {"pair": [a, b]}))
                    return violations, 1.0
                meet_idx[a, b] = meet_idx[b, a] = lo
                join_idx[a, b] = join_idx[b, a] = hi
        for l in range(count):
            lhs = meet_idx[l, join_idx]
            rhs = join_idx[meet_idx[l, :][:, None], meet_idx[l, :][None, :]]
            bad = np.argwhere(lhs != rhs)
            for m, n in bad:
                violations.append(
                    Violation(i, "distributive-identity", 1.0, {"triple": [l, int(m), int(n)]})
                )
        return violations, 0.0

    violations, max_resid = _run_trials(trial, trials)
    return _report("distributive", seed, trials, violations, max_resid)


# --------------------------------------------------------------------------
# divisor enumeration matches the eigenvector-subset oracle

def oracle_latmatch_suite(trials: int = 20, seed: int = 0, inputs=(), **tols) -> VerificationReport:
    """For theta with 3 distinct zeros, enumerate_lattice must match the
    brute-force invariant-subspace oracle bijectively."""
    del tols
    thetas = tuple(inputs)

    def trial(i):
        rng = np.random.default_rng(seed + i)
        if thetas:
            theta = thetas[i % len(thetas)]
        else:
            points = random_unit_disk_points(rng, 3, radius=0.8, min_separation=0.2)
            theta = BlaschkeProduct(tuple((z, 1) for z in points))
        enumerated = enumerate_lattice(theta)
        oracle = brute_force_lat(compressed_shift(theta).matrix)
        violations = []
        if len(enumerated) != len(oracle):
            violations.append(
                Violation(i, "count-mismatch", float(abs(len(enumerated) - len(oracle))), {})
            )
            return violations, 1.0
        used = [False] * len(oracle)
        worst = 0.0
        for _, s in enumerated:
            best = None
            for k, candidate in enumerate(oracle):
                if not used[k] and candidate.dim == s.dim and equals(s, candidate):
                    best = k
                    break
            if best is None:
                violations.append(Violation(i, "unmatched-subspace", 1.0, {"dim": s.dim}))
            else:
                used[best] = True
                worst = max(worst, distance(s, oracle[best]))
        return violations, worst

    violations, max_resid = _run_trials(trial, trials)
    return _report("oracle-latmatch", seed, trials, violations, max_resid)


# --------------------------------------------------------------------------
# modular law plus proof objects on random C0 matrices

def _random_c0_instance(rng, i, n_max=8, spectral_radius=0.9):
    """Alternates generic contractions with non-derogatory Jordan-structured
    ones; derogatory spectra are excluded because their invariant-subspace
    continua defeat fixed-threshold meet/join verification."""
    n = int(rng.integers(3, n_max + 1))
    return certifiable_c0(
        rng,
        n,
        structured=i % 2 == 1,
        spectral_radius=min(spectral_radius, 0.8) if i % 2 == 0 else spectral_radius,
        derogatory=False,
    )


def thm97_suite(
    trials: int = 50,
    seed: int = 0,
    inputs=(),
    triples: int = 100,
    **tols,
) -> VerificationReport:
    """theorem97_verifier over random C0 matrices (or the given ones):
    modular law on sampled triples plus the sum-map proof objects."""
    tol_modular = tols.get("modular", 1e-6)
    tol_intertwine = tols.get("intertwine", 1e-8)
    tol_preimage = tols.get("preimage", 1e-7)
    matrices = tuple(inputs)
    if matrices:
        # each input matrix gets `trials` sampled triples
        report = None
        for k, t in enumerate(matrices):
            part = theorem97_verifier(
                t,
                triples=trials,
                seed=seed + k,
                tol_modular=tol_modular,
                tol_intertwine=tol_intertwine,
                tol_preimage=tol_preimage,
            )
            report = part if report is None else report.merged_with(part)
        return report

    def trial(i):
        rng = np.random.default_rng(seed + i)
        t = _random_c0_instance(rng, i)
        part = theorem97_verifier(
            t,
            triples=triples,
            seed=seed + 1000 * (i + 1),
            tol_modular=tol_modular,
            tol_intertwine=tol_intertwine,
            tol_preimage=tol_preimage,
        )
        tagged = tuple(
            Violation(i, v.kind, v.residual, {**v.witness, "inner_trial": v.trial})
            for v in part.violations
        )
        return list(tagged), part.max_residual

    violations, max_resid = _run_trials(trial, trials)
    return _report("modular-thm97", seed, trials * triples, violations, max_resid)


# --------------------------------------------------------------------------
# modularity transfer along a quasiaffinity

def x3_suite(
    trials: int = 20,
    seed: int = 0,
    inputs=(),
    triples: int = 50,
    **tols,
) -> VerificationReport:
    """theorem_x3_verifier on similarity-built instances T2 = Q T1 Q^{-1}
    with Y = Q (condition number at most 10)."""
    tol = tols.get("transfer", 1e-6)
    matrices = tuple(inputs)

    def trial(i):
        rng = np.random.default_rng(seed + i)
        if matrices:
            t1 = matrices[i % len(matrices)]
            n = t1.shape[0]
        else:
            n = int(rng.integers(3, 9))
            t1 = _random_c0_instance(rng, i, n_max=8, spectral_radius=0.8)
            n = t1.shape[0]
        q = random_well_conditioned(rng, n, cond_cap=10.0)
        t2 = q @ t1 @ np.linalg.inv(q)
        y = q / op_norm(q)
        part = theorem_x3_verifier(t1, t2, y, samples=triples, seed=seed + 1000 * (i + 1), tol=tol)
        tagged = tuple(
            Violation(i, v.kind, v.residual, {**v.witness, "inner_trial": v.trial})
            for v in part.violations
        )
        return list(tagged), part.max_residual

    violations, max_resid = _run_trials(trial, trials)
    return _report("x3-transfer", seed, trials * triples, violations, max_resid)


# --------------------------------------------------------------------------
# functional-calculus laws

def calculus_suite(trials: int = 200, seed: int = 0, inputs=(), **tols) -> VerificationReport:
    """Multiplicativity and contractivity of the Blaschke calculus, with a
    radial-limit validation every tenth trial."""
    tol_mult = tols.get("multiplicative", 1e-8)
    tol_contract = tols.get("contractive", 1e-8)
    tol_radial = tols.get("radial", 1e-2)
    matrices = tuple(inputs)

    def trial(i):
        rng = np.random.default_rng(seed + i)
        if matrices:
            t = matrices[i % len(matrices)]
        else:
            n = int(rng.integers(2, 9))
            t = random_contraction(rng, n, spectral_radius=0.8, norm_cap=0.85)
        b1 = random_blaschke(rng, 4, radius=0.6)
        b2 = random_blaschke(rng, 4, radius=0.6)
        violations = []
        product = apply_blaschke(t, blaschke.multiply(b1, b2))
        split = apply_blaschke(t, b1) @ apply_blaschke(t, b2)
        r_mult = float(op_norm(product - split))
        if r_mult > tol_mult:
            violations.append(Violation(i, "multiplicativity", r_mult, {}))
        r_norm = float(op_norm(apply_blaschke(t, b1)))
        if r_norm > 1.0 + tol_contract:
            violations.append(Violation(i, "contractivity", r_norm, {}))
        if i % 10 == 0:
            resids = radial_validate(t, b1, (0.9, 0.99, 0.999))
            if resids[-1] > tol_radial:
                violations.append(Violation(i, "radial-limit", resids[-1], {}))
            for a, b in zip(resids, resids[1:]):
                if b > 1.1 * a:
                    violations.append(Violation(i, "radial-monotone", b, {"previous": a}))
        return violations, r_mult

    violations, max_resid = _run_trials(trial, trials)
    return _report("calculus", seed, trials, violations, max_resid)


# --------------------------------------------------------------------------
# lattice-isomorphism duality evidence

def _duality_instance(rng, deficient: bool):
    import scipy.linalg

    if deficient:
        na, nb = int(rng.integers(2, 5)), int(rng.integers(1, 4))
        a = random_contraction(rng, na, 0.7)
        b = random_contraction(rng, nb, 0.7)
        t1 = a
        t2 = scipy.linalg.block_diag(a, b).astype(complex)
        x = np.vstack([np.eye(na), np.zeros((nb, na))]).astype(complex)
        return t1, t2, x
    n = int(rng.integers(3, 7))
    t1 = random_structured_c0(rng, n, spectral_radius=0.8)
    q = random_well_conditioned(rng, n, cond_cap=10.0)
    t2 = q @ t1 @ np.linalg.inv(q)
    return t1, t2, q / op_norm(q)


def duality_suite(trials: int = 20, seed: int = 0, inputs=(), samples: int = 15, **tols) -> VerificationReport:
    """Sampled surjectivity of X_* against sampled injectivity of (X*)_*:
    the two must agree — both 1.0 on full-rank intertwiners, both below
    1.0 on deliberately rank-deficient ones."""
    del tols, inputs

    def trial(i):
        rng = np.random.default_rng(seed + i)
        deficient = i % 2 == 1
        t1, t2, x = _duality_instance(rng, deficient)
        report = check_lattice_isomorphism(x, t1, t2, samples=samples, seed=seed + 500 + i)
        violations = []
        surj, adj_inj = report.surjective_evidence, report.adjoint_injective_evidence
        if deficient:
            if surj >= 1.0 or adj_inj >= 1.0:
                violations.append(
                    Violation(
                        i,
                        "deficient-evidence",
                        max(surj, adj_inj),
                        {"surjective": surj, "adjoint_injective": adj_inj},
                    )
                )
        else:
            if surj < 1.0 or adj_inj < 1.0:
                violations.append(
                    Violation(
                        i,
                        "full-rank-evidence",
                        1.0 - min(surj, adj_inj),
                        {"surjective": surj, "adjoint_injective": adj_inj},
                    )
                )
        agree = (surj == 1.0) == (adj_inj == 1.0)
        if not agree:
            violations.append(
                Violation(
                    i,
                    "duality-agreement",
                    abs(surj - adj_inj),
                    {"surjective": surj, "adjoint_injective": adj_inj},
                )
            )
        return violations, report.max_residual

    violations, max_resid = _run_trials(trial, trials)
    return _report("duality", seed, trials, violations, max_resid)


# --------------------------------------------------------------------------
# Jordan models: chain, head, certificates, similarity invariance
# (acceptance-only; not registered as a CLI suite)

def jordan_model_suite(trials: int = 50, seed: int = 0, **tols) -> VerificationReport:
    tol_resid = tols.get("certificate", 1e-7)

    def trial(i):
        rng = np.random.default_rng(seed + i)
        # even trials: any certifiable spectrum, unitary conjugate;
        # odd trials: non-unitary similarity (cond <= 2), which forces the
        # norm cap down, so the spectrum is kept small and wide
        if i % 2 == 0:
            cond = 1.0
            n = int(rng.integers(2, 9))
            t = certifiable_c0(rng, n, structured=i % 4 == 2)
        else:
            cond = float(rng.uniform(1.2, 2.0))
            n = int(rng.integers(2, 6))
            t = certifiable_c0(
                rng,
                n,
                structured=i % 4 == 3,
                norm_cap=0.9 / cond,
                max_block=2,
                distinct_cap=2,
            )
        n = t.shape[0]
        violations = []
        model = jordan_model(t, seed=seed + i, verify=False)
        for cur, nxt in zip(model.thetas, model.thetas[1:]):
            if not blaschke.divides(nxt, cur):
                violations.append(Violation(i, "divisibility-chain", 1.0, {}))
        if not model.thetas or not blaschke.equiv(model.thetas[0], minimal_function(t)):
            violations.append(Violation(i, "head-minimal-function", 1.0, {}))
        op = model.operator()
        worst = 0.0
        for a, b, direction in ((t, op, "forward"), (op, t, "backward")):
            x = find_quasiaffinity(a, b, seed=seed + i)
            if x is None:
                violations.append(Violation(i, f"certificate-{direction}", 1.0, {}))
                continue
            resid = float(op_norm(x @ a - b @ x))
            worst = max(worst, resid)
            if resid > tol_resid:
                violations.append(Violation(i, f"certificate-{direction}", resid, {}))
        q = random_unitary(rng, n) if cond == 1.0 else random_well_conditioned(rng, n, cond_cap=cond)
        conjugate = q @ t @ np.linalg.inv(q)
        model2 = jordan_model(conjugate, seed=seed + i, verify=False)
        same = len(model.thetas) == len(model2.thetas) and all(
            blaschke.almost_equiv(a, b, 1e-7)
            for a, b in zip(model.thetas, model2.thetas)
        )
        if not same:
            violations.append(
                Violation(
                    i,
                    "similarity-invariance",
                    1.0,
                    {
                        "model": [str(th) for th in model.thetas],
                        "conjugate": [str(th) for th in model2.thetas],
                    },
                )
            )
        return violations, worst

    violations, max_resid = _run_trials(trial, trials)
    return _report("jordan-model", seed, trials, violations, max_resid)


# --------------------------------------------------------------------------
# registry + config

SUITES = {
    "lattice-laws": lattice_laws_suite,
    "prop14": prop14_suite,
    "propq-meetjoin": meetjoin_suite,
    "distributive": distributive_suite,
    "modular-thm97": thm97_suite,
    "x3-transfer": x3_suite,
    "calculus": calculus_suite,
    "duality": duality_suite,
    "oracle-latmatch": oracle_latmatch_suite,
}

SUITE_SUMMARIES = {
    "lattice-laws": "gcd/lcm lattice laws, degree formula, boundary unimodularity",
    "prop14": "S(theta) is annihilated by theta and by no maximal proper divisor",
    "propq-meetjoin": "divisor-subspace meet/join match the lcm/gcd divisor subspaces",
    "distributive": "the enumerated invariant lattice of S(theta) is distributive",
    "modular-thm97": "modular law on sampled invariant triples of C0 matrices, with sum-map proof objects",
    "x3-transfer": "modularity transfers along an onto quasiaffinity (preimage and product identities)",
    "calculus": "multiplicativity/contractivity of the matrix calculus and the radial limit",
    "duality": "sampled surjectivity of X_* agrees with sampled injectivity of the adjoint map",
    "oracle-latmatch": "enumerated divisor lattice matches the eigenvector-subset brute-force oracle",
}


@dataclass(frozen=True)
class SuiteConfig:
    """Reproducibility contract for a suite run; embedded in every report."""

    suite: str
    seed: int = 0
    trials: int = 100
    tolerances: dict = field(default_factory=dict)
    output: str = "text"
    input_paths: tuple = ()

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ValueError(
                f"unknown suite {self.suite!r}; choose from {sorted(SUITES)}"
            )
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.output not in ("text", "json"):
            raise ValueError("output must be 'text' or 'json'")

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "tolerances": dict(sorted(self.tolerances.items())),
            "output": self.output,
            "input_paths": list(self.input_paths),
        }


def run_suite(config: SuiteConfig, inputs=()) -> VerificationReport:
    """Dispatch a configured suite; ``inputs`` are decoded file payloads
    (Blaschke products or matrices, depending on the suite)."""
    fn = SUITES[config.suite]
    return fn(
        trials=config.trials,
        seed=config.seed,
        inputs=tuple(inputs),
        **config.tolerances,
    )
