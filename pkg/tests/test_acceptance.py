"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line."""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from complexon import (
    ExperimentConfig,
    StepComplexon,
    StepSignal,
    apply_cso,
    build_complex,
    cso_spectrum,
    density_in_complexon,
    discretized_kernel_spectrum,
    empirical_simplex_rate,
    example_complexon,
    hom_density,
    induce_complexon,
    marginal,
    raised_adjacency,
    run_convergence,
)
from complexon.cli import main as cli_main
from complexon.experiment import LAMBDA_MINUS, LAMBDA_PLUS

from .conftest import ACCEPTANCE_LINES, random_complex, random_step_table

TRIALS = 20
SMALL_NS = range(10, 31)
LARGE_NS = range(120, 150)


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def structural_corpus():
    """50 random complexes on at most 8 nodes, paired with d in {2, 3}."""
    rng = np.random.default_rng(2024)
    out = []
    for k in range(50):
        d = 2 + k % 2
        n = int(rng.integers(d + 1, 9))
        K = random_complex(rng, n, 4, n_top=int(rng.integers(1, 6)))
        if K.dim < d:
            seed_simplex = rng.choice(np.arange(1, n + 1), size=d + 1, replace=False).tolist()
            K = build_complex(n, list(K) + [seed_simplex])
        out.append((K, d))
    return out


@pytest.fixture(scope="module")
def convergence_runs():
    small = run_convergence(ExperimentConfig(n_min=SMALL_NS.start, n_max=SMALL_NS.stop - 1, trials=TRIALS))
    large = run_convergence(ExperimentConfig(n_min=LARGE_NS.start, n_max=LARGE_NS.stop - 1, trials=TRIALS))
    return small, large


@pytest.mark.slow
def test_criterion_1_analytic_limits(convergence_runs):
    _, large = convergence_runs
    m = {i: large.values(149, i).mean() for i in (1, 2, -1, -2)}
    ok = (
        abs(m[1] - LAMBDA_PLUS) <= 0.03
        and abs(m[-1] - LAMBDA_MINUS) <= 0.03
        and abs(m[2]) <= 0.05
        and abs(m[-2]) <= 0.05
    )
    detail = (
        f"n=149, {TRIALS} trials: mean l1={m[1]:.5f} vs {LAMBDA_PLUS:.5f}, "
        f"l-1={m[-1]:.5f} vs {LAMBDA_MINUS:.5f}, l2={m[2]:.5f}, l-2={m[-2]:.5f}"
    )
    record(1, "analytic-limit reproduction", ok, detail)


@pytest.mark.slow
def test_criterion_2_convergence_trend(convergence_runs):
    small, large = convergence_runs
    err_small = np.mean([np.abs(small.values(n, 1) - LAMBDA_PLUS).mean() for n in SMALL_NS])
    err_large = np.mean([np.abs(large.values(n, 1) - LAMBDA_PLUS).mean() for n in LARGE_NS])
    detail = f"mean |l1 - limit| over n in [10,30] = {err_small:.5f}, over n in [120,149] = {err_large:.5f}"
    record(2, "convergence trend", err_small > err_large, detail)


def test_criterion_3_marginal_equals_raised_adjacency():
    worst = 0.0
    exact = True
    for K, d in structural_corpus():
        N = raised_adjacency(K, d).matrix
        W = induce_complexon(K)
        M = marginal(W, d).values
        # integer numerators over n^(d-1), read straight off the induced table
        counts = W.tables[d].sum(axis=tuple(range(2, d + 1))).astype(np.int64)
        scale = K.n ** (d - 1)
        exact &= all(
            Fraction(int(round(N[i, j] * scale)), scale) == Fraction(int(counts[i, j]), scale)
            and N[i, j] == M[i, j]
            for i, j in itertools.product(range(K.n), repeat=2)
        )
        worst = max(worst, float(np.max(np.abs(N - M))))
    record(3, "cell-summed marginal equals raised adjacency", exact and worst == 0.0, f"50 complexes, max diff {worst:g}")


def test_criterion_4_eigenfunction_residuals():
    worst_res = worst_gram = 0.0
    for K, d in structural_corpus():
        W = induce_complexon(K)
        spec = cso_spectrum(K, d)
        for k in range(K.n):
            phi = spec.vectors[:, k]
            Tphi = apply_cso(W, d, StepSignal(phi)).values
            worst_res = max(worst_res, float(np.max(np.abs(Tphi - spec.values[k] * phi))))
        gram = spec.vectors.T @ spec.vectors / K.n
        worst_gram = max(worst_gram, float(np.max(np.abs(gram - np.eye(K.n)))))
    ok = worst_res <= 1e-10 and worst_gram <= 1e-10
    record(4, "lifted eigenpairs of the induced operator", ok, f"max residual {worst_res:.2e}, max Gram error {worst_gram:.2e}")


def small_pattern_corpus():
    return [
        build_complex(1, []),
        build_complex(2, []),
        build_complex(2, [{1, 2}]),
        build_complex(3, [{1, 2}, {2, 3}]),
        build_complex(3, [{1, 2}, {2, 3}, {1, 3}]),
        build_complex(3, [{1, 2, 3}]),
        build_complex(4, [{1, 2, 3}, {3, 4}]),
        build_complex(4, [{1, 2}, {1, 3}, {1, 4}]),
        build_complex(4, [{1, 2}, {2, 3}, {3, 4}, {1, 4}]),
        build_complex(4, [{1, 2, 3}, {1, 2, 4}]),
        build_complex(4, list(itertools.combinations(range(1, 5), 3))),
        build_complex(4, [{1, 2, 3, 4}]),
    ]


def small_target_corpus():
    rng = np.random.default_rng(77)
    fixed = [
        build_complex(3, []),
        build_complex(3, [{1, 2}, {2, 3}, {1, 3}]),
        build_complex(3, [{1, 2, 3}]),
        build_complex(4, [{1, 2, 3, 4}]),
        build_complex(5, list(itertools.combinations(range(1, 6), 2)) + [{1, 2, 3}, {3, 4, 5}]),
        # octahedron surface
        build_complex(6, [{a, b, c} for a in (1, 2) for b in (3, 4) for c in (5, 6)]),
        build_complex(7, [{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 6, 7}, {1, 2, 7}, {4, 5, 6, 7}]),
    ]
    return fixed + [random_complex(rng, int(rng.integers(3, 8)), 3) for _ in range(8)]


def test_criterion_5_corollary_identity():
    pairs = mismatches = 0
    for F in small_pattern_corpus():
        for K in small_target_corpus():
            W = induce_complexon(K)
            pairs += 1
            a = hom_density(F, K)
            b = density_in_complexon(F, W, estimator="exact-grid")
            mismatches += not (a.value == b.value and a.hom_count == b.hom_count)
    record(5, "density of a complex equals density in its induced complexon", mismatches == 0, f"{pairs} pairs, {mismatches} mismatches")


def test_criterion_6_shift_forms_agree():
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 7))
        d = int(rng.integers(1, 4))
        W = StepComplexon(n, {k: random_step_table(rng, n, k) for k in range(1, d + 1)})
        X = StepSignal(rng.uniform(-1, 1, n))
        a = apply_cso(W, d, X, form="marginal").values
        b = apply_cso(W, d, X, form="message-passing").values
        worst = max(worst, float(np.max(np.abs(a - b))))
    record(6, "marginal and message-passing shift forms agree", worst <= 1e-10, f"100 pairs, max diff {worst:.2e}")


@pytest.mark.slow
def test_criterion_7_discretized_kernel_spectrum():
    spec = discretized_kernel_spectrum(marginal(example_complexon(), 2), 512)
    lam1 = spec.eigenvalue(1)
    big = int(np.count_nonzero(np.abs(spec.values) > 1e-3))
    ok = abs(lam1 - 0.5178791878) <= 1e-3 and big == 2
    record(7, "midpoint-discretized kernel spectrum", ok, f"m=512: l1={lam1:.10f}, {big} eigenvalues above 1e-3")


def test_criterion_8_sampling_rate():
    rate = empirical_simplex_rate(example_complexon(), 2, 10, 1000, seed=0)
    record(8, "triangle inclusion rate", 0.48 <= rate <= 0.52, f"n=10, 1000 trials, rate={rate:.4f}")


def test_criterion_9_determinism(tmp_path):
    outputs = []
    for run in ("a", "b"):
        csv_path = tmp_path / f"{run}.csv"
        args = ["converge", "--n-min", "6", "--n-max", "30", "--trials", "3", "--seed", "11"]
        assert cli_main(args + ["--out-csv", str(csv_path)]) == 0
        outputs.append((csv_path.read_bytes(), (tmp_path / f"{run}_summary.csv").read_bytes()))
    same = outputs[0] == outputs[1]
    record(9, "identical converge runs give byte-identical CSV", same, f"{len(outputs[0][0])} bytes per trials CSV")
