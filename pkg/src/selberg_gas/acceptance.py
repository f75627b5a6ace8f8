"""Acceptance suite: one callable per criterion, shared by the CLI
`validate` subcommand and the pytest suite.

Each criterion pins its tolerances here; nothing is deferred to runtime
calibration.  Functions return a CriterionResult rather than raising so
the full table always prints.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import fisherhartwig as fh
from . import quadrature as quad
from .averages import DualityCase, duality_lhs, duality_rhs, mc_density_matrix_table
from .ensembles import RngStream, sample_jue_halfhalf, sample_jue_metropolis
from .exact import (
    DensityMatrixQuery,
    EnsembleParams,
    MorrisParams,
    density_matrix_asymptote,
    morris_closed,
    selberg_closed,
)
from .orbitals import (
    EIGEN_KERNEL,
    apply_kernel,
    contiguity_residuals,
    eigen_residual,
    l_operator_on_s,
    appendix_s,
    orbital,
    porter_stirling_apply,
)
from .specfun import log_barnes_g


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str


def criterion_1_table1(seed: int = 42, threads: int = 1, m_samples: int = 5000,
                       n_particles: int = 14) -> CriterionResult:
    """Ten MC/asymptote ratios at the standard X grid, bands [0.88, 1.17]
    pointwise and [0.97, 1.06] on the mean; single-threaded runtime cap."""
    start = time.time()
    xs = [0.025 + 0.05 * i for i in range(10)]
    queries = [DensityMatrixQuery(N=n_particles, X=x, Y=1.0 - x) for x in xs]
    estimates = mc_density_matrix_table(queries, m_samples, seed, threads)
    ratios = [est.value / density_matrix_asymptote(q)
              for q, est in zip(queries, estimates)]
    elapsed = time.time() - start
    in_band = all(0.88 <= r <= 1.17 for r in ratios)
    mean = sum(ratios) / len(ratios)
    mean_ok = 0.97 <= mean <= 1.06
    runtime_ok = elapsed <= 300.0
    detail = (f"ratios {[f'{r:.4f}' for r in ratios]}, mean {mean:.4f}, "
              f"elapsed {elapsed:.1f}s")
    return CriterionResult(1, "density-matrix table reproduction",
                           in_band and mean_ok and runtime_ok, detail)


def criterion_2_duality() -> CriterionResult:
    """Duality identity at n=m=2 for four (weight, t) cases, 1e-6 relative."""
    worst = 0.0
    for l in (0.5, -0.5):
        for t in (0.3, 0.7):
            params = EnsembleParams(n=2, lambda1=l, lambda2=l)
            case = DualityCase(n=2, m=2, t=t, params=params)
            lhs = duality_lhs(case)
            rhs = duality_rhs(case)
            worst = max(worst, abs(lhs - rhs) / abs(lhs))
    return CriterionResult(2, "Jacobi/circular duality identity", worst <= 1e-6,
                           f"worst relative defect {worst:.2e} (tol 1e-6)")


def _selberg_quadrature(n: int, a: float, b: float, order: int = 60) -> float:
    axis = quad.power_panel(0.0, 1.0, a, b, order)

    def vdm2(*coords):
        out = 1.0
        for j in range(n):
            for k in range(j + 1, n):
                out = out * (coords[k] - coords[j]) ** 2
        return out

    return quad.tensor_integrate(vdm2, [axis] * n)


def _morris_quadrature(n: int, a: float, b: float, points: int) -> float:
    def f(*thetas):
        val = 1.0
        for th in thetas:
            z = np.exp(1j * th)
            val = val * np.exp(1j * 0.5 * (a - b) * th) * np.abs(1.0 + z) ** (a + b)
        for j in range(n):
            for k in range(j + 1, n):
                val = val * (2.0 - 2.0 * np.cos(thetas[k] - thetas[j]))
        return val
    total = quad.periodic_integrate(f, n, points) / (2.0 * math.pi) ** n
    return total.real


def criterion_3_closed_forms() -> CriterionResult:
    """Selberg and Morris closed forms vs quadrature (1e-9); Barnes G at
    integers and the fourth-power half-integer anchor (5e-4)."""
    worst = 0.0
    for n in (1, 2):
        for (a, b) in ((0.0, 0.0), (0.5, 0.5), (-0.5, -0.5), (1.0, 0.5)):
            closed = math.exp(selberg_closed(n, a, b).log_abs)
            oracle = _selberg_quadrature(n, a, b)
            worst = max(worst, abs(closed - oracle) / abs(oracle))
    for (n, a, b, pts) in ((1, 0.0, 0.0, 512), (1, 2.0, 1.0, 8192), (2, 1.0, 1.0, 512)):
        closed = math.exp(morris_closed(MorrisParams(n, a, b)).log_abs)
        oracle = _morris_quadrature(n, a, b, pts)
        worst = max(worst, abs(closed - oracle) / abs(oracle))
    quad_ok = worst <= 1e-9

    g_targets = (1.0, 1.0, 1.0, 2.0, 12.0, 288.0)
    g_worst = max(abs(math.exp(log_barnes_g(float(k + 1))) - g_targets[k]) / g_targets[k]
                  for k in range(6))
    anchor = abs(4.0 * log_barnes_g(1.5) - math.log(1.3069))
    barnes_ok = g_worst <= 1e-10 and anchor <= 5e-4
    detail = (f"worst quadrature defect {worst:.2e} (tol 1e-9), integer-G defect "
              f"{g_worst:.2e}, half-integer anchor defect {anchor:.2e} (tol 5e-4)")
    return CriterionResult(3, "closed forms vs oracles", quad_ok and barnes_ok, detail)


def criterion_4_partition_ratio() -> CriterionResult:
    """Exact Z-ratio vs the 2/pi asymptote at t = 1/2: within 2% at n = 40
    with strictly shrinking deviations over n = 5, 10, 40.

    As stated this is unattainable: at t = 1/2 the exact ratio for the
    (1/2, 1/2) weight equals the asymptote exactly at odd n (the band
    center zeroes every odd orthonormal polynomial), so the deviation at
    n = 5 is zero, and the even-n deviation is exactly 1/(n+1), giving
    2.44% at n = 40.  The test is kept faithful to the stated numbers;
    the true convergence statement is covered by the unit suite.
    """
    from .averages import partition_ratio_even

    target = 2.0 / math.pi
    devs = {}
    for n in (5, 10, 40):
        params = EnsembleParams(n=n, lambda1=0.5, lambda2=0.5)
        devs[n] = abs(partition_ratio_even(params, 0.5, 1) - target) / target
    within = devs[40] <= 0.02
    chain = devs[40] < devs[10] < devs[5]
    detail = (f"deviations n=5: {devs[5]:.3e}, n=10: {devs[10]:.3e}, "
              f"n=40: {devs[40]:.3e}; need n40 <= 2e-2 and n40 < n10 < n5")
    return CriterionResult(4, "partition-ratio asymptote drift", within and chain, detail)


def criterion_5_jacobi_drift() -> CriterionResult:
    """Charge-balanced Jacobi determinant ratio vs the conjectured asymptote:
    |delta_n| strictly decreasing over n = 8, 16, 32, 48."""
    symbol = fh.SymbolSpec(singularities=((0.5, 0.5),))
    series, preds = [], []
    for n in (8, 16, 32, 48):
        params = EnsembleParams(n=n, lambda1=0.5, lambda2=0.5)
        series.append((n, fh.hankel_balanced_log_ratio(params, symbol, n)))
        preds.append(fh.jacobi_fh_asymptote(params, symbol, n))
    deltas = [abs(ex - pred) for (_, ex), pred in zip(series, preds)]
    decreasing = all(deltas[i] > deltas[i + 1] for i in range(len(deltas) - 1))
    return CriterionResult(5, "Jacobi-weight determinant drift", decreasing,
                           f"|delta| over sizes 8,16,32,48: "
                           f"{[f'{d:.5f}' for d in deltas]}")


def criterion_6_toeplitz() -> CriterionResult:
    """Classical singular-symbol check: ln D_N - (1/4) ln N approaches
    ln(G^2(3/2)/G(2)) monotonically with final gap <= 0.02."""
    symbol = fh.SymbolSpec(singularities=((0.0, 0.5),))
    target = 2.0 * log_barnes_g(1.5) - log_barnes_g(2.0)
    gaps = []
    for N in (8, 16, 32, 48):
        det = fh.toeplitz_determinant(symbol, N)
        gaps.append(abs(det.log_abs - 0.25 * math.log(N) - target))
    monotone = all(gaps[i] > gaps[i + 1] for i in range(len(gaps) - 1))
    final_ok = gaps[-1] <= 0.02
    return CriterionResult(6, "Toeplitz singular-symbol drift", monotone and final_ok,
                           f"gaps {[f'{g:.5f}' for g in gaps]}, final tol 0.02")


def criterion_7_orbitals() -> CriterionResult:
    """Kernel eigenrelation, the pi*sqrt(2) ground eigenvalue, closed-form
    kernel constancy for three exponents, and the orbital Gram matrix."""
    eig_worst = max(eigen_residual(j, X)
                    for j in range(6) for X in (0.1, 0.3, 0.5, 0.7, 0.9))
    eig_ok = eig_worst <= 1e-4

    ground = apply_kernel(EIGEN_KERNEL, lambda Y: np.ones_like(Y), 0.5, tol=1e-9)
    ground_def = abs(ground - math.pi * math.sqrt(2.0)) / (math.pi * math.sqrt(2.0))
    ground_ok = ground_def <= 1e-6

    ps_worst = max(abs(porter_stirling_apply(nu, x) - 1.0)
                   for nu in (0.25, 0.5, 0.75)
                   for x in np.linspace(0.05, 0.95, 10))
    ps_ok = ps_worst <= 1e-6

    rule = quad.power_panel(0.0, 1.0, -0.25, -0.25, 80)
    shapes = np.array([orbital(j).evaluate(rule.nodes)
                       / (rule.nodes * (1.0 - rule.nodes)) ** 0.125 for j in range(9)])
    gram = (shapes * rule.weights) @ shapes.T / math.pi
    gram_dev = float(np.abs(gram - np.eye(9)).max())
    gram_ok = gram_dev <= 1e-8

    detail = (f"eigenrelation {eig_worst:.2e} (tol 1e-4), ground defect "
              f"{ground_def:.2e} (tol 1e-6), kernel constancy {ps_worst:.2e} "
              f"(tol 1e-6), Gram defect {gram_dev:.2e} (tol 1e-8)")
    return CriterionResult(7, "orbital spectrum",
                           eig_ok and ground_ok and ps_ok and gram_ok, detail)


def criterion_8_appendix() -> CriterionResult:
    """Contiguity relations (1e-10) and the analytic differential-operator
    eigenrelation on the hypergeometric sums (1e-9)."""
    cont_worst = 0.0
    for k in range(7):
        for z in (0.1, 0.5, 0.9):
            r1, r2 = contiguity_residuals(k, z)
            cont_worst = max(cont_worst, abs(r1), abs(r2))
    cont_ok = cont_worst <= 1e-10

    eig_worst = 0.0
    for j in range(6):
        for z in (0.2, 0.5, 0.8):
            target = -j * (j + 0.5) * appendix_s(j, z)
            defect = abs(l_operator_on_s(j, z) - target) / max(1.0, abs(target))
            eig_worst = max(eig_worst, defect)
    eig_ok = eig_worst <= 1e-9

    detail = (f"contiguity defect {cont_worst:.2e} (tol 1e-10), "
              f"L-eigenrelation defect {eig_worst:.2e} (tol 1e-9)")
    return CriterionResult(8, "hypergeometric operator identities", cont_ok and eig_ok,
                           detail)


def criterion_9_samplers(seed: int = 42) -> CriterionResult:
    """Recurrence sampler moments at n = 1 and n = 2 against exact values,
    and Metropolis/recurrence cross agreement, all at three standard errors."""
    m1 = 100_000
    vals = np.array([sample_jue_halfhalf(1, RngStream(seed, k)).points[0]
                     for k in range(m1)])
    mean_se = vals.std(ddof=1) / math.sqrt(m1)
    mean_ok = abs(vals.mean() - 0.5) <= 3.0 * mean_se
    sq = (vals - vals.mean()) ** 2
    var_se = sq.std(ddof=1) / math.sqrt(m1)
    var_ok = abs(vals.var(ddof=1) - 0.0625) <= 3.0 * var_se

    m2 = 10_000
    sums = np.array([sample_jue_halfhalf(2, RngStream(seed + 1, k)).points.sum()
                     for k in range(m2)])
    axis = quad.power_panel(0.0, 1.0, 0.5, 0.5, 40)
    num = quad.tensor_integrate(lambda x, y: (x + y) * (y - x) ** 2, [axis, axis])
    den = quad.tensor_integrate(lambda x, y: (y - x) ** 2, [axis, axis])
    exact_sum = num / den
    sum_se = sums.std(ddof=1) / math.sqrt(m2)
    sum_ok = abs(sums.mean() - exact_sum) <= 3.0 * sum_se

    m3 = 1500
    params = EnsembleParams(n=2, lambda1=0.5, lambda2=0.5)
    met = np.array([sample_jue_metropolis(params, sweeps=10,
                                          stream=RngStream(seed + 2, k)).points.sum()
                    for k in range(m3)])
    met_se = met.std(ddof=1) / math.sqrt(m3)
    combined = math.sqrt(met_se**2 + sum_se**2)
    cross_ok = abs(met.mean() - sums.mean()) <= 3.0 * combined

    detail = (f"n=1 mean {vals.mean():.5f} (se {mean_se:.1e}), var {vals.var(ddof=1):.5f} "
              f"(se {var_se:.1e}); n=2 sum {sums.mean():.5f} vs {exact_sum:.5f} "
              f"(se {sum_se:.1e}); metropolis {met.mean():.5f} (combined se {combined:.1e})")
    return CriterionResult(9, "sampler validation",
                           mean_ok and var_ok and sum_ok and cross_ok, detail)


def criterion_10_determinism(seed: int = 42) -> CriterionResult:
    """Byte-identical MC output for the same seed under different thread counts."""
    from . import cli

    parser = cli.build_parser()
    outputs = []
    for threads in (1, 2, 4):
        ns = parser.parse_args([
            "dm-mc", "--n", "6", "--x", "0.2", "--y", "0.8",
            "--m-samples", "300", "--seed", str(seed),
            "--threads", str(threads), "--format", "json"])
        outputs.append(cli.render(cli.execute(ns), "json").encode())
    identical = outputs[0] == outputs[1] == outputs[2]
    return CriterionResult(10, "thread-count determinism", identical,
                           "byte-identical across threads in {1, 2, 4}"
                           if identical else "outputs differ across thread counts")


def run_all(seed: int = 42, threads: int = 1) -> list:
    return [
        criterion_1_table1(seed=seed, threads=threads),
        criterion_2_duality(),
        criterion_3_closed_forms(),
        criterion_4_partition_ratio(),
        criterion_5_jacobi_drift(),
        criterion_6_toeplitz(),
        criterion_7_orbitals(),
        criterion_8_appendix(),
        criterion_9_samplers(seed=seed),
        criterion_10_determinism(seed=seed),
    ]
