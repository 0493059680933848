"""Service layer for Monte-Carlo experiments.

Every trial owns the child seed ``seed.child("trial", t)``; the dataset of a
trial comes from the ("data", 0, 0) stream under it and the candidate's
resamples from the usual ("labels" / "perm" / "mc") streams. Trials are
dispatched through joblib and their results collected in trial order, so the
outcome does not depend on the number of workers.

Algorithm I without an explicit domain box integrates over the box of the
data-generating model when it has one (``SyntheticModel.domain_box``).
"""

import math
from typing import Callable, List, Optional, Sequence, TypeVar

import numpy as np
from joblib import Parallel, delayed
from scipy.stats import chisquare

from app.core.logger import logger
from app.core.rng import SeedSpec, derive_stream
from app.features.datasets.schemas import Dataset, HyperParams, RegressionModel
from app.features.discrepancy.repository import GramRepository
from app.features.harness.exceptions import HarnessConfigError
from app.features.harness.schemas import (
    CoverageReport,
    GridCell,
    GridSpec,
    RankMap,
    SweepRow,
    UniformityReport,
)
from app.features.mixtures.schemas import GeneratorSpec, SyntheticModel
from app.features.mixtures.service import generate_dataset
from app.features.regions.schemas import AlgorithmConfig
from app.features.regions.service import RegionService

T = TypeVar("T")

# trials below this multiple of m make the chi-square approximation unreliable
UNIFORMITY_TRIALS_PER_RANK = 50


def _parallel(fn: Callable[..., T], tasks: Sequence[tuple], workers: int) -> List[T]:
    if workers < 1:
        raise HarnessConfigError(f"workers must be >= 1, got {workers}")
    if workers == 1:
        return [fn(*task) for task in tasks]
    return list(Parallel(n_jobs=workers)(delayed(fn)(*task) for task in tasks))


def trial_rank(
    config: AlgorithmConfig,
    spec: GeneratorSpec,
    candidate: RegressionModel,
    hp: HyperParams,
    seed: SeedSpec,
) -> int:
    """Rank of ``candidate`` on one fresh dataset drawn from ``spec``."""
    dataset = generate_dataset(spec, derive_stream(seed, "data", 0, 0))
    return RegionService(config, dataset).rank(candidate, hp, seed).rank


def coverage_trial(
    config: AlgorithmConfig, spec: GeneratorSpec, hp: HyperParams, seed: SeedSpec
) -> bool:
    """True when the data-generating model is inside its own region."""
    return trial_rank(config, spec, spec.model, hp, seed) <= hp.q


def binomial_half_width(nominal: float, trials: int) -> float:
    """3-sigma half-width of a frequency with success probability ``nominal``."""
    return 3.0 * math.sqrt(nominal * (1.0 - nominal) / trials)


def run_coverage(
    config: AlgorithmConfig,
    spec: GeneratorSpec,
    hp: HyperParams,
    trials: int,
    seed: SeedSpec,
    workers: int = 1,
) -> CoverageReport:
    """
    Empirical coverage of the true model over independent trials.

    Args:
        config: Ranking algorithm
        spec: True model and sample size
        hp: Sample count and threshold
        trials: Number of datasets (>= 1)
        seed: Master seed; trial t uses seed.child("trial", t)
        workers: joblib worker count

    Returns:
        CoverageReport; ``passed`` is |coverage - q/m| <= 3-sigma half-width
    """
    if trials < 1:
        raise HarnessConfigError(f"trials must be >= 1, got {trials}")
    logger.info(
        f"Coverage run: {config.algorithm}, '{spec.model.identifier}', n={spec.n}, "
        f"m={hp.m}, q={hp.q}, trials={trials}, workers={workers}"
    )
    config = config.with_default_box(spec.model.domain_box())
    tasks = [(config, spec, hp, seed.child("trial", t)) for t in range(trials)]
    hits = int(sum(_parallel(coverage_trial, tasks, workers)))

    coverage = hits / trials
    nominal = hp.nominal_coverage
    tol = binomial_half_width(nominal, trials)
    report = CoverageReport(
        trials=trials,
        hits=hits,
        coverage=coverage,
        nominal=nominal,
        tol=tol,
        passed=abs(coverage - nominal) <= tol,
    )
    logger.info(
        f"Coverage {coverage:.4f} vs nominal {nominal:.4f} (tol {tol:.4f}): "
        f"{'pass' if report.passed else 'FAIL'}"
    )
    return report


def rank_uniformity_test(
    config: AlgorithmConfig,
    spec: GeneratorSpec,
    m: int,
    trials: int,
    seed: SeedSpec,
    workers: int = 1,
    candidate: Optional[RegressionModel] = None,
) -> UniformityReport:
    """
    Chi-square test of the observed ranks against the uniform law on {1..m}.

    ``candidate`` defaults to the data-generating model, for which the ranks
    are exactly uniform. With m = 1 every rank is 1 and the test is vacuous.
    """
    if trials < 1:
        raise HarnessConfigError(f"trials must be >= 1, got {trials}")
    if m < 1:
        raise HarnessConfigError(f"m must be >= 1, got {m}")
    if m == 1:
        return UniformityReport(
            m=1, trials=trials, counts=[trials], statistic=0.0, p_value=1.0
        )
    if trials < UNIFORMITY_TRIALS_PER_RANK * m:
        logger.warning(
            f"{trials} trials for m={m}: fewer than {UNIFORMITY_TRIALS_PER_RANK} "
            f"per rank, the chi-square p-value is approximate"
        )

    model = candidate if candidate is not None else spec.model
    config = config.with_default_box(spec.model.domain_box())
    hp = HyperParams(m=m, q=m - 1)
    tasks = [(config, spec, model, hp, seed.child("trial", t)) for t in range(trials)]
    ranks = np.array(_parallel(trial_rank, tasks, workers), dtype=np.int64)

    counts = np.bincount(ranks - 1, minlength=m)
    result = chisquare(counts)
    report = UniformityReport(
        m=m,
        trials=trials,
        counts=[int(c) for c in counts],
        statistic=float(result.statistic),
        p_value=float(result.pvalue),
    )
    logger.info(
        f"Rank uniformity for '{model.identifier}': chi2={report.statistic:.3f}, "
        f"p={report.p_value:.4g}"
    )
    return report


def consistency_sweep(
    config: AlgorithmConfig,
    true_model: SyntheticModel,
    false_model: RegressionModel,
    n_list: Sequence[int],
    repeats: int,
    hp: HyperParams,
    seed: SeedSpec,
    workers: int = 1,
) -> List[SweepRow]:
    """
    Fraction of repeats in which ``false_model`` is excluded, for each n.

    Repeat r at the k-th sample size uses seed.child("sweep", k).child("trial", r).
    """
    if repeats < 1:
        raise HarnessConfigError(f"repeats must be >= 1, got {repeats}")
    if any(n < 1 for n in n_list):
        raise HarnessConfigError(f"sample sizes must be >= 1, got {list(n_list)}")

    config = config.with_default_box(true_model.domain_box())
    rows: List[SweepRow] = []
    for k, n in enumerate(n_list):
        spec = GeneratorSpec(model=true_model, n=n)
        base = seed.child("sweep", k)
        tasks = [
            (config, spec, false_model, hp, base.child("trial", r))
            for r in range(repeats)
        ]
        ranks = _parallel(trial_rank, tasks, workers)
        excluded = sum(1 for rank in ranks if rank > hp.q)
        rows.append(
            SweepRow(
                n=n,
                repeats=repeats,
                excluded=excluded,
                excluded_fraction=excluded / repeats,
            )
        )
        logger.info(
            f"n={n}: '{false_model.identifier}' excluded in {excluded}/{repeats}"
        )
    return rows


def _rank_cells(
    service: RegionService, grid: GridSpec, indices: Sequence[int]
) -> List[GridCell]:
    candidates = grid.candidates()
    cells = []
    for t in indices:
        model = candidates[t]
        outcome = service.rank(model, grid.hp, grid.seed, t)
        assert outcome.included is not None
        cells.append(
            GridCell(
                p=model.p, lam=model.lam, rank=outcome.rank, included=outcome.included
            )
        )
    return cells


def grid_rank_map(
    grid: GridSpec,
    dataset: Dataset,
    workers: int = 1,
    grams: Optional[GramRepository] = None,
) -> RankMap:
    """
    Rank of the observed sample for every candidate of the grid.

    Candidate t (row-major index) draws its resamples from the streams keyed
    by t under ``grid.seed``; the Gram matrix is computed once for the dataset.
    """
    if workers < 1:
        raise HarnessConfigError(f"workers must be >= 1, got {workers}")
    if dataset.d != 1:
        raise HarnessConfigError(
            f"the Laplace-mixture grid needs d = 1 inputs, got d={dataset.d}"
        )
    service = RegionService(grid.algorithm, dataset, grams)
    total = grid.shape[0] * grid.shape[1]
    chunks = [
        c.tolist() for c in np.array_split(np.arange(total), min(workers, total))
    ]
    logger.info(
        f"Grid rank map: {grid.shape[0]}x{grid.shape[1]} candidates, "
        f"{grid.algorithm.algorithm}, m={grid.hp.m}, q={grid.hp.q}"
    )
    tasks = [(service, grid, chunk) for chunk in chunks]
    parts = _parallel(_rank_cells, tasks, workers)
    cells = [cell for part in parts for cell in part]

    rank_map = RankMap(
        shape=grid.shape,
        cells=cells,
        gram_fingerprint=(
            service.gram.fingerprint() if service.gram is not None else None
        ),
    )
    logger.info(f"{rank_map_cell_count(rank_map)} of {total} candidates included")
    return rank_map


def rank_map_cell_count(rank_map: RankMap) -> int:
    """Number of grid candidates inside the region."""
    return sum(1 for cell in rank_map.cells if cell.included)
