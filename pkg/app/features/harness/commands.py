"""CLI commands for the Monte-Carlo experiments."""

import argparse

import pandas as pd
from pydantic import ValidationError

from app.core.cli import resolve_output
from app.core.config import DEFAULT_FALSE_MODEL, RunConfig
from app.core.rng import derive_stream
from app.features.datasets.schemas import Dataset
from app.features.harness.exceptions import HarnessConfigError
from app.features.harness.repository import ResultRepository
from app.features.harness.schemas import Axis, GridSpec
from app.features.harness.service import (
    consistency_sweep,
    grid_rank_map,
    rank_uniformity_test,
    run_coverage,
)
from app.features.mixtures.schemas import GeneratorSpec, MixtureModel, SyntheticModel
from app.features.mixtures.service import (
    generate_dataset,
    parse_model_spec,
    require_synthetic,
)
from app.features.regions.commands import (
    algorithm_config,
    hyper_params,
    load_dataset,
    metadata,
    seed_spec,
)


def _generator(run: RunConfig) -> GeneratorSpec:
    return GeneratorSpec(model=require_synthetic(parse_model_spec(run.model)), n=run.n)


def cmd_coverage(run: RunConfig) -> int:
    report = run_coverage(
        algorithm_config(run),
        _generator(run),
        hyper_params(run),
        run.trials,
        seed_spec(run),
        run.workers,
    )
    frame = pd.DataFrame(
        [
            {
                "trials": report.trials,
                "hits": report.hits,
                "coverage": report.coverage,
                "nominal": report.nominal,
                "tol": report.tol,
                "pass": report.passed,
            }
        ]
    )
    ResultRepository().write(frame, metadata(run), resolve_output(run.out))
    return 0


def _grid_spec(run: RunConfig) -> GridSpec:
    try:
        p_axis = Axis.parse(run.p_range)
        lambda_axis = Axis.parse(run.lambda_range)
    except (ValidationError, ValueError) as e:
        raise HarnessConfigError(f"bad grid axis: {e}")
    true_model = parse_model_spec(run.model)
    mu1, mu2 = (1.0, -1.0)
    if isinstance(true_model, MixtureModel):
        mu1, mu2 = true_model.mu1, true_model.mu2
    config = algorithm_config(run)
    if isinstance(true_model, SyntheticModel):
        config = config.with_default_box(true_model.domain_box())
    return GridSpec(
        p_axis=p_axis,
        lambda_axis=lambda_axis,
        mu1=mu1,
        mu2=mu2,
        hp=hyper_params(run),
        algorithm=config,
        seed=seed_spec(run),
    )


def _grid_dataset(run: RunConfig) -> Dataset:
    if run.dataset is not None:
        return load_dataset(run)
    # the observed sample comes from its own stream, disjoint from the candidates'
    stream = derive_stream(seed_spec(run).child("observed", 0), "data", 0, 0)
    return generate_dataset(_generator(run), stream)


def cmd_grid(run: RunConfig) -> int:
    grid = _grid_spec(run)
    dataset = _grid_dataset(run)
    rank_map = grid_rank_map(grid, dataset, run.workers)
    frame = pd.DataFrame(
        {
            "p": [cell.p for cell in rank_map.cells],
            "lambda": [cell.lam for cell in rank_map.cells],
            "rank": [cell.rank for cell in rank_map.cells],
            "included": [cell.included for cell in rank_map.cells],
        }
    )
    ResultRepository().write(frame, metadata(run), resolve_output(run.out))
    return 0


def cmd_consistency(run: RunConfig) -> int:
    rows = consistency_sweep(
        algorithm_config(run),
        require_synthetic(parse_model_spec(run.model)),
        parse_model_spec(run.candidate or DEFAULT_FALSE_MODEL),
        run.n_list,
        run.repeats,
        hyper_params(run),
        seed_spec(run),
        run.workers,
    )
    frame = pd.DataFrame(
        {
            "n": [row.n for row in rows],
            "excluded_fraction": [row.excluded_fraction for row in rows],
        }
    )
    ResultRepository().write(frame, metadata(run), resolve_output(run.out))
    return 0


def cmd_uniformity(run: RunConfig) -> int:
    candidate = parse_model_spec(run.candidate) if run.candidate else None
    report = rank_uniformity_test(
        algorithm_config(run),
        _generator(run),
        run.m,
        run.trials,
        seed_spec(run),
        run.workers,
        candidate=candidate,
    )
    frame = pd.DataFrame(
        {
            "rank": list(range(1, report.m + 1)),
            "count": report.counts,
            "statistic": report.statistic,
            "p_value": report.p_value,
        }
    )
    ResultRepository().write(frame, metadata(run), resolve_output(run.out))
    return 0


def register(
    subparsers: "argparse._SubParsersAction", common: argparse.ArgumentParser
) -> None:
    commands = (
        ("coverage", cmd_coverage, "empirical coverage of the true model"),
        ("grid", cmd_grid, "rank map over a (p, lambda) grid of Laplace mixtures"),
        ("consistency", cmd_consistency, "false-candidate exclusion frequency vs n"),
        ("uniformity", cmd_uniformity, "chi-square test of rank uniformity"),
    )
    for name, handler, help_text in commands:
        parser = subparsers.add_parser(name, parents=[common], help=help_text)
        parser.set_defaults(handler=handler)
