"""CLI commands for region membership."""

import argparse

import pandas as pd

from app.core.cli import resolve_output
from app.core.config import RunConfig
from app.core.errors import InputError
from app.core.logger import logger
from app.core.rng import SeedSpec
from app.features.datasets.repository import DatasetRepository
from app.features.datasets.schemas import Dataset, HyperParams
from app.features.harness.repository import ResultMetadata, ResultRepository
from app.features.kernels.schemas import KernelSpec
from app.features.mixtures.service import parse_model_spec
from app.features.regions.schemas import AlgorithmConfig
from app.features.regions.service import evaluate_membership


def algorithm_config(run: RunConfig) -> AlgorithmConfig:
    return AlgorithmConfig(
        algorithm=run.algorithm,
        kernel=KernelSpec.parse(run.selected_kernel()),
        k_n=run.alg1.k_n,
        mc_points=run.alg1.mc_points,
        domain_box=run.alg1.domain_box,
    )


def hyper_params(run: RunConfig) -> HyperParams:
    return HyperParams(m=run.m, q=run.q)


def seed_spec(run: RunConfig) -> SeedSpec:
    return SeedSpec(master_seed=run.seed)


def metadata(run: RunConfig) -> ResultMetadata:
    return ResultMetadata(
        seed=run.seed, algorithm=run.algorithm, config=run.fingerprint()
    )


def load_dataset(run: RunConfig) -> Dataset:
    if run.dataset is None:
        raise InputError(f"'{run.command}' needs --dataset")
    return DatasetRepository().load(run.dataset)


def cmd_membership(run: RunConfig) -> int:
    """Rank one candidate (``--model``) on an observed dataset (``--dataset``)."""
    config = algorithm_config(run)
    hp = hyper_params(run)
    model = parse_model_spec(run.model)
    dataset = load_dataset(run)

    verdict = evaluate_membership(dataset, model, config, hp, seed_spec(run))
    if verdict.domain_box_inferred:
        logger.warning("No alg1.domain_box given; used the data bounds padded by 5%")
    logger.info(
        f"'{verdict.model}' {'INCLUDED' if verdict.included else 'EXCLUDED'}: "
        f"rank {verdict.rank} of {verdict.m} (q={verdict.q}, {verdict.algorithm})"
    )
    frame = pd.DataFrame(
        [
            {
                "model": verdict.model,
                "rank": verdict.rank,
                "m": verdict.m,
                "q": verdict.q,
                "included": verdict.included,
                "seed": verdict.seed,
            }
        ]
    )
    ResultRepository().write(frame, metadata(run), resolve_output(run.out))
    return 0


def register(
    subparsers: "argparse._SubParsersAction", common: argparse.ArgumentParser
) -> None:
    parser = subparsers.add_parser(
        "membership",
        parents=[common],
        help="test whether a candidate model lies in the confidence region",
    )
    parser.set_defaults(handler=cmd_membership)
