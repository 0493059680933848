"""CLI command for synthetic datasets."""

import argparse
import sys

from app.core.cli import resolve_output
from app.core.config import RunConfig
from app.core.logger import logger
from app.core.rng import derive_stream
from app.features.datasets.repository import DatasetRepository
from app.features.datasets.service import validate_dataset
from app.features.mixtures.schemas import GeneratorSpec
from app.features.mixtures.service import (
    generate_dataset,
    generate_labels,
    parse_model_spec,
    require_synthetic,
)
from app.features.regions.commands import load_dataset, seed_spec


def cmd_generate(run: RunConfig) -> int:
    """
    Write a dataset drawn from ``--model``.

    With ``--dataset`` the inputs of that file are kept and only the labels are
    redrawn, which works for any model; otherwise the model must be able to
    draw inputs itself.
    """
    model = parse_model_spec(run.model)
    stream = derive_stream(seed_spec(run), "data", 0, 0)
    if run.dataset is not None:
        inputs = load_dataset(run).inputs
        dataset = validate_dataset(inputs, generate_labels(model, inputs, stream))
    else:
        spec = GeneratorSpec(model=require_synthetic(model), n=run.n)
        dataset = generate_dataset(spec, stream)
    logger.info(
        f"Generated n={dataset.n}, d={dataset.d} from '{model.identifier}' "
        f"(seed {run.seed})"
    )

    repository = DatasetRepository()
    target = resolve_output(run.out)
    if target is None:
        sys.stdout.write(repository.render(dataset))
        sys.stdout.flush()
    else:
        repository.save(dataset, target)
    return 0


def register(
    subparsers: "argparse._SubParsersAction", common: argparse.ArgumentParser
) -> None:
    parser = subparsers.add_parser(
        "generate", parents=[common], help="write a synthetic dataset CSV"
    )
    parser.set_defaults(handler=cmd_generate)
