"""Shared command-line plumbing: common flags and run-config merging."""

import argparse
from pathlib import Path
from typing import Any, Dict, Optional

from app.core.config import RunConfig, get_settings, load_config_file

# flag dest -> RunConfig field (top level)
_TOP_LEVEL_FLAGS = (
    "algorithm",
    "m",
    "q",
    "seed",
    "n",
    "trials",
    "kernel",
    "model",
    "candidate",
    "n_list",
    "repeats",
    "p_range",
    "lambda_range",
    "dataset",
    "out",
    "workers",
)

# flag dest -> (section, key)
_SECTION_FLAGS = {
    "k_n": ("alg1", "k_n"),
    "mc_points": ("alg1", "mc_points"),
}


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got '{text}'"
        )


def common_arguments() -> argparse.ArgumentParser:
    """Parent parser holding the flags every subcommand accepts."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", help="TOML or JSON run configuration")
    parser.add_argument(
        "--algorithm", choices=["alg1-knn", "alg1-smoother", "alg2", "alg3"]
    )
    parser.add_argument("--m", type=int, help="total number of samples")
    parser.add_argument("--q", type=int, help="rank threshold")
    parser.add_argument("--seed", type=int, help="master seed")
    parser.add_argument("--n", type=int, help="sample size of generated data")
    parser.add_argument("--trials", type=int, help="Monte-Carlo trials")
    parser.add_argument("--kernel", help="e.g. gaussian:sigma=0.5")
    parser.add_argument("--model", help="e.g. laplace-mixture:p=0.5,lambda=1")
    parser.add_argument(
        "--candidate",
        help="candidate tested against --model (consistency: lambda=2 mixture, "
        "uniformity: --model itself)",
    )
    parser.add_argument(
        "--n-list", dest="n_list", type=_int_list, help="e.g. 50,200,800"
    )
    parser.add_argument("--repeats", type=int, help="repeats per sweep size")
    parser.add_argument("--p-range", dest="p_range", help="start:stop:step")
    parser.add_argument("--lambda-range", dest="lambda_range", help="start:stop:step")
    parser.add_argument("--k-n", dest="k_n", type=int, help="kNN window (alg1-knn)")
    parser.add_argument(
        "--mc-points", dest="mc_points", type=int, help="Monte-Carlo points (alg1)"
    )
    parser.add_argument("--dataset", help="dataset CSV (header x1,...,xd,y)")
    parser.add_argument("--out", help="output CSV path (stdout if omitted)")
    parser.add_argument("--workers", type=int, help="parallel workers")
    parser.add_argument(
        "--log-level", dest="log_level", help="DEBUG, INFO, WARNING, ..."
    )
    return parser


def build_run_config(args: argparse.Namespace, command: str) -> RunConfig:
    """
    Merge the config file (if any) with explicit flags; flags win.

    Unset seed and worker count fall back to REGIONS_SEED / REGIONS_WORKERS.

    Raises:
        InputError: if the config file cannot be read
        pydantic.ValidationError: if the merged values are invalid
    """
    settings = get_settings()
    data: Dict[str, Any] = {}
    config_path: Optional[str] = getattr(args, "config", None)
    if config_path:
        data.update(load_config_file(config_path))

    for name in _TOP_LEVEL_FLAGS:
        value = getattr(args, name, None)
        if value is not None:
            data[name] = value
    for name, (section, key) in _SECTION_FLAGS.items():
        value = getattr(args, name, None)
        if value is not None:
            data[section] = {**data.get(section, {}), key: value}

    data["command"] = command
    data.setdefault("seed", settings.default_seed)
    data.setdefault("workers", settings.workers)
    return RunConfig.model_validate(data)


def resolve_output(path: Optional[str]) -> Optional[Path]:
    """Relative output paths live under REGIONS_OUTPUT_DIR."""
    if path is None:
        return None
    target = Path(path)
    if target.is_absolute():
        return target
    return Path(get_settings().output_dir) / target
