"""Tests for the generate command."""

from pathlib import Path

import pytest

from app.features.datasets.repository import DatasetRepository
from main import main


class TestGenerateCommand:
    """Test the generate command."""

    def test_writes_dataset(self, tmp_path: Path) -> None:
        """Test that a mixture dataset is written with the x1,y header."""
        out = tmp_path / "data.csv"
        assert main(["generate", "--n", "25", "--seed", "4", "--out", str(out)]) == 0
        assert out.read_text(encoding="utf-8").startswith("x1,y\n")
        assert DatasetRepository().load(out).n == 25

    def test_reproducible(self, tmp_path: Path) -> None:
        """Test that the same seed gives the same file."""
        model = "gaussian-tanh:scale=2"
        argv = ["generate", "--n", "10", "--seed", "8", "--model", model]
        main(argv + ["--out", str(tmp_path / "a.csv")])
        main(argv + ["--out", str(tmp_path / "b.csv")])
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_relabel_existing_inputs(self, tmp_path: Path) -> None:
        """Test that --dataset keeps the inputs and redraws labels from any model."""
        source = tmp_path / "source.csv"
        main(["generate", "--n", "15", "--seed", "1", "--out", str(source)])
        out = tmp_path / "relabelled.csv"
        argv = ["generate", "--dataset", str(source), "--model", "constant:value=1"]
        assert main(argv + ["--out", str(out)]) == 0
        original = DatasetRepository().load(source)
        relabelled = DatasetRepository().load(out)
        assert (relabelled.inputs == original.inputs).all()
        assert (relabelled.labels == 1).all()

    def test_stdout(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that the dataset goes to stdout without --out."""
        assert main(["generate", "--n", "3", "--seed", "0"]) == 0
        assert capsys.readouterr().out.count("\n") == 4

    def test_constant_cannot_generate_inputs(self) -> None:
        """Test that a model without an input law exits with 2."""
        assert main(["generate", "--model", "constant:value=0"]) == 2
