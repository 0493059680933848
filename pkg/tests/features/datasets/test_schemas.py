"""Tests for dataset and model schemas."""

import logging

import numpy as np
import pytest
from pydantic import ValidationError

from app.core.errors import ComputationError
from app.features.datasets.exceptions import ModelOutputError, ModelRangeError
from app.features.datasets.schemas import ConstantModel, FunctionModel, HyperParams
from app.features.datasets.service import validate_dataset


class TestRegressionModel:
    """Test range checking of regression models."""

    def test_out_of_range_value_raises(self) -> None:
        """Test that 1.0001 is an error and is not clamped."""
        model = FunctionModel(lambda x: np.full(x.shape[0], 1.0001), "too-big")
        with pytest.raises(ModelRangeError) as exc_info:
            model.evaluate_many(np.zeros((3, 1)))
        assert exc_info.value.value == pytest.approx(1.0001)
        assert exc_info.value.index == 0

    def test_nan_value_raises(self) -> None:
        """Test that NaN model output is an error."""
        model = FunctionModel(lambda x: np.full(x.shape[0], np.nan), "nan")
        with pytest.raises(ModelRangeError):
            model.evaluate(np.zeros(1))

    def test_boundary_values_accepted(self) -> None:
        """Test that exactly ±1 is in range."""
        model = FunctionModel(lambda x: np.sign(x[:, 0]), "sign")
        values = model.evaluate_many(np.array([[-2.0], [3.0]]))
        np.testing.assert_array_equal(values, [-1.0, 1.0])

    def test_wrong_output_length(self) -> None:
        """Test that a model returning the wrong number of values is refused."""
        model = FunctionModel(lambda x: np.zeros(1), "short")
        with pytest.raises(ModelOutputError) as excinfo:
            model.evaluate_many(np.zeros((3, 1)))
        assert isinstance(excinfo.value, ComputationError)
        assert (excinfo.value.returned, excinfo.value.expected) == (1, 3)

    def test_constant_model(self) -> None:
        """Test the constant candidate."""
        model = ConstantModel(value=0.25)
        assert model.identifier == "constant:value=0.25"
        values = model.evaluate_many(np.zeros((2, 3)))
        np.testing.assert_array_equal(values, [0.25, 0.25])


class TestHyperParams:
    """Test HyperParams."""

    def test_nominal_coverage(self) -> None:
        """Test that the nominal coverage is q / m."""
        assert HyperParams(m=50, q=45).nominal_coverage == pytest.approx(0.9)

    def test_q_above_m_rejected(self) -> None:
        """Test that q > m is invalid."""
        with pytest.raises(ValidationError):
            HyperParams(m=10, q=11)

    def test_m_below_two_rejected(self) -> None:
        """Test that m must be at least 2."""
        with pytest.raises(ValidationError):
            HyperParams(m=1, q=1)

    def test_q_equal_m_warns(self, caplog: pytest.LogCaptureFixture) -> None:
        """Test that q == m is accepted with a warning."""
        with caplog.at_level(logging.WARNING, logger="regions"):
            hp = HyperParams(m=10, q=10)
        assert hp.q == 10
        assert "every candidate is included" in caplog.text


class TestDatasetFingerprint:
    """Test Dataset.fingerprint."""

    def test_equal_data_equal_fingerprint(self) -> None:
        """Test that identical data hash identically."""
        a = validate_dataset([[0.0], [1.0]], [1, -1])
        b = validate_dataset([[0.0], [1.0]], [1, -1])
        assert a.fingerprint() == b.fingerprint()

    def test_label_change_changes_fingerprint(self) -> None:
        """Test that labels are part of the fingerprint."""
        a = validate_dataset([[0.0], [1.0]], [1, -1])
        b = validate_dataset([[0.0], [1.0]], [1, 1])
        assert a.fingerprint() != b.fingerprint()
