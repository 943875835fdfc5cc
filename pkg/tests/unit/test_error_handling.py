"""
Tests for the exception hierarchy and how errors surface through models.

Library errors must reach callers as themselves, not wrapped in a pydantic
ValidationError, and must never be silently clamped away.
"""

import numpy as np
import pytest
from pydantic import ValidationError

from qinfo.core.config import OptimizerConfig
from qinfo.core.errors import (
    ConvergenceWarning,
    DimensionError,
    DomainError,
    InfiniteRelativeEntropy,
    InvalidBasis,
    InvalidChannel,
    InvalidPartition,
    InvalidState,
    NumericalFailure,
    QInfoError,
    StateParseError,
)
from qinfo.core.types import PartitionLabel
from qinfo.state.density import DensityOperator, Spectrum
from qinfo.timechannel.channels import KrausChannel, ProjectiveMeasurement
from qinfo.timechannel.protocol import JointDistribution

ERRORS = [
    InvalidState, InvalidPartition, InvalidBasis, InvalidChannel, DimensionError,
    DomainError, NumericalFailure, InfiniteRelativeEntropy, StateParseError,
]


class TestHierarchy:
    """Test the exception classes themselves."""

    @pytest.mark.parametrize("error", ERRORS)
    def test_derives_from_base(self, error):
        assert issubclass(error, QInfoError)

    @pytest.mark.parametrize("error", ERRORS)
    def test_not_a_value_error(self, error):
        assert not issubclass(error, ValueError)

    def test_convergence_is_a_warning(self):
        assert issubclass(ConvergenceWarning, UserWarning)
        assert not issubclass(ConvergenceWarning, QInfoError)


class TestPropagationThroughModels:
    """Validators raise library errors unwrapped."""

    def test_density_operator(self):
        with pytest.raises(InvalidState) as excinfo:
            DensityOperator.from_matrix(np.diag([0.7, 0.7]))
        assert not isinstance(excinfo.value, ValidationError)

    def test_spectrum(self):
        with pytest.raises(InvalidState):
            Spectrum.from_probabilities([0.3, 0.3])

    def test_partition_label(self):
        with pytest.raises(InvalidPartition):
            PartitionLabel(indices=[])

    def test_measurement(self):
        with pytest.raises(InvalidBasis):
            ProjectiveMeasurement(basis=np.diag([1.0, 2.0]))

    def test_channel(self):
        with pytest.raises(InvalidChannel):
            KrausChannel(ops=[np.diag([1.0, 0.5])])

    def test_joint_distribution(self):
        with pytest.raises(DomainError):
            JointDistribution(joint=[[1.5, -0.5], [0.0, 0.0]])

    def test_plain_field_errors_stay_pydantic(self):
        with pytest.raises(ValidationError):
            OptimizerConfig(restarts=0)


class TestNoSilentClamping:
    """Errors that exceed the clamp tolerance are reported, not repaired."""

    def test_trace_error_is_reported(self):
        with pytest.raises(InvalidState, match="Trace"):
            DensityOperator.from_matrix(np.diag([0.5, 0.49]))

    def test_negative_eigenvalue_is_reported(self):
        with pytest.raises(InvalidState):
            DensityOperator.from_matrix(np.diag([1.001, -0.001]))

    def test_error_messages_name_the_problem(self):
        with pytest.raises(DimensionError, match="dims"):
            DensityOperator.from_matrix(np.eye(4) / 4, (3, 2))
