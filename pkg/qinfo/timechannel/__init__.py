"""Time correlations between two measurements separated by a channel."""

from .channels import (
    KrausChannel,
    ProjectiveMeasurement,
    depolarizing_channel,
    identity_channel,
)
from .protocol import (
    JointDistribution,
    Protocol,
    ProtocolReport,
    analyze_protocol,
    intermediate_states,
    mutual_information_12,
    mutual_information_decomposition,
    optimal_protocol,
    protocol_distribution,
    qubit_protocol,
    qubit_tcorr_closed_form,
    random_protocol,
)
from .sampling import EmpiricalDistribution, sample_protocol
