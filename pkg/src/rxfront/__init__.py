"""Receiver front-end analysis: termination choices, extracted power, and SNR.

The package models a receive antenna (or coupled array) as a Thevenin source
behind an impedance matrix and quantifies what different load terminations do
to delivered voltage, extracted power, amplifier output SNR, and noise factor.
All spectral densities are two-sided; Johnson noise of a resistor R at
temperature T is 2kTR volts squared per hertz.
"""

from .core import (
    BOLTZMANN,
    DEFAULT_TOL,
    OPEN_CIRCUIT,
    ComplexImpedance,
    FrequencyGrid,
    ImpedanceMatrixSeries,
    NumericalError,
    ParseError,
    SingularCircuitError,
    TheveninSource,
    ToolkitError,
    ValidationError,
    ValidationReport,
    as_complex,
    johnson_density,
    load_impedance_csv,
    thevenin_from_link,
    validate_passivity,
    validate_reciprocity,
)
from .shannon import AwgnChannelSpec, capacity, capacity_bound, eb_n0
from .link import (
    AmplifierNoiseModel,
    GridSpec,
    SingleLink,
    divided_voltage,
    extracted_power,
    max_available_power,
    optimize_load,
    output_snr,
    snr_matched,
    snr_ratio_oc_over_match,
)
from .noisefig import (
    SignalGenerator,
    VoltageAmplifierStage,
    available_noise_power,
    available_signal_power,
    friis_gain,
    input_snr,
    noise_factor,
    optimal_rs_for_noise_factor,
    output_snr_friis,
)
from .mna import LinearNetlist, MnaSolution, mna_solve, parse_netlist
from .frontend import (
    FrontEndSolution,
    OpAmpModel,
    solve_buffer,
    solve_constant_current,
    solve_inside_out,
)
from .matching import (
    TransformerMatch,
    optimal_turns_ratio,
    reflected_source,
    snr_with_transformer,
)
from .arrays import (
    ArrayModel,
    TerminationStrategy,
    coupling_offdiag_ratio,
    full_conjugate_closed_form,
    make_synthetic_model,
    open_circuit_voltages,
    perturbation_sum_powers,
    sum_extracted_power,
    terminated_voltages,
    termination_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BOLTZMANN",
    "DEFAULT_TOL",
    "OPEN_CIRCUIT",
    "ComplexImpedance",
    "FrequencyGrid",
    "ImpedanceMatrixSeries",
    "NumericalError",
    "ParseError",
    "SingularCircuitError",
    "TheveninSource",
    "ToolkitError",
    "ValidationError",
    "ValidationReport",
    "as_complex",
    "johnson_density",
    "load_impedance_csv",
    "thevenin_from_link",
    "validate_passivity",
    "validate_reciprocity",
    "AwgnChannelSpec",
    "capacity",
    "capacity_bound",
    "eb_n0",
    "AmplifierNoiseModel",
    "GridSpec",
    "SingleLink",
    "divided_voltage",
    "extracted_power",
    "max_available_power",
    "optimize_load",
    "output_snr",
    "snr_matched",
    "snr_ratio_oc_over_match",
    "SignalGenerator",
    "VoltageAmplifierStage",
    "available_noise_power",
    "available_signal_power",
    "friis_gain",
    "input_snr",
    "noise_factor",
    "optimal_rs_for_noise_factor",
    "output_snr_friis",
    "LinearNetlist",
    "MnaSolution",
    "mna_solve",
    "parse_netlist",
    "FrontEndSolution",
    "OpAmpModel",
    "solve_buffer",
    "solve_constant_current",
    "solve_inside_out",
    "TransformerMatch",
    "optimal_turns_ratio",
    "reflected_source",
    "snr_with_transformer",
    "ArrayModel",
    "TerminationStrategy",
    "coupling_offdiag_ratio",
    "full_conjugate_closed_form",
    "make_synthetic_model",
    "open_circuit_voltages",
    "perturbation_sum_powers",
    "sum_extracted_power",
    "terminated_voltages",
    "termination_matrix",
    "__version__",
]
