"""Steady-state spin transport in the boundary-driven isotropic Heisenberg chain.

Two independent solvers for the same open quantum system: an exact
transfer-matrix contraction valid for any chain length at full bath
polarization, and a brute-force Lindblad superoperator solver for small
chains at any polarization.  A sweep layer with CSV/figure output drives
both.
"""

__version__ = "0.1.0"

from .errors import (
    DegenerateSteadyStateError,
    InternalStateError,
    InvalidParameterError,
    NumericRangeError,
    ResourceLimitError,
    SteadyStateConvergenceError,
)
from .model import (
    AxisConvention,
    ModelParams,
    RepresentationParameter,
    representation_parameter,
    rotated_ladder_operators,
)
from .transfer import (
    CurrentResult,
    DensityProfile,
    ScaledVector,
    TransferOperators,
    approx_current,
    build_transfer_operators,
    critical_field,
    critical_gamma,
    log_norm_constant,
    magnon_density,
    spin_current,
    verify_commutator_identity,
)
from .lindblad import (
    Liouvillian,
    ManyBodyOperator,
    SteadyStateSolution,
    bond_currents,
    build_hamiltonian,
    build_liouvillian,
    magnetization_profile,
    steady_state,
)
from .analysis import detect_plateau_edge, loglog_slope
from .sweep import (
    SweepResult,
    SweepSpec,
    preset_names,
    run_preset,
    run_sweep,
    sweep_range,
    write_csv,
)
from .units import UnitConversion, convert_units

__all__ = [
    "__version__",
    "AxisConvention",
    "CurrentResult",
    "DegenerateSteadyStateError",
    "DensityProfile",
    "InternalStateError",
    "InvalidParameterError",
    "Liouvillian",
    "ManyBodyOperator",
    "ModelParams",
    "NumericRangeError",
    "RepresentationParameter",
    "ResourceLimitError",
    "ScaledVector",
    "SteadyStateConvergenceError",
    "SteadyStateSolution",
    "SweepResult",
    "SweepSpec",
    "TransferOperators",
    "UnitConversion",
    "approx_current",
    "bond_currents",
    "build_hamiltonian",
    "build_liouvillian",
    "build_transfer_operators",
    "convert_units",
    "critical_field",
    "critical_gamma",
    "detect_plateau_edge",
    "log_norm_constant",
    "loglog_slope",
    "magnetization_profile",
    "magnon_density",
    "preset_names",
    "representation_parameter",
    "rotated_ladder_operators",
    "run_preset",
    "run_sweep",
    "spin_current",
    "steady_state",
    "sweep_range",
    "verify_commutator_identity",
    "write_csv",
]
