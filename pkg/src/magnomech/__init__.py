"""Steady-state Gaussian entanglement and rotation-induced nonreciprocity
in a cavity magnomechanical system with an intracavity OPA.

Three bosonic modes: microwave cavity photon (n), magnon (m), phonon (b).
The package computes classical steady states, the linearized drift and
diffusion matrices, the steady-state covariance via the Lyapunov equation,
bipartite logarithmic negativities, and Barnett-shift contrast ratios, plus
grid sweeps reproducing the reference figure panels.
"""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    EigenFailure,
    InvalidSpec,
    IoError,
    MagnomechError,
    NonConvergence,
    ParseError,
    SingularSystem,
    UnknownFigure,
    Unphysical,
    Unstable,
)
from .params import (
    EffectiveDrive,
    MicroscopicDrive,
    SystemParams,
    baseline_params,
    params_from_config,
    params_to_config,
)
from .model import (
    SteadyState,
    barnett_field,
    build_diffusion,
    build_drift,
    field_to_frequency,
    solve_steady_state,
    thermal_occupancy,
)
from .gaussian import (
    PAIRS,
    NonrecipResult,
    PairResult,
    contrast_ratio,
    entangle_all,
    entangle_with_margin,
    is_physical,
    log_negativity,
    lyapunov_residual,
    nonrecip_all,
    nonrecip_with_margin,
    reduce_to_pair,
    solve_lyapunov,
    stability_margin,
    steady_covariance,
    symplectic_eigenvalues,
    symplectic_form,
)
from .sweep import (
    FIGURE_IDS,
    Axis,
    SweepResult,
    SweepSpec,
    figure_preset,
    run_sweep,
)

__all__ = [
    "__version__",
    "Axis",
    "ConfigError",
    "EffectiveDrive",
    "EigenFailure",
    "FIGURE_IDS",
    "InvalidSpec",
    "IoError",
    "MagnomechError",
    "MicroscopicDrive",
    "NonConvergence",
    "NonrecipResult",
    "PAIRS",
    "PairResult",
    "ParseError",
    "SingularSystem",
    "SteadyState",
    "SweepResult",
    "SweepSpec",
    "SystemParams",
    "UnknownFigure",
    "Unphysical",
    "Unstable",
    "barnett_field",
    "baseline_params",
    "build_diffusion",
    "build_drift",
    "contrast_ratio",
    "entangle_all",
    "entangle_with_margin",
    "field_to_frequency",
    "figure_preset",
    "is_physical",
    "log_negativity",
    "lyapunov_residual",
    "nonrecip_all",
    "nonrecip_with_margin",
    "params_from_config",
    "params_to_config",
    "reduce_to_pair",
    "run_sweep",
    "solve_lyapunov",
    "solve_steady_state",
    "stability_margin",
    "steady_covariance",
    "symplectic_eigenvalues",
    "symplectic_form",
    "thermal_occupancy",
]
