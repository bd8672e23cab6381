"""Driven two-oscillator quantum heat engine.

Core operations live in the compiled extension ``duetherm._core``:
linear response and normal modes, average power and heat currents,
entropy-constrained drive optimization (Pareto fronts), and Gaussian
entanglement of the steady state.
"""

from duetherm._core import (  # noqa: F401
    ChiIm,
    CriticalMode,
    DriveSpectrum,
    EngineParams,
    FrontPoint,
    FundamentalMismatch,
    GaussianState,
    GridSpec,
    MapPoint,
    NoConvergence,
    NonPhysical,
    NonPositiveWork,
    NoRoot,
    OptimizeResult,
    ParetoFront,
    PowerSigma,
    QuadraticForms,
    SupportReport,
    SymplecticResult,
    ThermoReport,
    Topology,
    WorksReport,
    __version__,
    build_forms,
    chi_eff_im,
    chi_im,
    covariance,
    critical_temperature,
    drive_norm,
    evaluate,
    finite_eigenvalue,
    gaussian_state,
    monochromatic_drive,
    normal_modes,
    nu_from_works,
    nu_strong_closed,
    optimize_point,
    optimize_power,
    params_from_json,
    params_to_json,
    pareto_front,
    power_map,
    power_monochromatic,
    power_strong_pi,
    power_strong_zero,
    power_weak_limit,
    report,
    sigma_ladder,
    spectral_support,
    symplectic_nu,
    validate_params,
    works_and_delta,
)
