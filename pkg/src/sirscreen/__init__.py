"""SIR epidemic simulation coupled to screening-test predictive values."""

from .calibration import CalibrationTargets, calibrated_params, fit_beta_gamma, r0_from_final_size
from .core import EpidemicParams, SirState, TestCharacteristics, Trajectory, r_naught, youden_j
from .coupling import (
    Baseline,
    PrevalenceSource,
    ScreeningSeries,
    analyze,
    analyze_prevalence,
    crossings,
    prevalence_series,
)
from .errors import (
    DegeneratePpv,
    InvalidBaseline,
    NoRoot,
    NonFiniteState,
    NotReachable,
    PerfectSpecificity,
    SirScreenError,
    ValidationError,
)
from .report import Scenario, load_scenario, load_reference_table, reference_scenario
from .screening import (
    SerialTestPolicy,
    iterations_to_overcome,
    ppv,
    prevalence_threshold,
    serial_ppv,
    serial_target,
    zeta,
)
from .sir import IntegrationConfig, Method, derivatives, integrate, peak, verify_final_size_identity

__version__ = "0.1.0"
