"""Sensitivity-engineering toolkit for vertical atom-gradiometer DM detectors.

Computes DM-induced interferometer phases and signal amplitudes for the two
multi-diamond pulse schemes, propagates noise into coupling uncertainty,
and optimizes interrogation time and fountain-height allocation along a
fixed baseline. Ships as a library, a FastAPI service, and a CLI client.
"""

__version__ = "0.1.0"

from .amplitude import (AmplitudeRegime, AtomTransition, SignalAmplitude,
                        delta_omega, signal_amplitude_exact, signal_amplitude_lmt)
from .constants import (CODATA2018, PhysicalConstants, energy_density_from_si,
                        energy_density_to_si, local_gravity)
from .errors import (DmgradError, DomainError, NumericalError, OracleFailure,
                     ScenarioError)
from .fountain import (DetectorGeometry, NoiseProfile, OptimizationOutcome,
                       min_viable_height, optimize_height,
                       optimize_interrogation, total_duration)
from .modes import (ModeMaximum, PulseScheme, Variant, fit_inverse_square,
                    maximize_mode, mode_minus, mode_plus, mode_value,
                    off_resonant_scaling, resonant_mode_value)
from .phase import (DiamondPhaseInput, DmWave, differential_phase,
                    multi_diamond_phase, rms_signal_amplitude_oracle,
                    single_diamond_phase)
from .sensitivity import (NoiseKind, NoiseModel, OptimalKind, SensitivityResult,
                          closed_form_optimal, coupling_bound, five_sigma_bound,
                          uncertainty_general, uncertainty_resonant,
                          uncertainty_shot_noise)

__all__ = [
    "__version__",
    "AmplitudeRegime", "AtomTransition", "SignalAmplitude",
    "delta_omega", "signal_amplitude_exact", "signal_amplitude_lmt",
    "CODATA2018", "PhysicalConstants", "energy_density_from_si",
    "energy_density_to_si", "local_gravity",
    "DmgradError", "DomainError", "NumericalError", "OracleFailure", "ScenarioError",
    "DetectorGeometry", "NoiseProfile", "OptimizationOutcome",
    "min_viable_height", "optimize_height", "optimize_interrogation", "total_duration",
    "ModeMaximum", "PulseScheme", "Variant", "fit_inverse_square",
    "maximize_mode", "mode_minus", "mode_plus", "mode_value",
    "off_resonant_scaling", "resonant_mode_value",
    "DiamondPhaseInput", "DmWave", "differential_phase",
    "multi_diamond_phase", "rms_signal_amplitude_oracle", "single_diamond_phase",
    "NoiseKind", "NoiseModel", "OptimalKind", "SensitivityResult",
    "closed_form_optimal", "coupling_bound", "five_sigma_bound",
    "uncertainty_general", "uncertainty_resonant", "uncertainty_shot_noise",
]
