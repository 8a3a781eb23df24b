"""Smooth periodic traveling waves of the Novikov equation, their
Floquet-Bloch-Hill spectra, and modulational stability diagnostics."""

__version__ = "0.1.0"

from .errors import (BracketingError, ConsistencyError, ConvergenceError,
                     DegenerateCubicError, DomainError)
from .waveform import (Equilibrium, ExpansionCoefficients, PeriodicProfile,
                       WaveParams, asymptotic_profile, equilibrium,
                       expansion_coefficients, potential, profile_residual,
                       quadrature_check, solve_profile)
from .bloch import (BlochMatrix, CollisionReport, SpectrumSlice,
                    build_L_matrix, build_bloch_matrix, collision_check,
                    constant_state_eigenvalue, constant_state_frequency,
                    origin_ball_radius, spectrum_slice, spectrum_sweep,
                    sweep_to_csv)
from .modulation import (CriticalBasis, DiscriminantLeadingTerms,
                         ModulationResult, ReducedMatrix, classify,
                         classify_profile, critical_basis, cubic_coefficients,
                         discriminant, discriminant_leading_terms,
                         reduced_matrix_asymptotic, reduced_matrix_numeric,
                         result_to_json, results_to_csv)
from .sweep import (ScanConfig, ScanRow, StabilityMap, export_csv,
                    export_json, load_config, load_json, run_scan,
                    threshold_locate)

__all__ = [name for name in dir() if not name.startswith("_")]
