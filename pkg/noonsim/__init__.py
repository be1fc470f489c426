"""NOON-state generation with coherent-beam-stimulated two-mode parametric
down conversion: Fock amplitudes, NOON fidelities, Mach-Zehnder
coincidence signals and source optimization.
"""
from .beamsplitter import BeamSplitterConvention, FidelityResult, \
    bs_transform, noon_fidelity, noon_overlap
from .errors import AccuracyError, DegenerateInputError, DomainError, \
    NoonsimError
from .fock import PairAmplitudeRatio, PhotonComponent, Regime, SourceParams, \
    displaced_tmsv_component, tmsv_coefficient
from .interferometer import CoincidenceSignal, DetectionPattern, \
    HarmonicSpectrum, coincidence_signal_sweep, fringe_harmonics, \
    mz_pattern_probability, visibility
from .optimize import FluxReport, Optimum, OptimizerSettings, SweepSpec, \
    critical_phases, curve_peak, fidelity_vs_theta, flux_report, \
    optimize_gamma_theta, refine_theta
from .oracle import displacement_matrix_element, truncated_state_oracle

__version__ = '0.1'
