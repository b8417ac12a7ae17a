"""Interval implicit projection networks: certificates, equilibria, and
Caputo fractional dynamics."""

from .certify import (Certificate, TildeCoeffs, Weights, certificate,
                      comparison_system, find_weights, tilde_coeffs,
                      weighted_norm)
from .equilibrium import CertificateError, Equilibrium, picard_solve, residual
from .fde import EnvelopeReport, IntegrationError, Trajectory, envelope_check, integrate
from .mlf import mittag_leffler, ml_envelope, recip_gamma
from .model import (BoxSet, IntervalMatrix, Realization, ShiftMap, SpecError,
                    SystemSpec, check_realization, sample_matrix,
                    sample_realization, validate_system)
from .projection import StateVector, picard_map, project_box, project_implicit, rhs
from .scenarios import (BUILTIN_NAMES, builtin_scenario, load_spec,
                        parse_spec_document, serialize)

__all__ = [
    "BUILTIN_NAMES", "BoxSet", "Certificate", "CertificateError",
    "EnvelopeReport", "Equilibrium", "IntegrationError", "IntervalMatrix",
    "Realization", "ShiftMap", "SpecError", "StateVector", "SystemSpec",
    "TildeCoeffs", "Trajectory", "Weights", "builtin_scenario", "certificate",
    "check_realization", "comparison_system", "envelope_check", "find_weights",
    "integrate", "load_spec", "mittag_leffler", "ml_envelope",
    "parse_spec_document", "picard_map", "picard_solve", "project_box",
    "project_implicit", "recip_gamma", "residual", "rhs", "sample_matrix",
    "sample_realization", "serialize", "tilde_coeffs", "validate_system",
    "weighted_norm",
]
