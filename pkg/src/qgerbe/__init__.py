"""Exact symbolic engine for quantum-group gerbe identities, with a numeric
verifier for the undeformed SU(n) loop-group gerbe."""

from .scalars import GaussianRational, LaurentScalar, format_scalar
from .ncpoly import Generator, MonomialOrder, NCPolynomial, TensorPoly
from .rewrite import (Presentation, RewriteBudgetExceeded, RewriteRule,
                      certify, check_local_confluence, check_rule_orientation,
                      orient_relation)
from .qgroups import (EQ4, EQ9, ConventionTag, HopfStructure, PRESET_LABELS,
                      build_podles_sphere, build_preset,
                      build_quantum_matrix_algebra, build_suq2, build_suqn,
                      hopf_antipode, hopf_coproduct, hopf_counit,
                      quantum_determinant, verify_det_central,
                      verify_hopf_axioms, verify_unitarity)
from .gerbe import (AlgMatrix, ResolventExtension, SymbolicLoop,
                    adjoin_resolvent, build_equator_loop, build_projection,
                    build_x_equator, build_x_extended, flip_conjugate,
                    formal_transition, restrict_to_equator, verify_loop_unitary,
                    verify_projection, verify_x_extended, verify_x_involution)
from .classical import (DiracSpectrum, PathSample, SpectralCut, SECTION_VARIANTS,
                        cocycle_residual, dirac_spectrum, local_section,
                        matrix_log_contour, matrix_log_spectral,
                        random_special_unitary, spectral_window_match,
                        su2_basic_loop, suspension_degree, transition_path)
from .parser import ExprSyntaxError, format_expr, parse_expr, parse_matrix
from .report import Report, validate_report

__version__ = "0.1.0"
