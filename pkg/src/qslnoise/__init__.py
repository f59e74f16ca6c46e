"""Correlated two-qubit noise channels and quantum speed limit bounds."""

from .channels import (KrausSet, PhaseDampingParams, RtnParams, amplitude_damping_literal,
                       amplitude_damping_rtn, amplitude_damping_two_qubit, apply_channel,
                       choi_matrix, dphi_dnu, family_channel, mix, one_minus_phi, phase_damping_rtn,
                       phase_damping_two_qubit, phi, product_two_qubit, rtn_correlated,
                       rtn_single_qubit, rtn_two_qubit, validate_cptp)
from .errors import (DegenerateDerivative, DimensionMismatch, MissingDerivatives, NotHermitian,
                     PositivityViolation, StepTooLarge, ZeroDenominator)
from .lindblad import (AtomicModel, GeneratorSpec, ThermalBath, apply_correlated_derived,
                       apply_uncorrelated, case2_discrepancy, evolve_rk4, paper_case1_matrix,
                       paper_case2_matrix, planck_n, total_generator, uncorrelated_generator,
                       x_ratio)
from .matops import DensityMatrix, bell_state, hermitian_eigenvalues, hs_norm, kron
from .qsl import (UNBOUNDED, QslInput, RatioPoint, fidelity_f, kraus_qsl_denominator,
                  kraus_qsl_time, lindblad_qsl_time, lindblad_ratio, mandelstam_tamm,
                  qsl_ratio_channels, ratio_bounds)

__version__ = "0.1.0"
