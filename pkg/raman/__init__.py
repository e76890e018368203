from .angular import HalfInt, HalfIntError, triangle_ok, wigner_3j, wigner_6j
from .scheme import BasisLabel, BasisLayout, LevelScheme, SchemeError, validate
from .polarization import PolTensor, PolVector, linear_pair, pol_tensor
from .dipole import LabeledOperator, PhysicalParams, build_g, project, reduced_coupling, reduced_rabi
from .kernel import (
    EmissionResult,
    MatrixFunctionError,
    RamanInput,
    bridge_identity_check,
    emission_probability,
    emission_probability_qb,
    matrix_cos,
    matrix_sinc,
    matrix_sinc2_half,
    qa_squared_direct,
    qa_squared_summed,
)
from .oracle_fock import FockBasis, build_generator, closed_form_s, evolve_and_measure
from .sweep import OptimumReport, OracleMismatchError, SweepRecord, evaluate, optimize, sweep
