"""Slice regular *-exponentials and *-logarithms on quaternionic power series."""

from .entire import in_Dn, mu_eval, munu_taylor_at, nu_eval, phi_eval
from .errors import (
    BranchCutError,
    ConsistencyError,
    DomainError,
    NotInvertibleError,
    NumericError,
    ResidualError,
    RouteInapplicable,
    SliceError,
)
from .quat import I, J, K, ONE, Quaternion, parse_quaternion, slice_decompose
from .series import QJet, RJet, compose_entire, eval_jet, star_inverse, star_mul, symmetrize
from .starexp import star_cos_sin, star_exp, star_exp_direct, star_exp_formula
from .starlog import LogConfig, LogResult, cossin_solve, normalize_unit_s, star_log, uniqueness_shift
from .zeros import Obstruction, ZeroReport, classify_zeros, obstruction_check

__version__ = "0.1.0"

__all__ = [
    "BranchCutError",
    "ConsistencyError",
    "DomainError",
    "I",
    "J",
    "K",
    "LogConfig",
    "LogResult",
    "NotInvertibleError",
    "NumericError",
    "ONE",
    "Obstruction",
    "QJet",
    "Quaternion",
    "RJet",
    "ResidualError",
    "RouteInapplicable",
    "SliceError",
    "ZeroReport",
    "classify_zeros",
    "compose_entire",
    "cossin_solve",
    "eval_jet",
    "in_Dn",
    "mu_eval",
    "munu_taylor_at",
    "normalize_unit_s",
    "nu_eval",
    "obstruction_check",
    "parse_quaternion",
    "phi_eval",
    "slice_decompose",
    "star_cos_sin",
    "star_exp",
    "star_exp_direct",
    "star_exp_formula",
    "star_inverse",
    "star_log",
    "star_mul",
    "symmetrize",
    "uniqueness_shift",
]
