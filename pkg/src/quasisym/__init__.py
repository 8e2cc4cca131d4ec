"""Quasisymmetry models QS_t and QSI_t for square contingency tables."""
from .divergence import PhiSpec, closest_to_symmetry, d_phi, phi
from .fit import FitConfig, FitResult, constrained_residual, hessian, loglik, newton_fit, score, verify_minimal_polynomial
from .gof import GofReport, chisq_sf, g2, gof_report, model_df
from .model import FeasibilityError, ModelSpec, qs_prob, qsi_prob, simple_form_prob, to_simple_form
from .scan import BestT, ConsensusResult, TProfile, best_t, consensus, profile
from .tables import ContingencyTable, SymmetricTable, load_table, mh_residual, parse_table, si_mle, symmetric_mle

__version__ = "0.1.0"

__all__ = [
    "BestT",
    "ConsensusResult",
    "ContingencyTable",
    "FeasibilityError",
    "FitConfig",
    "FitResult",
    "GofReport",
    "ModelSpec",
    "PhiSpec",
    "SymmetricTable",
    "TProfile",
    "best_t",
    "chisq_sf",
    "closest_to_symmetry",
    "consensus",
    "constrained_residual",
    "d_phi",
    "g2",
    "gof_report",
    "hessian",
    "load_table",
    "loglik",
    "mh_residual",
    "model_df",
    "newton_fit",
    "parse_table",
    "phi",
    "profile",
    "qs_prob",
    "qsi_prob",
    "score",
    "si_mle",
    "simple_form_prob",
    "symmetric_mle",
    "to_simple_form",
    "verify_minimal_polynomial",
]
