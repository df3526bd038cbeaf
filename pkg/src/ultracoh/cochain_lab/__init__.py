"""Finite-level cochain complexes, analyticity data, oracles and the homotopy."""

from .analytic import (AnalyticAction, Certificate, Rejection, Seminorm, action_certificate,
                       c_analytic_seminorm, certificate_from_profile, certificate_holds,
                       check_commuting, faithful_level, window_certificate)
from .cochains import (Cochain, coboundary_of_vector, cochains_equal, differential,
                       random_cochain)
from .homotopy import (READINGS, HomotopyParams, ResidualReport, homotopy_apply,
                       homotopy_residual_decomposition, reading_name, residual_cochain)
from .lattice import LatticeWindow
from .oracles import (koszul_cohomology, koszul_complex, main_theorem_experiment,
                      procyclic_cohomology)
from .windows import AbelianWindow, CongruenceWindow, orbit_representation

__all__ = [
    "AbelianWindow", "AnalyticAction", "Certificate", "Cochain", "CongruenceWindow",
    "HomotopyParams", "LatticeWindow", "READINGS", "Rejection", "ResidualReport", "Seminorm",
    "action_certificate", "c_analytic_seminorm", "certificate_from_profile",
    "certificate_holds", "check_commuting", "faithful_level",
    "coboundary_of_vector", "cochains_equal", "differential", "homotopy_apply",
    "homotopy_residual_decomposition", "koszul_cohomology", "koszul_complex",
    "main_theorem_experiment", "orbit_representation", "procyclic_cohomology",
    "random_cochain", "reading_name", "residual_cochain", "window_certificate",
]
