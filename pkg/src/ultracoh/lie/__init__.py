"""Lie algebra cohomology over Q: Chevalley-Eilenberg, Hochschild-Serre E_2, Kostant."""

from .algebra import (LieAlgebra, LieModule, ValidationReport, abelian, adjoint_module,
                      catalog_algebra, from_matrices, heisenberg, is_ideal, is_nilpotent,
                      lower_central_series, restrict, sl2, sl3, sub_basis, subalgebra,
                      trivial_module, validate_structures, SUBALGEBRAS)
from .ce import CEComplex, ce_complex, cohomology_basis, cohomology_dims, euler_characteristic
from .hs import E2Page, hs_e2_page
from .weights import (catalog_instance, conjecture_lie_experiment, highest_weight_module,
                      kostant_check, weyl_dimension, weyl_length_counts)

__all__ = [
    "CEComplex", "E2Page", "LieAlgebra", "LieModule", "SUBALGEBRAS", "ValidationReport",
    "abelian", "adjoint_module", "catalog_algebra", "catalog_instance", "ce_complex",
    "cohomology_basis", "cohomology_dims", "conjecture_lie_experiment", "euler_characteristic",
    "from_matrices", "heisenberg", "highest_weight_module", "hs_e2_page", "is_ideal",
    "is_nilpotent", "kostant_check", "lower_central_series", "restrict", "sl2", "sl3",
    "sub_basis", "subalgebra", "trivial_module", "validate_structures", "weyl_dimension",
    "weyl_length_counts",
]
