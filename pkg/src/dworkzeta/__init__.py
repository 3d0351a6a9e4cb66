"""Point counts of Dwork hypersurfaces by character sums and by brute force."""
from .charsums import (
    CycValue,
    MultChar,
    char_of_order,
    gauss_sum,
    identity_suite,
    jacobi_gauss_quotient,
    jacobi_sum,
)
from .counting import CountResult, count_dwork, count_hyper, count_hypersurface, count_mirror
from .errors import DworkZetaError
from .ffield import FieldCtx, build_extension, build_field, subfield_embed
from .formulas import (
    N_class,
    N_hyper_formula,
    beta,
    decompose,
    dwork_count_formula,
    lambda_of_psi,
    link_check,
)
from .orbits import ClassRecord, canonical, enumerate_classes, max_pairing
from .varieties import HyperSurface, HyperVariety
from .zetaseries import ZetaSeries, r_degree, restore_trivial, strip_trivial, zeta_from_counts

__version__ = "0.1.0"

__all__ = [
    "CycValue", "MultChar", "char_of_order", "gauss_sum", "identity_suite",
    "jacobi_gauss_quotient", "jacobi_sum",
    "CountResult", "count_dwork", "count_hyper", "count_hypersurface", "count_mirror",
    "DworkZetaError",
    "FieldCtx", "build_extension", "build_field", "subfield_embed",
    "N_class", "N_hyper_formula", "beta", "decompose", "dwork_count_formula",
    "lambda_of_psi", "link_check",
    "ClassRecord", "canonical", "enumerate_classes", "max_pairing",
    "HyperSurface", "HyperVariety",
    "ZetaSeries", "r_degree", "restore_trivial", "strip_trivial", "zeta_from_counts",
]
