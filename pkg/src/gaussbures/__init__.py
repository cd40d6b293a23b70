"""Bures-distance Gaussian entanglement of symmetric two-mode Gaussian states."""

from .core import (
    OMEGA,
    CovarianceMatrix2M,
    OneModeCovariance,
    StandardParams,
    SymplecticSpectrum,
    Verdict,
    build_cm,
    characteristic_function,
    is_separable,
    partial_transpose,
    pt_spectrum_symmetric,
    symmetric_spectrum,
    symplectic_spectrum,
    uncertainty_determinant,
)
from .entanglement import (
    EntanglementReport,
    analyze,
    closest_separable,
    closest_separable_cm,
    e0,
    max_fidelity,
    optimal_xy,
)
from .errors import *  # noqa: F401,F403
from .fidelity import (
    bures_distance,
    check_fidelity_properties,
    one_mode_fidelity,
    product_fidelity,
    symmetric_pair_fidelity,
)
from .transforms import (
    SymplecticMatrix4,
    apply_symplectic,
    beam_splitter_matrix,
    local_squeeze_matrix,
    standard_form_ii_generic,
    standard_form_ii_symmetric,
    to_standard_form_ii,
)

__version__ = "0.1.0"
