"""Spectral lower bounds on designs in finite symmetric spaces."""

from .spaces import (
    SchemeError,
    Space,
    SpectralData,
    ValidationReport,
    build_named_space,
    cycle,
    hamming,
    johnson,
    load_space,
    save_space,
    spectral_decomposition,
    spherical_projection,
    validate_scheme,
)
from .spectra import (
    SubsetEig,
    dirichlet_form,
    dirichlet_form_edges,
    laplacian_apply,
    load_subset,
    quotient_matrix,
    spherical_subset_eigen,
    subset_eigen,
)
from .designs import (
    BoundReport,
    CoverReport,
    Design,
    IsometryAction,
    StrengthReport,
    build_F,
    design_bound,
    design_bound_auto,
    design_strength,
    load_design,
    load_isometries,
    make_design,
    min_design_search,
    translations_to_origin,
    verify_cover_chain,
    verify_design,
)
from .torus import (
    TorusBound,
    ball_fundamental_tone,
    bessel_first_zero,
    lattice_density_bound,
    torus_covolume_bound,
    unit_ball_volume,
)

__version__ = "0.1.0"
