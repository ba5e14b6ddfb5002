"""Geometry of unitary orbits of finite-dimensional density matrices."""

from ._core import (
    CapacityExceeded,
    InvalidInput,
    classicalize,
    concurrence_2q,
    coords_d2,
    coords_d3,
    coords_d4,
    entropy,
    estimate_dimension,
    factor_bipartite,
    factor_multipartite,
    haar_unitary,
    inverse_coords_d4,
    is_classically_correlated,
    max_concurrence_closed_form,
    max_negativity_orbit,
    negativity,
    partial_transpose,
    product_constraint,
    product_orbit_dims,
    product_surface_z,
    purity,
    random_density,
    same_orbit,
    sample_product_surface,
    spectrum_of,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
