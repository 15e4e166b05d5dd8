"""Exact Poincare and Hilbert-Poincare series of spaces of commuting tuples
in compact connected Lie groups, computed from Weyl-group data."""

from weylseries.census import (
    CharPolyCensus,
    census_for,
    combinatorial_census,
    enumerate_census,
    load_census,
    product_census,
    save_census,
    validate_census,
)
from weylseries.exactpoly import IntPoly, TruncSeries, charpoly, dets_from_charpoly
from weylseries.groups import (
    GroupDescriptor,
    ReflectionRep,
    degree_bound,
    degrees,
    parse_descriptor,
    reflection_rep,
    weyl_order,
)
from weylseries.series import (
    Config,
    a_w,
    comm_series,
    diagnostics,
    hilbert_hom,
    poincare_hom,
    reduced_hom_hat,
    xm_series,
)

__all__ = [
    "CharPolyCensus",
    "Config",
    "GroupDescriptor",
    "IntPoly",
    "ReflectionRep",
    "TruncSeries",
    "a_w",
    "census_for",
    "charpoly",
    "combinatorial_census",
    "comm_series",
    "degree_bound",
    "degrees",
    "dets_from_charpoly",
    "diagnostics",
    "enumerate_census",
    "hilbert_hom",
    "load_census",
    "parse_descriptor",
    "poincare_hom",
    "product_census",
    "reduced_hom_hat",
    "reflection_rep",
    "save_census",
    "validate_census",
    "weyl_order",
    "xm_series",
]
