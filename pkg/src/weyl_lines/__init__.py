"""Weyl group action on curve classes of blowups of P^r, and (i)-Weyl line detection."""
from .chow import (
    ChowMonomial,
    CurveClass,
    DivisorClass,
    SpaceParams,
    bilinear_curve,
    bilinear_div,
    chow_product,
    mod_f_equal,
    numerical_i_level,
    pair,
    sort_desc,
    special_classes,
    vdim,
)
from .classify import equivalence_report, is_weyl_line, noether_check, spi_witness_search
from .coxeter import CoxGraph, chamber_face, chamber_pairings, tits_reduce, weyl_finite
from .cremona import is_cremona_reduced, phi_curve, phi_div, project, projection_inequality
from .reduction import cremona_reduce, nontermination_certificate, orbit_enumerate, r_table

__version__ = "0.1.0"
