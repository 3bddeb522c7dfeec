"""Linking numbers of curves in real projective 3-space.

The main entry points are :func:`linking_number` (signed count of lines
through a generic point meeting two curves), :func:`self_linking` for
null-homologous knots, and the independent double-cover oracle in
:mod:`rp3link.cover_oracle`.
"""
from .config import RunConfig, Tolerances
from .cover_oracle import lk_s3, oracle_degree, oracle_lk_rp3, oracle_selflink, preimage
from .curves import (LiftedCurve, homology_class, min_separation, parse_curves,
                     random_curve, read_curves, transform, validate, write_curves)
from .linking import (DegreeReport, Viewpoint, degree_through_viewpoint, is_generic,
                      linking_number, make_viewpoint, sample_viewpoint)
from .selflink import SelfLinkReport, self_linking

__all__ = [
    "RunConfig", "Tolerances", "LiftedCurve", "DegreeReport", "SelfLinkReport", "Viewpoint",
    "linking_number", "self_linking", "degree_through_viewpoint", "is_generic",
    "make_viewpoint", "sample_viewpoint", "validate", "transform", "homology_class",
    "min_separation", "random_curve", "parse_curves", "read_curves", "write_curves",
    "preimage", "lk_s3", "oracle_degree", "oracle_lk_rp3", "oracle_selflink",
]
