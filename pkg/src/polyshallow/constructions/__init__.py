"""Deterministic generators for the lower-bound constructions, with
proof-derived falsifiers (defeat any candidate shallow hitting set) and
witness finders (defeat any candidate coloring)."""

from .instance import ConstructionInstance, FalsifierAbort
from .bottomless import build_bottomless_no3shs, falsify_bottomless
from .dualstrips import build_dual_strip_lb, witness_dual_strip
from .strips import GadgetParams, build_strip_no2shs, falsify_strips
from .cross import build_cross_lb, witness_cross
from .sstrips import build_sstrips_lb

__all__ = [
    "ConstructionInstance",
    "FalsifierAbort",
    "GadgetParams",
    "build_bottomless_no3shs",
    "build_cross_lb",
    "build_dual_strip_lb",
    "build_sstrips_lb",
    "build_strip_no2shs",
    "falsify_bottomless",
    "falsify_strips",
    "witness_cross",
    "witness_dual_strip",
]
