"""Exact arithmetic in the ring of the fixed-point scheme of a dual torus
modulo its Weyl group, from root datum and Frobenius data, with independent
counting oracles for every number it produces."""

from .balgebra import (
    BContext,
    BElement,
    GENERIC_SC,
    SO_EVEN,
    build_context,
    gram_discriminant,
    multiply_b,
    normal_form,
    rank,
    reducedness_certificate,
    structure_constants,
    trace_form,
)
from .intlinalg import IntMatrix, det, hnf, in_image, snf
from .oracles import TorusPoint, class_count, enumerate_points, evaluate, torus_fixed_count
from .orbitring import InvariantElement, OrbitCache, height, multiply, orbit
from .rootdata import (
    FrobeniusData,
    RootDatum,
    WeylElement,
    build_standard,
    dominant_representative,
    is_q_restricted,
    weyl_group,
)

__all__ = [
    "BContext",
    "BElement",
    "GENERIC_SC",
    "SO_EVEN",
    "FrobeniusData",
    "IntMatrix",
    "InvariantElement",
    "OrbitCache",
    "RootDatum",
    "TorusPoint",
    "WeylElement",
    "build_context",
    "build_standard",
    "class_count",
    "det",
    "dominant_representative",
    "enumerate_points",
    "evaluate",
    "gram_discriminant",
    "height",
    "hnf",
    "in_image",
    "is_q_restricted",
    "multiply",
    "multiply_b",
    "normal_form",
    "orbit",
    "rank",
    "reducedness_certificate",
    "snf",
    "structure_constants",
    "torus_fixed_count",
    "trace_form",
    "weyl_group",
]
