from spectral_sketch.operations.alias import AliasTable
from spectral_sketch.operations.basic import build_basic, estimate_basic
from spectral_sketch.operations.graph_ops import (
    connected_components,
    degrees,
    exact_cheeger,
    quadratic_form,
    weight_class_partition,
)
from spectral_sketch.operations.orient import assign_direction, potential
from spectral_sketch.operations.partition import partition
from spectral_sketch.operations.preprocess import preprocess
from spectral_sketch.operations.query import build_bundle, build_replicas, median_query, size_report
from spectral_sketch.operations.s1 import build_s1, estimate_s1
from spectral_sketch.operations.s2 import build_improved, build_s2, estimate_improved, estimate_s2
from spectral_sketch.operations.sparsify import sparsify
from spectral_sketch.operations.spectral import lambda1, sweep_cut
from spectral_sketch.operations.generators import generate

__all__ = [
    "AliasTable",
    "assign_direction",
    "build_basic",
    "build_bundle",
    "build_improved",
    "build_replicas",
    "build_s1",
    "build_s2",
    "connected_components",
    "degrees",
    "estimate_basic",
    "estimate_improved",
    "estimate_s1",
    "estimate_s2",
    "exact_cheeger",
    "generate",
    "lambda1",
    "median_query",
    "partition",
    "potential",
    "preprocess",
    "quadratic_form",
    "size_report",
    "sparsify",
    "sweep_cut",
    "weight_class_partition",
]
