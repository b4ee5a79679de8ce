"""Entanglement of inertial and accelerated field modes beyond the single-mode approximation."""

from ._core import (
    InvalidArgument,
    NumericError,
    boson_negativities,
    boson_squeezing_from_acceleration,
    fermion_curve,
    fermion_negativities,
    fermion_squeezing_from_energy,
    negativity,
    packet_transform,
    partial_trace,
    partial_transpose,
)

__all__ = [
    "InvalidArgument",
    "NumericError",
    "boson_negativities",
    "boson_squeezing_from_acceleration",
    "fermion_curve",
    "fermion_negativities",
    "fermion_squeezing_from_energy",
    "negativity",
    "packet_transform",
    "partial_trace",
    "partial_transpose",
]
