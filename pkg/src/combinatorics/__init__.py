"""Signed permutations, partitions and premaps."""

from .partitions import (
    IntegerPartition,
    Pairing,
    SetPartition,
    double_factorial,
    enumerate_pairings,
    integer_partitions,
    join,
    meet,
    triangle_defect,
)
from .premaps import (
    FundamentalDomain,
    PreMap,
    alternating_pairings,
    doubled,
    enumerate_alternating_premaps,
    enumerate_involution_premaps,
    enumerate_premaps,
    euler_characteristic,
    fd,
    haar_lambda,
    is_alternating,
    is_involution_premap,
    is_premap,
    join_blocks,
    k_vertices,
    pairing_identities_check,
    pairing_of,
    premap_from_pairing,
    premap_euler,
    relabeled,
    signed_points,
    split_by_colour,
    transport_sign,
    with_infinity,
)
from .signed import SignedDomain, SignedPermutation, cayley_distance, compose, delta, delta_eps, is_below

__all__ = [
    "FundamentalDomain",
    "IntegerPartition",
    "Pairing",
    "PreMap",
    "SetPartition",
    "SignedDomain",
    "SignedPermutation",
    "alternating_pairings",
    "cayley_distance",
    "compose",
    "delta",
    "delta_eps",
    "double_factorial",
    "doubled",
    "enumerate_alternating_premaps",
    "enumerate_involution_premaps",
    "enumerate_pairings",
    "enumerate_premaps",
    "euler_characteristic",
    "fd",
    "haar_lambda",
    "integer_partitions",
    "is_alternating",
    "is_below",
    "is_involution_premap",
    "is_premap",
    "join",
    "join_blocks",
    "k_vertices",
    "meet",
    "pairing_identities_check",
    "pairing_of",
    "premap_from_pairing",
    "premap_euler",
    "relabeled",
    "signed_points",
    "split_by_colour",
    "transport_sign",
    "triangle_defect",
    "with_infinity",
]
