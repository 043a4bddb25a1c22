"""Combinatorial maps as cross involutions.

Exposes the map value type, the gluing calculus, map homomorphisms, cores,
cross-circuit cutting, named families and small-scale enumeration.
"""

from .mapmodel import (
    CyclePair,
    InvariantBundle,
    Map,
    canonical_form,
    canonical_key,
    canonical_map,
    cells,
    components,
    dual,
    from_pairs,
    invariants,
    is_connected,
    is_plane,
    isomorphic,
    isomorphism_witness,
    orientability,
    phi,
    phi_tuple,
    plane_link,
    plane_loop,
    signed_genus,
    tau,
    tau_tuple,
    twisted_loop,
    validate,
)

__all__ = [
    "CyclePair",
    "InvariantBundle",
    "Map",
    "canonical_form",
    "canonical_key",
    "canonical_map",
    "cells",
    "components",
    "dual",
    "from_pairs",
    "invariants",
    "is_connected",
    "is_plane",
    "isomorphic",
    "isomorphism_witness",
    "orientability",
    "phi",
    "phi_tuple",
    "plane_link",
    "plane_loop",
    "signed_genus",
    "tau",
    "tau_tuple",
    "twisted_loop",
    "validate",
]
