"""Finite right topological groups.

Every right-invariant topology on a finite group is the partition into right
cosets of a subgroup, so an instance is a pair (G, H).  The package computes
the σ-topology, function spaces, measure algebras and Haar measures of such
instances exactly, next to closed-form oracles for each.
"""

from .groups import GroupTable, Subgrp, validate_group
from .rtg import RtGroup, make_rtg, make_rtg_from_topology
from .topology import AlexandrovTopology

__all__ = ["AlexandrovTopology", "GroupTable", "RtGroup", "Subgrp", "make_rtg", "make_rtg_from_topology", "validate_group"]
__version__ = "0.1.0"
