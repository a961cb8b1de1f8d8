"""Planning, optimization and verification of pre-distributed entanglement.

Plans minimal graph-state resource states for quantum networks that must
serve a known set of EPR-pair tasks, under an optional on-demand satellite
link and physical distance constraints, and verifies the plans both
combinatorially (measurement schedules) and quantum-mechanically (statevector
oracle).
"""

from .graphstate import QubitGraph
from .multigraph import UserGraph
from .topology import GridNetwork

__all__ = ["QubitGraph", "UserGraph", "GridNetwork"]
__version__ = "0.1.0"
