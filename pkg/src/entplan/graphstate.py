"""Graph-level rewriting rules for graph states.

A resource state is represented by a simple undirected graph whose vertices
are qubit ids, each annotated with the user that stores it.  Single-qubit
Pauli measurements and the two-qubit merging measurement act on graph states
as pure graph rewrites (up to local corrections, which are out of model):

- Z-measurement deletes the vertex.
- Y-measurement locally complements at the vertex, then deletes it.
- X-measurement conjugates a Y-measurement by local complementations at a
  chosen neighbor (the "helper").
- The merging measurement contracts two vertices into one; edges present at
  both endpoints cancel, so the merged neighborhood is the symmetric
  difference of the originals.

All rewrites are pure functions returning new graphs.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping


class QubitGraph:
    """Simple graph over qubit ids with an owning user per qubit."""

    def __init__(
        self,
        owners: Mapping[int, int],
        edges: Iterable[tuple[int, int]] = (),
    ) -> None:
        self._owner: dict[int, int] = {int(q): int(u) for q, u in owners.items()}
        self._adj: dict[int, set[int]] = {q: set() for q in self._owner}
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError(f"self-loop at qubit {a}")
            if a not in self._owner or b not in self._owner:
                raise ValueError(f"edge ({a}, {b}) references unknown qubit")
            self._adj[a].add(b)
            self._adj[b].add(a)

    def copy(self) -> "QubitGraph":
        g = QubitGraph({})
        g._owner = dict(self._owner)
        g._adj = {q: set(nbrs) for q, nbrs in self._adj.items()}
        return g

    @property
    def n_qubits(self) -> int:
        return len(self._owner)

    def qubits(self) -> list[int]:
        return sorted(self._owner)

    def has_qubit(self, q: int) -> bool:
        return q in self._owner

    def owner(self, q: int) -> int:
        self._require(q)
        return self._owner[q]

    def neighbors(self, q: int) -> set[int]:
        self._require(q)
        return set(self._adj[q])

    def degree(self, q: int) -> int:
        self._require(q)
        return len(self._adj[q])

    def has_edge(self, a: int, b: int) -> bool:
        self._require(a)
        self._require(b)
        return b in self._adj[a]

    def edges(self) -> set[tuple[int, int]]:
        return {
            (a, b) for a, nbrs in self._adj.items() for b in nbrs if a < b
        }

    def owned_by(self, user: int) -> list[int]:
        return sorted(q for q, u in self._owner.items() if u == user)

    def owner_map(self) -> dict[int, int]:
        return dict(self._owner)

    def _require(self, q: int) -> None:
        if q not in self._owner:
            raise ValueError(f"unknown qubit {q}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QubitGraph):
            return NotImplemented
        return self._owner == other._owner and self._adj == other._adj

    def __repr__(self) -> str:
        return (
            f"QubitGraph(owners={dict(sorted(self._owner.items()))}, "
            f"edges={sorted(self.edges())})"
        )

    def to_dict(self) -> dict:
        """JSON-ready form: qubit/owner pairs plus an edge list."""
        return {
            "qubits": [[q, self._owner[q]] for q in self.qubits()],
            "edges": sorted(list(e) for e in self.edges()),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "QubitGraph":
        owners = {int(q): int(u) for q, u in data["qubits"]}
        return cls(owners, [(int(a), int(b)) for a, b in data["edges"]])


def local_complement(g: QubitGraph, v: int) -> QubitGraph:
    """Complements the induced subgraph on the neighborhood of v."""
    out = g.copy()
    nbrs = sorted(out.neighbors(v))
    for idx, a in enumerate(nbrs):
        for b in nbrs[idx + 1 :]:
            if b in out._adj[a]:
                out._adj[a].discard(b)
                out._adj[b].discard(a)
            else:
                out._adj[a].add(b)
                out._adj[b].add(a)
    return out


def measure_z(g: QubitGraph, v: int) -> QubitGraph:
    """Removes v and its incident edges."""
    out = g.copy()
    for n in out.neighbors(v):
        out._adj[n].discard(v)
    del out._adj[v]
    del out._owner[v]
    return out


def measure_y(g: QubitGraph, v: int) -> QubitGraph:
    """Local complementation at v followed by removal of v."""
    return measure_z(local_complement(g, v), v)


def measure_x(g: QubitGraph, v: int, helper: int | None = None) -> QubitGraph:
    """Removes v, routing its entanglement through an adjacent helper.

    The helper must be a neighbor of v; an isolated v is simply removed and
    the helper is ignored.
    """
    nbrs = g.neighbors(v)
    if not nbrs:
        return measure_z(g, v)
    if helper is None:
        raise ValueError(f"qubit {v} has neighbors; a helper is required")
    if helper not in nbrs:
        raise ValueError(f"helper {helper} is not adjacent to qubit {v}")
    out = local_complement(g, helper)
    out = measure_y(out, v)
    return local_complement(out, helper)


def merge(g: QubitGraph, u: int, v: int) -> tuple[QubitGraph, int]:
    """Contracts u and v into one qubit, returning (graph, merged id).

    The merged qubit keeps the id of u.  Its neighborhood is the symmetric
    difference of the old neighborhoods: an edge to a common neighbor appears
    twice in the contraction and cancels.  Adjacency of u and v is not
    required.  The owner is the common owner when the owners agree, else the
    owner of u.
    """
    if u == v:
        raise ValueError(f"cannot merge qubit {u} with itself")
    nu = g.neighbors(u)
    nv = g.neighbors(v)
    merged_nbrs = (nu ^ nv) - {u, v}
    out = g.copy()
    for n in nu:
        out._adj[n].discard(u)
    for n in nv:
        out._adj[n].discard(v)
    del out._adj[v]
    del out._owner[v]
    out._adj[u] = set(merged_nbrs)
    for n in merged_nbrs:
        out._adj[n].add(u)
    return out, u
