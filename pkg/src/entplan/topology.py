"""Physical grid network: device grid, user placement, and link feasibility.

Devices sit on a rectangular grid with a fixed physical spacing.  Users
occupy distinct grid cells.  The distance between two users counts the
devices strictly between them along a shortest rectilinear route, and two
users may share a direct entangled link only when that distance does not
exceed the network's threshold.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GridNetwork:
    """Immutable grid placement of users.

    width, height: device counts per axis.
    edge_length_km: physical spacing, carried as metadata only.
    users: distinct (x, y) cells, indexed 0..N-1.
    max_link_distance: threshold on the devices-between count for a direct
        link (the CLI exposes it as ``--D``).
    """

    width: int
    height: int
    edge_length_km: float
    users: tuple[tuple[int, int], ...]
    max_link_distance: int

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError("grid must have positive dimensions")
        if self.max_link_distance < 0:
            raise ValueError("max_link_distance must be non-negative")
        users = tuple((int(x), int(y)) for x, y in self.users)
        object.__setattr__(self, "users", users)
        if len(users) < 2:
            raise ValueError("need at least two users")
        if len(set(users)) != len(users):
            raise ValueError("user coordinates must be distinct")
        for x, y in users:
            if not (0 <= x < self.width and 0 <= y < self.height):
                raise ValueError(f"user at ({x}, {y}) outside the grid")

    @property
    def n_users(self) -> int:
        return len(self.users)

    def _check_pair(self, i: int, j: int) -> None:
        n = self.n_users
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"user index out of range: ({i}, {j})")
        if i == j:
            raise ValueError(f"distance undefined for identical users ({i})")

    def user_distance(self, i: int, j: int) -> int:
        """Devices strictly between users i and j on a shortest grid route."""
        self._check_pair(i, j)
        (xi, yi), (xj, yj) = self.users[i], self.users[j]
        return abs(xi - xj) + abs(yi - yj) - 1

    def edge_allowed(self, i: int, j: int) -> bool:
        """Whether users i and j may share a direct entangled link."""
        return self.user_distance(i, j) <= self.max_link_distance

    def constrained_path(
        self, i: int, j: int, rng: np.random.Generator
    ) -> list[int] | None:
        """Shortest user path from i to j using allowed links only.

        Shortest means minimum total length, summing the devices-between
        count of every hop; ties prefer fewer hops, remaining ties are
        broken uniformly at random.  Returns None when j is unreachable.
        A directly linkable pair always yields ``[i, j]``.
        """
        self._check_pair(i, j)
        if self.edge_allowed(i, j):
            return [i, j]
        n = self.n_users
        allowed = [
            [k for k in range(n) if k != v and self.edge_allowed(v, k)]
            for v in range(n)
        ]
        dist = [float("inf")] * n
        dist[i] = 0
        heap: list[tuple[float, int]] = [(0, i)]
        while heap:
            d, v = heapq.heappop(heap)
            if d > dist[v]:
                continue
            for k in allowed[v]:
                nd = d + self.user_distance(v, k)
                if nd < dist[k]:
                    dist[k] = nd
                    heapq.heappush(heap, (nd, k))
        if dist[j] == float("inf"):
            return None
        # Every prefix of a minimum-length path is itself minimum-length, so
        # walking dist-consistent edges backward from j enumerates exactly
        # the minimum-length simple paths.
        paths: list[list[int]] = []
        stack = [[j]]
        while stack:
            part = stack.pop()
            head = part[-1]
            if head == i:
                paths.append(part[::-1])
                continue
            for k in allowed[head]:
                if k not in part and dist[k] + self.user_distance(k, head) == dist[head]:
                    stack.append(part + [k])
        paths.sort(key=lambda p: (len(p), p))
        ties = [p for p in paths if len(p) == len(paths[0])]
        return ties[int(rng.integers(len(ties)))]


# Placement of the six-user demonstration network on the 5x5 grid.
EXAMPLE_USERS: tuple[tuple[int, int], ...] = (
    (2, 2),
    (0, 3),
    (4, 1),
    (2, 1),
    (4, 0),
    (3, 0),
)


def example_network(max_link_distance: int = 7) -> GridNetwork:
    """The demonstration placement: 5x5 grid, 200 km spacing, six users."""
    return GridNetwork(
        width=5,
        height=5,
        edge_length_km=200.0,
        users=EXAMPLE_USERS,
        max_link_distance=max_link_distance,
    )


def grid_from_config(cfg: dict) -> GridNetwork:
    """Builds a GridNetwork from the scenario-config JSON shape."""
    grid = cfg.get("grid", {})
    return GridNetwork(
        width=int(grid.get("width", 5)),
        height=int(grid.get("height", 5)),
        edge_length_km=float(grid.get("edge_km", 200.0)),
        users=tuple((int(x), int(y)) for x, y in cfg["users"]),
        max_link_distance=int(cfg["D"]),
    )
