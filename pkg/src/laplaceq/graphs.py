"""Hub graphs and the Laplacian density matrix.

Every family constructor labels the hub as vertex 0 and the peripheral
vertices as 1..n-1, so that matrices (and therefore eigensolver output)
are reproducible.  The density matrix of a graph is its combinatorial
Laplacian divided by the total degree, kept as exact fractions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import DegenerateInput, InvalidParameter, ParseError

__all__ = [
    "Graph",
    "DensityMatrix",
    "star",
    "star_like",
    "star_mlike",
    "star_alike_disjoint",
    "star_alike_path",
    "star_plus_path",
    "wheel",
    "family_graph",
    "FAMILIES",
    "density_matrix",
    "parse_graph",
    "serialize_graph",
    "graph_to_dict",
]


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise InvalidParameter(f"n must be >= 1, got {n}")
        normalized = set()
        for u, v in edges:
            if u == v:
                raise InvalidParameter(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameter(f"edge ({u}, {v}) out of range for n={n}")
            e = _edge(u, v)
            if e in normalized:
                raise InvalidParameter(f"duplicate edge {e}")
            normalized.add(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(normalized))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def degree_sequence(self) -> tuple[int, ...]:
        """Degrees sorted in non-increasing order."""
        return tuple(sorted(self.degrees(), reverse=True))

    def total_degree(self) -> int:
        return 2 * len(self.edges)

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n, list(self.edges) + list(extra))

    def peripheral_edges(self) -> list[tuple[int, int]]:
        """Edges not incident to the hub (vertex 0)."""
        return sorted(e for e in self.edges if 0 not in e)

    def is_hub_complete(self) -> bool:
        return all(_edge(0, v) in self.edges for v in range(1, self.n))

    def connected_components(self) -> int:
        adj = self.adjacency()
        seen = [False] * self.n
        count = 0
        for s in range(self.n):
            if seen[s]:
                continue
            count += 1
            stack = [s]
            seen[s] = True
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
        return count

    def laplacian(self) -> np.ndarray:
        """Integer Laplacian ``D - A``."""
        lap = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            lap[u, v] = lap[v, u] = -1
            lap[u, u] += 1
            lap[v, v] += 1
        return lap


# -- family constructors -----------------------------------------------------


def star(n: int) -> Graph:
    if n < 2:
        raise InvalidParameter(f"star requires n >= 2, got n={n}")
    return Graph(n, [(0, v) for v in range(1, n)])


def star_like(n: int) -> Graph:
    """Star plus the peripheral edge ``(n-2, n-1)``."""
    if n < 3:
        raise InvalidParameter(f"star_like requires n >= 3, got n={n}")
    return star(n).with_edges([(n - 2, n - 1)])


def star_mlike(n: int, m: int) -> Graph:
    """Star plus ``m`` pairwise-disjoint peripheral edges (1,2), (3,4), ..."""
    if n < 3:
        raise InvalidParameter(f"star_mlike requires n >= 3, got n={n}")
    if not 1 <= m <= (n - 1) // 2:
        raise InvalidParameter(
            f"star_mlike requires 1 <= m <= {(n - 1) // 2} for n={n}, got m={m}"
        )
    return star(n).with_edges([(2 * i - 1, 2 * i) for i in range(1, m + 1)])


def star_alike_disjoint(n: int) -> Graph:
    if n < 5:
        raise InvalidParameter(f"alike_disjoint requires n >= 5, got n={n}")
    return star(n).with_edges([(1, 2), (3, 4)])


def star_alike_path(n: int) -> Graph:
    if n < 4:
        raise InvalidParameter(f"alike_path requires n >= 4, got n={n}")
    return star(n).with_edges([(1, 2), (2, 3)])


def star_plus_path(n: int, k: int) -> Graph:
    """Star plus the peripheral path (1,2), (2,3), ..., (k, k+1)."""
    if n < 3:
        raise InvalidParameter(f"star_plus_path requires n >= 3, got n={n}")
    if not 0 <= k <= n - 2:
        raise InvalidParameter(
            f"star_plus_path requires 0 <= k <= {n - 2} for n={n}, got k={k}"
        )
    return star(n).with_edges([(i, i + 1) for i in range(1, k + 1)])


def wheel(n: int) -> Graph:
    """Star plus the full cycle on the peripheral vertices."""
    if n < 4:
        raise InvalidParameter(f"wheel requires n >= 4, got n={n}")
    return star_plus_path(n, n - 2).with_edges([(1, n - 1)])


# name -> (constructor, takes second parameter)
FAMILIES = {
    "star": (star, False),
    "star_like": (star_like, False),
    "alike_disjoint": (star_alike_disjoint, False),
    "alike_path": (star_alike_path, False),
    "star_mlike": (star_mlike, True),
    "star_plus_path": (star_plus_path, True),
    "wheel": (wheel, False),
}


def family_graph(name: str, n: int, m: int | None = None) -> Graph:
    """Build a family member by name; ``m`` is the second parameter if any."""
    try:
        ctor, needs_m = FAMILIES[name]
    except KeyError:
        raise InvalidParameter(
            f"unknown family {name!r}; expected one of {sorted(FAMILIES)}"
        ) from None
    if needs_m:
        if m is None:
            raise InvalidParameter(f"family {name!r} needs a second parameter (m)")
        return ctor(n, m)
    if m is not None:
        raise InvalidParameter(f"family {name!r} takes no second parameter (m)")
    return ctor(n)


# -- density matrix -----------------------------------------------------------


@dataclass(frozen=True)
class DensityMatrix:
    """Exact density matrix; ``entries`` is a tuple of rows of Fractions."""

    dim: int
    entries: tuple

    def trace(self) -> Fraction:
        return sum((self.entries[i][i] for i in range(self.dim)), Fraction(0))

    def row_sums(self) -> list[Fraction]:
        return [sum(row, Fraction(0)) for row in self.entries]

    def is_symmetric(self) -> bool:
        e = self.entries
        return all(
            e[i][j] == e[j][i] for i in range(self.dim) for j in range(i + 1, self.dim)
        )

    def to_numpy(self) -> np.ndarray:
        return np.array(
            [[float(x) for x in row] for row in self.entries], dtype=np.float64
        )


def density_matrix(g: Graph) -> DensityMatrix:
    """Laplacian of ``g`` scaled by its total degree."""
    d = g.total_degree()
    if d == 0:
        raise DegenerateInput("graph has no edges: total degree is 0")
    lap = g.laplacian()
    entries = tuple(
        tuple(Fraction(int(lap[i, j]), d) for j in range(g.n)) for i in range(g.n)
    )
    return DensityMatrix(g.n, entries)


# -- JSON graph format --------------------------------------------------------


def serialize_graph(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.sorted_edges()]})


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}


def parse_graph(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError("graph document must be a JSON object", "$")
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int):
        raise ParseError("field 'n' must be an integer", "$.n")
    if n < 1:
        raise ParseError(f"field 'n' must be >= 1, got {n}", "$.n")
    edges = doc.get("edges")
    if not isinstance(edges, list):
        raise ParseError("field 'edges' must be a list", "$.edges")
    seen = set()
    for i, pair in enumerate(edges):
        where = f"$.edges[{i}]"
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or any(isinstance(x, bool) or not isinstance(x, int) for x in pair)
        ):
            raise ParseError("edge must be a pair of integers", where)
        u, v = pair
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", where)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex index out of range for n={n}", where)
        e = _edge(u, v)
        if e in seen:
            raise ParseError(f"duplicate edge {list(e)}", where)
        seen.add(e)
    return Graph(n, seen)
