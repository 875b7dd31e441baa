"""Brute-force exploration of peripheral-edge additions from star(n) to wheel(n).

Graphs are ``star(n)`` plus a set of peripheral edges (edges avoiding the
hub).  They are deduplicated up to isomorphism with a cheap signature
(sorted degree sequence plus spectrum rounded to 1e-8); graphs that share
a signature are only merged after a backtracking isomorphism test agrees,
so cospectral non-isomorphic graphs stay separate.

Two conjectures are checked and *reported*, never asserted:

1. a single peripheral-edge addition is not LOCC-simulable (spectra are
   incomparable) while the child has at most n-3 peripheral edges, and is
   simulable once the process nears the wheel, with the wheel step going
   in the wheel's direction (wheel ≺ parent);
2. any two graphs with the same number of edges are comparable.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np

from .errors import InvalidParameter
from .graphs import Graph, density_matrix, graph_to_dict, star
from .locc import Verdict, locc_verdict_pair
from .spectra import Spectrum, numeric_spectrum

__all__ = [
    "is_isomorphic",
    "canonical_signature",
    "ClassInfo",
    "Step",
    "ExplorationState",
    "ConjectureReport",
    "explore",
    "enumerate_peripheral_graphs",
    "test_conjecture_1",
    "test_conjecture_2",
]

N_MIN, N_MAX = 4, 9
SIGNATURE_RESOLUTION = 1e-8


# -- isomorphism ------------------------------------------------------------------


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Backtracking isomorphism test with degree and adjacency pruning."""
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    if g.degree_sequence() != h.degree_sequence():
        return False
    ga, ha = g.adjacency(), h.adjacency()
    gdeg, hdeg = g.degrees(), h.degrees()

    def profile(adj, deg, v):
        return (deg[v], tuple(sorted(deg[w] for w in adj[v])))

    gprof = [profile(ga, gdeg, v) for v in range(g.n)]
    hprof = [profile(ha, hdeg, v) for v in range(h.n)]
    if sorted(gprof) != sorted(hprof):
        return False

    # visit g's vertices so that each one (after the first) touches a mapped one
    order, seen = [], set()
    for root in sorted(range(g.n), key=lambda v: -gdeg[v]):
        if root in seen:
            continue
        queue = [root]
        seen.add(root)
        while queue:
            u = queue.pop(0)
            order.append(u)
            for w in sorted(ga[u], key=lambda x: -gdeg[x]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        u = order[i]
        for v in range(h.n):
            if v in used or hprof[v] != gprof[u]:
                continue
            if any((w in ga[u]) != (mapping[w] in ha[v]) for w in mapping):
                continue
            mapping[u] = v
            used.add(v)
            if extend(i + 1):
                return True
            del mapping[u]
            used.discard(v)
        return False

    return extend(0)


def canonical_signature(g: Graph) -> tuple:
    """Sorted degree sequence plus the density spectrum rounded to 1e-8.

    Equal graphs up to isomorphism always share a signature; the converse
    needs :func:`is_isomorphic`.
    """
    w = np.linalg.eigvalsh(g.laplacian().astype(float) / g.total_degree())
    rounded = tuple(int(x) for x in np.rint(np.sort(w)[::-1] / SIGNATURE_RESOLUTION))
    return (g.degree_sequence(), rounded)


def _signature_key(sig: tuple, index: int) -> str:
    digest = hashlib.sha1(repr(sig).encode()).hexdigest()[:12]
    return f"{digest}#{index}"


# -- exploration state ---------------------------------------------------------------


@dataclass
class ClassInfo:
    key: str
    graph: Graph
    signature: tuple
    peripheral_edges: int
    spectrum: Optional[Spectrum] = None

    def get_spectrum(self) -> Spectrum:
        if self.spectrum is None:
            self.spectrum = numeric_spectrum(density_matrix(self.graph))
        return self.spectrum


@dataclass
class Step:
    parent: str
    edge: tuple
    child: str
    verdict: Optional[Verdict] = None


@dataclass
class ExplorationState:
    n: int
    cycle_only: bool
    max_extra_edges: int
    classes: dict = field(default_factory=dict)
    steps: list = field(default_factory=list)
    _buckets: dict = field(default_factory=dict, repr=False)

    def add(self, g: Graph) -> tuple[str, bool]:
        """Return the class key for ``g``, creating the class if new."""
        sig = canonical_signature(g)
        bucket = self._buckets.setdefault(sig, [])
        for key in bucket:
            if is_isomorphic(self.classes[key].graph, g):
                return key, False
        key = _signature_key(sig, len(bucket))
        bucket.append(key)
        self.classes[key] = ClassInfo(key, g, sig, len(g.peripheral_edges()))
        return key, True

    def by_level(self) -> dict[int, list[ClassInfo]]:
        levels: dict[int, list[ClassInfo]] = {}
        for info in self.classes.values():
            levels.setdefault(info.peripheral_edges, []).append(info)
        return levels

    def root(self) -> str:
        return next(k for k, c in self.classes.items() if c.peripheral_edges == 0)

    def reachable_from_root(self) -> set[str]:
        children: dict[str, set[str]] = {}
        for s in self.steps:
            children.setdefault(s.parent, set()).add(s.child)
        seen, stack = {self.root()}, [self.root()]
        while stack:
            for c in children.get(stack.pop(), ()):
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        return seen


def _cycle_edges(n: int) -> list[tuple[int, int]]:
    edges = [(i, i + 1) for i in range(1, n - 1)]
    edges.append((1, n - 1))
    return edges


def _check_n(n: int, lo: int) -> None:
    if not lo <= n <= N_MAX:
        raise InvalidParameter(f"n must be in [{lo}, {N_MAX}], got n={n}")


def explore(n: int, max_extra_edges: Optional[int] = None, cycle_only: bool = False) -> ExplorationState:
    """Enumerate classes level by level and log every single-edge step.

    ``max_extra_edges`` defaults to n-1 (the wheel's peripheral edge count).
    With ``cycle_only`` only edges of the peripheral cycle may be added.
    """
    _check_n(n, N_MIN)
    limit = (n - 1) if cycle_only else (n - 1) * (n - 2) // 2
    if max_extra_edges is None:
        max_extra_edges = n - 1
    if not 0 <= max_extra_edges <= limit:
        raise InvalidParameter(f"max_extra_edges must be in [0, {limit}] for n={n}, got {max_extra_edges}")

    state = ExplorationState(n, cycle_only, max_extra_edges)
    base = star(n)
    state.add(base)
    if cycle_only:
        _explore_cycle(state, base, max_extra_edges)
    else:
        _explore_all(state, base, max_extra_edges)
    return state


def _explore_all(state: ExplorationState, base: Graph, max_extra: int) -> None:
    # every peripheral graph with k edges is some (k-1)-edge graph plus one
    # edge, and isomorphisms of peripheral graphs permute peripheral edges,
    # so expanding one representative per class is exhaustive
    candidates = list(combinations(range(1, state.n), 2))
    frontier = [state.root()]
    seen_steps = set()
    for _ in range(max_extra):
        nxt = []
        for key in frontier:
            g = state.classes[key].graph
            for e in candidates:
                if e in g.edges:
                    continue
                child_key, new = state.add(g.with_edges([e]))
                if new:
                    nxt.append(child_key)
                if (key, child_key) not in seen_steps:
                    seen_steps.add((key, child_key))
                    state.steps.append(Step(key, e, child_key))
        frontier = nxt


def _explore_cycle(state: ExplorationState, base: Graph, max_extra: int) -> None:
    # subsets of the labelled cycle are enumerated directly: isomorphic
    # subsets need not be related by a symmetry of the cycle
    cyc = _cycle_edges(state.n)
    seen_steps = set()
    keys = {(): state.root()}
    for k in range(1, max_extra + 1):
        for subset in combinations(range(len(cyc)), k):
            child_key, _ = state.add(base.with_edges([cyc[i] for i in subset]))
            keys[subset] = child_key
            for drop in subset:
                parent_subset = tuple(i for i in subset if i != drop)
                parent_key = keys[parent_subset]
                if (parent_key, child_key) not in seen_steps:
                    seen_steps.add((parent_key, child_key))
                    state.steps.append(Step(parent_key, cyc[drop], child_key))


def enumerate_peripheral_graphs(n: int, max_extra_edges: int, cycle_only: bool = False) -> list[Graph]:
    """One representative per isomorphism class of star(n) + S, |S| <= max_extra_edges."""
    state = explore(n, max_extra_edges, cycle_only)
    infos = sorted(state.classes.values(), key=lambda c: (c.peripheral_edges, c.signature))
    return [c.graph for c in infos]


# -- conjectures -------------------------------------------------------------------------


@dataclass
class ConjectureReport:
    conjecture: int
    n: int
    reading: str
    max_extra_edges: int
    records: list
    counterexamples: list
    verdict: str
    summary: dict

    def to_dict(self) -> dict:
        return {
            "conjecture": self.conjecture,
            "n": self.n,
            "range": {"n": self.n, "max_extra_edges": self.max_extra_edges, "reading": self.reading},
            "records": self.records,
            "counterexamples": self.counterexamples,
            "verdict": self.verdict,
            "summary": self.summary,
        }


def _reading(cycle_only: bool) -> str:
    return "cycle-only" if cycle_only else "all-peripheral"


def _graph_doc(info: ClassInfo) -> dict:
    return {"key": info.key, "peripheral_edges": info.peripheral_edges, "graph": graph_to_dict(info.graph)}


def _is_wheel(info: ClassInfo, n: int) -> bool:
    if info.peripheral_edges != n - 1:
        return False
    # 2-regular and connected on the peripheral vertices: the cycle
    return all(d == 3 for d in info.graph.degrees()[1:]) and _peripheral_connected(info.graph)


def _peripheral_connected(g: Graph) -> bool:
    sub = Graph(g.n - 1, [(u - 1, v - 1) for u, v in g.peripheral_edges()])
    return sub.connected_components() == 1


def test_conjecture_1(n: int, max_extra_edges: Optional[int] = None, cycle_only: bool = False) -> ConjectureReport:
    """Classify every single-edge step (parent -> child) by majorization.

    Expected: incomparable when the child has <= n-3 peripheral edges,
    comparable beyond that, and for steps ending at the wheel the wheel's
    spectrum is majorized by its parent's.
    """
    _check_n(n, 5)
    state = explore(n, max_extra_edges, cycle_only)
    records, counterexamples = [], []
    reached_wheel = False
    for step in state.steps:
        parent, child = state.classes[step.parent], state.classes[step.child]
        verdict = locc_verdict_pair(parent.get_spectrum(), child.get_spectrum())
        step.verdict = verdict
        to_wheel = _is_wheel(child, n)
        reached_wheel |= to_wheel
        if child.peripheral_edges <= n - 3:
            expected = "incomparable"
            ok = not verdict.comparable
        elif to_wheel:
            expected = "child ≺ parent"
            ok = verdict.b_to_a.holds
        else:
            expected = "comparable"
            ok = verdict.comparable
        rec = {
            "parent": step.parent,
            "child": step.child,
            "added_edge": list(step.edge),
            "child_peripheral_edges": child.peripheral_edges,
            "to_wheel": to_wheel,
            "simulable": verdict.comparable,
            "verdict": verdict.kind,
            **verdict.to_dict(),
            "expected": expected,
            "consistent": ok,
        }
        records.append(rec)
        if not ok:
            counterexamples.append({**rec, "parent_graph": _graph_doc(parent), "child_graph": _graph_doc(child)})
    if counterexamples:
        verdict_text = "refuted"
    elif not reached_wheel:
        verdict_text = "mixed"  # second clause untested within max_extra_edges
    else:
        verdict_text = "consistent"
    summary = {
        "classes": len(state.classes),
        "steps": len(records),
        "simulable_steps": sum(r["simulable"] for r in records),
        "counterexamples": len(counterexamples),
        "reached_wheel": reached_wheel,
    }
    return ConjectureReport(1, n, _reading(cycle_only), state.max_extra_edges,
                            records, counterexamples, verdict_text, summary)


def test_conjecture_2(n: int, max_extra_edges: Optional[int] = None, cycle_only: bool = False) -> ConjectureReport:
    """Check comparability of every pair of distinct classes with equal edge count."""
    _check_n(n, 5)
    state = explore(n, max_extra_edges, cycle_only)
    records, counterexamples = [], []
    for level, infos in sorted(state.by_level().items()):
        infos = sorted(infos, key=lambda c: c.signature)
        for a, b in combinations(infos, 2):
            verdict = locc_verdict_pair(a.get_spectrum(), b.get_spectrum())
            rec = {
                "a": a.key,
                "b": b.key,
                "peripheral_edges": level,
                "verdict": verdict.kind,
                **verdict.to_dict(),
                "consistent": verdict.comparable,
            }
            records.append(rec)
            if not verdict.comparable:
                counterexamples.append({**rec, "a_graph": _graph_doc(a), "b_graph": _graph_doc(b)})
    if counterexamples:
        verdict_text = "refuted"
    elif not records:
        verdict_text = "mixed"  # no level had two classes to compare
    else:
        verdict_text = "consistent"
    summary = {
        "classes": len(state.classes),
        "pairs": len(records),
        "comparable_pairs": sum(r["consistent"] for r in records),
        "counterexamples": len(counterexamples),
    }
    return ConjectureReport(2, n, _reading(cycle_only), state.max_extra_edges,
                            records, counterexamples, verdict_text, summary)


# keep pytest from collecting the two public checks above when imported in tests
test_conjecture_1.__test__ = False
test_conjecture_2.__test__ = False
