"""Covering graphs over labeled interval pseudo-partitions.

A pseudo-partition is a chain of closed intervals with disjoint interiors
covering the domain. The graph has an arrow A -> B whenever the image of A
meets the interior of B; the arrow is full when the image covers all of B,
partial otherwise. Primitive cycles (closed edge-walks not obtained by
repeating a shorter one, counted up to rotation) certify absence of periods.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .plmap import FLOAT_EPS, Interval, PLMap

EDGE_FULL = "full"
EDGE_PARTIAL = "partial"

__all__ = [
    "EDGE_FULL",
    "EDGE_PARTIAL",
    "CoveringGraph",
    "build_covering_graph",
    "primitive_cycle_census",
    "primitive_cycles",
]


@dataclass(frozen=True)
class CoveringGraph:
    """Directed graph on labeled intervals with full/partial arrows."""

    vertices: Tuple[Tuple[str, Interval], ...]
    edges: Tuple[Tuple[str, str, str], ...]

    def labels(self) -> List[str]:
        return [name for name, _ in self.vertices]

    def successors(self, label: str, kinds=(EDGE_FULL, EDGE_PARTIAL)) -> List[str]:
        return [b for a, b, kind in self.edges if a == label and kind in kinds]

    def edge_kind(self, a: str, b: str) -> Optional[str]:
        for u, v, kind in self.edges:
            if u == a and v == b:
                return kind
        return None

    def without_vertex(self, label: str) -> "CoveringGraph":
        """Subgraph with one vertex (and its incident edges) removed."""
        return CoveringGraph(
            tuple((n, iv) for n, iv in self.vertices if n != label),
            tuple(e for e in self.edges if e[0] != label and e[1] != label),
        )

    def to_dot(self) -> str:
        """DOT text; solid arrows are full coverings, dashed are partial."""
        lines = ["digraph covering {"]
        for name, _ in self.vertices:
            lines.append(f'  "{name}";')
        for a, b, kind in self.edges:
            style = "solid" if kind == EDGE_FULL else "dashed"
            lines.append(f'  "{a}" -> "{b}" [style={style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_covering_graph(
    f: PLMap,
    partition: Iterable[Tuple[str, Interval]],
    margin: Optional[float] = None,
) -> CoveringGraph:
    """Covering graph of f over a labeled pseudo-partition of its domain.

    Edges come from exact images: A -> B iff image(A) meets the interior of
    B, full iff image(A) covers B. Rational mode compares exactly; floating
    mode applies a 1e-9 margin to both tests.
    """
    items = sorted(partition, key=lambda kv: (kv[1].lo, kv[1].hi))
    if not items:
        raise ValueError("empty partition")
    names = [name for name, _ in items]
    if len(set(names)) != len(names):
        raise ValueError("partition labels must be unique")
    if margin is None:
        margin = 0 if f.is_exact else FLOAT_EPS

    def same(a, b):
        return a == b if margin == 0 else abs(a - b) <= margin

    dom = f.domain
    if not same(items[0][1].lo, dom.lo) or not same(items[-1][1].hi, dom.hi):
        raise ValueError("partition does not cover the domain")
    for (na, a), (nb, b) in zip(items, items[1:]):
        if not same(a.hi, b.lo):
            raise ValueError(f"partition gap or overlap between {na} and {nb}")
    for name, iv in items:
        if iv.is_degenerate:
            raise ValueError(f"degenerate partition element {name}")

    edges = []
    for name_a, a in items:
        img = f.image(a)
        for name_b, b in items:
            if img.meets_interior(b, margin):
                kind = EDGE_FULL if img.encloses(b, margin) else EDGE_PARTIAL
                edges.append((name_a, name_b, kind))
    return CoveringGraph(tuple(items), tuple(edges))


def primitive_cycles(graph: CoveringGraph, max_len: int) -> List[Tuple[str, ...]]:
    """All primitive cycles of length <= max_len, each as its canonical
    (lexicographically minimal) rotation. Full and partial arrows both count."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    labels = graph.labels()
    index = {name: i for i, name in enumerate(labels)}
    succ: List[List[int]] = [[] for _ in labels]
    for a, b, _kind in graph.edges:
        succ[index[a]].append(index[b])
    for lst in succ:
        lst.sort()

    out: List[Tuple[str, ...]] = []
    path: List[int] = []

    def extend(start: int, length: int):
        if len(path) == length:
            if start in succ[path[-1]]:
                seq = tuple(path)
                if _is_canonical(seq) and _is_primitive(seq):
                    named = tuple(labels[i] for i in seq)
                    out.append(
                        min(named[i:] + named[:i] for i in range(len(named)))
                    )
            return
        for nxt in succ[path[-1]]:
            if nxt >= start:  # the canonical rotation starts at the least vertex
                path.append(nxt)
                extend(start, length)
                path.pop()

    for length in range(1, max_len + 1):
        for start in range(len(labels)):
            path[:] = [start]
            extend(start, length)
    return out


def primitive_cycle_census(graph: CoveringGraph, max_len: int) -> Dict[int, int]:
    """Counts of primitive cycles (up to rotation) for each length <= max_len."""
    census = {length: 0 for length in range(1, max_len + 1)}
    for cyc in primitive_cycles(graph, max_len):
        census[len(cyc)] += 1
    return census


def _is_canonical(seq: Tuple[int, ...]) -> bool:
    n = len(seq)
    return all(seq <= seq[i:] + seq[:i] for i in range(1, n))


def _is_primitive(seq: Tuple[int, ...]) -> bool:
    n = len(seq)
    for d in range(1, n):
        if n % d == 0 and seq == seq[:d] * (n // d):
            return False
    return True
