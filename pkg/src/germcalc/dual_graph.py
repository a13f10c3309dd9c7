"""Weighted dual graphs of curve configurations.

A configuration graph records the curves on a smooth surface that matter for
contracting a neighbourhood of a reducible fiber: exceptional vertices are the
curves of a minimal resolution (self-intersection at most -2) and component
vertices are the fiber components themselves, always (-1)-curves here.

Graphs are read from a small line-oriented text format::

    # comment
    vertex <id> kind=exc|comp self=<integer>
    edge <id> <id>

with ids matching ``[A-Za-z0-9_]+``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .exactlinalg import leading_principal_minors

_ID_RE = re.compile(r"[A-Za-z0-9_]+\Z")


class GraphError(ValueError):
    """Invalid graph input; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class VertexKind(Enum):
    EXCEPTIONAL = "exc"
    COMPONENT = "comp"


class ClusterShape(Enum):
    CHAIN = "chain"
    FORK = "fork"
    OTHER = "other"


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: VertexKind
    self_int: int


@dataclass(frozen=True)
class Cluster:
    """A connected piece of the exceptional-only subgraph.

    For chains the ids are listed in path order starting from the endpoint
    that appears first in the input; otherwise ids keep input order.
    """

    ids: tuple[str, ...]
    shape: ClusterShape


@dataclass(frozen=True)
class IntersectionMatrix:
    ids: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


class ConfigGraph:
    """Validated, immutable configuration graph."""

    def __init__(self, vertices: list[Vertex], edges: list[tuple[str, str]]):
        self._validate(vertices, edges)
        self.vertices: tuple[Vertex, ...] = tuple(vertices)
        self.edges: tuple[tuple[str, str], ...] = tuple(
            tuple(sorted(e)) for e in edges  # type: ignore[misc]
        )
        self.by_id = {v.id: v for v in self.vertices}
        adj: dict[str, list[str]] = {v.id: [] for v in self.vertices}
        order = {v.id: i for i, v in enumerate(self.vertices)}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        # neighbour lists in input order, for reproducible reports
        self.adjacency = {k: tuple(sorted(vs, key=order.__getitem__)) for k, vs in adj.items()}

    @staticmethod
    def _validate(vertices: list[Vertex], edges: list[tuple[str, str]]) -> None:
        if not vertices:
            raise GraphError("graph has no vertices")
        seen: set[str] = set()
        for v in vertices:
            if v.id in seen:
                raise GraphError(f"duplicate vertex id {v.id!r}")
            seen.add(v.id)
            if v.kind is VertexKind.EXCEPTIONAL and v.self_int > -2:
                raise GraphError(
                    f"exceptional vertex {v.id!r} needs self-intersection <= -2, got {v.self_int}"
                )
            if v.kind is VertexKind.COMPONENT and v.self_int != -1:
                raise GraphError(
                    f"component vertex {v.id!r} needs self-intersection -1, got {v.self_int}"
                )
        norm: set[tuple[str, str]] = set()
        for a, b in edges:
            for x in (a, b):
                if x not in seen:
                    raise GraphError(f"edge references unknown vertex {x!r}")
            if a == b:
                raise GraphError(f"loop at vertex {a!r}")
            key = (min(a, b), max(a, b))
            if key in norm:
                raise GraphError(f"multi-edge between {key[0]!r} and {key[1]!r}")
            norm.add(key)
        # connectivity
        adj: dict[str, set[str]] = {v.id: set() for v in vertices}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        stack = [vertices[0].id]
        reached = {vertices[0].id}
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in reached:
                    reached.add(nb)
                    stack.append(nb)
        if len(reached) != len(vertices):
            missing = sorted(seen - reached)
            raise GraphError(f"graph is disconnected (unreached: {', '.join(missing)})")

    def exceptional_ids(self) -> list[str]:
        return [v.id for v in self.vertices if v.kind is VertexKind.EXCEPTIONAL]

    def component_ids(self) -> list[str]:
        return [v.id for v in self.vertices if v.kind is VertexKind.COMPONENT]


def parse_graph(text: str) -> ConfigGraph:
    """Parse the line format above into a validated ConfigGraph."""
    vertices: list[Vertex] = []
    edges: list[tuple[str, str]] = []
    declared: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            if tokens[0] == "vertex":
                vertices.append(_parse_vertex(tokens, declared))
                declared.add(vertices[-1].id)
            elif tokens[0] == "edge":
                edges.append(_parse_edge(tokens, declared))
            else:
                raise GraphError(f"unknown keyword {tokens[0]!r}")
        except GraphError as err:
            if err.line is None:
                raise GraphError(str(err), lineno) from None
            raise
    try:
        return ConfigGraph(vertices, edges)
    except GraphError as err:
        raise GraphError(str(err)) from None


def _parse_vertex(tokens: list[str], declared: set[str]) -> Vertex:
    if len(tokens) != 4:
        raise GraphError("vertex line needs: vertex <id> kind=exc|comp self=<int>")
    vid = tokens[1]
    if not _ID_RE.match(vid):
        raise GraphError(f"bad vertex id {vid!r}")
    if vid in declared:
        raise GraphError(f"duplicate vertex id {vid!r}")
    fields = dict(t.split("=", 1) for t in tokens[2:] if "=" in t)
    if set(fields) != {"kind", "self"}:
        raise GraphError("vertex line needs kind= and self= fields")
    try:
        kind = VertexKind(fields["kind"])
    except ValueError:
        raise GraphError(f"unknown kind {fields['kind']!r}") from None
    try:
        self_int = int(fields["self"])
    except ValueError:
        raise GraphError(f"bad self-intersection {fields['self']!r}") from None
    if self_int > -1:
        raise GraphError(f"self-intersection must be <= -1, got {self_int}")
    if kind is VertexKind.EXCEPTIONAL and self_int > -2:
        raise GraphError(f"exceptional vertex {vid!r} needs self-intersection <= -2")
    if kind is VertexKind.COMPONENT and self_int != -1:
        raise GraphError(f"component vertex {vid!r} needs self-intersection -1")
    return Vertex(vid, kind, self_int)


def _parse_edge(tokens: list[str], declared: set[str]) -> tuple[str, str]:
    if len(tokens) != 3:
        raise GraphError("edge line needs: edge <id> <id>")
    a, b = tokens[1], tokens[2]
    for x in (a, b):
        if x not in declared:
            raise GraphError(f"edge references unknown vertex {x!r}")
    if a == b:
        raise GraphError(f"loop at vertex {a!r}")
    return (a, b)


def is_tree(g: ConfigGraph) -> bool:
    """True iff the (connected) graph is acyclic."""
    return len(g.edges) == len(g.vertices) - 1


def exceptional_clusters(g: ConfigGraph) -> list[Cluster]:
    """Connected components of the exceptional-only subgraph, with shapes."""
    exc = set(g.exceptional_ids())
    order = {v.id: i for i, v in enumerate(g.vertices)}
    seen: set[str] = set()
    clusters: list[Cluster] = []
    for vid in g.exceptional_ids():
        if vid in seen:
            continue
        comp = {vid}
        stack = [vid]
        while stack:
            for nb in g.adjacency[stack.pop()]:
                if nb in exc and nb not in comp:
                    comp.add(nb)
                    stack.append(nb)
        seen |= comp
        clusters.append(_shape_cluster(g, comp, order))
    return clusters


def _shape_cluster(g: ConfigGraph, comp: set[str], order: dict[str, int]) -> Cluster:
    deg = {v: sum(1 for nb in g.adjacency[v] if nb in comp) for v in comp}
    n_edges = sum(deg.values()) // 2
    acyclic = n_edges == len(comp) - 1
    degrees = sorted(deg.values(), reverse=True)
    if acyclic and (not degrees or degrees[0] <= 2):
        ids = _path_order(g, comp, deg, order)
        return Cluster(tuple(ids), ClusterShape.CHAIN)
    if acyclic and degrees[0] == 3 and (len(degrees) == 1 or degrees[1] <= 2):
        ids = sorted(comp, key=order.__getitem__)
        return Cluster(tuple(ids), ClusterShape.FORK)
    ids = sorted(comp, key=order.__getitem__)
    return Cluster(tuple(ids), ClusterShape.OTHER)


def _path_order(
    g: ConfigGraph, comp: set[str], deg: dict[str, int], order: dict[str, int]
) -> list[str]:
    if len(comp) == 1:
        return list(comp)
    ends = sorted((v for v in comp if deg[v] == 1), key=order.__getitem__)
    path = [ends[0]]
    prev = None
    while len(path) < len(comp):
        nxt = next(nb for nb in g.adjacency[path[-1]] if nb in comp and nb != prev)
        prev = path[-1]
        path.append(nxt)
    return path


def intersection_matrix(g: ConfigGraph, subset: list[str] | tuple[str, ...]) -> IntersectionMatrix:
    """Intersection form over the given vertices, in the given order."""
    for vid in subset:
        if vid not in g.by_id:
            raise GraphError(f"unknown vertex id {vid!r}")
    edge_set = {frozenset(e) for e in g.edges}
    rows = []
    for a in subset:
        row = []
        for b in subset:
            if a == b:
                row.append(g.by_id[a].self_int)
            else:
                row.append(1 if frozenset((a, b)) in edge_set else 0)
        rows.append(tuple(row))
    return IntersectionMatrix(tuple(subset), tuple(rows))


def is_negative_definite(m: IntersectionMatrix) -> bool:
    """Sylvester test: the k-th leading minor must have sign (-1)^k for all k."""
    minors = leading_principal_minors(m.as_lists())
    return all((minor > 0) if k % 2 == 0 else (minor < 0) for k, minor in enumerate(minors, 1))
