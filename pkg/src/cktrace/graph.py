"""Finite directed graphs and their path algebra.

Paths are written range-to-source: in the literal "e1.e2", edge e2 is
traversed first and e1 last, so the range (endpoint) of the path is the
range of e1 and the source (start) is the source of e2.  Concatenation
``compose(lam, nu)`` therefore requires ``lam.source == nu.range`` and
glues nu onto the source side of lam.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Structural problem in a graph, path or vertex reference."""


class ParseError(GraphError):
    """Malformed graph / path / trace document."""


@dataclass(frozen=True)
class Edge:
    id: str
    src: str  # where the edge starts (its source vertex)
    dst: str  # where the edge ends (its range vertex)


@dataclass(frozen=True)
class Graph:
    """Immutable finite directed multigraph with canonically sorted parts."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge]):
        vs = tuple(sorted(vertices))
        es = tuple(sorted(edges, key=lambda e: e.id))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)
        vset = set()
        for v in vs:
            if not isinstance(v, str) or not v:
                raise GraphError(f"invalid vertex id {v!r}")
            if v in vset:
                raise GraphError(f"duplicate vertex id {v!r}")
            vset.add(v)
        eset = set()
        for e in es:
            if not isinstance(e.id, str) or not e.id:
                raise GraphError(f"invalid edge id {e.id!r}")
            if e.id in eset:
                raise GraphError(f"duplicate edge id {e.id!r}")
            eset.add(e.id)
            if e.src not in vset:
                raise GraphError(f"edge {e.id!r} references undeclared vertex {e.src!r}")
            if e.dst not in vset:
                raise GraphError(f"edge {e.id!r} references undeclared vertex {e.dst!r}")

    @cached_property
    def _edge_map(self) -> Mapping[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _receivers(self) -> Mapping[str, tuple[Edge, ...]]:
        acc: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            acc[e.dst].append(e)
        return {v: tuple(es) for v, es in acc.items()}

    @cached_property
    def _emitters(self) -> Mapping[str, tuple[Edge, ...]]:
        acc: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            acc[e.src].append(e)
        return {v: tuple(es) for v, es in acc.items()}

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edge_map[edge_id]
        except KeyError:
            raise GraphError(f"unknown edge {edge_id!r}") from None

    def check_vertex(self, v: str) -> str:
        if v not in self._receivers:
            raise GraphError(f"unknown vertex {v!r}")
        return v

    def receivers(self, v: str) -> tuple[Edge, ...]:
        """Edges ending at v (the edges the projection at v decomposes over)."""
        self.check_vertex(v)
        return self._receivers[v]

    def emitters(self, v: str) -> tuple[Edge, ...]:
        """Edges starting at v."""
        self.check_vertex(v)
        return self._emitters[v]

    def is_regular(self, v: str) -> bool:
        return bool(self.receivers(v))

    def classify_vertex(self, v: str) -> str:
        """'regular' if v receives at least one edge, else 'source-singular'."""
        return "regular" if self.is_regular(v) else "source-singular"

    # -- path construction ------------------------------------------------

    def trivial_path(self, v: str) -> "Path":
        self.check_vertex(v)
        return Path((), v, v)

    def edge_path(self, edge_id: str) -> "Path":
        e = self.edge(edge_id)
        return Path((e.id,), e.dst, e.src)

    def path(self, edge_ids: Iterable[str]) -> "Path":
        """Path from a range-to-source sequence of edge ids."""
        ids = tuple(edge_ids)
        if not ids:
            raise GraphError("a non-trivial path needs at least one edge")
        es = [self.edge(i) for i in ids]
        for left, right in zip(es, es[1:]):
            if left.src != right.dst:
                raise GraphError(
                    f"edges {left.id!r} and {right.id!r} do not compose: "
                    f"{left.id!r} starts at {left.src!r} but {right.id!r} ends at {right.dst!r}"
                )
        return Path(ids, es[0].dst, es[-1].src)

    def parse_path(self, text: str) -> "Path":
        """Parse "e1.e2" (range-to-source) or "@v" (trivial path)."""
        if text.startswith("@"):
            v = text[1:]
            if not v:
                raise ParseError("empty vertex name in trivial path literal")
            try:
                return self.trivial_path(v)
            except GraphError as exc:
                raise ParseError(str(exc)) from None
        if not text:
            raise ParseError("empty path literal")
        try:
            return self.path(text.split("."))
        except GraphError as exc:
            raise ParseError(str(exc)) from None

    def contains_path(self, p: "Path") -> bool:
        if not p.edges:
            return p.range in self._receivers and p.range == p.source
        try:
            return self.path(p.edges) == p
        except GraphError:
            return False

    def check_path(self, p: "Path") -> "Path":
        if not self.contains_path(p):
            raise GraphError(f"path {format_path(p)!r} does not belong to this graph")
        return p

    def to_doc(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in self.edges],
        }


@dataclass(frozen=True)
class Path:
    """Finite path; edge ids listed range-to-source.  Empty edges = trivial path."""

    edges: tuple[str, ...]
    range: str
    source: str

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def is_trivial(self) -> bool:
        return not self.edges

    def sort_key(self):
        return (len(self.edges), self.edges, self.range, self.source)


def format_path(p: Path) -> str:
    return "@" + p.range if p.is_trivial else ".".join(p.edges)


def compose(lam: Path, nu: Path) -> Path:
    """Concatenate: lam on the range side, nu on the source side."""
    if lam.source != nu.range:
        raise GraphError(
            f"cannot compose {format_path(lam)!r} with {format_path(nu)!r}: "
            f"source {lam.source!r} != range {nu.range!r}"
        )
    if lam.is_trivial:
        return nu
    if nu.is_trivial:
        return lam
    return Path(lam.edges + nu.edges, lam.range, nu.source)


def is_prefix(lam: Path, sigma: Path) -> bool:
    """True when sigma factors as lam followed by a remainder on the source side."""
    if lam.is_trivial:
        return sigma.range == lam.range
    return sigma.edges[: len(lam.edges)] == lam.edges


def remainder(sigma: Path, lam: Path) -> Path:
    """The source-side factor of sigma after removing the prefix lam."""
    if not is_prefix(lam, sigma):
        raise GraphError(
            f"{format_path(lam)!r} is not a prefix of {format_path(sigma)!r}"
        )
    rest = sigma.edges[len(lam.edges):]
    if not rest:
        return Path((), lam.source, lam.source)
    return Path(rest, lam.source, sigma.source)


def incomparable(alpha: Path, beta: Path) -> bool:
    """Neither path is a prefix of the other (their cylinders are disjoint)."""
    return not is_prefix(alpha, beta) and not is_prefix(beta, alpha)


# -- enumeration --------------------------------------------------------


def paths_of_length(graph: Graph, n: int) -> list[Path]:
    """All paths of length exactly n, in deterministic order."""
    if n < 0:
        raise ValueError("length must be nonnegative")
    level = [graph.trivial_path(v) for v in graph.vertices]
    for _ in range(n):
        nxt = []
        for p in level:
            for e in graph.emitters(p.range):
                nxt.append(Path((e.id,) + p.edges, e.dst, p.source))
        level = nxt
    return sorted(level, key=Path.sort_key)


def paths_up_to(graph: Graph, max_len: int) -> list[Path]:
    """All paths of length 0..max_len, ordered by length then edge sequence."""
    out: list[Path] = []
    for n in range(max_len + 1):
        out.extend(paths_of_length(graph, n))
    return out


def count_paths_from(graph: Graph, v: str, length: int) -> int:
    """Number of paths of the given exact length whose source is v."""
    graph.check_vertex(v)
    counts = {w: 0 for w in graph.vertices}
    counts[v] = 1
    for _ in range(length):
        nxt = {w: 0 for w in graph.vertices}
        for e in graph.edges:
            nxt[e.dst] += counts[e.src]
        counts = nxt
    return sum(counts.values())


def paths_from(graph: Graph, v: str, max_len: int,
               forbidden_edges: frozenset[str] = frozenset()) -> list[Path]:
    """Paths with source v and length <= max_len avoiding the forbidden edges."""
    graph.check_vertex(v)
    out = [graph.trivial_path(v)]
    level = list(out)
    for _ in range(max_len):
        nxt = []
        for p in level:
            for e in graph.emitters(p.range):
                if e.id in forbidden_edges:
                    continue
                nxt.append(Path((e.id,) + p.edges, e.dst, p.source))
        out.extend(nxt)
        level = nxt
    return sorted(out, key=Path.sort_key)


def reaches(graph: Graph, v: str, w: str) -> bool:
    """True when some (possibly trivial) path starts at v and ends at w."""
    graph.check_vertex(v)
    graph.check_vertex(w)
    seen = {v}
    frontier = [v]
    while frontier:
        u = frontier.pop()
        if u == w:
            return True
        for e in graph.emitters(u):
            if e.dst not in seen:
                seen.add(e.dst)
                frontier.append(e.dst)
    return w in seen


# -- cycles --------------------------------------------------------------


def is_cycle(p: Path) -> bool:
    return bool(p.edges) and p.range == p.source


def cycle_vertices(graph: Graph, cycle: Path) -> tuple[str, ...]:
    """Vertices visited by a cycle, as the ranges of its edges."""
    if not is_cycle(cycle):
        raise GraphError(f"{format_path(cycle)!r} is not a cycle")
    return tuple(graph.edge(i).dst for i in cycle.edges)


def rotate_cycle(graph: Graph, cycle: Path, new_base: str) -> Path:
    """Rotation of a cycle starting (source side) at one of its vertices."""
    traversal = [graph.edge(i) for i in reversed(cycle.edges)]
    for i, e in enumerate(traversal):
        if e.src == new_base:
            rotated = traversal[i:] + traversal[:i]
            ids = tuple(e.id for e in reversed(rotated))
            return Path(ids, new_base, new_base)
    raise GraphError(f"vertex {new_base!r} is not a source on cycle {format_path(cycle)!r}")


def simple_cycles(graph: Graph) -> list[Path]:
    """All simple cycles (distinct vertices), one canonical rotation each.

    The canonical rotation is the lexicographically smallest edge-id tuple;
    the result is sorted by the sorted edge-id multiset of each cycle.
    """
    found: dict[tuple[str, ...], Path] = {}

    def canonical(ids: tuple[str, ...]) -> tuple[str, ...]:
        rots = [ids[i:] + ids[:i] for i in range(len(ids))]
        return min(rots)

    def walk(base: str, current: str, visited: set[str], trail: list[Edge]) -> None:
        for e in graph.emitters(current):
            if e.dst == base:
                ids = tuple(x.id for x in reversed(trail + [e]))
                key = canonical(ids)
                if key not in found:
                    first = graph.edge(key[0])
                    last = graph.edge(key[-1])
                    found[key] = Path(key, first.dst, last.src)
            elif e.dst not in visited:
                visited.add(e.dst)
                trail.append(e)
                walk(base, e.dst, visited, trail)
                trail.pop()
                visited.remove(e.dst)

    for v in graph.vertices:
        walk(v, v, {v}, [])
    return sorted(found.values(), key=lambda p: (tuple(sorted(p.edges)), p.edges))


def entries_of(graph: Graph, cycle: Path) -> frozenset[str]:
    """Edge ids entering the cycle other than the cycle's own edge at that spot."""
    if not is_cycle(cycle):
        raise GraphError(f"{format_path(cycle)!r} is not a cycle")
    hits: set[str] = set()
    for pos_id in cycle.edges:
        pos = graph.edge(pos_id)
        for f in graph.receivers(pos.dst):
            if f.id != pos_id:
                hits.add(f.id)
    return frozenset(hits)


def is_entryless(graph: Graph, cycle: Path) -> bool:
    return not entries_of(graph, cycle)


@dataclass(frozen=True)
class CyclicStructure:
    """Cyclic vertices, their partition into classes, and the class cycles.

    A vertex is cyclic when it sits on a simple entry-less cycle; two cyclic
    vertices are equivalent when the same such cycle visits both.
    """

    vertices: frozenset[str]
    classes: tuple[tuple[str, ...], ...]
    cycle_at: Mapping[str, Path]


def cyclic_structure(graph: Graph) -> CyclicStructure:
    classes: list[tuple[str, ...]] = []
    cycle_at: dict[str, Path] = {}
    seen: set[str] = set()
    for cyc in simple_cycles(graph):
        if entries_of(graph, cyc):
            continue
        verts = cycle_vertices(graph, cyc)
        overlap = seen.intersection(verts)
        if overlap:
            raise GraphError(
                f"entry-less cycles overlap at {sorted(overlap)}; graph data is inconsistent"
            )
        seen.update(verts)
        classes.append(tuple(sorted(verts)))
        for w in verts:
            cycle_at[w] = rotate_cycle(graph, cyc, w)
    classes.sort()
    return CyclicStructure(frozenset(seen), tuple(classes), cycle_at)


@dataclass(frozen=True)
class Ray:
    """Path whose source sits on a simple entry-less cycle it shares no edge with."""

    path: Path
    seed: Path

    def sort_key(self):
        return self.path.sort_key()


def rays(graph: Graph, max_len: int) -> list[Ray]:
    """All rays of length <= max_len (zero-length rays are the cyclic vertices)."""
    struct = cyclic_structure(graph)
    out: list[Ray] = []
    for v in sorted(struct.vertices):
        seed = struct.cycle_at[v]
        banned = frozenset(seed.edges)
        for p in paths_from(graph, v, max_len, forbidden_edges=banned):
            out.append(Ray(p, seed))
    return sorted(out, key=Ray.sort_key)


# -- documents -----------------------------------------------------------


def graph_from_doc(doc: object) -> Graph:
    if not isinstance(doc, dict):
        raise ParseError("graph document must be an object")
    vertices = doc.get("vertices")
    edges = doc.get("edges")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise ParseError("graph document needs a 'vertices' list of strings")
    if not isinstance(edges, list):
        raise ParseError("graph document needs an 'edges' list")
    parsed = []
    for item in edges:
        if not isinstance(item, dict) or not {"id", "src", "dst"} <= set(item):
            raise ParseError(f"malformed edge record {item!r}")
        parsed.append(Edge(str(item["id"]), str(item["src"]), str(item["dst"])))
    try:
        return Graph(vertices, parsed)
    except GraphError as exc:
        raise ParseError(str(exc)) from None


def parse_graph(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed graph document: {exc}") from None
    return graph_from_doc(doc)


def serialize_graph(graph: Graph) -> str:
    return json.dumps(graph.to_doc(), sort_keys=True, separators=(",", ":"))
