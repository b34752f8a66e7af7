"""Hereditary/saturated vertex sets, canonical subgraphs and tightenings.

A graph is tight when every cycle is entry-less.  Removing the saturation
of the entry-emitting vertices produces the minimal tightening, the
canonical subgraph on which trace data for the original graph lives.
"""

from __future__ import annotations

from .graph import (
    Graph,
    GraphError,
    cycle_vertices,
    entries_of,
    reaches,
    simple_cycles,
)

VertexSet = frozenset


def is_hereditary(graph: Graph, H: frozenset[str]) -> bool:
    """Closed under passing from an edge's endpoint to its start."""
    return all(e.src in H for e in graph.edges if e.dst in H)


def is_saturated(graph: Graph, H: frozenset[str]) -> bool:
    """Contains every regular vertex all of whose received edges start in H."""
    for v in graph.vertices:
        if v in H:
            continue
        incoming = graph.receivers(v)
        if incoming and all(e.src in H for e in incoming):
            return False
    return True


def saturate(graph: Graph, H: frozenset[str]) -> frozenset[str]:
    """Smallest saturated superset, as the increasing fixpoint of the
    regular-receiver rule.  Preserves hereditarity."""
    for v in H:
        graph.check_vertex(v)
    closed = set(H)
    changed = True
    while changed:
        changed = False
        for v in graph.vertices:
            if v in closed:
                continue
            incoming = graph.receivers(v)
            if incoming and all(e.src in closed for e in incoming):
                closed.add(v)
                changed = True
    return frozenset(closed)


def quotient_graph(graph: Graph, H: frozenset[str]) -> Graph:
    """Subgraph on the complement of H, keeping edges whose start survives."""
    for v in H:
        graph.check_vertex(v)
    if not is_hereditary(graph, H):
        raise GraphError("cannot form subgraph: vertex set is not hereditary")
    if not is_saturated(graph, H):
        raise GraphError("cannot form subgraph: vertex set is not saturated")
    vertices = [v for v in graph.vertices if v not in H]
    edges = [e for e in graph.edges if e.src not in H]
    return Graph(vertices, edges)


def entry_edges(graph: Graph) -> frozenset[str]:
    """Ids of all edges that enter some cycle without being the cycle's own edge."""
    hits: set[str] = set()
    for cyc in simple_cycles(graph):
        hits.update(entries_of(graph, cyc))
    return frozenset(hits)


def emit_entry_set(graph: Graph) -> frozenset[str]:
    """Vertices that emit a path whose leading edge enters a cycle."""
    starts = {graph.edge(i).src for i in entry_edges(graph)}
    return frozenset(
        v for v in graph.vertices if any(reaches(graph, v, s) for s in starts)
    )


def is_tight(graph: Graph) -> bool:
    """Every cycle is entry-less (checked on the simple cycles, which suffices)."""
    return all(not entries_of(graph, cyc) for cyc in simple_cycles(graph))


def tighten_min(graph: Graph) -> tuple[Graph, frozenset[str]]:
    """Minimal tightening: quotient by the saturated entry-emitting set."""
    H = saturate(graph, emit_entry_set(graph))
    return quotient_graph(graph, H), H


def left_infinite_set(graph: Graph) -> frozenset[str]:
    """Vertices admitting infinitely many mutually incomparable outgoing paths.

    For a finite graph this coincides with the entry-emitting set: emitting an
    entry into a cycle yields the infinite incomparable family, and the test
    suite's antichain census guards the converse.
    """
    return emit_entry_set(graph)


def essentially_left_infinite(graph: Graph, v: str) -> bool:
    graph.check_vertex(v)
    return v in left_infinite_set(graph)


def tighten_left(graph: Graph) -> tuple[Graph, frozenset[str]]:
    """Tightening by all essentially-left-infinite vertices."""
    H = saturate(graph, left_infinite_set(graph))
    return quotient_graph(graph, H), H


def cycle_vertex_set(graph: Graph) -> frozenset[str]:
    """Vertices lying on some cycle."""
    out: set[str] = set()
    for cyc in simple_cycles(graph):
        out.update(cycle_vertices(graph, cyc))
    return frozenset(out)


def auto_gauge_criterion(graph: Graph) -> bool:
    """True when every vertex on a cycle is essentially left infinite.

    Exactly then is every trace functional on the graph algebra forced to be
    gauge invariant, because no surviving cyclic vertex can carry trace mass.
    """
    infinite = left_infinite_set(graph)
    return cycle_vertex_set(graph) <= infinite
