"""Exact graph traces and the polytope of normalized traces.

A graph trace assigns a nonnegative rational to each vertex so that the
value at a vertex dominates the sum over received edges of the values at
the edge starts, with equality at regular vertices.  All arithmetic is
exact (fractions.Fraction); the normalized traces form a polytope whose
extreme points are enumerated combinatorially.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Mapping, Sequence

from .graph import (
    Graph,
    GraphError,
    ParseError,
    Path,
    format_path,
    is_cycle,
    is_prefix,
    paths_of_length,
    paths_up_to,
)
from .structure import (
    emit_entry_set,
    essentially_left_infinite,
    is_hereditary,
    is_saturated,
    left_infinite_set,
    quotient_graph,
)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"invalid rational literal {text!r}") from None


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class GraphTrace:
    """Exact vertex weighting, stored as a sorted tuple of (vertex, value)."""

    entries: tuple[tuple[str, Fraction], ...]

    @classmethod
    def from_values(cls, values: Mapping[str, Fraction | int | str]) -> "GraphTrace":
        items = tuple(sorted((v, Fraction(x)) for v, x in values.items()))
        return cls(items)

    @classmethod
    def from_doc(cls, doc: object) -> "GraphTrace":
        if not isinstance(doc, dict) or not isinstance(doc.get("values"), dict):
            raise ParseError("trace document must be {'values': {vertex: rational}}")
        return cls.from_values(
            {str(v): parse_rational(x) for v, x in doc["values"].items()}
        )

    def to_doc(self) -> dict:
        return {"values": {v: format_rational(x) for v, x in self.entries}}

    @cached_property
    def _map(self) -> Mapping[str, Fraction]:
        return dict(self.entries)

    def __getitem__(self, v: str) -> Fraction:
        return self._map[v]

    def get(self, v: str, default: Fraction = Fraction(0)) -> Fraction:
        return self._map.get(v, default)

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.entries)

    def total(self) -> Fraction:
        return sum((x for _, x in self.entries), Fraction(0))

    def null_space(self) -> frozenset[str]:
        return frozenset(v for v, x in self.entries if x == 0)

    def normalized(self) -> "GraphTrace":
        mass = self.total()
        if mass == 0:
            raise ValueError("cannot normalize a trace of total mass zero")
        return GraphTrace(tuple((v, x / mass) for v, x in self.entries))


@dataclass(frozen=True)
class TraceViolation:
    """First violated defining constraint: g(vertex) vs the received-edge sum."""

    vertex: str
    lhs: Fraction
    rhs: Fraction
    equality_required: bool

    def message(self) -> str:
        rel = "=" if self.equality_required else ">="
        return (
            f"constraint failed at vertex {self.vertex!r}: "
            f"{format_rational(self.lhs)} {rel} {format_rational(self.rhs)} does not hold"
        )


def validate_trace(graph: Graph, trace: GraphTrace) -> TraceViolation | None:
    """None when the trace (in)equalities hold; otherwise the first violation
    in vertex order.  Missing vertices and negative values are input errors."""
    values = trace._map
    for v in graph.vertices:
        if v not in values:
            raise GraphError(f"trace missing vertex {v!r}")
        if values[v] < 0:
            raise GraphError(f"trace value at {v!r} is negative")
    for v in trace.vertices:
        if v not in graph._receivers:
            raise GraphError(f"trace mentions unknown vertex {v!r}")
    for v in graph.vertices:
        received = sum((values[e.src] for e in graph.receivers(v)), Fraction(0))
        if graph.is_regular(v):
            if values[v] != received:
                return TraceViolation(v, values[v], received, True)
        elif values[v] < received:
            return TraceViolation(v, values[v], received, False)
    return None


def is_valid_trace(graph: Graph, trace: GraphTrace) -> bool:
    return validate_trace(graph, trace) is None


# -- exact linear algebra -------------------------------------------------


def _rank(rows: Sequence[Sequence[Fraction]], n: int) -> int:
    mat = [list(r) for r in rows]
    rank = 0
    for col in range(n):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def _solve_unique(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], n: int
) -> list[Fraction] | None:
    """Solution of rows*x=rhs when it is unique; None if inconsistent or not."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    for row in aug[r:]:
        if row[n] != 0:
            return None
    if len(pivots) < n:
        return None
    sol = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        sol[col] = aug[i][n]
    return sol


def _trace_equalities(graph: Graph) -> list[list[Fraction]]:
    """Row per regular vertex: value there minus the received-edge sum."""
    idx = {v: i for i, v in enumerate(graph.vertices)}
    rows = []
    for v in graph.vertices:
        incoming = graph.receivers(v)
        if not incoming:
            continue
        row = [Fraction(0)] * len(graph.vertices)
        row[idx[v]] += 1
        for e in incoming:
            row[idx[e.src]] -= 1
        rows.append(row)
    return rows


def extreme_traces(graph: Graph) -> list[GraphTrace]:
    """Extreme points of the normalized trace polytope, exactly.

    Every extreme point is the unique solution of the equality system plus
    normalization plus its own zero set, so enumerating zero sets of
    sufficient size and filtering by feasibility finds them all.
    """
    n = len(graph.vertices)
    if n == 0:
        return []
    base_rows = _trace_equalities(graph)
    base_rows.append([Fraction(1)] * n)
    base_rhs = [Fraction(0)] * (len(base_rows) - 1) + [Fraction(1)]
    base_rank = _rank(base_rows, n)
    found: dict[tuple[Fraction, ...], GraphTrace] = {}
    min_zeros = max(0, n - base_rank)
    for size in range(min_zeros, n + 1):
        for zeros in combinations(range(n), size):
            rows = list(base_rows)
            rhs = list(base_rhs)
            for j in zeros:
                unit = [Fraction(0)] * n
                unit[j] = Fraction(1)
                rows.append(unit)
                rhs.append(Fraction(0))
            sol = _solve_unique(rows, rhs, n)
            if sol is None or any(x < 0 for x in sol):
                continue
            key = tuple(sol)
            if key not in found:
                found[key] = GraphTrace(tuple(zip(graph.vertices, sol)))
    return [found[k] for k in sorted(found)]


# -- cylinder combinations (admissible tuples) ----------------------------

PathCombination = Sequence[tuple[Fraction, Path]]


def boundary_test_paths(graph: Graph, depth: int) -> list[Path]:
    """One representative per boundary cylinder class at the given depth:
    every path of that exact length plus every shorter path ending at a
    vertex that receives nothing."""
    out = list(paths_of_length(graph, depth))
    for n in range(depth):
        out.extend(
            p for p in paths_of_length(graph, n) if not graph.is_regular(p.source)
        )
    return out


def cylinder_positive(graph: Graph, terms: PathCombination) -> bool:
    """Decide positivity of a rational combination of cylinder indicators.

    The combination's value on a boundary path depends only on the prefix of
    length L = max term length, and in a finite graph every such prefix heads
    a non-empty cylinder, so checking the finite representative set suffices.
    """
    terms = [(Fraction(w), p) for w, p in terms]
    for _, p in terms:
        graph.check_path(p)
    if not terms:
        return True
    depth = max(len(p) for _, p in terms)
    for mu in boundary_test_paths(graph, depth):
        value = sum((w for w, lam in terms if is_prefix(lam, mu)), Fraction(0))
        if value < 0:
            return False
    return True


def combination_value(trace: GraphTrace, terms: PathCombination) -> Fraction:
    return sum((Fraction(w) * trace[p.source] for w, p in terms), Fraction(0))


def char_implication_check(
    graph: Graph, trace: GraphTrace, terms: PathCombination
) -> bool:
    """For an admissible combination, whether the induced value on the trace
    is nonnegative.  Holds for every valid trace; refusing non-admissible
    input keeps the implication meaningful."""
    if not cylinder_positive(graph, terms):
        raise ValueError("combination is not admissible (not a positive element)")
    return combination_value(trace, terms) >= 0


def violation_certificate(
    graph: Graph, candidate: GraphTrace
) -> list[tuple[Fraction, Path]] | None:
    """Admissible combination with negative value witnessing an invalid
    candidate, built from the first violated equality in vertex order."""
    violation = validate_trace(graph, candidate)
    if violation is None:
        return None
    v = violation.vertex
    terms: list[tuple[Fraction, Path]] = [(Fraction(1), graph.trivial_path(v))]
    for e in graph.receivers(v):
        terms.append((Fraction(-1), graph.edge_path(e.id)))
    if combination_value(candidate, terms) < 0:
        return terms
    if not violation.equality_required:
        # inequality slack is always nonnegative here; only equalities flip
        raise GraphError(f"no certificate exists for the violation at {v!r}")
    return [(-w, p) for w, p in terms]


# -- transport along tightenings ------------------------------------------


def lift_trace(graph: Graph, H: frozenset[str], sub_trace: GraphTrace) -> GraphTrace:
    """Zero-extension of a trace on the subgraph complementary to H."""
    if not (is_hereditary(graph, H) and is_saturated(graph, H)):
        raise GraphError("lift requires a saturated hereditary vertex set")
    sub = quotient_graph(graph, H)
    problem = validate_trace(sub, sub_trace)
    if problem is not None:
        raise GraphError(f"subgraph trace is invalid: {problem.message()}")
    values = {v: sub_trace[v] for v in sub.vertices}
    values.update({v: Fraction(0) for v in H})
    lifted = GraphTrace.from_values(values)
    problem = validate_trace(graph, lifted)
    if problem is not None:  # pragma: no cover - saturation rules this out
        raise GraphError(f"zero-extension failed validation: {problem.message()}")
    return lifted


def trace_vanishing_check(graph: Graph, trace: GraphTrace) -> bool:
    """Whether the trace vanishes on every entry-emitting and essentially
    left infinite vertex, as any valid finite trace must."""
    doomed = emit_entry_set(graph) | left_infinite_set(graph)
    return all(trace[v] == 0 for v in doomed)


def witness_nongauge_trace(graph: Graph, cycle: Path) -> GraphTrace:
    """Normalized trace positive at the cycle's source, counting acyclic paths.

    Requires the cycle's source not to be essentially left infinite and the
    graph to be tight around the cycle (apply the minimal tightening first);
    the acyclic-path census then validates as a trace and feeds the
    point-mass tag that breaks gauge invariance.
    """
    if not is_cycle(cycle):
        raise GraphError(f"{format_path(cycle)!r} is not a cycle")
    graph.check_path(cycle)
    v = cycle.source
    if essentially_left_infinite(graph, v):
        raise GraphError(
            f"vertex {v!r} is essentially left infinite; no such witness exists"
        )
    counts = {w: 0 for w in graph.vertices}

    def visit(current: str, seen: frozenset[str]) -> None:
        counts[current] += 1
        for e in graph.emitters(current):
            if e.dst not in seen:
                visit(e.dst, seen | {e.dst})

    visit(v, frozenset({v}))
    total = sum(counts.values())
    witness = GraphTrace.from_values(
        {w: Fraction(c, total) for w, c in counts.items()}
    )
    problem = validate_trace(graph, witness)
    if problem is not None:
        raise GraphError(
            "acyclic-path census is not a trace here (is the graph tight?): "
            + problem.message()
        )
    return witness
