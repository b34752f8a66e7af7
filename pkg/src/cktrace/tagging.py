"""Circle measures, exact circle-polynomial values, and cyclic tags.

Measures on the unit circle are restricted to a rational Haar weight plus
finitely many atoms at rational angles; this keeps every functional value
an exact finite combination of roots of unity while covering the extremes
exercised downstream (point masses and Haar).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping

from .graph import Graph, GraphError, ParseError, cyclic_structure
from .traces import GraphTrace, format_rational, parse_rational


def _poly_divide(num: list[Fraction], den: tuple[Fraction, ...]) -> list[Fraction]:
    """Exact quotient of polynomials (ascending coefficients, zero remainder)."""
    num = list(num)
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    for top in range(len(num) - 1, len(den) - 2, -1):
        q = num[top] / den[-1]
        out[top - len(den) + 1] = q
        for i, c in enumerate(den):
            num[top - len(den) + 1 + i] -= q * c
    assert all(c == 0 for c in num[: len(den) - 1])
    return out


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[Fraction, ...]:
    """Ascending coefficients of the n-th cyclotomic polynomial."""
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide(poly, _cyclotomic(d))
    return tuple(poly)


def _vanishes(terms: tuple[tuple[Fraction, Fraction], ...]) -> bool:
    """Whether a formal sum of weighted circle points is the number zero.

    With N the common angle denominator the sum is P(z_N) for a rational
    polynomial P, which vanishes exactly when the N-th cyclotomic polynomial
    divides P."""
    if not terms:
        return True
    n = math.lcm(*(a.denominator for a, _ in terms))
    coeffs = [Fraction(0)] * n
    for angle, weight in terms:
        coeffs[int(angle * n)] += weight
    phi = _cyclotomic(n)
    for top in range(n - 1, len(phi) - 2, -1):
        q = coeffs[top] / phi[-1]
        for i, c in enumerate(phi):
            coeffs[top - len(phi) + 1 + i] -= q * c
    return all(c == 0 for c in coeffs[: len(phi) - 1])


@dataclass(frozen=True, eq=False)
class CircleValue:
    """Finite formal sum of weighted points on the circle, in canonical form.

    A term (angle, weight) stands for weight * exp(2*pi*i*angle).  The
    canonical form folds angles into [0,1), merges equal angles, drops zero
    weights and sorts; equality goes one step further and is equality of the
    represented numbers, decided exactly by cyclotomic reduction (e.g. the
    sum of the two square roots of unity equals zero)."""

    terms: tuple[tuple[Fraction, Fraction], ...]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CircleValue):
            return NotImplemented
        if self.terms == other.terms:
            return True
        return _vanishes(
            self.terms + tuple((a, -w) for a, w in other.terms)
        )

    __hash__ = None  # semantic equality is coarser than the term tuples

    @classmethod
    def of(cls, pairs: Iterable[tuple[Fraction | int | str, Fraction | int | str]]) -> "CircleValue":
        acc: dict[Fraction, Fraction] = {}
        for angle, weight in pairs:
            a = Fraction(angle) % 1
            w = Fraction(weight)
            acc[a] = acc.get(a, Fraction(0)) + w
        return cls(tuple(sorted((a, w) for a, w in acc.items() if w != 0)))

    @classmethod
    def rational(cls, x: Fraction | int | str) -> "CircleValue":
        return cls.of([(Fraction(0), Fraction(x))])

    @property
    def is_zero(self) -> bool:
        return not self.terms or _vanishes(self.terms)

    def __add__(self, other: "CircleValue") -> "CircleValue":
        return CircleValue.of(self.terms + other.terms)

    def scaled(self, factor: Fraction | int) -> "CircleValue":
        return CircleValue.of((a, w * Fraction(factor)) for a, w in self.terms)

    def rotated(self, angle: Fraction) -> "CircleValue":
        return CircleValue.of((a + Fraction(angle), w) for a, w in self.terms)

    def conjugate(self) -> "CircleValue":
        return CircleValue.of((-a, w) for a, w in self.terms)

    def as_complex(self) -> complex:
        return sum(
            (float(w) * cmath.exp(2j * cmath.pi * float(a)) for a, w in self.terms),
            0j,
        )

    def to_doc(self) -> dict:
        return {
            "terms": [
                {"angle": format_rational(a), "weight": format_rational(w)}
                for a, w in self.terms
            ]
        }

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(f"{w}*z({a})" for a, w in self.terms)


CIRCLE_ZERO = CircleValue(())
CIRCLE_ONE = CircleValue.rational(1)


@dataclass(frozen=True)
class CircleMeasure:
    """Probability measure: rational Haar weight plus rational-angle atoms."""

    haar: Fraction
    atoms: tuple[tuple[Fraction, Fraction], ...]

    def __init__(self, haar: Fraction | int | str, atoms: Iterable[tuple] = ()):
        h = Fraction(haar)
        acc: dict[Fraction, Fraction] = {}
        for angle, weight in atoms:
            a = Fraction(angle) % 1
            w = Fraction(weight)
            acc[a] = acc.get(a, Fraction(0)) + w
        merged = tuple(sorted((a, w) for a, w in acc.items() if w != 0))
        object.__setattr__(self, "haar", h)
        object.__setattr__(self, "atoms", merged)
        if h < 0:
            raise GraphError("Haar weight must be nonnegative")
        if any(w < 0 for _, w in merged):
            raise GraphError("atom weights must be positive")
        total = h + sum((w for _, w in merged), Fraction(0))
        if total != 1:
            raise GraphError(
                f"measure has total mass {format_rational(total)}, expected 1"
            )

    @classmethod
    def haar_measure(cls) -> "CircleMeasure":
        return cls(Fraction(1))

    @classmethod
    def point_mass(cls, angle: Fraction | int | str) -> "CircleMeasure":
        return cls(Fraction(0), [(Fraction(angle), Fraction(1))])

    @classmethod
    def from_doc(cls, doc: object) -> "CircleMeasure":
        if not isinstance(doc, dict):
            raise ParseError("measure document must be an object")
        haar = parse_rational(doc.get("haar", "0"))
        atoms = []
        for item in doc.get("atoms", []):
            if not isinstance(item, dict) or "angle" not in item or "weight" not in item:
                raise ParseError(f"malformed atom record {item!r}")
            atoms.append((parse_rational(item["angle"]), parse_rational(item["weight"])))
        try:
            return cls(haar, atoms)
        except GraphError as exc:
            raise ParseError(str(exc)) from None

    def to_doc(self) -> dict:
        return {
            "haar": format_rational(self.haar),
            "atoms": [
                {"angle": format_rational(a), "weight": format_rational(w)}
                for a, w in self.atoms
            ],
        }


def moment(measure: CircleMeasure, m: int) -> CircleValue:
    """Exact m-th moment: atoms contribute at angle m*theta, Haar only at m=0."""
    pairs = [(m * a, w) for a, w in measure.atoms]
    if m == 0 and measure.haar != 0:
        pairs.append((Fraction(0), measure.haar))
    return CircleValue.of(pairs)


@dataclass(frozen=True)
class Tag:
    """Assignment of a circle measure to each tagged cyclic vertex."""

    measures: tuple[tuple[str, CircleMeasure], ...]

    @classmethod
    def from_dict(cls, mapping: Mapping[str, CircleMeasure]) -> "Tag":
        return cls(tuple(sorted(mapping.items())))

    @classmethod
    def from_doc(cls, doc: object) -> "Tag":
        if not isinstance(doc, dict):
            raise ParseError("tag document must map vertices to measures")
        return cls.from_dict(
            {str(v): CircleMeasure.from_doc(m) for v, m in doc.items()}
        )

    def to_doc(self) -> dict:
        return {v: m.to_doc() for v, m in self.measures}

    @cached_property
    def _map(self) -> Mapping[str, CircleMeasure]:
        return dict(self.measures)

    @property
    def vertices(self) -> frozenset[str]:
        return frozenset(self._map)

    def __getitem__(self, v: str) -> CircleMeasure:
        return self._map[v]


EMPTY_TAG = Tag(())


def cyclic_support(graph: Graph, trace: GraphTrace) -> frozenset[str]:
    """Cyclic vertices carrying nonzero trace mass.  Graph-relative: a vertex
    cyclic in a tight subgraph need not be cyclic upstairs."""
    struct = cyclic_structure(graph)
    return frozenset(v for v in struct.vertices if trace[v] != 0)


@dataclass(frozen=True)
class TagViolation:
    kind: str  # "domain" or "inconsistent"
    vertices: tuple[str, ...]
    message: str


def validate_tag(graph: Graph, trace: GraphTrace, tag: Tag) -> TagViolation | None:
    """Domain must equal the cyclic support; equivalent vertices (visited by
    the same entry-less cycle) must carry equal measures."""
    support = cyclic_support(graph, trace)
    if tag.vertices != support:
        missing = tuple(sorted(support - tag.vertices))
        extra = tuple(sorted(tag.vertices - support))
        parts = []
        if missing:
            parts.append(f"missing measures for {list(missing)}")
        if extra:
            parts.append(f"measures outside the cyclic support for {list(extra)}")
        return TagViolation("domain", missing + extra, "; ".join(parts))
    for cls_vertices in cyclic_structure(graph).classes:
        tagged = [v for v in cls_vertices if v in tag.vertices]
        if len(tagged) > 1:
            first = tag[tagged[0]]
            if any(tag[v] != first for v in tagged[1:]):
                return TagViolation(
                    "inconsistent",
                    tuple(tagged),
                    f"equivalent cyclic vertices {list(tagged)} carry different measures",
                )
    return None


def haar_tag(graph: Graph, trace: GraphTrace) -> Tag:
    """Constant-Haar tag on the cyclic support; always consistent."""
    return Tag.from_dict(
        {v: CircleMeasure.haar_measure() for v in cyclic_support(graph, trace)}
    )
