"""
Exact model of the planar diagram whose vertices are rational slopes.

The diagram has one vertex <p/q> at ((q-1)/q, p/q) for every fraction p/q
in lowest terms, a right-boundary partner <p/q>_0 at (1, p/q), and a
single vertex <infinity> at (-1, 0).  Two finite vertices span an edge
exactly when the determinant of their slopes is +-1 (Farey neighbours);
<infinity> is joined to every integer vertex, and each <p/q> is joined to
<p/q>_0 by a horizontal edge.  Non-horizontal edges carry one of three
colors, determined by the mod-2 reduction of the endpoint slopes.

Everything here is exact rational arithmetic; no floats appear anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class Slope:
    """A slope p/q in lowest terms with q >= 0; q == 0 encodes infinity."""

    num: int
    den: int

    def __post_init__(self):
        if self.den < 0:
            object.__setattr__(self, "num", -self.num)
            object.__setattr__(self, "den", -self.den)
        g = gcd(self.num, self.den)
        if g > 1:
            object.__setattr__(self, "num", self.num // g)
            object.__setattr__(self, "den", self.den // g)
        if self.den == 0:
            if self.num == 0:
                raise ValueError("0/0 is not a slope")
            object.__setattr__(self, "num", 1)

    @classmethod
    def of(cls, value) -> "Slope":
        if isinstance(value, Slope):
            return value
        if isinstance(value, int):
            return cls(value, 1)
        if isinstance(value, Fraction):
            return cls(value.numerator, value.denominator)
        raise TypeError(f"cannot interpret {value!r} as a slope")

    @property
    def is_infinity(self) -> bool:
        return self.den == 0

    def as_fraction(self) -> Fraction:
        if self.is_infinity:
            raise ValueError("infinity has no Fraction value")
        return Fraction(self.num, self.den)

    def mod2_type(self) -> tuple[int, int]:
        """Reduction (p mod 2, q mod 2); one of (0,1), (1,0), (1,1)."""
        return (self.num % 2, self.den % 2)

    def __str__(self):
        return "1/0" if self.is_infinity else f"{self.num}/{self.den}"


INFINITY = Slope(1, 0)


def det(a: Slope, b: Slope) -> int:
    """Determinant p*s - q*r of the two slopes p/q and r/s."""
    return a.num * b.den - a.den * b.num


def farey_adjacent(a, b) -> bool:
    """True iff <a, b> is an edge of the diagram, i.e. |ps - qr| = 1."""
    return abs(det(Slope.of(a), Slope.of(b))) == 1


class VertexKind(Enum):
    INTERIOR = "interior"
    RIGHT_BOUNDARY = "right_boundary"
    INFINITY = "infinity"


@dataclass(frozen=True)
class DiagramVertex:
    kind: VertexKind
    slope: Slope

    @classmethod
    def interior(cls, slope) -> "DiagramVertex":
        s = Slope.of(slope)
        if s.is_infinity:
            return cls(VertexKind.INFINITY, INFINITY)
        return cls(VertexKind.INTERIOR, s)

    @classmethod
    def right_boundary(cls, slope) -> "DiagramVertex":
        s = Slope.of(slope)
        if s.is_infinity:
            raise ValueError("no right-boundary vertex at infinity")
        return cls(VertexKind.RIGHT_BOUNDARY, s)

    @classmethod
    def infinity(cls) -> "DiagramVertex":
        return cls(VertexKind.INFINITY, INFINITY)

    @property
    def coords(self) -> tuple[Fraction, Fraction]:
        if self.kind is VertexKind.INFINITY:
            return (Fraction(-1), Fraction(0))
        y = self.slope.as_fraction()
        if self.kind is VertexKind.RIGHT_BOUNDARY:
            return (Fraction(1), y)
        q = self.slope.den
        return (Fraction(q - 1, q), y)

    @property
    def x(self) -> Fraction:
        return self.coords[0]

    @property
    def y(self) -> Fraction:
        return self.coords[1]

    def __str__(self):
        if self.kind is VertexKind.INFINITY:
            return "<oo>"
        if self.kind is VertexKind.RIGHT_BOUNDARY:
            return f"<{self.slope}>_0"
        return f"<{self.slope}>"


class EdgeColor(Enum):
    """Colors of non-horizontal edges, named by the mod-2 endpoint types."""

    RED = frozenset({(0, 1), (1, 0)})     # <0/1, 1/0>
    GREEN = frozenset({(1, 0), (1, 1)})   # <1/0, 1/1>
    WHITE = frozenset({(1, 1), (0, 1)})   # <1/1, 0/1>
    HORIZONTAL = frozenset()


class NotAnEdgeError(ValueError):
    """The two vertices do not span an edge of the diagram."""


def edge_color(edge_or_a, b=None) -> EdgeColor:
    """
    Color of an edge, given either a DiagramEdge or its two endpoints.

    Horizontal edges <p/q>--<p/q>_0 get EdgeColor.HORIZONTAL; any other
    valid edge gets the color of the (always distinct) mod-2 types of its
    endpoint slopes.  Raises NotAnEdgeError for non-adjacent endpoints.
    """
    if b is None:
        u, v = edge_or_a.endpoints
    else:
        u, v = edge_or_a, b
    if not isinstance(u, DiagramVertex):
        u = DiagramVertex.interior(u)
    if not isinstance(v, DiagramVertex):
        v = DiagramVertex.interior(v)
    kinds = {u.kind, v.kind}
    if VertexKind.RIGHT_BOUNDARY in kinds:
        if u.slope == v.slope and kinds == {VertexKind.RIGHT_BOUNDARY,
                                            VertexKind.INTERIOR}:
            return EdgeColor.HORIZONTAL
        raise NotAnEdgeError(f"{u} -- {v} is not an edge")
    if not farey_adjacent(u.slope, v.slope):
        raise NotAnEdgeError(f"{u} -- {v} is not an edge")
    types = frozenset({u.slope.mod2_type(), v.slope.mod2_type()})
    for color in (EdgeColor.RED, EdgeColor.GREEN, EdgeColor.WHITE):
        if color.value == types:
            return color
    raise NotAnEdgeError(f"{u} -- {v} has equal mod-2 endpoint types")


@dataclass(frozen=True)
class DiagramEdge:
    endpoints: tuple[DiagramVertex, DiagramVertex]

    def __post_init__(self):
        edge_color(self)  # validates adjacency

    @property
    def color(self) -> EdgeColor:
        return edge_color(self)

    @property
    def is_infinity_edge(self) -> bool:
        return any(v.kind is VertexKind.INFINITY for v in self.endpoints)

    @property
    def is_horizontal(self) -> bool:
        return self.color is EdgeColor.HORIZONTAL

    def __str__(self):
        return f"<{self.endpoints[0]}, {self.endpoints[1]}>"


def neighbors(v: DiagramVertex, denom_bound: int) -> list[DiagramVertex]:
    """
    All diagram neighbours of v with denominator (numerator, for the
    neighbours of <infinity>) bounded by denom_bound, in a deterministic
    order: <infinity> first when adjacent, then interior vertices sorted
    by (denominator, |numerator|, sign), then the horizontal partner.
    """
    if denom_bound < 1:
        raise ValueError("denom_bound must be >= 1")
    if v.kind is VertexKind.RIGHT_BOUNDARY:
        return [DiagramVertex.interior(v.slope)]
    if v.kind is VertexKind.INFINITY:
        ns = [DiagramVertex.interior(Slope(n, 1))
              for n in range(-denom_bound, denom_bound + 1)]
        ns.sort(key=lambda u: (abs(u.slope.num), -u.slope.num))
        return ns

    p, q = v.slope.num, v.slope.den
    found = []
    for s in range(1, denom_bound + 1):
        for delta in (1, -1):
            # p*s - q*r = delta  =>  r = (p*s - delta)/q
            num = p * s - delta
            if num % q == 0:
                cand = Slope(num // q, s)
                if cand.den == s and cand not in found:
                    found.append(cand)
    found.sort(key=lambda u: (u.den, abs(u.num), -u.num))
    out = [DiagramVertex.interior(u) for u in found]
    if q == 1:
        out.insert(0, DiagramVertex.infinity())
    out.append(DiagramVertex.right_boundary(v.slope))
    return out


def triangle(a: DiagramVertex, b: DiagramVertex, c: DiagramVertex) -> bool:
    """
    Do the three vertices span a 2-simplex?  Used only for the minimality
    check on consecutive edgepath edges; horizontal partners never do.
    """
    vs = (a, b, c)
    if any(v.kind is VertexKind.RIGHT_BOUNDARY for v in vs):
        return False
    for u, w in ((a, b), (b, c), (a, c)):
        if u.kind is VertexKind.INFINITY and w.kind is VertexKind.INFINITY:
            return False
        if u.kind is VertexKind.INFINITY or w.kind is VertexKind.INFINITY:
            fin = w if u.kind is VertexKind.INFINITY else u
            if fin.slope.den != 1:
                return False
        elif not farey_adjacent(u.slope, w.slope):
            return False
    return True
