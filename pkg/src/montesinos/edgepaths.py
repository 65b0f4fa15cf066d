"""
Edgepaths and edgepath systems.

An edgepath for a tangle p/q is a descending-x walk in the diagram
starting at <p/q>, possibly ending with a fraction of its last edge; a
constant edgepath instead sits at a point of the horizontal edge
<p/q>--<p/q>_0.  An edgepath system is one path per tangle whose ends
lie on a common vertical line and whose heights sum to zero.

A point traversing the fraction f of an edge <a/b, c/d> is placed at the
averaged-coordinate position with "denominator" (1-f)b + fd: writing
Q = (1-f)b + fd and P = (1-f)a + fc, the point is ((Q-1)/Q, P/Q).  This
is the convention under which the piecewise-linear formulas for the two
monotone paths of a 1/q tangle, and the closed forms for their twists,
hold exactly.  Fractions of the edges <n, infinity> are placed by
straight-line interpolation toward (-1, 0) instead.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import ceil, lcm

from .farey_diagram import (
    DiagramVertex,
    Slope,
    VertexKind,
    edge_color,
    farey_adjacent,
    neighbors,
    triangle,
)

Rational = Fraction


class SystemViolation(ValueError):
    """An edgepath system failing one of the validity conditions."""

    def __init__(self, condition: str, path_index, message: str):
        self.condition = condition
        self.path_index = path_index
        where = f" (path {path_index})" if path_index is not None else ""
        super().__init__(f"{condition}{where}: {message}")


class SystemType(Enum):
    TYPE_I = "I"
    TYPE_II = "II"
    TYPE_III = "III"


@dataclass(frozen=True)
class EdgePath:
    """
    A single edgepath.

    tangle          -- the slope p/q the path belongs to
    vertices        -- visited vertices in traversal order (right to left),
                       starting at <p/q>; empty for constant paths
    final_fraction  -- portion of the last listed edge traversed, in (0, 1];
                       1 means the path ends at its last vertex
    constant_x      -- x-position on the horizontal edge for constant paths
                       (None means symbolic, resolved by an E3 solver)
    """

    tangle: Slope
    vertices: tuple = ()
    final_fraction: Fraction = Fraction(1)
    constant_x: object = None
    is_constant: bool = False

    @property
    def edges(self):
        return list(zip(self.vertices, self.vertices[1:]))

    @property
    def length(self) -> Fraction:
        if self.is_constant or len(self.vertices) <= 1:
            return Fraction(0)
        n_edges = len(self.vertices) - 1
        return Fraction(n_edges - 1) + self.final_fraction

    @property
    def ends_at_vertex(self) -> bool:
        return not self.is_constant and (len(self.vertices) <= 1
                                         or self.final_fraction == 1)

    @property
    def has_infinity_edge(self) -> bool:
        return any(v.kind is VertexKind.INFINITY for v in self.vertices)

    def end_point(self) -> tuple[Fraction, Fraction]:
        """Exact planar coordinates of the path's end."""
        if self.is_constant:
            if self.constant_x is None:
                raise ValueError("constant path with symbolic position")
            return (self.constant_x, self.tangle.as_fraction())
        if not self.vertices:
            return DiagramVertex.interior(self.tangle).coords
        if len(self.vertices) == 1 or self.final_fraction == 1:
            return self.vertices[-1].coords
        u, v = self.vertices[-2], self.vertices[-1]
        f = self.final_fraction
        if v.kind is VertexKind.INFINITY:
            n = u.slope.as_fraction()
            return (-f, n * (1 - f))
        qbar = (1 - f) * u.slope.den + f * v.slope.den
        pbar = (1 - f) * u.slope.num + f * v.slope.num
        return (1 - 1 / qbar, pbar / qbar)

    def full_edges(self):
        """The completely traversed edges (vertex pairs)."""
        es = self.edges
        if es and self.final_fraction != 1:
            es = es[:-1]
        return es

    def partial_edge(self):
        """The fractional last edge as (u, v, fraction), or None."""
        if self.is_constant or len(self.vertices) <= 1 \
                or self.final_fraction == 1:
            return None
        return (self.vertices[-2], self.vertices[-1], self.final_fraction)

    def __str__(self):
        if self.is_constant:
            return f"const({self.tangle} @ x={self.constant_x})"
        body = "->".join(str(v) for v in self.vertices)
        if self.final_fraction != 1 and len(self.vertices) > 1:
            body += f" [{self.final_fraction} of last edge]"
        return body


@dataclass(frozen=True)
class EdgepathSystem:
    paths: tuple

    @property
    def end_x(self) -> Fraction:
        xs = {p.end_point()[0] for p in self.paths}
        if len(xs) != 1:
            raise SystemViolation("E3", None, "ends not on one vertical line")
        return xs.pop()

    def lengths(self):
        return [p.length for p in self.paths]

    def __str__(self):
        return " | ".join(str(p) for p in self.paths)


class ColorKind(Enum):
    MONOCHROMATIC = "monochromatic"
    QUASI_MONOCHROMATIC = "quasi-monochromatic"
    POLYCHROMATIC = "polychromatic"


@dataclass(frozen=True)
class ColorClass:
    kind: ColorKind
    main: object = None   # EdgeColor, or None for constant/empty paths
    final: object = None  # EdgeColor of the off-color fractional edge


def classify_colors(path: EdgePath) -> ColorClass:
    """
    Monochromatic if all full edges share one color, quasi-monochromatic
    if additionally a final fractional edge has another color, and
    polychromatic otherwise.  Paths of length <= 1 (including constant
    paths) are monochromatic.
    """
    if path.is_constant or len(path.vertices) <= 1:
        return ColorClass(ColorKind.MONOCHROMATIC)
    colors = [edge_color(u, v) for u, v in path.full_edges()]
    partial = path.partial_edge()
    partial_color = edge_color(partial[0], partial[1]) if partial else None
    if not colors:
        return ColorClass(ColorKind.MONOCHROMATIC, partial_color)
    main = colors[0]
    if any(c != main for c in colors):
        return ColorClass(ColorKind.POLYCHROMATIC)
    if partial_color is None or partial_color == main:
        return ColorClass(ColorKind.MONOCHROMATIC, main)
    return ColorClass(ColorKind.QUASI_MONOCHROMATIC, main, partial_color)


def _check_path(path: EdgePath, index):
    """E1, E2, E4 and edge validity for a single path."""
    if path.is_constant:
        q = path.tangle.den
        if path.constant_x is not None and \
                not Fraction(q - 1, q) <= path.constant_x <= 1:
            raise SystemViolation("E1", index,
                                  "constant point off the horizontal edge")
        return
    if not path.vertices:
        raise SystemViolation("E1", index, "empty non-constant path")
    v0 = path.vertices[0]
    if v0.kind is not VertexKind.INTERIOR or v0.slope != path.tangle:
        raise SystemViolation("E1", index,
                              f"path must start at <{path.tangle}>")
    vs = path.vertices
    for u, v in zip(vs, vs[1:]):
        if v.kind is VertexKind.INFINITY:
            if u.kind is not VertexKind.INTERIOR or u.slope.den != 1:
                raise SystemViolation("E2", index,
                                      "infinity edges start at integers")
        elif u.kind is VertexKind.INFINITY:
            raise SystemViolation("E4", index, "cannot leave <infinity>")
        elif not farey_adjacent(u.slope, v.slope):
            raise SystemViolation("E2", index,
                                  f"<{u.slope}, {v.slope}> is not an edge")
    for a, b, c in zip(vs, vs[1:], vs[2:]):
        if a == c:
            raise SystemViolation("E2", index, "path retraces itself")
        if triangle(a, b, c):
            raise SystemViolation(
                "E2", index, "two sides of one triangle in succession")
    xs = [v.coords[0] for v in vs]
    if any(x2 > x1 for x1, x2 in zip(xs, xs[1:])):
        raise SystemViolation("E4", index, "x-coordinate increases")


def validate_system(system: EdgepathSystem) -> SystemType:
    """
    Check the four edgepath-system conditions and classify the system.
    Raises SystemViolation naming the first failed condition.
    """
    if not system.paths:
        raise SystemViolation("E1", None, "empty system")
    for i, p in enumerate(system.paths):
        _check_path(p, i)
    ends = [p.end_point() for p in system.paths]
    xs = {x for x, _ in ends}
    if len(xs) != 1:
        raise SystemViolation("E3", None,
                              f"ends on distinct vertical lines {sorted(xs)}")
    total = sum(y for _, y in ends)
    if total != 0:
        raise SystemViolation("E3", None, f"height sum {total} != 0")
    x = xs.pop()
    if any(p.has_infinity_edge for p in system.paths):
        if not all(p.has_infinity_edge for p in system.paths):
            raise SystemViolation("E3", None, "mixed infinity / finite ends")
        return SystemType.TYPE_III
    if x > 0:
        return SystemType.TYPE_I
    return SystemType.TYPE_II


def min_sheets(system: EdgepathSystem) -> int:
    """Least m making every m * |path| an integer."""
    if not system.paths:
        return 1
    return lcm(*(length.denominator for length in system.lengths()))


# ---------------------------------------------------------------------------
# The two monotone paths of a 1/q tangle and their piecewise formulas.


def gamma_plus(q: int, x: Rational) -> Rational:
    """Height of the non-decreasing path of tangle 1/q at position x."""
    if q < 2:
        raise ValueError("gamma functions need q >= 2")
    x = Fraction(x)
    if x > 1 - Fraction(1, q):
        return Fraction(1, q)
    return 1 - x


def gamma_minus(q: int, x: Rational) -> Rational:
    """Height of the non-increasing path of tangle 1/q at position x."""
    if q < 2:
        raise ValueError("gamma functions need q >= 2")
    x = Fraction(x)
    if x > 1 - Fraction(1, q):
        return Fraction(1, q)
    return x / (q - 1)


def gamma_value(n: int, direction: str, x: Rational) -> Rational:
    """
    Height of the chosen monotone path for the signed tangle 1/n; the
    negative-tangle formulas are the mirrored positive ones.
    """
    if abs(n) < 2:
        raise ValueError("pretzel tangles need |n| >= 2")
    if direction not in ("+", "-"):
        raise ValueError("direction is '+' or '-'")
    if n > 0:
        return gamma_plus(n, x) if direction == "+" else gamma_minus(n, x)
    q = -n
    return -gamma_minus(q, x) if direction == "+" else -gamma_plus(q, x)


def tau_plus(q: int, x: Rational) -> Rational:
    """Closed form for the twist of the non-decreasing 1/q path at x."""
    x = Fraction(x)
    return Fraction(2) / (1 - x) - 2 * q


def tau_minus(q: int, x: Rational) -> Rational:
    """Closed form for the twist of the non-increasing 1/q path at x."""
    x = Fraction(x)
    return 2 - 2 * x / ((1 - x) * (q - 1))


def tau_value(n: int, direction: str, x: Rational) -> Rational:
    """Signed-tangle twist closed form (mirror for negative tangles)."""
    if n > 0:
        return tau_plus(n, x) if direction == "+" else tau_minus(n, x)
    q = -n
    return -tau_minus(q, x) if direction == "+" else -tau_plus(q, x)


def _fan_vertices(n: int, down_to: int) -> tuple:
    sign = 1 if n > 0 else -1
    return tuple(DiagramVertex.interior(Slope(sign, k))
                 for k in range(abs(n), down_to - 1, -1))


def gamma_path(n: int, direction: str, x: Rational) -> EdgePath:
    """
    The monotone edgepath of tangle 1/n truncated at position x in
    [0, 1 - 1/|n|].  The non-decreasing path of a positive tangle is the
    fan through <1/(|n|-1)>, ..., <1/1>; the non-increasing one is the
    single edge to <0/1>; for negative tangles the two swap and mirror.
    """
    x = Fraction(x)
    q = abs(n)
    if q < 2:
        raise ValueError("pretzel tangles need |n| >= 2")
    if not 0 <= x <= 1 - Fraction(1, q):
        raise ValueError(f"x={x} outside [0, 1-1/{q}]")
    tangle = Slope(1 if n > 0 else -1, q)
    if x == 1 - Fraction(1, q):
        return EdgePath(tangle, (DiagramVertex.interior(tangle),))
    qbar = 1 / (1 - x)  # averaged denominator of the end point
    fan = (n > 0) == (direction == "+")
    if fan:
        k = ceil(qbar)
        if qbar == k:
            return EdgePath(tangle, _fan_vertices(n, k))
        return EdgePath(tangle, _fan_vertices(n, k - 1), k - qbar)
    f = (q - qbar) / (q - 1)
    vs = (DiagramVertex.interior(tangle), DiagramVertex.interior(Slope(0, 1)))
    return EdgePath(tangle, vs, f)


def constant_path(n: int, x) -> EdgePath:
    """A constant edgepath for tangle 1/n at horizontal position x."""
    tangle = Slope(1 if n > 0 else -1, abs(n))
    return EdgePath(tangle, (), constant_x=None if x is None else Fraction(x),
                    is_constant=True)


# ---------------------------------------------------------------------------
# Generic bounded enumeration.


def enumerate_edgepaths(slope, max_len: int) -> list[EdgePath]:
    """
    All edgepaths from <slope> using at most max_len full edges, each
    emitted ending at a vertex (callers truncate final edges as needed),
    plus the symbolic constant path.  Monotonicity keeps denominators
    bounded by the starting one, so apart from the vertical direction,
    which max_len bounds, the search is finite.
    """
    start_slope = Slope.of(slope)
    if start_slope.is_infinity:
        raise ValueError("tangle slopes are finite")
    start = DiagramVertex.interior(start_slope)
    bound = max(start_slope.den, 1)
    out = [EdgePath(start_slope, (start,)),
           constant_path_general(start_slope)]

    def extend(vs: tuple):
        if len(vs) - 1 >= max_len:
            return
        cur = vs[-1]
        if cur.kind is VertexKind.INFINITY:
            return
        for nxt in neighbors(cur, bound):
            if nxt.kind is VertexKind.RIGHT_BOUNDARY:
                continue
            if nxt.coords[0] > cur.coords[0]:
                continue
            if len(vs) >= 2:
                if nxt == vs[-2]:
                    continue
                if triangle(vs[-2], cur, nxt):
                    continue
            new = vs + (nxt,)
            out.append(EdgePath(start_slope, new))
            extend(new)

    extend((start,))
    return out


def constant_path_general(slope: Slope) -> EdgePath:
    return EdgePath(slope, (), constant_x=None, is_constant=True)


# ---------------------------------------------------------------------------
# Exact solver for systems ending right of the axis.


@dataclass(frozen=True)
class TypeISolution:
    states: tuple          # per tangle: 'plus' | 'minus' | 'const' | 'vertex'
    x: Fraction
    system: EdgepathSystem


def _domain(n: int, state: str) -> tuple[Fraction, Fraction]:
    edge = 1 - Fraction(1, abs(n))
    if state == "const":
        return (edge, Fraction(1))
    return (Fraction(0), edge)


def _line_coeffs(n: int, state: str) -> tuple[Fraction, Fraction]:
    """Coefficients (a, b) with path height = a*x + b on its domain."""
    q = abs(n)
    if state == "const":
        return (Fraction(0), Fraction(1, n))
    if n > 0:
        if state == "plus":
            return (Fraction(-1), Fraction(1))
        return (Fraction(1, q - 1), Fraction(0))
    if state == "plus":
        return (Fraction(-1, q - 1), Fraction(0))
    return (Fraction(1), Fraction(-1))


def solve_type_I(p: int, q: int, r: int) -> list[TypeISolution]:
    """
    All systems of monotone / constant edgepaths for the pretzel tangles
    (1/p, 1/q, 1/r) whose ends share a vertical line x > 0 with heights
    summing to zero.  Solves the piecewise-linear height-sum equation on
    every sign/constancy pattern exactly; duplicate geometric solutions
    arising on piece boundaries are merged.
    """
    tangles = (p, q, r)
    if any(abs(n) < 2 for n in tangles):
        raise ValueError("pretzel parameters need absolute value >= 2")
    seen = {}
    for states in itertools.product(("plus", "minus", "const"), repeat=3):
        a = Fraction(0)
        b = Fraction(0)
        for n, st in zip(tangles, states):
            ca, cb = _line_coeffs(n, st)
            a += ca
            b += cb
        lo = max(_domain(n, st)[0] for n, st in zip(tangles, states))
        hi = min(_domain(n, st)[1] for n, st in zip(tangles, states))
        if a == 0:
            continue  # height sum is a nonzero constant on this pattern
        x = -b / a
        if not (lo <= x <= hi) or x <= 0:
            continue
        paths = []
        canon = []
        for n, st in zip(tangles, states):
            edge_x = 1 - Fraction(1, abs(n))
            if st == "const" and x > edge_x:
                paths.append(constant_path(n, x))
                canon.append("const")
            elif x == edge_x:
                paths.append(gamma_path(n, "+", x))
                canon.append("vertex")
            else:
                paths.append(gamma_path(n, "+" if st == "plus" else "-", x))
                canon.append("plus" if st == "plus" else "minus")
        key = (x, tuple(canon))
        if key not in seen:
            seen[key] = TypeISolution(tuple(canon), x,
                                      EdgepathSystem(tuple(paths)))
    return sorted(seen.values(), key=lambda s: (s.x, s.states))


# ---------------------------------------------------------------------------
# Axis-ended (type II / III) system enumeration for pretzels.


@dataclass(frozen=True)
class AxisPathSpec:
    """
    A pretzel edgepath reaching the axis x = 0: a monotone path to its
    integer core, then `climb` full vertical edges, then optionally a
    fraction of a further vertical edge or of an infinity edge.  All
    fractions are in units of 1/denominator.
    """

    tangle: int
    direction: str          # '+' or '-'
    climb: int = 0          # signed count of full vertical edges
    vertical_num: int = 0   # numerator of the fractional vertical part
    infinity_num: int = 0   # numerator of the fractional infinity part
    denominator: int = 1
    vertical_dir_hint: int = 1  # used only when climb == 0 and core == 0

    @property
    def core(self) -> int:
        if self.tangle > 0 and self.direction == "+":
            return 1
        if self.tangle < 0 and self.direction == "-":
            return -1
        return 0

    @property
    def final_core(self) -> int:
        return self.core + self.climb

    def _vertical_step(self) -> int:
        if self.climb != 0:
            return 1 if self.climb > 0 else -1
        if self.core != 0:
            return 1 if self.core > 0 else -1
        return self.vertical_dir_hint

    @property
    def end_height(self) -> Fraction:
        base = Fraction(self.final_core)
        if self.vertical_num:
            base += Fraction(self.vertical_num, self.denominator) \
                * self._vertical_step()
        return base

    def to_path(self) -> EdgePath:
        path = gamma_path(self.tangle, self.direction, Fraction(0))
        vs = list(path.vertices)
        cur = self.core
        step = 1 if self.climb >= 0 else -1
        for _ in range(abs(self.climb)):
            cur += step
            vs.append(DiagramVertex.interior(Slope(cur, 1)))
        frac = Fraction(1)
        if self.vertical_num:
            vs.append(DiagramVertex.interior(
                Slope(cur + self._vertical_step(), 1)))
            frac = Fraction(self.vertical_num, self.denominator)
        elif self.infinity_num:
            vs.append(DiagramVertex.infinity())
            frac = Fraction(self.infinity_num, self.denominator)
        return EdgePath(Slope(1 if self.tangle > 0 else -1, abs(self.tangle)),
                        tuple(vs), frac)


def _axis_path_specs(n: int, m: int, core_bound: int, with_infinity: bool):
    """All axis-path options for one tangle at sheet count m."""
    out = []
    for direction in ("+", "-"):
        core = 1 if (n > 0 and direction == "+") else \
            (-1 if (n < 0 and direction == "-") else 0)
        if core != 0:
            # continuing toward the axis would re-enter the fan triangle
            climb_dirs = [1 if core > 0 else -1]
        elif abs(n) == 2:
            # the other vertical from <0> closes a triangle with <1/2, 0>
            climb_dirs = [-1] if n > 0 else [1]
        else:
            climb_dirs = [1, -1]
        climbs = [0] + [d * k for d in climb_dirs
                        for k in range(1, core_bound + 1)]
        for climb in climbs:
            vert_dirs = climb_dirs if climb == 0 else \
                [1 if climb > 0 else -1]
            out.append(AxisPathSpec(n, direction, climb, 0, 0, m))
            for vnum in range(1, m):
                for vd in vert_dirs:
                    out.append(AxisPathSpec(n, direction, climb, vnum, 0,
                                            m, vd))
            if with_infinity and climb == 0:
                for inum in range(1, m + 1):
                    out.append(AxisPathSpec(n, direction, 0, 0, inum, m))
    return out


def enumerate_axis_systems(tangles, m: int, core_bound: int = 2,
                           include_type_iii: bool = True):
    """
    Axis-ended edgepath systems for a pretzel, with all fractional parts
    in units of 1/m: type II systems (heights summing to zero on the
    axis) and, optionally, type III systems (a common fraction of an
    infinity edge; partial fractions additionally need core heights
    summing to zero).  Vertical climbs are bounded by core_bound.
    """
    per_tangle = [_axis_path_specs(n, m, core_bound, include_type_iii)
                  for n in tangles]
    systems = []
    for combo in itertools.product(*per_tangle):
        infs = [s.infinity_num for s in combo]
        if any(infs):
            if not all(infs) or len(set(infs)) != 1:
                continue
            if infs[0] < m and sum(s.core for s in combo) != 0:
                continue
        elif sum(s.end_height for s in combo) != 0:
            continue
        systems.append(EdgepathSystem(tuple(s.to_path() for s in combo)))
    return systems
