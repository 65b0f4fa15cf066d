"""
Combinatorial candidate surfaces.

A candidate surface for an axis-compatible edgepath system is assembled
ball by ball: each tangle ball contributes m parallel sheets whose top
boundary is a pair of arcs on the 4-punctured boundary sphere, and every
traversed edge applies one saddle per sheet (a fraction of an edge
applies proportionally fewer), each saddle having two possible bands.
The balls are then joined across the interfaces between consecutive
tangles by strand-parallel strips whose combinatorics are forced by the
matching of arc endpoints along the knot.

The surface is represented as an explicit 2-complex (sheets, saddle
cobordism cells, interface plates) from which the component count,
orientability, boundary-circle count and Euler characteristic are
computed exactly.  Twists and boundary slopes are exact rationals
computed directly from the edgepath system.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .edgepaths import EdgePath, EdgepathSystem, min_sheets
from .farey_diagram import Slope, VertexKind

# ---------------------------------------------------------------------------
# Twist and slope arithmetic.


def twist(path: EdgePath) -> Fraction:
    """
    2 * (decreasing - increasing) over the traversed edges, counting the
    final fractional edge proportionally; edges with an end at
    <infinity> do not contribute, nor do constant paths.
    """
    if path.is_constant or len(path.vertices) <= 1:
        return Fraction(0)
    total = Fraction(0)
    edges = path.edges
    fractions = [Fraction(1)] * len(edges)
    fractions[-1] = path.final_fraction
    for (u, v), f in zip(edges, fractions):
        if u.kind is VertexKind.INFINITY or v.kind is VertexKind.INFINITY:
            continue
        delta = v.slope.as_fraction() - u.slope.as_fraction()
        total += -2 * f if delta > 0 else 2 * f
    return total


def system_twist(system: EdgepathSystem) -> Fraction:
    return sum((twist(p) for p in system.paths), Fraction(0))


def slope(system: EdgepathSystem, seifert_twist_value) -> Fraction:
    """Boundary slope: total twist minus the reference (Seifert) twist."""
    return system_twist(system) - Fraction(seifert_twist_value)


class UnsupportedPatternError(ValueError):
    """No reference Seifert twist is on record for this sign pattern."""


def seifert_twist(p: int, q: int, r: int) -> Fraction:
    """
    Reference twist of a Seifert surface for the two pretzel patterns it
    is known for: two odd positive parameters with an even negative one
    give 2 - 2(sum of the odd ones); an odd positive, an odd negative
    and an even positive give 2(|negative| - positive) + 2.
    """
    params = (p, q, r)
    odds = [n for n in params if n % 2 == 1]  # Python: odd |n| iff n % 2
    evens = [n for n in params if n % 2 == 0]
    if len(evens) != 1:
        raise UnsupportedPatternError(f"{params}: need exactly one even")
    e = evens[0]
    a, b = odds
    if a > 0 and b > 0 and e < 0:
        return Fraction(2 - 2 * (a + b))
    if e > 0 and ((a > 0) != (b > 0)):
        pos = a if a > 0 else b
        neg = -(a if a < 0 else b)
        return Fraction(2 * (neg - pos) + 2)
    raise UnsupportedPatternError(f"{params}: pattern not covered")


# ---------------------------------------------------------------------------
# Pairings of the four punctures.

NE, NW, SW, SE = "NE", "NW", "SW", "SE"
PUNCTURES = (NE, NW, SW, SE)

# mod-2 slope type -> the two arcs of the pairing, with canonical
# directions; the third class pairs the punctures across the two faces.
_PAIRINGS = {
    (0, 1): ((NW, NE), (SW, SE)),
    (1, 0): ((NE, SE), (NW, SW)),
    (1, 1): ((SW, NE), (NW, SE)),
}

_INF_KEY = "inf"


def _slope_key(s: Slope):
    return _INF_KEY if s.is_infinity else s.as_fraction()


def _key_above(target, source) -> bool:
    """Is the target family above the source in the puncture sweep?"""
    if target == _INF_KEY:
        return True
    if source == _INF_KEY:
        return False
    return target > source


class SurfaceBuildError(ValueError):
    pass


# Gluing conventions fixed by calibrating the builder against the
# qualitative facts the construction must reproduce (component counts of
# single-color axis-ended systems, non-orientability of mixed-color
# ones, the vertex-ended boundary dichotomy).  See tests/test_surfaces.
CONVENTIONS = {
    "reverse_v_bottom": False,       # infinity block order at SW/SE
    "reverse_finite_bottom": False,  # finite block orders at SW/SE
    "reverse_iseg_top": False,       # interface rank matching, top strand
    "reverse_iseg_bottom": False,    # interface rank matching, bottom
}


@dataclass(frozen=True)
class SaddleChoice:
    """
    Binary band choices, indexed by (ball index, edge index along the
    ball's path, saddle index within the edge); unspecified entries
    default to `default`.
    """

    bits: dict = field(default_factory=dict)
    default: int = 0

    def get(self, ball: int, edge_idx: int, saddle_idx: int) -> int:
        return self.bits.get((ball, edge_idx, saddle_idx), self.default)

    @classmethod
    def uniform(cls, bit: int = 0) -> "SaddleChoice":
        return cls({}, bit)


def saddle_layout(system: EdgepathSystem, m: int):
    """Per ball, the list of saddle counts per edge at sheet count m."""
    layout = []
    for path in system.paths:
        counts = []
        edges = path.edges
        for idx, _ in enumerate(edges):
            if idx == len(edges) - 1 and path.final_fraction != 1:
                alpha = path.final_fraction * m
                if alpha.denominator != 1:
                    raise SurfaceBuildError(
                        f"m={m} does not clear fraction {path.final_fraction}")
                counts.append(int(alpha))
            else:
                counts.append(m)
        layout.append(counts)
    return layout


def all_choices(system: EdgepathSystem, m: int):
    """Iterator over every SaddleChoice of the system at sheet count m."""
    layout = saddle_layout(system, m)
    slots = [(b, e, s)
             for b, counts in enumerate(layout)
             for e, c in enumerate(counts)
             for s in range(c)]
    for bits in itertools.product((0, 1), repeat=len(slots)):
        yield SaddleChoice(dict(zip(slots, bits)))


def sample_choices(system: EdgepathSystem, m: int, limit: int, seed: int = 0):
    """
    A deterministic sample of SaddleChoices: exhaustive when the choice
    space fits within `limit`, otherwise uniform patterns plus seeded
    pseudorandom draws.
    """
    import random

    layout = saddle_layout(system, m)
    slots = [(b, e, s)
             for b, counts in enumerate(layout)
             for e, c in enumerate(counts)
             for s in range(c)]
    n = len(slots)
    if (1 << n) <= limit:
        yield from all_choices(system, m)
        return
    yield SaddleChoice.uniform(0)
    yield SaddleChoice.uniform(1)
    rng = random.Random(seed)
    for _ in range(limit - 2):
        yield SaddleChoice({s: rng.randint(0, 1) for s in slots})


# ---------------------------------------------------------------------------
# The 2-complex builder.


class _Complex:
    def __init__(self):
        self.edge_kind = {}
        self.edge_ends = {}
        self.cells = []
        self._next = 0

    def new_edge(self, kind: str, v_from, v_to) -> int:
        eid = self._next
        self._next += 1
        self.edge_kind[eid] = kind
        self.edge_ends[eid] = (v_from, v_to)
        return eid

    def add_cell(self, word) -> int:
        self.cells.append(tuple(word))
        return len(self.cells) - 1


@dataclass
class _Pair:
    pid: int
    ball: int
    slope_key: object
    arcs: tuple            # two arc edge ids
    arc_ends: dict         # arc eid -> (puncture_from, puncture_to)
    vertex_at: dict        # puncture -> vertex id


class _BallBuilder:
    def __init__(self, complex_: _Complex, ball: int, tangle: Slope, m: int):
        self.cx = complex_
        self.ball = ball
        self.m = m
        self.families: dict = {}
        key = _slope_key(tangle)
        pairing = _PAIRINGS[tangle.mod2_type()]
        fam = []
        for c in range(m):
            vat = {P: ("bot", ball, c, P) for P in PUNCTURES}
            arcs = []
            arc_ends = {}
            for (pa, pb) in pairing:
                kseg = self.cx.new_edge("kseg", vat[pa], vat[pb])
                arc = self.cx.new_edge("arc", vat[pa], vat[pb])
                self.cx.add_cell([(kseg, 1), (arc, -1)])
                arcs.append(arc)
                arc_ends[arc] = (pa, pb)
            fam.append(_Pair(c, ball, key, tuple(arcs), arc_ends, vat))
        self.families[key] = fam
        self.event = 0

    def apply_edge(self, source: Slope, target, n_saddles: int, routes):
        """Apply n_saddles saddles of the edge source -> target."""
        src_key = _slope_key(source)
        if src_key not in self.families or \
                len(self.families[src_key]) < n_saddles:
            raise SurfaceBuildError(
                f"ball {self.ball}: no {n_saddles} pairs at slope {source}")
        tgt_is_inf = target is None or (isinstance(target, Slope)
                                        and target.is_infinity)
        tgt_key = _INF_KEY if tgt_is_inf else _slope_key(target)
        tgt_pairing = _PAIRINGS[(1, 0) if tgt_is_inf else target.mod2_type()]
        upward = _key_above(tgt_key, src_key)
        self.families.setdefault(tgt_key, [])
        for route in routes:
            src_fam = self.families[src_key]
            # route 0 grabs the target-facing end of the source block and
            # lands at the source-facing end of the target block; route 1
            # wraps around the sphere and uses the two opposite ends.
            near_grab = -1 if upward else 0
            near_land_low = upward  # source-facing end of the target block
            if route == 0:
                pair = src_fam.pop(near_grab)
                land_low = near_land_low
            else:
                pair = src_fam.pop(0 if near_grab == -1 else -1)
                land_low = not near_land_low
            self._saddle(pair, tgt_pairing, tgt_key)
            if land_low:
                self.families[tgt_key].insert(0, pair)
            else:
                self.families[tgt_key].append(pair)
        if not self.families[src_key]:
            del self.families[src_key]

    def _saddle(self, pair: _Pair, tgt_pairing, tgt_key):
        self.event += 1
        cx = self.cx
        new_v = {P: ("ev", self.ball, pair.pid, P, self.event)
                 for P in PUNCTURES}
        vk = {P: cx.new_edge("kseg", pair.vertex_at[P], new_v[P])
              for P in PUNCTURES}
        new_arcs = []
        new_ends = {}
        for (pa, pb) in tgt_pairing:
            arc = cx.new_edge("arc", new_v[pa], new_v[pb])
            new_arcs.append(arc)
            new_ends[arc] = (pa, pb)
        bottom = {}
        for arc in pair.arcs:
            pa, pb = pair.arc_ends[arc]
            bottom[pa] = (arc, pb)
            bottom[pb] = (arc, pa)
        top = {}
        for arc in new_arcs:
            pa, pb = new_ends[arc]
            top[pa] = (arc, pb)
            top[pb] = (arc, pa)
        # trace the cobordism cell: bottom arc, up, top arc, down, ...
        start = pair.arc_ends[pair.arcs[0]][0]
        word = []
        p = start
        level = "bot"
        used_bottom = set()
        while True:
            if level == "bot":
                arc, other = bottom[p]
                used_bottom.add(arc)
                word.append((arc, 1 if pair.arc_ends[arc][0] == p else -1))
                word.append((vk[other], 1))
                p, level = other, "top"
            else:
                arc, other = top[p]
                word.append((arc, 1 if new_ends[arc][0] == p else -1))
                word.append((vk[other], -1))
                p, level = other, "bot"
                if p == start:
                    break
        if len(word) != 8 or len(used_bottom) != 2:
            raise AssertionError("malformed saddle cell")
        cx.add_cell(word)
        pair.slope_key = tgt_key
        pair.arcs = tuple(new_arcs)
        pair.arc_ends = new_ends
        pair.vertex_at = new_v

    def puncture_order(self, P):
        """Final endpoint order at puncture P: one entry per pair, as
        (pair, arc, vertex), swept from low slopes to high with the
        infinity block last; the convention table may reverse block
        orders at the bottom-strand punctures."""
        def block_key(k):
            return (1, 0) if k == _INF_KEY else (0, k)
        bottom = P in (SW, SE)
        out = []
        for k in sorted(self.families, key=block_key):
            fam = list(self.families[k])
            if bottom and (CONVENTIONS["reverse_v_bottom"]
                           if k == _INF_KEY
                           else CONVENTIONS["reverse_finite_bottom"]):
                fam.reverse()
            for pair in fam:
                arc = next(a for a in pair.arcs if P in pair.arc_ends[a])
                out.append((pair, arc, pair.vertex_at[P]))
        return out


@dataclass
class CandidateSurface:
    """A built candidate surface with its generating data."""

    system: EdgepathSystem
    sheet_count: int
    complex: _Complex
    splits: list  # per ball: list of (route0 count, route1 count) per edge

    @property
    def cells(self):
        return self.complex.cells


@dataclass(frozen=True)
class SurfaceReport:
    components: int
    orientable: bool
    boundary_circles: int
    euler_characteristic: int
    twist: Fraction
    slope: object = None  # Fraction when a reference twist was supplied

    def to_json(self) -> str:
        data = {
            "components": self.components,
            "orientable": self.orientable,
            "boundary_circles": self.boundary_circles,
            "euler_characteristic": self.euler_characteristic,
            "twist": str(self.twist),
            "slope": None if self.slope is None else str(self.slope),
        }
        return json.dumps(data, sort_keys=True)


def build_surface(system: EdgepathSystem, m: int,
                  choices: SaddleChoice = SaddleChoice.uniform(0)
                  ) -> CandidateSurface:
    """
    Assemble the candidate surface for the system at sheet count m with
    the given saddle choices.  m must clear every path length; the
    system's paths must have concrete (non-symbolic) fractions.
    """
    ms = min_sheets(system)
    if m < 1 or m % ms != 0:
        raise SurfaceBuildError(f"m={m} is not a multiple of min sheets {ms}")
    cx = _Complex()
    layout = saddle_layout(system, m)
    builders = []
    splits = []
    for b, path in enumerate(system.paths):
        tangle = path.tangle
        builder = _BallBuilder(cx, b, tangle, m)
        ball_splits = []
        for e, (u, v) in enumerate(path.edges):
            n_saddles = layout[b][e]
            routes = [choices.get(b, e, s) for s in range(n_saddles)]
            target = None if v.kind is VertexKind.INFINITY else v.slope
            builder.apply_edge(u.slope if u.kind is not VertexKind.INFINITY
                               else Slope(1, 0), target, n_saddles, routes)
            ball_splits.append((routes.count(0), routes.count(1)))
        builders.append(builder)
        splits.append(ball_splits)

    n = len(builders)
    # interfaces: ball i's east punctures meet ball i+1's west punctures
    for i in range(n):
        j = (i + 1) % n
        for (pi, pj) in ((NE, NW), (SE, SW)):
            side_i = builders[i].puncture_order(pi)
            side_j = builders[j].puncture_order(pj)
            if len(side_i) != len(side_j):
                raise SurfaceBuildError(
                    f"interface {i}-{j}: {len(side_i)} vs {len(side_j)} ends")
            rev = CONVENTIONS["reverse_iseg_top"] if pi == NE else \
                CONVENTIONS["reverse_iseg_bottom"]
            if rev:
                side_j = list(reversed(side_j))
            for (pa, aa, va), (pb, ab, vb) in zip(side_i, side_j):
                cx.new_edge("iseg", va, vb)

    _trace_outside(cx, builders)
    return CandidateSurface(system, m, cx, splits)


def _trace_outside(cx: _Complex, builders):
    """Add the outside cells by walking arcs and interface segments."""
    n = len(builders)
    # slot maps: (ball, puncture, rank) for final arc ends, and the iseg
    # adjacency between matched slots.
    arc_end_slot = {}   # (arc, puncture) -> (ball, P, vertex)
    slot_partner = {}   # vertex -> (iseg, other vertex)
    arc_info = {}       # arc -> (ball, ends)
    for b, builder in enumerate(builders):
        for P in PUNCTURES:
            for (pair, arc, v) in builder.puncture_order(P):
                arc_end_slot[(arc, P)] = v
                arc_info.setdefault(arc, (b, pair.arc_ends[arc]))
    for eid, kind in cx.edge_kind.items():
        if kind == "iseg":
            va, vb = cx.edge_ends[eid]
            slot_partner[va] = (eid, vb)
            slot_partner[vb] = (eid, va)
    vertex_arc = {}
    for (arc, P), v in arc_end_slot.items():
        vertex_arc[v] = (arc, P)

    visited = set()
    for arc0 in list(arc_info):
        if arc0 in visited:
            continue
        start = (arc0, arc_info[arc0][1][0])  # enter at canonical start
        word = []
        cur = start
        while True:
            arc, enter_end = cur
            if arc in visited and cur != start:
                raise SurfaceBuildError("outside trace revisits an arc")
            visited.add(arc)
            ends = arc_info[arc][1]
            exit_end = ends[1] if enter_end == ends[0] else ends[0]
            word.append((arc, 1 if enter_end == ends[0] else -1))
            v_exit = arc_end_slot[(arc, exit_end)]
            if v_exit not in slot_partner:
                raise SurfaceBuildError(f"unmatched interface end {v_exit}")
            iseg, v_next = slot_partner[v_exit]
            va, _ = cx.edge_ends[iseg]
            word.append((iseg, 1 if va == v_exit else -1))
            cur = vertex_arc[v_next]
            if cur == start:
                break
        cx.add_cell(word)


def analyze(surface: CandidateSurface, seifert_twist_value=None
            ) -> SurfaceReport:
    """Exact component / orientability / boundary / Euler analysis."""
    cx = surface.complex
    uses = {}
    for ci, word in enumerate(cx.cells):
        for eid, direction in word:
            uses.setdefault(eid, []).append((ci, direction))
    for eid, kind in cx.edge_kind.items():
        expected = 2 if kind == "arc" else 1
        if len(uses.get(eid, [])) != expected:
            raise SurfaceBuildError(
                f"edge {eid} ({kind}) used {len(uses.get(eid, []))} times")

    # components: union-find over cells via shared arcs
    parent = list(range(len(cx.cells)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for eid, us in uses.items():
        if len(us) == 2:
            union(us[0][0], us[1][0])
    components = len({find(c) for c in range(len(cx.cells))})

    # orientability: consistent cell orientations flip so that every
    # shared edge is traversed oppositely by its two cells
    flip = {}
    orientable = True
    adj = {}
    for eid, us in uses.items():
        if len(us) == 2:
            (c1, d1), (c2, d2) = us
            constraint = d1 == d2  # need flips to differ iff same direction
            adj.setdefault(c1, []).append((c2, constraint))
            adj.setdefault(c2, []).append((c1, constraint))
    for start in range(len(cx.cells)):
        if start in flip:
            continue
        flip[start] = False
        stack = [start]
        while stack and orientable:
            c = stack.pop()
            for other, constraint in adj.get(c, []):
                want = flip[c] ^ constraint
                if other not in flip:
                    flip[other] = want
                    stack.append(other)
                elif flip[other] != want:
                    orientable = False
                    break

    # Euler characteristic: V - E + F over the identified complex
    vertices = set()
    for va, vb in cx.edge_ends.values():
        vertices.add(va)
        vertices.add(vb)
    euler = len(vertices) - len(cx.edge_ends) + len(cx.cells)

    # boundary circles: the free (single-use) edges form a 1-manifold
    incid = {}
    for eid, kind in cx.edge_kind.items():
        if kind == "arc":
            continue
        va, vb = cx.edge_ends[eid]
        incid.setdefault(va, []).append(eid)
        incid.setdefault(vb, []).append(eid)
    for v, es in incid.items():
        if len(es) != 2:
            raise SurfaceBuildError(f"boundary vertex {v} has degree "
                                    f"{len(es)}")
    seen_edges = set()
    circles = 0
    for eid in cx.edge_kind:
        if cx.edge_kind[eid] == "arc" or eid in seen_edges:
            continue
        circles += 1
        cur, vprev = eid, cx.edge_ends[eid][0]
        while cur not in seen_edges:
            seen_edges.add(cur)
            va, vb = cx.edge_ends[cur]
            vnext = vb if vprev == va else va
            e1, e2 = incid[vnext]
            cur, vprev = (e2 if e1 == cur else e1), vnext

    t = system_twist(surface.system)
    s = None if seifert_twist_value is None else t - Fraction(
        seifert_twist_value)
    return SurfaceReport(components, orientable, circles, euler, t, s)
