r"""Unpunctured marked surfaces and their ideal triangulations.

A triangulation is stored as an oriented combinatorial map: a tuple of
triangles, each an anticlockwise-ordered triple of edge labels, plus an
edge table that distinguishes internal arcs from boundary segments.
Internal arcs are labelled ``a1 .. aN`` (ids are stable: a flipped arc
keeps its label), boundary segments ``b<component>.<position>`` and are
never touched by any operation.

The flip of an internal arc replaces the diagonal of the quadrilateral
formed by its two adjacent triangles::

             +-----y1----+                +-----y1----+
             |          /|                |\          |
             |        /  |                |  \        |
            x2    arc    y2    ---->     x2    arc    y2
             |    /      |                |      \    |
             |  /        |                |        \  |
             +----x1-----+                +----x1-----+

with ``x1, x2`` the sides following the arc inside one adjacent triangle
and ``y1, y2`` the sides inside the other.  Sides of the quadrilateral may
repeat an edge (self-glued quadrilaterals occur e.g. on the annulus); the
slot bookkeeping below is insensitive to that.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "MarkedSurface",
    "PairClass",
    "QuiverWithPotential",
    "Triangulation",
    "polygon_fan",
    "annulus",
    "genus_one",
]


@dataclass(frozen=True)
class MarkedSurface:
    """Genus plus the partition of marked points over boundary components."""

    genus: int
    boundaries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "boundaries", tuple(int(x) for x in self.boundaries))
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if self.b < 1:
            raise ValueError("surface must have non-empty boundary")
        if any(x < 1 for x in self.boundaries):
            raise ValueError("every boundary component needs a marked point")
        if self.genus == 0 and self.b == 1 and self.m < 4:
            raise ValueError("disc needs at least 4 marked points")
        if self.arc_count < 1:
            raise ValueError("surface admits no arcs (n < 1)")
        if (2 * self.arc_count + self.m) % 3 != 0:
            raise ValueError("inconsistent counts: (2n+m)/3 not an integer")

    @property
    def b(self) -> int:
        return len(self.boundaries)

    @property
    def m(self) -> int:
        return sum(self.boundaries)

    @property
    def arc_count(self) -> int:
        """Number n of arcs in any ideal triangulation: 6g - 6 + 3b + m."""
        return 6 * self.genus - 6 + 3 * self.b + self.m

    @property
    def triangle_count(self) -> int:
        return (2 * self.arc_count + self.m) // 3

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.b

    @property
    def is_disc(self) -> bool:
        return self.genus == 0 and self.b == 1

    def to_json(self) -> dict:
        return {"genus": self.genus, "boundaries": list(self.boundaries)}

    @classmethod
    def from_json(cls, data: dict) -> "MarkedSurface":
        return cls(genus=data["genus"], boundaries=tuple(data["boundaries"]))


class PairClass(Enum):
    """How two arcs of one triangulation sit relative to each other."""

    DISJOINT = "Disjoint"
    ONE_SHARED_TRIANGLE = "OneSharedTriangle"
    TWO_SHARED_TRIANGLES = "TwoSharedTriangles"


_BOUNDARY_RE = re.compile(r"^b(\d+)\.(\d+)$")
_ARC_RE = re.compile(r"^a(\d+)$")


def arc_label(i: int) -> str:
    return f"a{i}"


def _edge_sort_key(label: str):
    m = _ARC_RE.match(label)
    if m:
        return (0, int(m.group(1)), 0)
    m = _BOUNDARY_RE.match(label)
    if m:
        return (1, int(m.group(1)), int(m.group(2)))
    raise ValueError(f"malformed edge label {label!r}")


def _canonical_triangles(triangles):
    rotated = []
    for tri in triangles:
        tri = tuple(tri)
        if len(tri) != 3 or len(set(tri)) != 3:
            raise ValueError(f"triangle {tri} must have three distinct sides")
        k = min(range(3), key=lambda i: _edge_sort_key(tri[i]))
        rotated.append(tri[k:] + tri[:k])
    rotated.sort(key=lambda t: tuple(_edge_sort_key(e) for e in t))
    return tuple(rotated)


class Triangulation:
    """An ideal triangulation as a labelled combinatorial map.

    ``triangles`` is canonicalised on construction (each triple rotated so
    its smallest side comes first, triples sorted), so equality is labelled
    combinatorial-map equality.
    """

    __slots__ = ("surface", "triangles", "_slots", "_hash")

    def __init__(self, surface: MarkedSurface, triangles, validate: bool = True):
        self.surface = surface
        self.triangles = _canonical_triangles(triangles)
        slots: dict[str, list] = {}
        for t, tri in enumerate(self.triangles):
            for pos, lab in enumerate(tri):
                slots.setdefault(lab, []).append((t, pos))
        self._slots = {lab: tuple(v) for lab, v in slots.items()}
        self._hash = hash((self.surface, self.triangles))
        if validate:
            self.validate()

    # -- basic structure ---------------------------------------------------

    @property
    def n(self) -> int:
        return self.surface.arc_count

    def arc_labels(self) -> list[str]:
        return [arc_label(i) for i in range(1, self.n + 1)]

    def slots(self, label: str) -> tuple:
        try:
            return self._slots[label]
        except KeyError:
            raise ValueError(f"unknown edge {label!r}") from None

    def _arc(self, arc: int) -> str:
        if not (1 <= arc <= self.n):
            raise ValueError(f"arc id {arc} out of range 1..{self.n}")
        return arc_label(arc)

    def validate(self) -> None:
        surf = self.surface
        arcs = [lab for lab in self._slots if lab.startswith("a")]
        bnds = [lab for lab in self._slots if lab.startswith("b")]
        if len(self.triangles) != surf.triangle_count:
            raise ValueError("wrong triangle count")
        if sorted(arcs, key=_edge_sort_key) != self.arc_labels():
            raise ValueError("arc labels must be exactly a1..aN")
        if len(bnds) != surf.m:
            raise ValueError("wrong boundary segment count")
        per_comp: dict[int, set] = {}
        for lab in bnds:
            m = _BOUNDARY_RE.match(lab)
            comp, pos = int(m.group(1)), int(m.group(2))
            per_comp.setdefault(comp, set()).add(pos)
        if sorted(per_comp) != list(range(surf.b)):
            raise ValueError("boundary component labels must be 0..b-1")
        for comp, positions in per_comp.items():
            if positions != set(range(surf.boundaries[comp])):
                raise ValueError(f"boundary component {comp} has wrong segments")
        for lab, sl in self._slots.items():
            want = 2 if lab.startswith("a") else 1
            if len(sl) != want:
                raise ValueError(f"edge {lab} used by {len(sl)} slots, expected {want}")
        # Euler characteristic from the vertex cycles of the map.
        v = self._vertex_count()
        if v != surf.m:
            raise ValueError(f"map has {v} vertices, surface has m={surf.m}")
        chi = v - (self.n + surf.m) + len(self.triangles)
        if chi != surf.euler_characteristic:
            raise ValueError(f"Euler characteristic {chi} != {surf.euler_characteristic}")

    def _corner_classes(self) -> dict[tuple[int, int], int]:
        """Marked-point classes of the corners of the combinatorial map.

        Corner (t, k) sits between incoming side t[k-1] and outgoing t[k];
        crossing an internal side keeps us at the same marked point.
        """
        corners = [(t, k) for t in range(len(self.triangles)) for k in range(3)]
        idx = {c: i for i, c in enumerate(corners)}
        parent = list(range(len(corners)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[ry] = rx

        for (t, k) in corners:
            out = self.triangles[t][k]
            if out.startswith("a"):
                (t1, p1), (t2, p2) = self.slots(out)
                other = (t2, p2) if (t1, p1) == (t, k) else (t1, p1)
                union(idx[(t, k)], idx[(other[0], (other[1] + 1) % 3)])
            inc = self.triangles[t][(k - 1) % 3]
            if inc.startswith("a"):
                sl = self.slots(inc)
                other = sl[1] if sl[0] == (t, (k - 1) % 3) else sl[0]
                union(idx[(t, k)], idx[other])
        return {c: find(idx[c]) for c in corners}

    def _vertex_count(self) -> int:
        return len(set(self._corner_classes().values()))

    def disc_chords(self) -> frozenset:
        """For a disc, the triangulation as a set of chords {i, j} between
        labelled boundary marked points (an independent geometric readback;
        two disc triangulations are equal iff their chord sets are)."""
        if not self.surface.is_disc:
            raise ValueError("chord readback needs a disc")
        classes = self._corner_classes()
        label_of_class = {}
        for lab in self._slots:
            m = _BOUNDARY_RE.match(lab)
            if not m:
                continue
            j = int(m.group(2))
            ((t, p),) = self.slots(lab)
            label_of_class[classes[(t, p)]] = j          # start of b0.j sits at j
            label_of_class[classes[(t, (p + 1) % 3)]] = (j + 1) % self.surface.m
        chords = []
        for i in range(1, self.n + 1):
            (t, p), _ = self.slots(arc_label(i))
            u = label_of_class[classes[(t, p)]]
            v = label_of_class[classes[(t, (p + 1) % 3)]]
            chords.append(frozenset((u, v)))
        return frozenset(chords)

    # -- operations --------------------------------------------------------

    def _quad_sides(self, label: str):
        (t1, p1), (t2, p2) = self.slots(label)
        tri1, tri2 = self.triangles[t1], self.triangles[t2]
        x1, x2 = tri1[(p1 + 1) % 3], tri1[(p1 + 2) % 3]
        y1, y2 = tri2[(p2 + 1) % 3], tri2[(p2 + 2) % 3]
        return x1, x2, y1, y2

    def flip(self, arc: int) -> "Triangulation":
        """Replace the diagonal of the quadrilateral around ``arc``.

        The new arc reuses the old arc's id; the result is again canonical.
        Involutive: ``t.flip(a).flip(a) == t``.
        """
        label = self._arc(arc)
        (t1, _), (t2, _) = self.slots(label)
        x1, x2, y1, y2 = self._quad_sides(label)
        new = [tri for t, tri in enumerate(self.triangles) if t not in (t1, t2)]
        new.append((label, x2, y1))
        new.append((label, y2, x1))
        return Triangulation(self.surface, new, validate=False)

    def quadrilateral(self, arc: int) -> tuple[str, str, str, str]:
        """The four sides around ``arc``, anticlockwise from the lowest-id side."""
        sides = self._quad_sides(self._arc(arc))
        k = min(range(4), key=lambda i: (_edge_sort_key(sides[i]), i))
        return sides[k:] + sides[:k]

    def classify_pair(self, a: int, b: int) -> PairClass:
        """Count triangles containing both arcs: 0, 1 or 2 shared triangles."""
        if a == b:
            raise ValueError("classify_pair needs two distinct arcs")
        ta = {t for t, _ in self.slots(self._arc(a))}
        tb = {t for t, _ in self.slots(self._arc(b))}
        shared = len(ta & tb)
        return {
            0: PairClass.DISJOINT,
            1: PairClass.ONE_SHARED_TRIANGLE,
            2: PairClass.TWO_SHARED_TRIANGLES,
        }[shared]

    def quiver(self) -> "QuiverWithPotential":
        """Quiver with potential read off the triangulation.

        One arrow per angle between two arcs, directed toward the arc that
        is the anticlockwise rotation of the other inside the triangle; a
        potential 3-cycle per triangle whose sides are all arcs.
        """
        n = self.n
        B = np.zeros((n, n), dtype=np.int64)
        arrows = []
        arrow_at = {}
        for t, tri in enumerate(self.triangles):
            for k in range(3):
                tail, head = tri[k], tri[(k - 1) % 3]
                if tail.startswith("a") and head.startswith("a"):
                    ti = int(tail[1:])
                    hi = int(head[1:])
                    arrow_at[(t, k)] = len(arrows)
                    arrows.append((ti, hi))
                    B[ti - 1, hi - 1] += 1
                    B[hi - 1, ti - 1] -= 1
        terms = []
        for t, tri in enumerate(self.triangles):
            if all(e.startswith("a") for e in tri):
                # arrows run s0 -> s2 -> s1 -> s0; record them along the cycle
                cyc = (arrow_at[(t, 0)], arrow_at[(t, 2)], arrow_at[(t, 1)])
                k = min(range(3), key=lambda i: arrows[cyc[i]][0])
                terms.append(cyc[k:] + cyc[:k])
        terms.sort(key=lambda cyc: tuple(arrows[i] for i in cyc))
        return QuiverWithPotential(n, B, tuple(arrows), tuple(terms))

    def dual_graph(self) -> tuple[tuple[int, int, int], ...]:
        """One edge per arc joining the two adjacent triangles (multi-edges kept)."""
        edges = []
        for i in range(1, self.n + 1):
            (t1, _), (t2, _) = self.slots(arc_label(i))
            if t1 == t2:
                raise ValueError(f"arc a{i} is self-folded; unpunctured surfaces forbid this")
            edges.append((min(t1, t2), max(t1, t2), i))
        edges.sort()
        return tuple(edges)

    # -- serialization and equality ----------------------------------------

    def to_json(self) -> dict:
        edges = {}
        for lab in sorted(self._slots, key=_edge_sort_key):
            if lab.startswith("a"):
                edges[lab] = {"kind": "arc"}
            else:
                m = _BOUNDARY_RE.match(lab)
                edges[lab] = {
                    "kind": "boundary",
                    "component": int(m.group(1)),
                    "position": int(m.group(2)),
                }
        return {
            "surface": self.surface.to_json(),
            "triangles": [list(t) for t in self.triangles],
            "edges": edges,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Triangulation":
        surface = MarkedSurface.from_json(data["surface"])
        return cls(surface, [tuple(t) for t in data["triangles"]])

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def __eq__(self, other):
        return (
            isinstance(other, Triangulation)
            and self.surface == other.surface
            and self.triangles == other.triangles
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Triangulation({self.surface!r}, {len(self.triangles)} triangles)"


@dataclass(frozen=True)
class QuiverWithPotential:
    """Exchange matrix plus potential of a triangulation.

    ``B[i][j]`` counts arrows i+1 -> j+1 minus arrows j+1 -> i+1 (arc ids
    are 1-based, matrix storage 0-based).  ``arrows`` keeps every angle as
    an individual (tail, head) pair so the presentation scanner can tell
    which arrow a potential term uses; ``terms`` are 3-cycles stored as
    triples of arrow indices following the cycle.
    """

    n: int
    B: np.ndarray
    arrows: tuple[tuple[int, int], ...]
    terms: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        B = self.B
        if B.shape != (self.n, self.n) or (B != -B.T).any():
            raise ValueError("B must be skew-symmetric n x n")
        if np.abs(B).max(initial=0) > 2:
            raise ValueError("triangulation quivers have |B| <= 2")
        for cyc in self.terms:
            for i in range(3):
                tail, head = self.arrows[cyc[i]]
                if B[tail - 1, head - 1] < 1:
                    raise ValueError("potential term must follow arrows")
                if head != self.arrows[cyc[(i + 1) % 3]][0]:
                    raise ValueError("potential term arrows must form a 3-cycle")

    def term_vertices(self, cyc) -> tuple[int, int, int]:
        return tuple(self.arrows[i][0] for i in cyc)

    def potential_vertex_terms(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(self.term_vertices(c) for c in self.terms)

    def b_entry(self, i: int, j: int) -> int:
        return int(self.B[i - 1, j - 1])


# -- constructors -----------------------------------------------------------


def polygon_fan(m: int) -> Triangulation:
    """Fan triangulation of the labelled m-gon from vertex 0.

    Arc ``a<i>`` is the diagonal from vertex 0 to vertex i+1; boundary
    segment ``b0.<j>`` joins vertices j and j+1 (mod m).
    """
    if m < 4:
        raise ValueError("polygon needs m >= 4")
    surf = MarkedSurface(0, (m,))
    # Triangle (0, k, k+1) has sides (0,k), (k,k+1), (k+1,0); the side (0,j)
    # is the boundary segment b0.<..> when j is adjacent to 0, else arc a<j-1>.
    tri = []
    for k in range(1, m - 1):
        first = "b0.0" if k == 1 else arc_label(k - 1)
        last = f"b0.{m - 1}" if k + 1 == m - 1 else arc_label(k)
        tri.append((first, f"b0.{k}", last))
    return Triangulation(surf, tri)


def annulus(p: int, q: int) -> Triangulation:
    """Annulus with p marked points on the outer and q on the inner boundary.

    Realised as the fan triangulation of the (p+q+2)-gon fundamental domain
    with left and right vertical sides glued into arc ``a1``.
    """
    if p < 1 or q < 1:
        raise ValueError("annulus needs p, q >= 1")
    surf = MarkedSurface(0, (p, q))
    total = p + q + 2  # polygon vertices A0, B0..Bq, Ap..A1

    def side(i):
        # polygon side from P[i] to P[i+1]
        if i == 0 or i == q + 1:
            return arc_label(1)
        if 1 <= i <= q:
            return f"b1.{i - 1}"
        return f"b0.{i - (q + 2)}"

    tri = []
    for k in range(1, total - 1):
        first = side(0) if k == 1 else arc_label(k)
        last = side(total - 1) if k + 1 == total - 1 else arc_label(k + 1)
        tri.append((first, side(k), last))
    return Triangulation(surf, tri)


def genus_one(m: int) -> Triangulation:
    """Genus-1 surface with one boundary component carrying m marked points.

    Fundamental polygon a b a' b' c1..cm, fan-triangulated; the a/b sides
    glue into arcs ``a1``/``a2`` and the diagonals are ``a3..a<m+3>``.
    """
    if m < 1:
        raise ValueError("need at least one marked point")
    surf = MarkedSurface(1, (m,))
    total = 4 + m

    def side(i):
        if i in (0, 2):
            return arc_label(1)
        if i in (1, 3):
            return arc_label(2)
        return f"b0.{i - 4}"

    tri = []
    for k in range(1, total - 1):
        first = side(0) if k == 1 else arc_label(k + 1)
        last = side(total - 1) if k + 1 == total - 1 else arc_label(k + 2)
        tri.append((first, side(k), last))
    return Triangulation(surf, tri)
