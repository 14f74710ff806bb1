"""Generic exact polytope machinery.

H- and V-representations over exact rationals, vertex-facet incidence,
adjacency, tangent cones, the cone-coverage criterion, antipodal pair
listing, and the two-cone H-representation builder used for Dantzig-figure
certification. Everything here is dimension-agnostic; family-specific
construction lives in the grlex/grevlex modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exactmath import Matrix, SingularError, invert, primitive_row, rank_of_rows


class InfeasibleVertex(ValueError):
    """A supposed vertex violates a facet inequality."""


class UnknownLabel(KeyError):
    """Label not present in the vertex list."""


class EmptySet(ValueError):
    """An operation requiring a nonempty vertex subset got an empty one."""


class NonSimplicialCone(ValueError):
    """Tangent cone is not simplicial (generator count != d or singular)."""


@dataclass(frozen=True, order=False)
class VertexLabel:
    """Symbolic vertex identity, decoupled from coordinates.

    kind is one of "zero", "theta", "w", "u", "v", "ubar", "vbar"; the index
    fields are used by the indexed kinds only.
    """

    kind: str
    j: int = 0
    k: int = 0

    _RANK = {"zero": 0, "theta": 1, "w": 2, "u": 3, "ubar": 4, "v": 5, "vbar": 6}

    @staticmethod
    def zero() -> "VertexLabel":
        return VertexLabel("zero")

    @staticmethod
    def theta() -> "VertexLabel":
        return VertexLabel("theta")

    @staticmethod
    def w() -> "VertexLabel":
        return VertexLabel("w")

    @staticmethod
    def u(k: int) -> "VertexLabel":
        if k < 3:
            raise ValueError("u(k) needs k >= 3")
        return VertexLabel("u", k=k)

    @staticmethod
    def v(j: int, k: int) -> "VertexLabel":
        if not 1 <= j < k:
            raise ValueError("v(j,k) needs 1 <= j < k")
        return VertexLabel("v", j=j, k=k)

    @staticmethod
    def ubar(k: int) -> "VertexLabel":
        if k < 2:
            raise ValueError("ubar(k) needs k >= 2")
        return VertexLabel("ubar", k=k)

    @staticmethod
    def vbar(j: int, k: int) -> "VertexLabel":
        if not 1 <= j < k - 1:
            raise ValueError("vbar(j,k) needs 1 <= j < k-1")
        return VertexLabel("vbar", j=j, k=k)

    def sort_key(self) -> tuple[int, int, int]:
        return (self._RANK[self.kind], self.k, self.j)

    def __lt__(self, other: "VertexLabel") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.kind == "zero":
            return "0"
        if self.kind in ("theta", "w"):
            return self.kind
        if self.kind in ("u", "ubar"):
            return f"{self.kind}({self.k})"
        return f"{self.kind}({self.j},{self.k})"

    def __repr__(self) -> str:
        return f"<{self}>"


@dataclass(frozen=True)
class FacetId:
    """Identity of a facet: a coordinate plane, the grading plane, or the
    nontrivial facet named after the unique theta-neighbor it misses."""

    kind: str  # "coord" | "grading" | "nontrivial"
    i: int = 0
    label: Optional[VertexLabel] = None

    @staticmethod
    def coord(i: int) -> "FacetId":
        return FacetId("coord", i=i)

    @staticmethod
    def grading() -> "FacetId":
        return FacetId("grading")

    @staticmethod
    def nontrivial(label: VertexLabel) -> "FacetId":
        return FacetId("nontrivial", label=label)

    def __str__(self) -> str:
        if self.kind == "coord":
            return f"coord({self.i})"
        if self.kind == "grading":
            return "grading"
        return f"missing[{self.label}]"

    def __repr__(self) -> str:
        return f"<{self}>"


class HRep:
    """Inequality system A·x <= beta with primitive integer normals.

    Rows are stored as (normal tuple, rhs Fraction); construction rescales
    each row by a positive rational so the normal is integral with gcd 1.
    ``ids`` optionally names each facet.
    """

    __slots__ = ("normals", "rhs", "ids", "dim")

    def __init__(
        self,
        rows: Iterable[tuple[Sequence, object]],
        ids: Optional[Sequence[FacetId]] = None,
    ):
        normals: list[tuple[int, ...]] = []
        rhs: list[Fraction] = []
        for normal, beta in rows:
            nf = [Fraction(a) for a in normal]
            if all(a == 0 for a in nf):
                raise ValueError("zero facet normal")
            prim = primitive_row(nf)
            # factor is positive because primitive_row only rescales
            factor = next(Fraction(p) / a for p, a in zip(prim, nf) if a != 0)
            normals.append(prim)
            rhs.append(Fraction(beta) * factor)
        self.normals = tuple(normals)
        self.rhs = tuple(rhs)
        if not normals:
            raise ValueError("empty system")
        self.dim = len(normals[0])
        if any(len(n) != self.dim for n in normals):
            raise ValueError("ragged normals")
        self.ids = tuple(ids) if ids is not None else None
        if self.ids is not None and len(self.ids) != len(self.normals):
            raise ValueError("ids length mismatch")

    def __len__(self) -> int:
        return len(self.normals)

    def rows(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return list(zip(self.normals, self.rhs))

    def contains(self, point: Sequence) -> bool:
        p = [Fraction(x) for x in point]
        return all(
            sum(a * x for a, x in zip(n, p)) <= b
            for n, b in zip(self.normals, self.rhs)
        )

    def slacks(self, point: Sequence) -> tuple[Fraction, ...]:
        p = [Fraction(x) for x in point]
        return tuple(
            b - sum(a * x for a, x in zip(n, p))
            for n, b in zip(self.normals, self.rhs)
        )

    def canonical_rows(self) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
        return tuple(sorted(zip(self.normals, self.rhs)))

    def same_polytope_rows(self, other: "HRep") -> bool:
        """Equality of the two systems up to row order (rows are canonical)."""
        return self.canonical_rows() == other.canonical_rows()

    def without_row(self, index: int) -> "HRep":
        rows = [r for i, r in enumerate(self.rows()) if i != index]
        ids = None
        if self.ids is not None:
            ids = [f for i, f in enumerate(self.ids) if i != index]
        return HRep(rows, ids)

    def __repr__(self) -> str:
        return f"HRep({len(self.normals)} rows, dim {self.dim})"


class VRep:
    """Ordered list of labeled integer vertices."""

    __slots__ = ("entries", "_by_label")

    def __init__(self, entries: Iterable[tuple[object, Sequence[int]]]):
        ordered = [(label, tuple(int(c) for c in coords)) for label, coords in entries]
        labels = [label for label, _ in ordered]
        coords = [c for _, c in ordered]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate labels")
        if len(set(coords)) != len(coords):
            raise ValueError("duplicate coordinates")
        self.entries = ordered
        self._by_label = dict(ordered)

    def labels(self) -> list:
        return [label for label, _ in self.entries]

    def coords(self, label) -> tuple[int, ...]:
        try:
            return self._by_label[label]
        except KeyError:
            raise UnknownLabel(label) from None

    def coordinate_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(c for _, c in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self) -> str:
        return f"VRep({len(self.entries)} vertices)"


@dataclass
class IncidenceMatrix:
    """Vertex x facet tightness bits, the combinatorial-type carrier.

    vertex_masks[i] has bit f set iff vertex i is tight on facet column f;
    facet_masks[f] is the transpose view.
    """

    labels: list
    facet_ids: list
    vertex_masks: list[int]
    facet_masks: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.facet_masks:
            self.facet_masks = [
                sum(
                    1 << i
                    for i, vm in enumerate(self.vertex_masks)
                    if vm >> f & 1
                )
                for f in range(len(self.facet_ids))
            ]

    def tight_facets(self, label) -> list:
        i = self.labels.index(label)
        vm = self.vertex_masks[i]
        return [fid for f, fid in enumerate(self.facet_ids) if vm >> f & 1]

    def facet_vertex_counts(self) -> list[int]:
        return [fm.bit_count() for fm in self.facet_masks]

    def same_bits(self, other: "IncidenceMatrix") -> bool:
        """Bit-for-bit equality under canonical (label, facet-id) alignment."""
        if sorted(map(str, self.labels)) != sorted(map(str, other.labels)):
            return False
        if sorted(map(str, self.facet_ids)) != sorted(map(str, other.facet_ids)):
            return False
        def canon(inc):
            vorder = sorted(range(len(inc.labels)), key=lambda i: str(inc.labels[i]))
            forder = sorted(range(len(inc.facet_ids)), key=lambda f: str(inc.facet_ids[f]))
            return [
                tuple(inc.vertex_masks[i] >> f & 1 for f in forder) for i in vorder
            ]
        return canon(self) == canon(other)


def incidence(h: HRep, v: VRep) -> IncidenceMatrix:
    """Numeric vertex-facet incidence from exact slack vectors.

    Raises InfeasibleVertex if any vertex violates any row, and asserts the
    vertex certificate (>= d tight rows of rank d) for every vertex.
    """
    labels = v.labels()
    masks = []
    d = h.dim
    for label, coords in v:
        slacks = h.slacks(coords)
        if any(s < 0 for s in slacks):
            raise InfeasibleVertex(f"{label} violates a facet row")
        mask = sum(1 << f for f, s in enumerate(slacks) if s == 0)
        tight_normals = [h.normals[f] for f in range(len(h)) if mask >> f & 1]
        if mask.bit_count() < d or rank_of_rows(tight_normals) < d:
            raise InfeasibleVertex(f"{label} lacks a rank-{d} tight system")
        masks.append(mask)
    ids = list(h.ids) if h.ids is not None else list(range(len(h)))
    return IncidenceMatrix(labels, ids, masks)


def adjacency_from_incidence(h: HRep, inc: IncidenceMatrix) -> list[tuple]:
    """Vertex adjacency: common tight rows of rank d-1 and no third vertex
    tight on all of them. Returns unordered label pairs, deterministic order."""
    n = len(inc.labels)
    d = h.dim
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            common = inc.vertex_masks[i] & inc.vertex_masks[j]
            if common.bit_count() < d - 1:
                continue
            rows = [h.normals[f] for f in range(len(h)) if common >> f & 1]
            if rank_of_rows(rows) != d - 1:
                continue
            if any(
                t != i and t != j and inc.vertex_masks[t] & common == common
                for t in range(n)
            ):
                continue
            edges.append((inc.labels[i], inc.labels[j]))
    return edges


@dataclass
class TangentCone:
    """Vertex cone: apex plus edge-direction generators and tight rows."""

    apex: tuple[int, ...]
    generators: list[tuple[int, ...]]
    tight_rows: list[tuple[tuple[int, ...], Fraction]]

    def hrep(self) -> HRep:
        """The cone as inequalities; the apex is tight on every row."""
        return HRep([(n, sum(a * x for a, x in zip(n, self.apex))) for n, _ in self.tight_rows])


def tangent_cone(h: HRep, v: VRep, label) -> TangentCone:
    """Cone of the polytope at one vertex.

    Args:
        h: facet system of the polytope.
        v: its labeled vertex list.
        label: which vertex; UnknownLabel if absent.

    Returns:
        TangentCone with generators (neighbor - vertex) for every neighbor in
        the polytope graph, and the tight inequality rows at the vertex.
    """
    apex = v.coords(label)
    inc = incidence(h, v)
    i = inc.labels.index(label)
    vm = inc.vertex_masks[i]
    tight = [(h.normals[f], h.rhs[f]) for f in range(len(h)) if vm >> f & 1]
    generators = []
    for a, b in adjacency_from_incidence(h, inc):
        other = None
        if a == label:
            other = b
        elif b == label:
            other = a
        if other is not None:
            nb = v.coords(other)
            generators.append(tuple(x - y for x, y in zip(nb, apex)))
    if not generators:
        raise ValueError("vertex has no neighbors")
    return TangentCone(apex, generators, tight)


def cone_cover_test(h: HRep, v: VRep, s: Iterable) -> bool:
    """Coverage criterion: the polytope equals the intersection of its vertex
    cones at S iff every facet contains some vertex of S."""
    members = list(s)
    if not members:
        raise EmptySet("need at least one vertex label")
    inc = incidence(h, v)
    idx = []
    for label in members:
        if label not in inc.labels:
            raise UnknownLabel(label)
        idx.append(inc.labels.index(label))
    s_mask = sum(1 << i for i in idx)
    return all(fm & s_mask for fm in inc.facet_masks)


def dantzig_hrep(cone_u: TangentCone, cone_v: TangentCone) -> HRep:
    """Minimal H-representation of a Dantzig figure from its two vertex cones.

    Each cone must be simplicial: exactly d generators forming an invertible
    matrix G. The cone at apex p is {x : -G^-1 x <= -G^-1 p}; stacking both
    gives the 2d facet rows.
    """
    rows: list[tuple[list[Fraction], Fraction]] = []
    for cone in (cone_u, cone_v):
        d = len(cone.apex)
        if len(cone.generators) != d:
            raise NonSimplicialCone(f"{len(cone.generators)} generators, need {d}")
        gmat = Matrix(zip(*cone.generators))  # generators as columns
        try:
            ginv = invert(gmat)
        except SingularError as exc:
            raise NonSimplicialCone("generator matrix singular") from exc
        for r in range(d):
            normal = [-ginv[r, c] for c in range(d)]
            beta = sum(n * x for n, x in zip(normal, cone.apex))
            rows.append((normal, beta))
    return HRep(rows)


def list_antipodal_pairs(h: HRep, v: VRep) -> list[tuple]:
    """All unordered vertex pairs whose incidences partition the facet set
    (every facet contains exactly one of the two)."""
    inc = incidence(h, v)
    full = (1 << len(inc.facet_ids)) - 1
    pairs = []
    n = len(inc.labels)
    for i in range(n):
        for j in range(i + 1, n):
            mi, mj = inc.vertex_masks[i], inc.vertex_masks[j]
            if mi & mj == 0 and mi | mj == full:
                pairs.append((inc.labels[i], inc.labels[j]))
    return pairs


def facet_spans_ridge(h: HRep, v: VRep, facet_index: int) -> bool:
    """Facet certificate: the facet's incident vertices affinely span a
    (d-1)-dimensional set."""
    inc = incidence(h, v)
    on_facet = [
        coords
        for (label, coords), vm in zip(v, inc.vertex_masks)
        if vm >> facet_index & 1
    ]
    if len(on_facet) < h.dim:
        return False
    base = on_facet[0]
    diffs = [tuple(x - y for x, y in zip(p, base)) for p in on_facet[1:]]
    return rank_of_rows(diffs) == h.dim - 1
