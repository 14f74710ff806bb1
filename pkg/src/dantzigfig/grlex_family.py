"""Closed-form construction of the graded-lex initial-segment polytope P.

Everything is derived from the bound vector theta: vertices, the facet
matrix M (columns are edge directions at theta), its inverse N by an exact
recursion, the 2d-row inequality system, symbolic vertex-facet incidence,
the graph edge list, a Hamiltonian cycle, a proper d-coloring, and the
expansion witness set. Each closed form is asserted against the generic
numeric machinery at construction time, so a constructed instance is a
verified one.

When theta_k = 1 for some k >= 3 the points u(k) and v(k-1,k) coincide; the
vertex keeps the v(k-1,k) label and the graph is the edge-contracted minor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod

from . import polytope_graph as pg
from .exactmath import Matrix
from .polytope_core import (
    FacetId,
    HRep,
    IncidenceMatrix,
    VRep,
    VertexLabel,
    adjacency_from_incidence,
    incidence,
)


class UnsupportedDimension(ValueError):
    """Constructors require dimension >= 3."""


class InvalidTheta(ValueError):
    """theta must be a vector of positive integers."""


class RequiresStrictTheta(ValueError):
    """Operation is only defined when every theta_i >= 2."""


@dataclass(frozen=True)
class GrlexInstance:
    """A bound vector theta >= 1 with d >= 3, plus derived quantities."""

    theta: tuple[int, ...]

    def __post_init__(self):
        if len(self.theta) < 3:
            raise UnsupportedDimension(f"d = {len(self.theta)} < 3")
        if any(not isinstance(t, int) or t < 1 for t in self.theta):
            raise InvalidTheta(f"theta entries must be integers >= 1: {self.theta}")

    @property
    def d(self) -> int:
        return len(self.theta)

    @property
    def b(self) -> int:
        return sum(self.theta)

    @property
    def btilde(self) -> tuple[int, ...]:
        out, acc = [], 0
        for t in self.theta:
            acc += t
            out.append(acc)
        return tuple(out)

    @property
    def strict(self) -> bool:
        return all(t >= 2 for t in self.theta)

    @property
    def merged_ks(self) -> tuple[int, ...]:
        """Indices k >= 3 whose u(k) coincides with v(k-1,k)."""
        return tuple(k for k in range(3, self.d + 1) if self.theta[k - 1] == 1)

    def bt(self, k: int) -> int:
        """btilde_k with 1-based k; bt(0) = 0."""
        return self.btilde[k - 1] if k >= 1 else 0


def make_grlex(theta) -> GrlexInstance:
    return GrlexInstance(tuple(int(t) for t in theta))


def u_label(inst: GrlexInstance, k: int) -> VertexLabel:
    """Canonical label of the point u(k): v(k-1,k) when theta_k = 1."""
    if inst.theta[k - 1] == 1:
        return VertexLabel.v(k - 1, k)
    return VertexLabel.u(k)


def _u_coords(inst: GrlexInstance, k: int) -> tuple[int, ...]:
    d, th = inst.d, inst.theta
    x = [0] * d
    x[k - 2] = inst.bt(k - 1) + 1
    x[k - 1] = th[k - 1] - 1
    for i in range(k + 1, d + 1):
        x[i - 1] = th[i - 1]
    return tuple(x)


def _v_coords(inst: GrlexInstance, j: int, k: int) -> tuple[int, ...]:
    d, th = inst.d, inst.theta
    x = [0] * d
    x[j - 1] = inst.bt(k)
    for i in range(k + 1, d + 1):
        x[i - 1] = th[i - 1]
    return tuple(x)


@lru_cache(maxsize=None)
def grlex_vertices(inst: GrlexInstance) -> VRep:
    """Labeled vertex list of P, with theta_k = 1 merges deduplicated."""
    d, th = inst.d, inst.theta
    entries: list[tuple[VertexLabel, tuple[int, ...]]] = [
        (VertexLabel.zero(), (0,) * d),
        (VertexLabel.theta(), th),
        (VertexLabel.w(), (0,) * (d - 1) + (inst.b - 1,)),
    ]
    merged = set(inst.merged_ks)
    for k in range(3, d + 1):
        if k not in merged:
            entries.append((VertexLabel.u(k), _u_coords(inst, k)))
    for k in range(2, d + 1):
        for j in range(1, k):
            entries.append((VertexLabel.v(j, k), _v_coords(inst, j, k)))
    vrep = VRep(entries)
    expected = (d * d + d + 2) // 2 - len(merged)
    assert len(vrep) == expected, "vertex count mismatch"
    for k in merged:
        assert _u_coords(inst, k) == _v_coords(inst, k - 1, k)
    return vrep


@lru_cache(maxsize=None)
def grlex_facet_matrix(inst: GrlexInstance) -> Matrix:
    """M = [v(1,2)-theta, u(3)-theta, ..., u(d)-theta, w-theta], by columns."""
    d, th = inst.d, inst.theta
    cols = [_v_coords(inst, 1, 2)]
    cols += [_u_coords(inst, k) for k in range(3, d + 1)]
    cols.append((0,) * (d - 1) + (inst.b - 1,))
    cols = [tuple(c - t for c, t in zip(col, th)) for col in cols]
    return Matrix(zip(*cols))


def _p(inst: GrlexInstance, i: int, j: int) -> int:
    # p(i,j) = btilde_i * prod_{k=i+1..j} (btilde_k + 1) for j >= i, else 1
    if j < i:
        return 1
    return inst.bt(i) * prod(inst.bt(k) + 1 for k in range(i + 1, j + 1))


@lru_cache(maxsize=None)
def grlex_facet_matrix_inverse(inst: GrlexInstance) -> Matrix:
    """N = M^-1 by closed-form recursion; N·M = I is asserted."""
    d = inst.d
    th2 = inst.theta[1]
    n = [[Fraction(0)] * (d + 1) for _ in range(d + 1)]  # 1-based
    for j in range(1, d + 1):
        n[d][j] = Fraction(-1)
    if d >= 2:
        n[1][d] = Fraction(-_p(inst, 1, d - 1), th2)
        for i in range(2, d):
            n[i][d] = Fraction(-_p(inst, i, d - 1))
    for j in range(d - 1, 0, -1):
        n[1][j] = n[1][j + 1] + Fraction(_p(inst, 1, j - 1), th2)
        for i in range(2, d):
            n[i][j] = n[i][j + 1] + (_p(inst, i, j - 1) if j >= i else 0)
    result = Matrix([row[1:] for row in n[1:]])
    _assert_inverse(result, grlex_facet_matrix(inst), inst.d)
    return result


def _assert_inverse(n: Matrix, m: Matrix, d: int) -> None:
    if d <= 12:
        assert n * m == Matrix.identity(d), "closed-form inverse mismatch"
    else:
        # entries grow multiplicatively; sample three full rows above d=12
        ident = Matrix.identity(d)
        for r in (0, 1, d - 1):
            got = Matrix([n.row(r)]) * m
            assert got.row(0) == ident.row(r), "closed-form inverse mismatch"


def _facet_ids(inst: GrlexInstance) -> list[FacetId]:
    ids = [FacetId.coord(i) for i in range(1, inst.d + 1)]
    ids.append(FacetId.nontrivial(VertexLabel.v(1, 2)))
    for r in range(2, inst.d):
        ids.append(FacetId.nontrivial(u_label(inst, r + 1)))
    ids.append(FacetId.grading())
    return ids


@lru_cache(maxsize=None)
def grlex_hrep(inst: GrlexInstance) -> HRep:
    """The 2d facet rows: x_i >= 0 and the d rows of -N x <= -N theta.

    The last nontrivial row is the grading inequality sum(x) <= b exactly.
    """
    d = inst.d
    n = grlex_facet_matrix_inverse(inst)
    rows: list[tuple[list, object]] = []
    for i in range(d):
        normal = [0] * d
        normal[i] = -1
        rows.append((normal, 0))
    for r in range(d):
        normal = [-n[r, c] for c in range(d)]
        beta = sum(a * t for a, t in zip(normal, inst.theta))
        rows.append((normal, beta))
    h = HRep(rows, _facet_ids(inst))
    grading_normal, grading_rhs = h.normals[-1], h.rhs[-1]
    assert grading_normal == (1,) * d and grading_rhs == inst.b
    return h


def _symbolic_psi(inst: GrlexInstance) -> dict[VertexLabel, frozenset[int]]:
    """Facet-index sets per vertex; indices 0..d-1 are coordinate planes,
    d..2d-1 are the nontrivial rows in N-row order."""
    d = inst.d
    merged = set(inst.merged_ks)
    coord = lambda i: i - 1
    row = lambda r: d + r - 1
    psi: dict[VertexLabel, frozenset[int]] = {
        VertexLabel.zero(): frozenset(coord(i) for i in range(1, d + 1)),
        VertexLabel.theta(): frozenset(row(r) for r in range(1, d + 1)),
        VertexLabel.w(): frozenset(row(r) for r in range(1, d))
        | frozenset(coord(i) for i in range(1, d)),
    }
    for k in range(3, d + 1):
        if k not in merged:
            psi[VertexLabel.u(k)] = frozenset(
                row(r) for r in range(1, d + 1) if r != k - 1
            ) | frozenset(coord(i) for i in range(1, k - 1))
    for k in range(2, d + 1):
        for j in range(1, k):
            if j == k - 1 and k in merged:
                # merged vertex keeps the u-type tight set plus its own plane
                psi[VertexLabel.v(j, k)] = (
                    frozenset(row(r) for r in range(1, d + 1) if r != k - 1)
                    | frozenset(coord(i) for i in range(1, k - 1))
                    | {coord(k)}
                )
            else:
                psi[VertexLabel.v(j, k)] = frozenset(
                    row(r) for r in range(k, d + 1)
                ) | frozenset(coord(i) for i in range(1, k + 1) if i != j)
    return psi


@lru_cache(maxsize=None)
def grlex_incidence(inst: GrlexInstance) -> IncidenceMatrix:
    """Symbolic incidence from the closed formulas, asserted against the
    numeric slack computation bit for bit."""
    v = grlex_vertices(inst)
    h = grlex_hrep(inst)
    psi = _symbolic_psi(inst)
    masks = [sum(1 << f for f in psi[label]) for label in v.labels()]
    symbolic = IncidenceMatrix(v.labels(), list(h.ids), masks)
    numeric = incidence(h, v)
    assert symbolic.vertex_masks == numeric.vertex_masks, "incidence formula mismatch"
    return symbolic


def _strict_edge_pairs(inst: GrlexInstance) -> set[frozenset[VertexLabel]]:
    d = inst.d
    zero, theta, w = VertexLabel.zero(), VertexLabel.theta(), VertexLabel.w()
    U, V = VertexLabel.u, VertexLabel.v
    edges: set[frozenset[VertexLabel]] = set()
    add = lambda a, b: edges.add(frozenset((a, b)))
    # neighbors of theta and of 0
    add(theta, w)
    add(theta, V(1, 2))
    for k in range(3, d + 1):
        add(theta, U(k))
    add(zero, w)
    for j in range(1, d):
        add(zero, V(j, d))
    # w's neighborhood: everything except the last column, with v(2,3)
    # present only for d >= 4
    if d >= 4:
        add(w, V(2, 3))
    for k in range(2, d):
        for j in range(1, k):
            if (j, k) != (2, 3):
                add(w, V(j, k))
    for k in range(3, d + 1):
        add(w, U(k))
    # u-clique and u-v edges
    for k1 in range(3, d + 1):
        for k2 in range(k1 + 1, d + 1):
            add(U(k1), U(k2))
    for k in range(3, d + 1):
        add(V(k - 1, k), U(k))
    for k2 in range(4, d + 1):
        for k1 in range(2, k2 - 1):
            for j in range(1, k1):
                add(V(j, k1), U(k2))
    # column cliques and same-row chains
    for k in range(2, d + 1):
        for j1 in range(1, k):
            for j2 in range(j1 + 1, k):
                add(V(j1, k), V(j2, k))
    for j in range(1, d):
        for k in range(j + 1, d):
            add(V(j, k), V(j, k + 1))
    return edges


@lru_cache(maxsize=None)
def grlex_edges(inst: GrlexInstance) -> tuple[tuple[VertexLabel, VertexLabel], ...]:
    """Closed-form edge list (contracted minor when theta has ones),
    asserted equal to incidence-derived adjacency."""
    relabel = {VertexLabel.u(k): VertexLabel.v(k - 1, k) for k in inst.merged_ks}
    pairs = set()
    for edge in _strict_edge_pairs(inst):
        a, b = tuple(edge)
        a, b = relabel.get(a, a), relabel.get(b, b)
        if a != b:
            pairs.add(frozenset((a, b)))
    closed = sorted(tuple(sorted(p, key=VertexLabel.sort_key)) for p in pairs)
    derived = adjacency_from_incidence(grlex_hrep(inst), grlex_incidence(inst))
    derived = sorted(tuple(sorted(p, key=VertexLabel.sort_key)) for p in derived)
    assert closed == derived, "edge list disagrees with incidence adjacency"
    return tuple(closed)


def grlex_graph(inst: GrlexInstance) -> pg.PolytopeGraph:
    return pg.PolytopeGraph.from_edges(
        grlex_vertices(inst).labels(), grlex_edges(inst)
    )


@lru_cache(maxsize=None)
def grlex_hamiltonian_cycle(inst: GrlexInstance) -> tuple[VertexLabel, ...]:
    """Hamiltonian cycle: 0, last column ascending, u-run descending, theta,
    v(1,2), then columns 3..d-1 (entering at the previous column's exit row),
    and w. Machine-verified; falls back to search if the recipe ever failed.
    """
    d = inst.d
    merged = set(inst.merged_ks)
    V = VertexLabel.v
    cycle: list[VertexLabel] = [VertexLabel.zero()]
    cycle += [V(j, d) for j in range(1, d)]
    u_run = [u_label(inst, k) for k in range(d, 2, -1)]
    if u_run and u_run[0] == cycle[-1]:  # theta_d = 1 merges into v(d-1,d)
        u_run = u_run[1:]
    cycle += u_run
    cycle.append(VertexLabel.theta())
    cycle.append(V(1, 2))
    entry = 1
    for k in range(3, d):
        col = [j for j in range(1, k) if not (j == k - 1 and k in merged)]
        rest = [j for j in col if j != entry]
        if not rest:
            cycle.append(V(entry, k))
            continue
        exit_j = k - 1 if k - 1 in rest else max(rest)
        middle = sorted((j for j in rest if j != exit_j), reverse=True)
        cycle += [V(entry, k)] + [V(j, k) for j in middle] + [V(exit_j, k)]
        entry = exit_j
    cycle.append(VertexLabel.w())
    graph = grlex_graph(inst)
    if not pg.verify_hamiltonian(graph, cycle):
        found = pg.find_hamiltonian_cycle(graph)
        assert found is not None, "polytope graph unexpectedly non-Hamiltonian"
        return tuple(found)
    return tuple(cycle)


def grlex_coloring(inst: GrlexInstance) -> dict[VertexLabel, int]:
    """A proper d-coloring of the polytope graph, for strict theta.

    The labels theta, w, u(3)..u(d) form a d-clique, as does the last column
    with 0, so d colors are necessary; the scheme below attains them:

      d = 3:  0->2, theta->1, w->3, u(3)->2, v(1,2)->2, v(1,3)->1, v(2,3)->3
      d >= 4: 0->1, theta->1, w->d, u(k)->k-1,
              columns k <= d-1: v(1,k)->k, v(j,k)->k-j for j >= 2,
              column d: v(1,d)->d, v(j,d)->d+1-j for j >= 2.

    Properness is verified against the edge list before returning.
    """
    if not inst.strict:
        raise RequiresStrictTheta("coloring formula needs every theta_i >= 2")
    d = inst.d
    if d == 3:
        coloring = {
            VertexLabel.zero(): 2,
            VertexLabel.theta(): 1,
            VertexLabel.w(): 3,
            VertexLabel.u(3): 2,
            VertexLabel.v(1, 2): 2,
            VertexLabel.v(1, 3): 1,
            VertexLabel.v(2, 3): 3,
        }
    else:
        coloring = {
            VertexLabel.zero(): 1,
            VertexLabel.theta(): 1,
            VertexLabel.w(): d,
        }
        for k in range(3, d + 1):
            coloring[VertexLabel.u(k)] = k - 1
        for k in range(2, d):
            coloring[VertexLabel.v(1, k)] = k
            for j in range(2, k):
                coloring[VertexLabel.v(j, k)] = k - j
        coloring[VertexLabel.v(1, d)] = d
        for j in range(2, d):
            coloring[VertexLabel.v(j, d)] = d + 1 - j
    proper, used = pg.verify_coloring(grlex_graph(inst), coloring)
    assert proper and used == d, "coloring scheme failed verification"
    return coloring


def grlex_coloring_relaxed(inst: GrlexInstance) -> tuple[dict[VertexLabel, int], int]:
    """Verified coloring for any theta >= 1 (merged minors included).

    Seeds the strict scheme restricted to surviving labels (a merged vertex
    first tries its absorbed u(k) color), re-verifies on the minor, and
    falls back to a bounded backtracking search. Returns (coloring, colors
    used); properness is always verified, chromatic minimality is only
    guaranteed when the search succeeds with d colors (a d-clique survives
    contraction, so fewer is impossible).
    """
    strict_twin = GrlexInstance(tuple(max(t, 2) for t in inst.theta))
    base = grlex_coloring(strict_twin)
    graph = grlex_graph(inst)
    seed = {label: base[label] for label in graph.labels}
    for variant in (None, *inst.merged_ks):
        if variant is not None:
            # merged v(k-1,k) absorbed u(k); try inheriting its color
            seed[VertexLabel.v(variant - 1, variant)] = base[VertexLabel.u(variant)]
        proper, used = pg.verify_coloring(graph, seed)
        if proper:
            return seed, used
    d = inst.d
    found = pg.proper_coloring_search(graph, d)
    if found is None:
        found = pg.greedy_coloring(graph)
    proper, used = pg.verify_coloring(graph, found)
    assert proper
    return found, used


def grlex_expansion_witness(
    inst: GrlexInstance,
) -> tuple[frozenset[VertexLabel], int]:
    """The ratio-1 cut witness: S = last column plus 0, with |bd(S)| = d."""
    if not inst.strict:
        raise RequiresStrictTheta("witness set needs every theta_i >= 2")
    d = inst.d
    s = frozenset({VertexLabel.zero()} | {VertexLabel.v(j, d) for j in range(1, d)})
    boundary = [
        e for e in grlex_edges(inst) if (e[0] in s) != (e[1] in s)
    ]
    assert len(boundary) == len(s) == d, "witness ratio is not 1"
    return s, len(boundary)
