"""Closed-form construction of the graded-reverse-lex polytope Q.

Mirrors the grlex module: vertices ubar(2..d+1) and vbar(j,k), the facet
matrix Mbar with inverse Nbar by recursion, the 2d-row system, symbolic
incidence, edges, a serpentine Hamiltonian cycle, a residue d-coloring,
and the antipodal-pair census. Unlike P there are no vertex merges — the
count is (d^2+d+2)/2 for every theta >= 1.
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
    list_antipodal_pairs,
)


class UnsupportedDimension(ValueError):
    """Constructors require dimension >= 3."""


class InvalidTheta(ValueError):
    """theta must be a vector of positive integers."""


class ImproperColoring(AssertionError):
    """Raised if the residue coloring ever failed verification."""


@dataclass(frozen=True)
class GrevlexInstance:
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

    def bt(self, k: int) -> int:
        """btilde_k with 1-based k; bt(0) = 0."""
        return self.btilde[k - 1] if k >= 1 else 0


def make_grevlex(theta) -> GrevlexInstance:
    return GrevlexInstance(tuple(int(t) for t in theta))


def _ubar_coords(inst: GrevlexInstance, k: int) -> tuple[int, ...]:
    # ubar(2) = theta, ubar(d+1) = b*e_d
    d, th = inst.d, inst.theta
    x = [0] * d
    x[k - 2] = inst.bt(k - 1)
    for i in range(k, d + 1):
        x[i - 1] = th[i - 1]
    return tuple(x)


def _vbar_coords(inst: GrevlexInstance, j: int, k: int) -> tuple[int, ...]:
    d, th = inst.d, inst.theta
    x = [0] * d
    x[j - 1] = inst.bt(k - 1) - 1
    if k <= d:
        x[k - 1] = th[k - 1] + 1
        for i in range(k + 1, d + 1):
            x[i - 1] = th[i - 1]
    return tuple(x)


def _vbar_range(d: int):
    """All (j, k) with 1 <= j <= k-2, 3 <= k <= d+1."""
    for k in range(3, d + 2):
        for j in range(1, k - 1):
            yield j, k


@lru_cache(maxsize=None)
def grevlex_vertices(inst: GrevlexInstance) -> VRep:
    """Labeled vertex list of Q; always (d^2+d+2)/2 vertices."""
    d = inst.d
    entries: list[tuple[VertexLabel, tuple[int, ...]]] = [
        (VertexLabel.zero(), (0,) * d)
    ]
    for k in range(2, d + 2):
        entries.append((VertexLabel.ubar(k), _ubar_coords(inst, k)))
    for j, k in _vbar_range(d):
        entries.append((VertexLabel.vbar(j, k), _vbar_coords(inst, j, k)))
    vrep = VRep(entries)
    assert len(vrep) == (d * d + d + 2) // 2, "vertex count mismatch"
    return vrep


@lru_cache(maxsize=None)
def grevlex_facet_matrix(inst: GrevlexInstance) -> Matrix:
    """Mbar = [ubar(3)-theta, vbar(1,3)-theta, ..., vbar(1,d+1)-theta]."""
    d, th = inst.d, inst.theta
    cols = [_ubar_coords(inst, 3)]
    cols += [_vbar_coords(inst, 1, k) for k in range(3, d + 2)]
    cols = [tuple(c - t for c, t in zip(col, th)) for col in cols]
    return Matrix(zip(*cols))


def _q(inst: GrevlexInstance, i: int, j: int) -> int:
    # q(i,j) = theta_i * theta_j * prod_{k=i+1..j-1} (theta_k + 1), j > i
    th = inst.theta
    if j < i:
        return 1
    if j == i:
        return th[i - 1]
    return th[i - 1] * th[j - 1] * prod(th[k - 1] + 1 for k in range(i + 1, j))


@lru_cache(maxsize=None)
def grevlex_facet_matrix_inverse(inst: GrevlexInstance) -> Matrix:
    """Nbar = Mbar^-1 by closed-form recursion; Nbar·Mbar = I is asserted."""
    d, th = inst.d, inst.theta
    th1 = th[0]
    n = [[Fraction(0)] * (d + 1) for _ in range(d + 1)]  # 1-based
    n[d][d] = Fraction(-1)
    n[d - 1][d] = Fraction(-(th[d - 1] - 1))
    for i in range(2, d - 1):
        n[i][d] = Fraction(-_q(inst, i + 1, d))
    if d >= 2:
        n[1][d] = Fraction(-_q(inst, 2, d), th1)
    for j in range(d - 1, 0, -1):
        for i in range(1, d + 1):
            if i == 1:
                if j == 1:
                    inc = Fraction(-1, th1)
                elif j == 2:
                    inc = Fraction(-(th[1] - 1), th1)
                else:
                    inc = Fraction(-_q(inst, 2, j), th1)
            elif j < i:
                inc = Fraction(0)
            elif j == i:
                inc = Fraction(-1)
            elif j == i + 1:
                inc = Fraction(-(th[i] - 1))
            else:
                inc = Fraction(-_q(inst, i + 1, j))
            n[i][j] = n[i][j + 1] + inc
    result = Matrix([row[1:] for row in n[1:]])
    _assert_inverse(result, grevlex_facet_matrix(inst), d)
    return result


def _assert_inverse(n: Matrix, m: Matrix, d: int) -> None:
    if d <= 12:
        assert n * m == Matrix.identity(d), "closed-form inverse mismatch"
    else:
        ident = Matrix.identity(d)
        for r in (0, 1, d - 1):
            got = Matrix([n.row(r)]) * m
            assert got.row(0) == ident.row(r), "closed-form inverse mismatch"


def _facet_ids(inst: GrevlexInstance) -> list[FacetId]:
    ids = [FacetId.coord(i) for i in range(1, inst.d + 1)]
    ids.append(FacetId.nontrivial(VertexLabel.ubar(3)))
    for r in range(2, inst.d):
        ids.append(FacetId.nontrivial(VertexLabel.vbar(1, r + 1)))
    ids.append(FacetId.grading())
    return ids


@lru_cache(maxsize=None)
def grevlex_hrep(inst: GrevlexInstance) -> HRep:
    """The 2d facet rows: x_i >= 0 and the d rows of -Nbar x <= -Nbar theta.

    Row r of -Nbar has entries a_1 = ... = a_{r} > a_{r+1} >= ... >= a_d >= 0
    after clearing denominators; the last row is sum(x) <= b exactly.
    """
    d = inst.d
    n = grevlex_facet_matrix_inverse(inst)
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


def _symbolic_psi(inst: GrevlexInstance) -> dict[VertexLabel, frozenset[int]]:
    """Facet-index sets per vertex; indices 0..d-1 are coordinate planes,
    d..2d-1 are the nontrivial rows in Nbar-row order."""
    d = inst.d
    coord = lambda i: i - 1
    row = lambda r: d + r - 1
    psi: dict[VertexLabel, frozenset[int]] = {
        VertexLabel.zero(): frozenset(coord(i) for i in range(1, d + 1)),
        VertexLabel.ubar(2): frozenset(row(r) for r in range(1, d + 1)),
    }
    for k in range(3, d + 2):
        psi[VertexLabel.ubar(k)] = frozenset(
            row(r) for r in range(k - 1, d + 1)
        ) | frozenset(coord(i) for i in range(1, k - 1))
    for j, k in _vbar_range(d):
        psi[VertexLabel.vbar(j, k)] = frozenset(
            row(r) for r in range(j, d + 1) if r != k - 1
        ) | frozenset(coord(i) for i in range(1, k) if i != j)
    return psi


@lru_cache(maxsize=None)
def grevlex_incidence(inst: GrevlexInstance) -> IncidenceMatrix:
    """Symbolic incidence from the closed formulas, asserted against the
    numeric slack computation bit for bit."""
    v = grevlex_vertices(inst)
    h = grevlex_hrep(inst)
    psi = _symbolic_psi(inst)
    masks = [sum(1 << f for f in psi[label]) for label in v.labels()]
    symbolic = IncidenceMatrix(v.labels(), list(h.ids), masks)
    numeric = incidence(h, v)
    assert symbolic.vertex_masks == numeric.vertex_masks, "incidence formula mismatch"
    return symbolic


@lru_cache(maxsize=None)
def grevlex_edges(inst: GrevlexInstance) -> tuple[tuple[VertexLabel, VertexLabel], ...]:
    """Closed-form edge list, asserted equal to incidence-derived adjacency.

    Families: 0 to ubar(d+1) and every vbar(.,d+1); the ubar chain; ubar(k)
    to short-row vbar(j,k-1); ubar(j) to vbar(j-1,.); same-j row cliques;
    same-k column cliques. Valid verbatim for every theta >= 1.
    """
    d = inst.d
    zero = VertexLabel.zero()
    UB, VB = VertexLabel.ubar, VertexLabel.vbar
    edges: set[frozenset[VertexLabel]] = set()
    add = lambda a, b: edges.add(frozenset((a, b)))
    add(zero, UB(d + 1))
    for j in range(1, d):
        add(zero, VB(j, d + 1))
    for k in range(2, d + 1):
        add(UB(k), UB(k + 1))
    for k in range(4, d + 2):
        for j in range(1, k - 2):
            add(UB(k), VB(j, k - 1))
    for j in range(2, d + 1):
        for k in range(j + 1, d + 2):
            add(UB(j), VB(j - 1, k))
    for j in range(1, d):
        for k1 in range(j + 2, d + 2):
            for k2 in range(k1 + 1, d + 2):
                add(VB(j, k1), VB(j, k2))
    for k in range(3, d + 2):
        for j1 in range(1, k - 1):
            for j2 in range(j1 + 1, k - 1):
                add(VB(j1, k), VB(j2, k))
    closed = sorted(tuple(sorted(p, key=VertexLabel.sort_key)) for p in edges)
    derived = adjacency_from_incidence(grevlex_hrep(inst), grevlex_incidence(inst))
    derived = sorted(tuple(sorted(p, key=VertexLabel.sort_key)) for p in derived)
    assert closed == derived, "edge list disagrees with incidence adjacency"
    return tuple(closed)


def grevlex_graph(inst: GrevlexInstance) -> pg.PolytopeGraph:
    return pg.PolytopeGraph.from_edges(
        grevlex_vertices(inst).labels(), grevlex_edges(inst)
    )


@lru_cache(maxsize=None)
def grevlex_hamiltonian_cycle(inst: GrevlexInstance) -> tuple[VertexLabel, ...]:
    """Serpentine Hamiltonian cycle: 0, the ubar chain from d+1 down to 2,
    then columns k = 3..d+1 each entered on the previous exit row, closing
    through 0. Machine-verified; search fallback if the recipe ever failed.
    """
    d = inst.d
    VB = VertexLabel.vbar
    cycle: list[VertexLabel] = [VertexLabel.zero()]
    cycle += [VertexLabel.ubar(k) for k in range(d + 1, 1, -1)]
    entry = 1  # (ubar(2), vbar(1,3)) is an edge
    for k in range(3, d + 2):
        rest = [j for j in range(1, k - 1) if j != entry]
        exit_j = max(rest) if rest else entry
        cycle += [VB(entry, k)] + [VB(j, k) for j in sorted(rest)]
        entry = exit_j
    graph = grevlex_graph(inst)
    if not pg.verify_hamiltonian(graph, cycle):
        found = pg.find_hamiltonian_cycle(graph)
        assert found is not None, "polytope graph unexpectedly non-Hamiltonian"
        return tuple(found)
    return tuple(cycle)


def grevlex_coloring(inst: GrevlexInstance) -> dict[VertexLabel, int]:
    """A proper d-coloring by residues mod d, for every theta >= 1.

    0 -> 1, vbar(j,k) -> (k+j) mod d, ubar(k) -> (2k-1) mod d for k <= d,
    and ubar(d+1) -> 0. The column {vbar(.,d+1)} with 0 is a d-clique, so
    d colors are necessary. Properness is verified before returning.
    """
    d = inst.d
    coloring: dict[VertexLabel, int] = {VertexLabel.zero(): 1}
    for k in range(2, d + 1):
        coloring[VertexLabel.ubar(k)] = (2 * k - 1) % d
    coloring[VertexLabel.ubar(d + 1)] = 0
    for j, k in _vbar_range(d):
        coloring[VertexLabel.vbar(j, k)] = (k + j) % d
    proper, used = pg.verify_coloring(grevlex_graph(inst), coloring)
    if not (proper and used == d):
        raise ImproperColoring("residue coloring failed verification")
    return coloring


def grevlex_antipodal(inst: GrevlexInstance) -> list[tuple[VertexLabel, VertexLabel]]:
    """Antipodal vertex pairs of Q: always (0, ubar(2)); d = 3 adds
    (vbar(1,3), vbar(2,4))."""
    pairs = list_antipodal_pairs(grevlex_hrep(inst), grevlex_vertices(inst))
    expected = {frozenset((VertexLabel.zero(), VertexLabel.ubar(2)))}
    if inst.d == 3:
        expected.add(frozenset((VertexLabel.vbar(1, 3), VertexLabel.vbar(2, 4))))
    assert {frozenset(p) for p in pairs} == expected, "antipodal census mismatch"
    return pairs
