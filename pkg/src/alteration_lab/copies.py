"""Enumeration of pattern copies in a host (hyper)graph and derived statistics.

A copy is a subgraph of the host isomorphic to the pattern, identified by
its edge set (plus its vertex set, which only matters for patterns with
isolated vertices).  The index built here carries the per-edge coverage
map and the copy-multiplicity maxima that every downstream consumer needs:
alteration, k-set statistics, and the edge-disjoint packing audit.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .cliques import max_independent_set
from .graphs import Graph, UniformHypergraph

EdgeTuple = tuple[int, ...]


class PackingInfeasibleError(RuntimeError):
    """Raised when an exact packing instance exceeds the configured size cap."""


@dataclass(frozen=True)
class Copy:
    """One host subgraph isomorphic to the pattern."""

    vertices: frozenset[int]
    edges: frozenset[EdgeTuple]

    def sort_key(self) -> tuple:
        return (tuple(sorted(self.edges)), tuple(sorted(self.vertices)))


@dataclass(frozen=True)
class KSetStats:
    """Edge counts inside one vertex subset K of the host."""

    vertices: tuple[int, ...]
    edges_inside: int          # host edges with all endpoints in K
    covered_inside: int        # of those, covered by at least one copy
    covered_by_family: int | None = None  # covered by a copy of any family member


@dataclass(frozen=True)
class PackingReport:
    """Sizes of the copy packings behind the covered-edge bound for one K.

    The bound audited here: covered_inside is at most the maximum
    edge-disjoint packing of two-vertex copies, plus 2 * e_H^2 * (the two
    greedy packing sizes) * the per-edge copy maximum.
    """

    vertices: tuple[int, ...]
    touching_count: int          # copies with an edge inside K
    two_vertex_count: int        # of those, sharing exactly two vertices with K
    max_disjoint_two_vertex: int    # exact maximum edge-disjoint packing
    greedy_disjoint_touching: int   # inclusion-maximal packing of the rest
    greedy_disjoint_pair_unions: int  # inclusion-maximal packing of overlapping pair unions
    covered_inside: int
    bound_rhs: int
    bound_holds: bool
    max_disjoint_witness: tuple[int, ...]


@dataclass(frozen=True)
class GlobalCopyStats:
    """Total copy count and per-vertex copy counts of an index."""

    total: int
    per_vertex: tuple[int, ...]


class CopyIndex:
    """All pattern copies of a host plus coverage and multiplicity statistics."""

    def __init__(
        self,
        host: Graph | UniformHypergraph,
        pattern: Graph | UniformHypergraph,
        copies: Sequence[Copy],
    ):
        self.host = host
        self.pattern = pattern
        self.copies: tuple[Copy, ...] = tuple(sorted(copies, key=Copy.sort_key))
        coverage: dict[EdgeTuple, list[int]] = {}
        for i, copy in enumerate(self.copies):
            for e in copy.edges:
                coverage.setdefault(e, []).append(i)
        self.coverage: dict[EdgeTuple, tuple[int, ...]] = {
            e: tuple(ids) for e, ids in coverage.items()
        }
        self.covered_edges: frozenset[EdgeTuple] = frozenset(self.coverage)
        self.max_copies_per_edge: int = (
            max((len(ids) for ids in self.coverage.values()), default=0)
        )
        pair_counts: dict[tuple[EdgeTuple, EdgeTuple], int] = {}
        for copy in self.copies:
            for f, g in combinations(sorted(copy.edges), 2):
                pair_counts[(f, g)] = pair_counts.get((f, g), 0) + 1
        self.max_copies_per_edge_pair: int = max(pair_counts.values(), default=0)

    @property
    def pattern_edge_count(self) -> int:
        return self.pattern.num_edges

    def __len__(self) -> int:
        return len(self.copies)

    def __repr__(self) -> str:
        return (
            f"CopyIndex(copies={len(self.copies)}, "
            f"max_per_edge={self.max_copies_per_edge}, "
            f"max_per_edge_pair={self.max_copies_per_edge_pair})"
        )


def _edge_tuples(structure: Graph | UniformHypergraph) -> tuple[EdgeTuple, ...]:
    return tuple(structure.edges)


def _vertex_degrees(n: int, edges: Iterable[EdgeTuple]) -> list[int]:
    deg = [0] * n
    for e in edges:
        for v in e:
            deg[v] += 1
    return deg


def _search_plan(
    n: int, edges: Sequence[EdgeTuple]
) -> tuple[list[int], list[list[tuple[int, ...]]]]:
    """Vertex visit order plus, per position, the pattern edges completed there.

    Each completed edge is encoded as the positions (in visit order) of its
    other vertices, so the matcher can look the constraint up in the host's
    completion index.  Vertices are chosen to complete edges as early as
    possible; ties prefer high degree for stronger pruning.
    """
    deg = _vertex_degrees(n, edges)
    order: list[int] = []
    pos_of: dict[int, int] = {}
    plan: list[list[tuple[int, ...]]] = []
    remaining_edges = list(edges)
    while len(order) < n:
        # Ascending scan keeps the lowest vertex on score ties.
        best_v = -1
        best_score = (-1, -1)
        for v in range(n):
            if v in pos_of:
                continue
            completes = sum(
                1
                for e in remaining_edges
                if v in e and all(w in pos_of for w in e if w != v)
            )
            score = (completes, deg[v])
            if score > best_score:
                best_v, best_score = v, score
        pos = len(order)
        pos_of[best_v] = pos
        order.append(best_v)
        completed_here: list[tuple[int, ...]] = []
        still_open = []
        for e in remaining_edges:
            if all(w in pos_of for w in e):
                others = tuple(sorted(pos_of[w] for w in e if w != best_v))
                completed_here.append(others)
            else:
                still_open.append(e)
        remaining_edges = still_open
        plan.append(completed_here)
    return order, plan


def _completion_index(edges: Iterable[EdgeTuple]) -> dict[EdgeTuple, set[int]]:
    """Map each (r-1)-subset of a host edge to the vertices completing it."""
    idx: dict[EdgeTuple, set[int]] = {}
    for e in edges:
        for j in range(len(e)):
            rest = e[:j] + e[j + 1 :]
            idx.setdefault(rest, set()).add(e[j])
    return idx


def enumerate_copies(
    host: Graph | UniformHypergraph, pattern: Graph | UniformHypergraph
) -> CopyIndex:
    """Enumerate every distinct pattern copy of the host.

    Host and pattern must have the same uniformity.  A pattern larger than
    the host simply yields an empty index.  Copies are deduplicated by
    (edge set, vertex set), which collapses the automorphism multiplicity
    of the backtracking matcher.
    """
    if isinstance(pattern, Graph) != isinstance(host, Graph):
        raise TypeError("host and pattern must both be graphs or both hypergraphs")
    if isinstance(pattern, UniformHypergraph) and pattern.r != host.r:
        raise ValueError(
            f"uniformity mismatch: host r={host.r}, pattern r={pattern.r}"
        )
    if pattern.num_edges == 0:
        raise ValueError("pattern must have at least one edge")

    p_edges = _edge_tuples(pattern)
    order, plan = _search_plan(pattern.n, p_edges)
    p_deg = _vertex_degrees(pattern.n, p_edges)
    h_edges = _edge_tuples(host)
    h_deg = _vertex_degrees(host.n, h_edges)
    completion = _completion_index(h_edges)

    found: set[tuple[frozenset[EdgeTuple], frozenset[int]]] = set()
    assignment: list[int] = [-1] * pattern.n
    used: set[int] = set()
    min_deg = [p_deg[v] for v in order]
    all_hosts = list(range(host.n))

    def place(pos: int) -> None:
        if pos == pattern.n:
            mapped_edges = frozenset(
                tuple(sorted(assignment[_pos_lookup[w]] for w in e)) for e in p_edges
            )
            found.add((mapped_edges, frozenset(assignment)))
            return
        constraints = plan[pos]
        if constraints:
            cands: set[int] | None = None
            for others in constraints:
                key = tuple(sorted(assignment[j] for j in others))
                bucket = completion.get(key)
                if not bucket:
                    return
                cands = set(bucket) if cands is None else cands & bucket
                if not cands:
                    return
            candidates: Iterable[int] = cands
        else:
            candidates = all_hosts
        need = min_deg[pos]
        for u in candidates:
            if u in used or h_deg[u] < need:
                continue
            assignment[pos] = u
            used.add(u)
            place(pos + 1)
            used.discard(u)
        assignment[pos] = -1

    _pos_lookup = {v: i for i, v in enumerate(order)}
    place(0)

    copies = [Copy(vertices=vs, edges=es) for es, vs in found]
    return CopyIndex(host, pattern, copies)


def _validate_k(host: Graph | UniformHypergraph, k_set: Iterable[int]) -> frozenset[int]:
    ks = frozenset(k_set)
    if any(not (0 <= v < host.n) for v in ks):
        raise ValueError(f"K contains vertices outside 0..{host.n - 1}")
    return ks


def k_set_stats(
    index: CopyIndex,
    k_set: Iterable[int],
    family: Sequence[CopyIndex] | None = None,
) -> KSetStats:
    """Edge counts inside K: total, copy-covered, and family-covered.

    With a family of indexes over the same host, covered_by_family counts
    the K-internal edges lying in a copy of any family member.
    """
    ks = _validate_k(index.host, k_set)
    inside = index.host.edges_inside(ks)
    covered = sum(1 for e in inside if e in index.covered_edges)
    family_covered = None
    if family is not None:
        for member in family:
            if member.host != index.host:
                raise ValueError("family indexes must share the host")
        family_covered = sum(
            1 for e in inside if any(e in m.covered_edges for m in family)
        )
    return KSetStats(
        vertices=tuple(sorted(ks)),
        edges_inside=len(inside),
        covered_inside=covered,
        covered_by_family=family_covered,
    )


def packing_report(
    index: CopyIndex, k_set: Iterable[int], copy_cap: int = 5000
) -> PackingReport:
    """Audit the covered-edge bound for one K via exact and greedy packings.

    The exact maximum runs on the conflict graph of copies sharing exactly
    two vertices with K (adjacent iff they share an edge); the remaining
    K-touching copies and the qualifying overlapping copy pairs are packed
    greedily in canonical copy order, which is inclusion-maximal.
    """
    if not isinstance(index.host, Graph):
        raise TypeError("packing reports are defined for graph hosts only")
    ks = _validate_k(index.host, k_set)

    touching: list[int] = []
    for i, copy in enumerate(index.copies):
        if any(e[0] in ks and e[1] in ks for e in copy.edges):
            touching.append(i)
    two_vertex = [i for i in touching if len(index.copies[i].vertices & ks) == 2]

    if len(two_vertex) > copy_cap:
        raise PackingInfeasibleError(
            f"exact packing infeasible: {len(two_vertex)} copies exceed cap {copy_cap}"
        )

    # Conflict graph: copies adjacent iff they share at least one edge.
    local = {cid: j for j, cid in enumerate(two_vertex)}
    masks = [0] * len(two_vertex)
    edge_owners: dict[EdgeTuple, list[int]] = {}
    for cid in two_vertex:
        for e in index.copies[cid].edges:
            edge_owners.setdefault(e, []).append(local[cid])
    for owners in edge_owners.values():
        for a, b in combinations(owners, 2):
            masks[a] |= 1 << b
            masks[b] |= 1 << a
    mis = max_independent_set(masks)
    assert mis.exact
    witness = tuple(two_vertex[j] for j in mis.members)

    two_vertex_set = set(two_vertex)
    used_edges: set[EdgeTuple] = set()
    greedy_touching = 0
    for cid in touching:
        if cid in two_vertex_set:
            continue
        edges = index.copies[cid].edges
        if used_edges.isdisjoint(edges):
            greedy_touching += 1
            used_edges.update(edges)

    used_union_edges: set[EdgeTuple] = set()
    greedy_pairs = 0
    for a, b in combinations(two_vertex, 2):
        ca, cb = index.copies[a], index.copies[b]
        if not ca.edges & cb.edges:
            continue
        if (ca.vertices & ks) == (cb.vertices & ks):
            continue
        union = ca.edges | cb.edges
        if used_union_edges.isdisjoint(union):
            greedy_pairs += 1
            used_union_edges.update(union)

    covered = k_set_stats(index, ks).covered_inside
    e_h = index.pattern_edge_count
    rhs = mis.size + 2 * e_h * e_h * (greedy_touching + greedy_pairs) * index.max_copies_per_edge
    return PackingReport(
        vertices=tuple(sorted(ks)),
        touching_count=len(touching),
        two_vertex_count=len(two_vertex),
        max_disjoint_two_vertex=mis.size,
        greedy_disjoint_touching=greedy_touching,
        greedy_disjoint_pair_unions=greedy_pairs,
        covered_inside=covered,
        bound_rhs=rhs,
        bound_holds=covered <= rhs,
        max_disjoint_witness=witness,
    )


def global_copy_stats(index: CopyIndex) -> GlobalCopyStats:
    """Total copy count and per-vertex copy counts.

    The identity total = sum(per_vertex) / v_H holds exactly because every
    copy has exactly v_H vertices.
    """
    per_vertex = [0] * index.host.n
    for copy in index.copies:
        for v in copy.vertices:
            per_vertex[v] += 1
    return GlobalCopyStats(total=len(index.copies), per_vertex=tuple(per_vertex))


def has_copy_through_edge(
    adjacency: Sequence[set[int]], pattern: Graph, u: int, v: int
) -> bool:
    """Does the working graph contain a pattern copy through edge (u, v)?

    adjacency is a mutable-graph view (list of neighbor sets) that must
    already contain the edge (u, v).  Used by the greedy alteration scan
    and the game engines, where graphs grow one edge at a time.
    """
    p_adj = pattern.adjacency
    n_host = len(adjacency)
    for a, b in pattern.edges:
        for x, y in ((u, v), (v, u)):
            if len(adjacency[x]) < len(p_adj[a]) or len(adjacency[y]) < len(p_adj[b]):
                continue
            mapping = {a: x, b: y}
            if _extend_mapping(adjacency, pattern, mapping, {x, y}, n_host):
                return True
    return False


def _extend_mapping(
    adjacency: Sequence[set[int]],
    pattern: Graph,
    mapping: dict[int, int],
    used: set[int],
    n_host: int,
) -> bool:
    if len(mapping) == pattern.n:
        return True
    p_adj = pattern.adjacency
    # Prefer the unmapped pattern vertex with the most mapped neighbors.
    best_v = -1
    best_anchored = -1
    for w in range(pattern.n):
        if w in mapping:
            continue
        anchored = sum(1 for x in p_adj[w] if x in mapping)
        if anchored > best_anchored:
            best_anchored = anchored
            best_v = w
    w = best_v
    anchors = [mapping[x] for x in p_adj[w] if x in mapping]
    if anchors:
        candidates: set[int] | list[int] = set(adjacency[anchors[0]])
        for a in anchors[1:]:
            candidates &= adjacency[a]
    else:
        candidates = list(range(n_host))
    need = len(p_adj[w])
    for c in candidates:
        if c in used or len(adjacency[c]) < need:
            continue
        mapping[w] = c
        used.add(c)
        if _extend_mapping(adjacency, pattern, mapping, used, n_host):
            del mapping[w]
            used.discard(c)
            return True
        del mapping[w]
        used.discard(c)
    return False
