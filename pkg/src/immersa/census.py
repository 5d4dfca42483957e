"""Cycle censuses over edges and edge pairs.

For a multigraph G and a cycle length k this module counts, for every edge e
and every unordered pair of edges {d, e}, how many k-cycles pass through the
target (the alpha counts), and for disjoint oriented pairs the signed count
beta = |coherent| - |incoherent|.  On top of that sit the census table, the
modular sum checkers that license crossing-number congruences, and the ratio
test behind the total Thurston-Bennequin multiples.

Orientation conventions.  An oriented edge is either a bare edge name (the
stored tail-to-head orientation) or a pair ``(name, sign)`` with sign +1 or
-1.  Two disjoint oriented edges are coherent in a cycle through both when
one of the two traversals of the cycle induces both chosen orientations at
once.  Reversing one edge negates beta; reversing both leaves it unchanged.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .graphs import Cycle, MultiGraph, edge_distance, enumerate_cycles


def _oriented(edge):
    if isinstance(edge, str):
        return edge, 1
    name, sign = edge
    if sign not in (1, -1):
        raise ValueError(f"orientation sign must be +1 or -1, got {sign!r}")
    return name, sign


@lru_cache(maxsize=None)
def _distances(graph: MultiGraph):
    return {
        frozenset(p): edge_distance(graph, *p)
        for p in combinations(graph.edge_names, 2)
    }


@lru_cache(maxsize=None)
def girth(graph: MultiGraph):
    """Length of a shortest cycle, or None for a forest."""
    for c in enumerate_cycles(graph):
        return len(c)  # enumeration is sorted by length
    return None


@lru_cache(maxsize=None)
def _normalized_orientations(graph: MultiGraph):
    # Census convention for the sign of the second edge (first edge kept at
    # its stored orientation): make the first girth cycle through the pair
    # coherent; with no girth cycle through the pair, take the
    # lexicographically smaller orientation of the second edge.
    g = girth(graph)
    girth_cycles = enumerate_cycles(graph, g) if g is not None else ()
    out = {}
    for pair, dist in _distances(graph).items():
        if dist == 0:
            continue
        d, e = sorted(pair, key=graph.edge_index.get)
        sign = None
        for c in girth_cycles:
            if d in c.edge_name_set and e in c.edge_name_set:
                dirs = dict(c.steps)
                sign = dirs[d] * dirs[e]
                break
        if sign is None:
            t, h = graph.endpoints[e]
            sign = 1 if (t, h) <= (h, t) else -1
        out[(d, e)] = sign
    return out


def pair_orientation_convention(graph: MultiGraph, d, e):
    """The census orientation sign for the pair (d kept tail-to-head).

    Returns +1 or -1 for edge e such that the first girth cycle through
    {d, e} is coherent, falling back to the lexicographically smaller
    orientation when no girth cycle passes through the pair.
    """
    key = tuple(sorted((d, e), key=graph.edge_index.get))
    sign = _normalized_orientations(graph).get(key)
    if sign is None:
        raise ValueError(f"{d!r}, {e!r} is not a disjoint pair")
    return sign


@lru_cache(maxsize=None)
def _census_maps(graph: MultiGraph, k):
    # edge -> alpha, ordered pair -> alpha, ordered pair -> normalized beta.
    edge_counts = Counter()
    pair_counts = Counter()
    pair_beta = Counter()
    dist = _distances(graph)
    norm = _normalized_orientations(graph)
    for c in enumerate_cycles(graph, k):
        dirs = dict(c.steps)
        names = sorted(c.edge_name_set, key=graph.edge_index.get)
        for n in names:
            edge_counts[n] += 1
        for d, e in combinations(names, 2):
            pair_counts[(d, e)] += 1
            if dist[frozenset((d, e))] >= 1:
                coherent = dirs[d] * dirs[e] == norm[(d, e)]
                pair_beta[(d, e)] += 1 if coherent else -1
    return dict(edge_counts), dict(pair_counts), dict(pair_beta)


def alpha(graph: MultiGraph, k, target):
    """Number of k-cycles through an edge or through both edges of a pair.

    Args:
        graph: The graph.
        k: Cycle length.
        target: An edge name, or a pair (tuple) of two distinct edge names.

    Returns:
        The count as an integer.
    """
    edge_counts, pair_counts, _ = _census_maps(graph, k)
    if isinstance(target, str):
        if target not in graph.endpoints:
            raise ValueError(f"unknown edge {target!r}")
        return edge_counts.get(target, 0)
    d, e = target
    if d not in graph.endpoints or e not in graph.endpoints:
        raise ValueError(f"unknown edge in pair {target!r}")
    if d == e:
        raise ValueError("pair must consist of two distinct edges")
    key = tuple(sorted((d, e), key=graph.edge_index.get))
    return pair_counts.get(key, 0)


@dataclass(frozen=True)
class CoherenceSplit:
    """k-cycles through a disjoint oriented pair, split by coherence."""

    coherent: tuple
    incoherent: tuple


def beta(graph: MultiGraph, k, d, e):
    """Signed count of k-cycles through a disjoint oriented pair.

    Args:
        graph: The graph.
        k: Cycle length.
        d: Oriented edge: a name, or (name, +1/-1).
        e: Oriented edge, disjoint from d.

    Returns:
        Pair (beta, split) where beta = |coherent| - |incoherent| and split
        is the CoherenceSplit listing the cycles on each side.

    Raises:
        ValueError: If the two edges share a vertex.
    """
    dn, ds = _oriented(d)
    en, es = _oriented(e)
    if edge_distance(graph, dn, en) < 1:
        raise ValueError(f"{dn!r} and {en!r} are not disjoint")
    coherent = []
    incoherent = []
    for c in enumerate_cycles(graph, k):
        if dn in c.edge_name_set and en in c.edge_name_set:
            dirs = dict(c.steps)
            if ds * dirs[dn] == es * dirs[en]:
                coherent.append(c)
            else:
                incoherent.append(c)
    split = CoherenceSplit(tuple(coherent), tuple(incoherent))
    return len(split.coherent) - len(split.incoherent), split


@dataclass(frozen=True)
class CensusRow:
    """One row of the census table for a fixed cycle length.

    Pair columns hold None when the graph has no pairs in that distance
    class.  When alpha or beta is not constant over a column's class, the
    table splits into several rows and ``representative`` names the object
    each non-uniform cell was evaluated at.
    """

    k: int
    count: int
    count_times_k: int
    alpha_edge: int | None
    alpha_adjacent: int | None
    alpha_dist1: int | None
    alpha_dist2: int | None
    beta_dist1: int | None
    beta_dist2: int | None
    representative: tuple = ()


def census_table(graph: MultiGraph, ks):
    """Census rows for the given cycle lengths.

    Beta columns use the convention of pair_orientation_convention.  For a
    graph whose automorphisms act transitively on edges and on pairs (both
    named graphs here do), each k yields exactly one row.

    Args:
        graph: The graph.
        ks: Iterable of cycle lengths.

    Returns:
        Tuple of CensusRow in the order of ks.
    """
    dist = _distances(graph)

    def pairs_at(kind):
        return [tuple(sorted(p, key=graph.edge_index.get))
                for p, v in dist.items() if v == kind]

    classes = {
        "alpha_edge": list(graph.edge_names),
        "alpha_adjacent": sorted(pairs_at(0)),
        "alpha_dist1": sorted(pairs_at(1)),
        "alpha_dist2": sorted(pairs_at(2)),
    }
    rows = []
    for k in ks:
        edge_counts, pair_counts, pair_beta = _census_maps(graph, k)
        count = len(enumerate_cycles(graph, k))

        def cells(column):
            objs = classes[column.replace("beta", "alpha")]
            if column == "alpha_edge":
                values = [(o, edge_counts.get(o, 0)) for o in objs]
            elif column.startswith("alpha"):
                values = [(o, pair_counts.get(o, 0)) for o in objs]
            else:
                values = [(o, pair_beta.get(o, 0)) for o in objs]
            if not values:
                return [(None, None)]
            distinct = []
            for o, v in values:
                if all(v != dv for _, dv in distinct):
                    distinct.append((o, v))
            return distinct

        columns = ["alpha_edge", "alpha_adjacent", "alpha_dist1", "alpha_dist2",
                   "beta_dist1", "beta_dist2"]
        per_column = {col: cells(col) for col in columns}
        n_rows = max(len(v) for v in per_column.values())
        for i in range(n_rows):
            vals = {}
            reps = []
            for col in columns:
                options = per_column[col]
                obj, v = options[min(i, len(options) - 1)]
                vals[col] = v
                if len(options) > 1:
                    reps.append((col, obj))
            rows.append(CensusRow(
                k=k, count=count, count_times_k=count * k,
                representative=tuple(reps), **vals,
            ))
    return tuple(rows)


def _family_cycles(graph: MultiGraph, family):
    out = {}
    for item in family:
        if isinstance(item, int):
            for c in enumerate_cycles(graph, item):
                out[c] = None
        elif isinstance(item, Cycle):
            item.validate(graph)
            out[item] = None
        else:
            raise ValueError(f"family items must be lengths or cycles, got {item!r}")
    return tuple(out)


def check_sum_divisibility(graph: MultiGraph, family, m):
    """Test the two counting conditions that force crossing sums mod m.

    Over a family of cycles, checks that (1) every edge lies on a multiple
    of m of them, and (2) every unordered pair of distinct edges lies on a
    multiple of m of them.  When both hold, the total crossing count of the
    family is the same multiple of m in every generic immersion.

    Args:
        graph: The graph.
        family: Iterable of cycle lengths and/or explicit Cycle objects.
        m: Modulus, at least 1.

    Returns:
        Pair (ok, report); report holds per-condition booleans and the
        failing edges or pairs with their counts.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    cycles = _family_cycles(graph, family)
    edge_counts = Counter()
    pair_counts = Counter()
    for c in cycles:
        names = sorted(c.edge_name_set, key=graph.edge_index.get)
        for n in names:
            edge_counts[n] += 1
        for p in combinations(names, 2):
            pair_counts[p] += 1
    edge_failures = {
        e: edge_counts.get(e, 0)
        for e in graph.edge_names
        if edge_counts.get(e, 0) % m
    }
    pair_failures = {
        p: pair_counts.get(p, 0)
        for p in combinations(graph.edge_names, 2)
        if pair_counts.get(p, 0) % m
    }
    report = {
        "edge_counts_divisible": not edge_failures,
        "pair_counts_divisible": not pair_failures,
        "edge_failures": edge_failures,
        "pair_failures": pair_failures,
        "family_size": len(cycles),
    }
    return (not edge_failures and not pair_failures), report


@dataclass(frozen=True)
class SumInvarianceReport:
    """The four conditions deciding invariance of a crossing sum mod m."""

    edge_counts: bool
    doubled_pair_counts: bool
    vertex_edge_sums: bool
    adjacent_pair_counts: bool

    def __iter__(self):
        return iter((self.edge_counts, self.doubled_pair_counts,
                     self.vertex_edge_sums, self.adjacent_pair_counts))

    @property
    def all_hold(self):
        return all(self)


def check_sum_invariance(graph: MultiGraph, family, m):
    """Test the four conditions making a crossing sum a regular invariant.

    The sum of crossing numbers over the family, taken mod m, is unchanged
    by any generic deformation of an immersion exactly when all four hold:
    (1) every edge count is divisible by m, (2) twice every pair count is,
    (3) for every vertex v and edge e the sum of pair counts of e with the
    edges at v is, and (4) every adjacent pair count is. For families of
    cycles and m = 2, condition (3) follows from (1) because a cycle through
    e entering a vertex v uses exactly zero or two edge slots at v; it is
    still computed directly here.

    Args:
        graph: The graph.
        family: Iterable of cycle lengths and/or explicit Cycle objects.
        m: Modulus, at least 1.

    Returns:
        SumInvarianceReport of four booleans (iterable in order).
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    cycles = _family_cycles(graph, family)
    edge_counts = Counter()
    pair_counts = Counter()
    for c in cycles:
        names = sorted(c.edge_name_set, key=graph.edge_index.get)
        for n in names:
            edge_counts[n] += 1
        for p in combinations(names, 2):
            pair_counts[p] += 1

    def pair_count(d, e):
        if d == e:
            return edge_counts.get(d, 0)
        key = tuple(sorted((d, e), key=graph.edge_index.get))
        return pair_counts.get(key, 0)

    cond1 = all(edge_counts.get(e, 0) % m == 0 for e in graph.edge_names)
    cond2 = all(
        (2 * pair_counts.get(p, 0)) % m == 0
        for p in combinations(graph.edge_names, 2)
    )
    cond3 = all(
        sum(pair_count(e, ei) for ei in graph.incident[v]) % m == 0
        for v in graph.vertices
        for e in graph.edge_names
    )
    cond4 = all(
        pair_counts.get(tuple(sorted(p, key=graph.edge_index.get)), 0) % m == 0
        for p, d in _distances(graph).items()
        if d == 0
    )
    return SumInvarianceReport(cond1, cond2, cond3, cond4)


def tb_ratio(graph: MultiGraph, j, k):
    """The rational q with alpha_k = q*alpha_j and beta_k = q*beta_j, if any.

    Checks all three families: single edges, adjacent pairs (alpha), and
    disjoint pairs (beta, orientation-independent as an equation).  When q
    exists, the total Thurston-Bennequin number over k-cycles is q times the
    one over j-cycles for every diagram of the graph.

    Args:
        graph: The graph.
        j: Reference cycle length (cycles of this length must exist).
        k: Compared cycle length.

    Returns:
        The ratio as a Fraction, or None when no single ratio works.
    """
    ej, pj, bj = _census_maps(graph, j)
    ek, pk, bk = _census_maps(graph, k)
    if not ej:
        raise ValueError(f"no cycles of length {j}")
    q = None
    for e in graph.edge_names:
        if ej.get(e, 0):
            q = Fraction(ek.get(e, 0), ej.get(e, 0))
            break
    if q is None:
        return None
    for e in graph.edge_names:
        if ek.get(e, 0) != q * ej.get(e, 0):
            return None
    dist = _distances(graph)
    for pair, d in dist.items():
        key = tuple(sorted(pair, key=graph.edge_index.get))
        if d == 0:
            if pk.get(key, 0) != q * pj.get(key, 0):
                return None
        else:
            if bk.get(key, 0) != q * bj.get(key, 0):
                return None
    return q
