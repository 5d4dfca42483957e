"""Multigraphs, named constructors, cycles, edge distances and symmetries.

The graphs handled here are small labeled multigraphs (loops and parallel
edges allowed).  Everything is immutable: operations never mutate a graph,
so shared read-only use from several threads is safe.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations

# Sentinel distance for edge pairs in different components.
INFINITE_DISTANCE = math.inf


def _check_name(name, what):
    if not name or any(ch.isspace() for ch in name) or ":" in name:
        raise ValueError(f"bad {what} name {name!r}: must be nonempty, no whitespace, no ':'")


@dataclass(frozen=True)
class MultiGraph:
    """A labeled multigraph.

    Attributes:
        vertices: Vertex names, in a fixed order.
        edges: Triples ``(name, tail, head)``.  The tail is the first-named
            vertex; this fixed orientation is what oriented-pair bookkeeping
            refers to.  Loops (tail == head) and parallel edges are allowed.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]

    def __post_init__(self):
        seen_v = set()
        for v in self.vertices:
            _check_name(v, "vertex")
            if v in seen_v:
                raise ValueError(f"duplicate vertex {v!r}")
            seen_v.add(v)
        seen_e = set()
        for name, tail, head in self.edges:
            _check_name(name, "edge")
            if name in seen_e:
                raise ValueError(f"duplicate edge {name!r}")
            seen_e.add(name)
            if tail not in seen_v or head not in seen_v:
                raise ValueError(f"edge {name!r} has unknown endpoint")

    @cached_property
    def edge_index(self) -> dict:
        return {e[0]: i for i, e in enumerate(self.edges)}

    @cached_property
    def endpoints(self) -> dict:
        return {name: (tail, head) for name, tail, head in self.edges}

    @cached_property
    def incident(self) -> dict:
        """Vertex -> tuple of incident edge names; loops listed twice."""
        inc = {v: [] for v in self.vertices}
        for name, tail, head in self.edges:
            inc[tail].append(name)
            inc[head].append(name)
        return {v: tuple(names) for v, names in inc.items()}

    def degree(self, v) -> int:
        return len(self.incident[v])

    def is_loop(self, name) -> bool:
        tail, head = self.endpoints[name]
        return tail == head

    def other_end(self, name, v):
        tail, head = self.endpoints[name]
        if v == tail:
            return head
        if v == head:
            return tail
        raise ValueError(f"{v!r} is not an endpoint of {name!r}")

    @property
    def edge_names(self):
        return tuple(e[0] for e in self.edges)

    def subgraph_on_edges(self, names) -> "MultiGraph":
        """Subgraph spanned by the given edges, keeping original order."""
        keep = set(names)
        edges = tuple(e for e in self.edges if e[0] in keep)
        used = {v for _, t, h in edges for v in (t, h)}
        return MultiGraph(tuple(v for v in self.vertices if v in used), edges)


def _canonical_steps(steps):
    # Minimum over all rotations of the forward and the reversed traversal;
    # direction -1 sorts after +1 so the forward tour of the anchor edge wins.
    n = len(steps)
    reverse = tuple((name, -d) for name, d in reversed(steps))
    best = None
    best_key = None
    for seq in (tuple(steps), reverse):
        for r in range(n):
            cand = seq[r:] + seq[:r]
            key = tuple((name, 0 if d > 0 else 1) for name, d in cand)
            if best_key is None or key < best_key:
                best, best_key = cand, key
    return best


@dataclass(frozen=True)
class Cycle:
    """A simple cycle, stored in canonical (rotation/reflection-free) form.

    Attributes:
        steps: Tuple of ``(edge name, direction)`` in traversal order, where
            direction +1 means tail-to-head.  Normalized on construction, so
            equal cycles compare and hash equal.
    """

    steps: tuple

    def __post_init__(self):
        object.__setattr__(self, "steps", _canonical_steps(tuple(self.steps)))

    def __len__(self):
        return len(self.steps)

    @cached_property
    def edge_name_set(self) -> frozenset:
        return frozenset(name for name, _ in self.steps)

    def vertex_sequence(self, graph: MultiGraph):
        """Vertices visited, one per step, starting at the first step's start."""
        out = []
        for name, d in self.steps:
            tail, head = graph.endpoints[name]
            out.append(tail if d > 0 else head)
        return tuple(out)

    def validate(self, graph: MultiGraph):
        """Check the steps close up into a vertex-simple cycle of the graph."""
        n = len(self.steps)
        if n == 0:
            raise ValueError("empty cycle")
        for name, _ in self.steps:
            if name not in graph.endpoints:
                raise ValueError(f"cycle uses unknown edge {name!r}")
        starts = self.vertex_sequence(graph)
        for i, (name, d) in enumerate(self.steps):
            tail, head = graph.endpoints[name]
            end = head if d > 0 else tail
            if end != starts[(i + 1) % n]:
                raise ValueError(f"steps do not chain at position {i}")
        if n == 1 and starts[0] != graph.endpoints[self.steps[0][0]][1]:
            raise ValueError("1-cycle must be a loop")
        if len(set(starts)) != n:
            raise ValueError("cycle revisits a vertex")
        if len(self.edge_name_set) != n:
            raise ValueError("cycle repeats an edge")


@lru_cache(maxsize=None)
def _all_cycles(graph: MultiGraph):
    cycles = []
    for anchor, (name, tail, head) in enumerate(graph.edges):
        if tail == head:
            cycles.append(Cycle(((name, 1),)))
            continue
        # Anchor the cycle at its smallest-index edge, traversed tail-to-head;
        # all other edges must have a larger index, so each cycle shows up once.
        stack = [(head, ((name, 1),), frozenset((head,)))]
        while stack:
            cur, steps, seen = stack.pop()
            for ename in graph.incident[cur]:
                if graph.edge_index[ename] <= anchor:
                    continue
                t, h = graph.endpoints[ename]
                if t == h:
                    continue  # loops only ever form 1-cycles
                nxt, d = (h, 1) if t == cur else (t, -1)
                if nxt == tail:
                    cycles.append(Cycle(steps + ((ename, d),)))
                elif nxt not in seen:
                    stack.append((nxt, steps + ((ename, d),), seen | {nxt}))
    cycles.sort(key=lambda c: (len(c), c.steps))
    return tuple(cycles)


def enumerate_cycles(graph: MultiGraph, k=None):
    """Enumerate the simple cycles of a multigraph.

    Loops count as 1-cycles and a pair of parallel edges as a 2-cycle.

    Args:
        graph: The graph.
        k: Optional length filter.

    Returns:
        Tuple of canonical Cycle objects in a fixed deterministic order
        (by length, then lexicographically).
    """
    cycles = _all_cycles(graph)
    if k is None:
        return cycles
    return tuple(c for c in cycles if len(c) == k)


def edge_distance(graph: MultiGraph, d, e):
    """Distance between two edges: fewest edges on a path joining them.

    Returns 0 exactly when the edges coincide or share a vertex, and
    INFINITE_DISTANCE when they lie in different components.
    """
    if d == e:
        return 0
    td, hd = graph.endpoints[d]
    te, he = graph.endpoints[e]
    targets = {te, he}
    if td in targets or hd in targets:
        return 0
    dist = {td: 0, hd: 0}
    queue = deque((td, hd))
    while queue:
        v = queue.popleft()
        for ename in graph.incident[v]:
            w = graph.other_end(ename, v)
            if w in dist:
                continue
            dist[w] = dist[v] + 1
            if w in targets:
                return dist[w]
            queue.append(w)
    return INFINITE_DISTANCE


def edge_pairs_at_distance(graph: MultiGraph, k):
    """All unordered edge pairs at distance exactly k, in edge-index order."""
    names = graph.edge_names
    return tuple(
        (d, e) for d, e in combinations(names, 2) if edge_distance(graph, d, e) == k
    )


def disjoint_edge_pairs(graph: MultiGraph):
    """All unordered pairs of edges sharing no vertex (distance >= 1)."""
    names = graph.edge_names
    return tuple(
        (d, e) for d, e in combinations(names, 2) if edge_distance(graph, d, e) >= 1
    )


def distance_one_neighborhood_is_cycle(graph: MultiGraph, e, k=1):
    """The set of edges at distance k from e, if that set is a single cycle.

    Args:
        graph: The graph.
        e: Base edge name.
        k: Distance class to collect (default 1).

    Returns:
        The Cycle formed by the distance-k edges, or None when those edges
        do not form one single cycle.
    """
    ring = [name for name in graph.edge_names if name != e and edge_distance(graph, e, name) == k]
    if not ring:
        return None
    touch = Counter()
    for name in ring:
        t, h = graph.endpoints[name]
        if t == h:
            return None
        touch[t] += 1
        touch[h] += 1
    if len(ring) != len(touch) or any(c != 2 for c in touch.values()):
        return None
    # Walk the 2-regular subgraph; it is one cycle iff the walk covers everything.
    by_vertex = {}
    for name in ring:
        t, h = graph.endpoints[name]
        by_vertex.setdefault(t, []).append(name)
        by_vertex.setdefault(h, []).append(name)
    first = ring[0]
    t0, h0 = graph.endpoints[first]
    steps = [(first, 1)]
    cur = h0
    used = {first}
    while cur != t0:
        nxt = next(n for n in by_vertex[cur] if n not in used)
        t, h = graph.endpoints[nxt]
        steps.append((nxt, 1) if t == cur else (nxt, -1))
        cur = h if t == cur else t
        used.add(nxt)
    if len(used) != len(ring):
        return None
    return Cycle(tuple(steps))


# ---------------------------------------------------------------------------
# Automorphisms


@lru_cache(maxsize=None)
def automorphism_group(graph: MultiGraph):
    """All automorphisms, as vertex-name maps.

    An automorphism must preserve the edge multiplicity between every vertex
    pair and the loop count at every vertex.  Backtracking with degree and
    neighbor-degree pruning; fine up to ~20 vertices.

    Returns:
        Tuple of dicts mapping each vertex name to its image.
    """
    verts = list(graph.vertices)
    n = len(verts)
    mult = {v: Counter() for v in verts}
    loops = Counter()
    for name, t, h in graph.edges:
        if t == h:
            loops[t] += 1
        else:
            mult[t][h] += 1
            mult[h][t] += 1

    def profile(v):
        return (
            graph.degree(v),
            loops[v],
            tuple(sorted((graph.degree(w), m) for w, m in mult[v].items())),
        )

    profiles = {v: profile(v) for v in verts}
    candidates = {v: [w for w in verts if profiles[w] == profiles[v]] for v in verts}
    # Most-constrained vertices first shrinks the tree.
    order = sorted(verts, key=lambda v: len(candidates[v]))

    found = []
    assign = {}
    used = set()

    def extend(i):
        if i == n:
            found.append(dict(assign))
            return
        v = order[i]
        for w in candidates[v]:
            if w in used:
                continue
            ok = True
            for u in order[:i]:
                if mult[v][u] != mult[w][assign[u]]:
                    ok = False
                    break
            if ok:
                assign[v] = w
                used.add(w)
                extend(i + 1)
                used.discard(w)
                del assign[v]

    extend(0)
    return tuple(found)


def _pair_class(graph, name):
    # A loop's class is a 1-set; parallel edges share a class on purpose.
    t, h = graph.endpoints[name]
    return frozenset((t, h))


def automorphism_orbit_transitive(graph: MultiGraph, kind, k=None):
    """Decide whether Aut(graph) acts transitively on a class of objects.

    Args:
        graph: The graph.
        kind: One of "vertices", "edges", "adjacent_pairs", "distance_pairs".
        k: Distance for kind="distance_pairs".

    Returns:
        Pair (transitive, witnesses).  When transitive, witnesses maps every
        object to an automorphism taking the first object (in enumeration
        order) to it; otherwise witnesses is None.
    """
    group = automorphism_group(graph)
    class_to_names = {}
    for name in graph.edge_names:
        class_to_names.setdefault(_pair_class(graph, name), []).append(name)

    def edge_image_names(vmap, name):
        t, h = graph.endpoints[name]
        return class_to_names.get(frozenset((vmap[t], vmap[h])), ())

    if kind == "vertices":
        objects = list(graph.vertices)
        if not objects:
            return True, {}
        base = objects[0]
        witnesses = {}
        for vmap in group:
            witnesses.setdefault(vmap[base], vmap)
        ok = set(witnesses) == set(objects)
        return (ok, witnesses if ok else None)

    if kind == "edges":
        objects = list(graph.edge_names)
        pairs = [(name,) for name in objects]
    elif kind == "adjacent_pairs":
        pairs = [p for p in combinations(graph.edge_names, 2) if edge_distance(graph, *p) == 0]
        objects = pairs
    elif kind == "distance_pairs":
        if k is None:
            raise ValueError("distance_pairs needs k")
        pairs = list(edge_pairs_at_distance(graph, k))
        objects = pairs
    else:
        raise ValueError(f"unknown object kind {kind!r}")

    if not objects:
        return True, {}
    base = pairs[0]
    witnesses = {}
    for vmap in group:
        image_sets = [edge_image_names(vmap, name) for name in base]
        if len(base) == 1:
            for name in image_sets[0]:
                witnesses.setdefault(name, vmap)
        else:
            for a in image_sets[0]:
                for b in image_sets[1]:
                    if a == b:
                        continue
                    key = (a, b) if graph.edge_index[a] < graph.edge_index[b] else (b, a)
                    witnesses.setdefault(key, vmap)
    ok = set(objects) <= set(witnesses)
    return (ok, {o: witnesses[o] for o in objects} if ok else None)


# ---------------------------------------------------------------------------
# Series-parallel reduction and K4 minors


def _reduction_run(graph: MultiGraph):
    # Mutable picture: simple-pair multiplicities plus loop counts.
    verts = set(graph.vertices)
    mult = Counter()
    loops = Counter()
    for name, t, h in graph.edges:
        if t == h:
            loops[t] += 1
        else:
            mult[frozenset((t, h))] += 1
    order = {v: i for i, v in enumerate(graph.vertices)}
    trace = []

    def degree(v):
        return 2 * loops[v] + sum(m for pair, m in mult.items() if v in pair)

    def neighbors(v):
        out = []
        for pair, m in mult.items():
            if m > 0 and v in pair:
                others = [w for w in pair if w != v]
                out.append((others[0], m))
        return out

    changed = True
    while changed:
        changed = False
        for v in sorted(verts, key=order.get):
            if loops[v]:
                trace.append(f"delete {loops[v]} loop(s) at {v}")
                loops[v] = 0
                changed = True
        for pair in sorted(mult, key=lambda p: sorted(order[v] for v in p)):
            if mult[pair] >= 2:
                a, b = sorted(pair, key=order.get)
                trace.append(f"merge {mult[pair]} parallel edges {a}-{b}")
                mult[pair] = 1
                changed = True
        for v in sorted(verts, key=order.get):
            deg = degree(v)
            if deg == 0:
                verts.discard(v)
                changed = True
            elif deg == 1:
                (w, _), = neighbors(v)
                trace.append(f"drop pendant vertex {v}")
                mult[frozenset((v, w))] = 0
                verts.discard(v)
                changed = True
        for v in sorted(verts, key=order.get):
            if degree(v) != 2 or loops[v]:
                continue
            nbrs = neighbors(v)
            if len(nbrs) != 2:
                continue  # a doubled edge; the parallel rule gets it first
            (a, _), (b, _) = nbrs
            trace.append(f"suppress degree-2 vertex {v} into {a}-{b}")
            mult[frozenset((v, a))] = 0
            mult[frozenset((v, b))] = 0
            mult[frozenset((a, b))] += 1
            verts.discard(v)
            changed = True
    remaining = sorted(
        (tuple(sorted(pair, key=order.get)) for pair, m in mult.items() if m > 0),
        key=lambda p: (order[p[0]], order[p[1]]),
    )
    return remaining, trace


def has_K4_minor(graph: MultiGraph) -> bool:
    """True iff K4 is a minor of the graph.

    Decided by series-parallel reduction: deleting loops, merging parallel
    edges, dropping pendant vertices and suppressing degree-2 vertices
    reaches the empty graph exactly on the K4-minor-free graphs.  Whatever
    survives is a simple core of minimum degree 3, which always carries a
    K4 subdivision.
    """
    remaining, _ = _reduction_run(graph)
    return bool(remaining)


def sp_reduction_trace(graph: MultiGraph):
    """Run the series-parallel reduction and keep a step-by-step trace.

    Returns:
        Pair (reduced, lines): reduced is True when the graph collapsed to
        nothing (no K4 minor); lines lists each reduction step and, when
        stuck, the surviving core's edges.
    """
    remaining, trace = _reduction_run(graph)
    if remaining:
        core = ", ".join(f"{a}-{b}" for a, b in remaining)
        trace.append(f"stuck: irreducible core with {len(remaining)} edges: {core}")
        return False, tuple(trace)
    trace.append("reduced to the empty graph")
    return True, tuple(trace)


def block_decomposition(graph: MultiGraph):
    """Split a multigraph into its blocks (2-connected pieces and bridges).

    Returns:
        Tuple of (block, cut_vertices) pairs, where block is a MultiGraph on
        the original names and cut_vertices are the block's vertices that are
        cut vertices of the whole graph.  Loops form their own single-edge
        blocks.  Every cycle lies inside exactly one block.
    """
    index = {}
    low = {}
    counter = 0
    edge_stack = []
    raw_blocks = []
    cut = set()
    loops_done = set()
    for root in graph.vertices:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        root_children = 0
        stack = [(root, None, iter(graph.incident[root]))]
        while stack:
            v, in_edge, it = stack[-1]
            advanced = False
            for ename in it:
                if ename == in_edge:
                    continue
                t, h = graph.endpoints[ename]
                if t == h:
                    if ename not in loops_done:
                        loops_done.add(ename)
                        raw_blocks.append([ename])
                    continue
                w = h if t == v else t
                if w not in index:
                    edge_stack.append(ename)
                    index[w] = low[w] = counter
                    counter += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, ename, iter(graph.incident[w])))
                    advanced = True
                    break
                if index[w] < index[v]:
                    edge_stack.append(ename)
                    if index[w] < low[v]:
                        low[v] = index[w]
            if advanced:
                continue
            stack.pop()
            if not stack:
                continue
            u = stack[-1][0]
            if low[v] < low[u]:
                low[u] = low[v]
            if low[v] >= index[u]:
                comp = []
                while True:
                    e = edge_stack.pop()
                    comp.append(e)
                    if e == in_edge:
                        break
                raw_blocks.append(comp)
                if u != root or root_children > 1:
                    cut.add(u)
        if root_children > 1:
            cut.add(root)
    raw_blocks.sort(key=lambda names: min(graph.edge_index[n] for n in names))
    out = []
    for names in raw_blocks:
        block = graph.subgraph_on_edges(names)
        out.append((block, tuple(v for v in block.vertices if v in cut)))
    return tuple(out)


# ---------------------------------------------------------------------------
# Named constructors


def petersen_graph() -> MultiGraph:
    """The Petersen graph: outer 5-cycle u1..u5, spokes, inner pentagram.

    Edges are u_i u_{i+1}, u_i v_i and v_i v_{i+2} with indices mod 5,
    named by concatenating tail and head (tail is the first-named vertex).
    """
    verts = tuple(f"u{i}" for i in range(1, 6)) + tuple(f"v{i}" for i in range(1, 6))
    edges = []
    for i in range(1, 6):
        j = i % 5 + 1
        edges.append((f"u{i}u{j}", f"u{i}", f"u{j}"))
    for i in range(1, 6):
        edges.append((f"u{i}v{i}", f"u{i}", f"v{i}"))
    for i in range(1, 6):
        j = (i + 1) % 5 + 1
        edges.append((f"v{i}v{j}", f"v{i}", f"v{j}"))
    return MultiGraph(verts, tuple(edges))


def heawood_graph() -> MultiGraph:
    """The Heawood graph on u1..u7, v1..v7.

    Edges are a_i = u_i v_i, b_i = u_i v_{i-1} and c_i = v_i u_{i-2} with
    indices mod 7, named by concatenating tail and head.
    """
    verts = tuple(f"u{i}" for i in range(1, 8)) + tuple(f"v{i}" for i in range(1, 8))

    def m7(i):
        return (i - 1) % 7 + 1

    edges = []
    for i in range(1, 8):
        edges.append((f"u{i}v{i}", f"u{i}", f"v{i}"))
    for i in range(1, 8):
        j = m7(i - 1)
        edges.append((f"u{i}v{j}", f"u{i}", f"v{j}"))
    for i in range(1, 8):
        j = m7(i - 2)
        edges.append((f"v{i}u{j}", f"v{i}", f"u{j}"))
    return MultiGraph(verts, tuple(edges))


def complete_graph(n) -> MultiGraph:
    """K_n on vertices v1..vn."""
    if n < 1:
        raise ValueError("n must be positive")
    verts = tuple(f"v{i}" for i in range(1, n + 1))
    edges = tuple(
        (f"v{i}v{j}", f"v{i}", f"v{j}")
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
    )
    return MultiGraph(verts, edges)


def complete_bipartite_graph(m, n) -> MultiGraph:
    """K_{m,n} on parts a1..am and b1..bn."""
    if m < 1 or n < 1:
        raise ValueError("part sizes must be positive")
    verts = tuple(f"a{i}" for i in range(1, m + 1)) + tuple(f"b{j}" for j in range(1, n + 1))
    edges = tuple(
        (f"a{i}b{j}", f"a{i}", f"b{j}")
        for i in range(1, m + 1)
        for j in range(1, n + 1)
    )
    return MultiGraph(verts, edges)


def multi_triangle(m) -> MultiGraph:
    """Three vertices x, y, z with every pair joined by m parallel edges."""
    if m < 1:
        raise ValueError("m must be positive")
    edges = []
    for a, b in (("x", "y"), ("y", "z"), ("z", "x")):
        for i in range(1, m + 1):
            edges.append((f"{a}{b}{i}", a, b))
    return MultiGraph(("x", "y", "z"), tuple(edges))


def theta_graph(n) -> MultiGraph:
    """Two vertices u, v joined by n parallel edges e1..en."""
    if n < 1:
        raise ValueError("n must be positive")
    edges = tuple((f"e{i}", "u", "v") for i in range(1, n + 1))
    return MultiGraph(("u", "v"), edges)


def build_named(family, *params) -> MultiGraph:
    """Build one of the named graphs.

    Args:
        family: "PG", "HG", "K" (one or two parameters), "T" or "theta".
        *params: Positive integer parameters for K, T and theta.

    Returns:
        The canonical labeled graph.

    Raises:
        ValueError: Unknown family or bad parameters.
    """
    if any(not isinstance(p, int) or p < 1 for p in params):
        raise ValueError(f"parameters must be positive integers, got {params!r}")
    if family == "PG" and not params:
        return petersen_graph()
    if family == "HG" and not params:
        return heawood_graph()
    if family == "K" and len(params) == 1:
        return complete_graph(params[0])
    if family == "K" and len(params) == 2:
        return complete_bipartite_graph(*params)
    if family == "T" and len(params) == 1:
        return multi_triangle(params[0])
    if family == "theta" and len(params) == 1:
        return theta_graph(params[0])
    raise ValueError(f"unknown named graph: {family!r} with parameters {params!r}")
