"""Graph predicates and the graph maps that mirror Lie brackets."""
import itertools
import logging

import networkx as nx

from structcon.exceptions import HasSelfLoop, NotSimple
from structcon.graphs import BLUE, GREEN, RED, colored_edges, colored_multigraph, digraph, undirected_graph

logger = logging.getLogger(__name__)


def _partition(groups):
    return sorted((frozenset(group) for group in groups), key=min)


def components(g):
    return _partition(nx.connected_components(g))


def is_connected(g):
    return nx.is_connected(g)


def strongly_connected(g):
    return nx.is_strongly_connected(g)


def weak_components(g):
    return _partition(nx.weakly_connected_components(g))


def digraph_self_loops(g):
    return frozenset(u for u, _ in nx.selfloop_edges(g))


def green_loops(g):
    return frozenset(u for u, v, key in g.edges(keys=True) if u == v and key == GREEN)


def has_multi_edge(g):
    return any(u != v and g.number_of_edges(u, v) > 1 for u, v in g.edges())


def _red_parity(colour):
    return 1 if colour == RED else 0


class ParityUnionFind(object):
    """Union-find where each node also stores its parity relative to its root."""

    def __init__(self, nodes):
        self.parent = {v: v for v in nodes}
        self.parity = {v: 0 for v in nodes}
        self.rank = {v: 0 for v in nodes}

    def find(self, v):
        path = []
        while self.parent[v] != v:
            path.append(v)
            v = self.parent[v]
        root = v
        # compress, accumulating parity from the top down
        for node in reversed(path):
            parent = self.parent[node]
            if parent != root:
                self.parity[node] ^= self.parity[parent]
            self.parent[node] = root
        return root

    def union(self, u, v, parity):
        """Record ``parity(u) xor parity(v) == parity``; False on a contradiction."""
        ru, rv = self.find(u), self.find(v)
        pu, pv = self.parity[u], self.parity[v]
        if ru == rv:
            return (pu ^ pv) == parity
        if self.rank[ru] < self.rank[rv]:
            ru, rv, pu, pv = rv, ru, pv, pu
        self.parent[rv] = ru
        self.parity[rv] = pu ^ pv ^ parity
        if self.rank[ru] == self.rank[rv]:
            self.rank[ru] += 1
        return True


def _parity_cover(g):
    cover = nx.Graph()
    for u, v, colour in colored_edges(g):
        if colour == GREEN:
            continue
        flip = _red_parity(colour)
        for side in (0, 1):
            cover.add_edge((u, side), (v, side ^ flip))
    return cover


def _odd_red_witness(g, nodes):
    cover = _parity_cover(g)
    best = None
    for v in sorted(nodes):
        if (v, 0) not in cover:
            continue
        try:
            path = nx.shortest_path(cover, (v, 0), (v, 1))
        except nx.NetworkXNoPath:
            continue
        if best is None or len(path) < len(best):
            best = path
    cycle = []
    for (a, pa), (b, pb) in zip(best, best[1:]):
        cycle.append((a, b, RED if pa != pb else BLUE))
    return cycle


def has_odd_red_cycle(g):
    """Return ``(flag, witness)``; the witness lists ``(u, v, colour)`` steps of a shortest such cycle."""
    dsu = ParityUnionFind(g.nodes)
    conflicting = []
    for u, v, colour in colored_edges(g):
        if colour == GREEN:
            continue
        if not dsu.union(u, v, _red_parity(colour)):
            conflicting.append(u)
    if not conflicting:
        return False, None
    conflicts = {dsu.find(u) for u in conflicting}
    nodes = [v for v in g.nodes if dsu.find(v) in conflicts]
    return True, _odd_red_witness(g, nodes)


def _require_simple(g):
    if nx.number_of_selfloops(g):
        raise NotSimple("graph has self-loops at {}".format(sorted(digraph_self_loops(g))))


def closure_step_M(g):
    _require_simple(g)
    arcs = set(g.edges)
    for i, j in g.edges:
        for k in g.successors(j):
            if i != k:
                arcs.add((i, k))
    return digraph(g.number_of_nodes(), arcs)


def _iterate(step, g, same):
    n = g.number_of_nodes()
    steps = 0
    for _ in range(n * n):
        h = step(g)
        if same(g, h):
            break
        g = h
        steps += 1
    logger.debug("%s: fixpoint after %d steps", step.__name__, steps)
    return g, steps


def iterate_M(g):
    return _iterate(closure_step_M, g, lambda a, b: a.number_of_edges() == b.number_of_edges())


def is_simple_complete(g):
    _require_simple(g)
    n = g.number_of_nodes()
    return g.number_of_edges() == n * (n - 1)


# Blue o Blue -> Blue, Red o Red -> Blue, Red o Blue -> Red
_T_RULES = {
    (BLUE, BLUE): BLUE,
    (RED, RED): BLUE,
    (RED, BLUE): RED,
    (BLUE, RED): RED,
}


def closure_step_T(g):
    if nx.number_of_selfloops(g):
        raise HasSelfLoop("T is defined on loop-free coloured multigraphs")
    edges = set(colored_edges(g))
    for j in g.nodes:
        incident = [(v, key) for _, v, key in g.edges(j, keys=True)]
        for (i, first), (k, second) in itertools.permutations(incident, 2):
            if i != k:
                edges.add((min(i, k), max(i, k), _T_RULES[first, second]))
    return colored_multigraph(g.number_of_nodes(), edges)


def iterate_T(g):
    return _iterate(closure_step_T, g, lambda a, b: a.number_of_edges() == b.number_of_edges())


def spans_complete_T(g):
    """True when every node pair carries an edge in the T fixpoint."""
    fixpoint, _ = iterate_T(g)
    n = fixpoint.number_of_nodes()
    pairs = {(u, v) for u, v, _ in colored_edges(fixpoint)}
    return len(pairs) == n * (n - 1) // 2


def circumjacent_digraph(g, i, j):
    _require_simple(g)
    arcs = {(i, k) for k in g.successors(j) if k != i}
    arcs |= {(k, j) for k in g.predecessors(i) if k != j}
    return digraph(g.number_of_nodes(), arcs)


def circumjacent_undirected(g, i, j):
    edges = {(i, k) for k in g.neighbors(j) if k != i}
    edges |= {(j, k) for k in g.neighbors(i) if k != j}
    return undirected_graph(g.number_of_nodes(), edges)
