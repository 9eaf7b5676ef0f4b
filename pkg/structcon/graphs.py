"""Drift and controlled graphs of zero patterns, built on networkx.

Nodes are labelled ``1..n``.  so(n) patterns give simple undirected graphs,
gl(n) patterns give digraphs (self-loops allowed) and su(n) patterns give
multigraphs whose edge keys are the colours ``Blue``, ``Red`` and ``Green``.
"""
import networkx as nx
from django.template.loader import render_to_string

from structcon.algebra import Family, to_matrix
from structcon.exceptions import KindMismatch, SizeMismatch

BLUE = 'Blue'
RED = 'Red'
GREEN = 'Green'
COLOURS = (BLUE, RED, GREEN)

_TAG_COLOUR = {'B': BLUE, 'C': RED}


def _empty(cls, n):
    g = cls()
    g.add_nodes_from(range(1, n + 1))
    g.graph['n'] = n
    return g


def undirected_graph(n, edges=()):
    g = _empty(nx.Graph, n)
    g.add_edges_from((i, j) for i, j in edges if i != j)
    return nx.freeze(g)


def digraph(n, arcs=()):
    g = _empty(nx.DiGraph, n)
    g.add_edges_from(arcs)
    return nx.freeze(g)


def colored_multigraph(n, edges=()):
    """``edges`` holds ``(i, j, colour)`` triples; Green only as ``(i, i)``."""
    g = _empty(nx.MultiGraph, n)
    for i, j, colour in edges:
        if colour not in COLOURS:
            raise ValueError("unknown colour {!r}".format(colour))
        if (colour == GREEN) != (i == j):
            raise ValueError("Green edges are exactly the self-loops, got {{{}, {}; {}}}".format(i, j, colour))
        i, j = min(i, j), max(i, j)
        if not g.has_edge(i, j, key=colour):
            g.add_edge(i, j, key=colour)
    return nx.freeze(g)


def is_colored(g):
    return g.is_multigraph()


def colored_edges(g):
    return sorted((min(u, v), max(u, v), key) for u, v, key in g.edges(keys=True))


def _require(kind, family):
    if kind.family is not family:
        raise KindMismatch("expected a {} pattern, got {}".format(family.value, kind))


def _so_edges(element):
    return [(b.i, b.j) for b in element.support]


def _gl_arcs(element):
    return [(b.i, b.j) for b in element.support]


def _su_edges(element):
    edges = [(b.i, b.j, _TAG_COLOUR[b.tag]) for b in element.support if b.tag in _TAG_COLOUR]
    m = to_matrix(element)
    edges.extend((k, k, GREEN) for k in range(1, element.kind.n + 1) if m[k - 1, k - 1] != 0)
    return edges


def matrix_graph_so(element):
    _require(element.kind, Family.SO)
    return undirected_graph(element.kind.n, _so_edges(element))


def matrix_graph_gl(element):
    _require(element.kind, Family.GL)
    return digraph(element.kind.n, _gl_arcs(element))


def matrix_graph_su(element):
    _require(element.kind, Family.SU)
    return colored_multigraph(element.kind.n, _su_edges(element))


def drift_graph_so(pattern):
    _require(pattern.kind, Family.SO)
    return undirected_graph(pattern.kind.n, [e for base in pattern.bases for e in _so_edges(base)])


def contr_graph_so(pattern):
    _require(pattern.kind, Family.SO)
    return undirected_graph(pattern.kind.n, [(b.i, b.j) for b in pattern.bases])


def drift_graph_gl(pattern):
    _require(pattern.kind, Family.GL)
    return digraph(pattern.kind.n, [a for base in pattern.bases for a in _gl_arcs(base)])


def contr_graph_gl(pattern):
    _require(pattern.kind, Family.GL)
    return digraph(pattern.kind.n, [(b.i, b.j) for b in pattern.bases])


def drift_graph_su(pattern):
    _require(pattern.kind, Family.SU)
    return colored_multigraph(pattern.kind.n, [e for base in pattern.bases for e in _su_edges(base)])


def contr_graph_su(pattern):
    _require(pattern.kind, Family.SU)
    edges = []
    for b in pattern.bases:
        if b.tag == 'D':
            edges.extend([(b.i, b.i, GREEN), (b.j, b.j, GREEN)])
        else:
            edges.append((b.i, b.j, _TAG_COLOUR[b.tag]))
    return colored_multigraph(pattern.kind.n, edges)


DRIFT_BUILDERS = {Family.SO: drift_graph_so, Family.GL: drift_graph_gl, Family.SU: drift_graph_su}
CONTR_BUILDERS = {Family.SO: contr_graph_so, Family.GL: contr_graph_gl, Family.SU: contr_graph_su}
MATRIX_BUILDERS = {Family.SO: matrix_graph_so, Family.GL: matrix_graph_gl, Family.SU: matrix_graph_su}


def drift_graph(pattern):
    return DRIFT_BUILDERS[pattern.kind.family](pattern)


def contr_graph(pattern):
    return CONTR_BUILDERS[pattern.kind.family](pattern)


def matrix_graph(element):
    return MATRIX_BUILDERS[element.kind.family](element)


def union(g1, g2):
    if type(g1) is not type(g2) or g1.is_directed() != g2.is_directed():
        raise SizeMismatch("cannot unite a {} with a {}".format(type(g1).__name__, type(g2).__name__))
    if g1.number_of_nodes() != g2.number_of_nodes():
        raise SizeMismatch("node counts differ: {} vs {}".format(g1.number_of_nodes(), g2.number_of_nodes()))
    g = nx.compose(g1, g2)
    g.graph['n'] = g1.number_of_nodes()
    return nx.freeze(g)


def same_graph(g1, g2):
    """Equal node sets and equal (coloured) edge sets."""
    if set(g1.nodes) != set(g2.nodes) or g1.is_directed() != g2.is_directed():
        return False
    if is_colored(g1) or is_colored(g2):
        return is_colored(g1) and is_colored(g2) and colored_edges(g1) == colored_edges(g2)
    if g1.is_directed():
        return set(g1.edges) == set(g2.edges)
    return {frozenset(e) for e in g1.edges} == {frozenset(e) for e in g2.edges}


def to_dot(g, name='G'):
    if is_colored(g):
        edges = [(u, v, colour.lower()) for u, v, colour in colored_edges(g)]
    elif g.is_directed():
        edges = [(u, v, None) for u, v in sorted(g.edges)]
    else:
        edges = [(u, v, None) for u, v in sorted((min(e), max(e)) for e in g.edges)]
    return render_to_string('structcon/graph.dot', {
        'keyword': 'digraph' if g.is_directed() else 'graph',
        'connector': '->' if g.is_directed() else '--',
        'name': name,
        'nodes': sorted(g.nodes),
        'edges': edges,
    })
