"""Hypothesis strategies for small graphs and hypergraphs."""

from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from alteration_lab.graphs import Graph, UniformHypergraph


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 8, min_edges: int = 0):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = list(combinations(range(n), 2))
    if len(pairs) < min_edges:
        n = max_n
        pairs = list(combinations(range(n), 2))
    edges = draw(
        st.lists(st.sampled_from(pairs), unique=True, min_size=min_edges, max_size=len(pairs))
        if pairs
        else st.just([])
    )
    return Graph(n, edges)


@st.composite
def hypergraphs(draw, r: int = 3, min_n: int = 3, max_n: int = 7, min_edges: int = 0):
    n = draw(st.integers(min_value=max(min_n, r), max_value=max_n))
    tuples = list(combinations(range(n), r))
    edges = draw(
        st.lists(st.sampled_from(tuples), unique=True, min_size=min_edges, max_size=len(tuples))
    )
    return UniformHypergraph(n, r, edges)
