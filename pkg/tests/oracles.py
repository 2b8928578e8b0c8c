# tests/oracles.py
"""Slow, first-principles reference implementations used by the oracle tests."""
import math
from itertools import combinations
from typing import List, Sequence, Set

import networkx as nx
import numpy as np

from genperm.backend.graph import Cover, Graph, build_cover, build_graph


def to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.node_count))
    G.add_edges_from(g.edges)
    return G


def comm_sets(cover: Cover) -> List[Set[int]]:
    return [set(c) for c in cover.communities]


# -----------------------------
# Fuzzed instances
# -----------------------------
def random_graph(rng: np.random.Generator, max_nodes: int) -> Graph:
    """Random graph on 4..max_nodes nodes with no isolated vertex."""
    n = int(rng.integers(4, max_nodes + 1))
    p = float(rng.uniform(0.15, 0.5))
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    touched = {x for e in edges for x in e}
    for v in range(n):
        if v not in touched:
            u = int(rng.integers(n - 1))
            u = u if u < v else u + 1
            edges.append((min(u, v), max(u, v)))
            touched.update((u, v))
    return build_graph(edges, node_count_hint=n)


def random_overlapping_cover(rng: np.random.Generator, g: Graph) -> Cover:
    n = g.node_count
    k = int(rng.integers(1, 6))
    comms = []
    for _ in range(k):
        size = int(rng.integers(1, n + 1))
        comms.append(sorted(int(v) for v in rng.choice(n, size=size, replace=False)))
    return build_cover(g, comms)


def random_partition(rng: np.random.Generator, g: Graph) -> Cover:
    labels = rng.integers(0, int(rng.integers(1, 6)), size=g.node_count)
    return build_cover(g, [np.flatnonzero(labels == lab).tolist() for lab in np.unique(labels)])


# -----------------------------
# Scoring metrics
# -----------------------------
def naive_genperm_vc(G: nx.Graph, comms: Sequence[Set[int]], v: int, c: int) -> float:
    mine = {i for i, C in enumerate(comms) if v in C}
    nbrs = list(G.neighbors(v))
    shared = {u: sum(1 for i in mine if u in comms[i]) for u in nbrs}
    internal = sum(1 for u in nbrs if shared[u] > 0)

    external = {}
    for u in nbrs:
        if shared[u]:
            continue
        for i, C in enumerate(comms):
            if u in C:
                external[i] = external.get(i, 0) + 1
    e_max = max(max(external.values(), default=0), 1)

    in_c = [u for u in nbrs if u in comms[c]]
    i_c = sum(1.0 / shared[u] for u in in_c)
    k = len(in_c)
    if k >= 2:
        links = sum(1 for a, b in combinations(in_c, 2) if G.has_edge(a, b))
        c_in = links / (k * (k - 1) / 2)
    else:
        c_in = 1.0 if internal < 2 else 0.0

    value = i_c / (e_max * G.degree(v))
    if internal:
        value -= (1.0 - c_in) * i_c / internal
    return value


def naive_genperm_network(G: nx.Graph, comms: Sequence[Set[int]]) -> float:
    total = 0.0
    for v in G.nodes():
        total += sum(naive_genperm_vc(G, comms, v, c) for c, C in enumerate(comms) if v in C)
    return total / G.number_of_nodes()


def naive_permanence(G: nx.Graph, comms: Sequence[Set[int]], v: int) -> float:
    (own,) = [C for C in comms if v in C]
    nbrs = list(G.neighbors(v))
    inside = [u for u in nbrs if u in own]
    external = {}
    for u in nbrs:
        if u not in own:
            (theirs,) = [i for i, C in enumerate(comms) if u in C]
            external[theirs] = external.get(theirs, 0) + 1
    e_max = max(max(external.values(), default=0), 1)
    k = len(inside)
    if k >= 2:
        c_in = sum(1 for a, b in combinations(inside, 2) if G.has_edge(a, b)) / (k * (k - 1) / 2)
    else:
        c_in = 1.0
    return k / (e_max * G.degree(v)) - (1.0 - c_in)


def naive_eq(G: nx.Graph, comms: Sequence[Set[int]]) -> float:
    m = G.number_of_edges()
    overlap = {v: sum(1 for C in comms if v in C) for v in G.nodes()}
    total = 0.0
    for C in comms:
        for i in C:
            for j in C:
                a = 1.0 if G.has_edge(i, j) else 0.0
                total += (a - G.degree(i) * G.degree(j) / (2 * m)) / (overlap[i] * overlap[j])
    return total / (2 * m)


def naive_qov(G: nx.Graph, comms: Sequence[Set[int]]) -> float:
    overlap = {v: sum(1 for C in comms if v in C) for v in G.nodes()}
    total = 0.0
    for C in comms:
        n_c = len(C)
        if n_c < 2:
            continue
        sub = G.subgraph(C)
        density = sub.number_of_edges() / (n_c * (n_c - 1) / 2)
        terms = []
        for i in C:
            inside = sub.degree(i)
            outside = G.degree(i) - inside
            terms.append((inside - outside) / (G.degree(i) * overlap[i]))
        total += sum(terms) / n_c * density
    return total / len(comms)


def naive_cc(n: int, comms: Sequence[Set[int]]) -> float:
    return len(set().union(*[C for C in comms if len(C) >= 3])) / n


def naive_oc(n: int, comms: Sequence[Set[int]]) -> float:
    return sum(sum(1 for C in comms if v in C and len(C) >= 3) for v in range(n)) / n


# -----------------------------
# Validation metrics
# -----------------------------
def naive_omega(n: int, truth: Sequence[Set[int]], detected: Sequence[Set[int]]) -> float:
    agree = 0
    for u in range(n):
        for v in range(n):
            t = sum(1 for C in truth if u in C and v in C)
            d = sum(1 for C in detected if u in C and v in C)
            agree += t == d
    return agree / (n * n)


def naive_fscore(truth: Sequence[Set[int]], detected: Sequence[Set[int]]) -> float:
    def f(a, b):
        return 2 * len(a & b) / (len(a) + len(b))

    left = sum(max(f(t, d) for d in detected) for t in truth) / len(truth)
    right = sum(max(f(t, d) for t in truth) for d in detected) / len(detected)
    return (left + right) / 2


def _h(count: int, n: int) -> float:
    p = count / n
    return -p * math.log2(p) if p > 0 else 0.0


def _entropy(C: Set[int], n: int) -> float:
    return _h(len(C), n) + _h(n - len(C), n)


def _cond(xs: Sequence[Set[int]], ys: Sequence[Set[int]], n: int) -> float:
    total = 0.0
    for X in xs:
        best = None
        for Y in ys:
            d = len(X & Y)
            c = len(X - Y)
            b = len(Y - X)
            a = n - len(X | Y)
            if _h(a, n) + _h(d, n) >= _h(b, n) + _h(c, n):
                value = max(_h(a, n) + _h(b, n) + _h(c, n) + _h(d, n) - _entropy(Y, n), 0.0)
                best = value if best is None else min(best, value)
        total += _entropy(X, n) if best is None else best
    return total


def naive_onmi(n: int, truth: Sequence[Set[int]], detected: Sequence[Set[int]]) -> float:
    h_x = sum(_entropy(X, n) for X in truth)
    h_y = sum(_entropy(Y, n) for Y in detected)
    mutual = 0.5 * (h_x - _cond(truth, detected, n) + h_y - _cond(detected, truth, n))
    return min(1.0, max(0.0, mutual / max(h_x, h_y)))
