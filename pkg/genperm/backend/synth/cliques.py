# genperm/backend/synth/cliques.py
"""
Clique constructions for the resolution-limit arguments.

Every generator is deterministic and returns the graph together with its
ground-truth cover. Cliques get contiguous ids in construction order and
bridge edges attach to the lowest-id vertex of a clique (the second-lowest
when a clique needs two distinct attachment points).
"""
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Literal, Tuple

from pydantic import BaseModel, field_validator, model_validator

from genperm.backend.errors import SynthError
from genperm.backend.graph.cover import Cover, build_cover
from genperm.backend.graph.graph import Graph, build_graph

MIN_CLIQUE = 3


def _clique_edges(nodes: List[int]) -> List[Tuple[int, int]]:
    return list(combinations(nodes, 2))


def _check_sizes(*sizes: int) -> None:
    for s in sizes:
        if s < MIN_CLIQUE:
            raise SynthError(f"clique size {s} below {MIN_CLIQUE}")


# -----------------------------
# Three-clique chain
# -----------------------------
@dataclass
class CliqueChain:
    graph: Graph
    cover: Cover
    x: List[int]
    y: List[int]
    z: List[int]
    u_x: int
    v_x: int
    u_z: int
    v_z: int

    @property
    def affected(self) -> Tuple[int, int, int, int]:
        return (self.u_x, self.v_x, self.v_z, self.u_z)


def gen_clique_chain(n_x: int, n_y: int, n_z: int) -> CliqueChain:
    """
    Cliques X, Y, Z with single edges (u_x, v_x) and (v_z, u_z); X and Z are
    not connected. The cover is the three cliques.
    """
    _check_sizes(n_x, n_y, n_z)
    x = list(range(n_x))
    y = list(range(n_x, n_x + n_y))
    z = list(range(n_x + n_y, n_x + n_y + n_z))
    u_x, v_x, v_z, u_z = x[0], y[0], y[1], z[0]
    edges = _clique_edges(x) + _clique_edges(y) + _clique_edges(z) + [(u_x, v_x), (v_z, u_z)]
    g = build_graph(edges)
    return CliqueChain(g, build_cover(g, [x, y, z]), x, y, z, u_x, v_x, u_z, v_z)


def chain_case_covers(chain: CliqueChain) -> Dict[int, Cover]:
    """
    The three candidate structures around the middle clique.

    1: each bridge endpoint also joins the clique across the bridge
       (X+v_x, Y+u_x, Y+u_z, Z+v_z);
    2: Y merged with each side (X+Y, Y+Z);
    3: three separate communities.
    """
    g, x, y, z = chain.graph, chain.x, chain.y, chain.z
    case1 = [x + [chain.v_x], y + [chain.u_x], y + [chain.u_z], z + [chain.v_z]]
    case2 = [x + y, y + z]
    return {1: build_cover(g, case1), 2: build_cover(g, case2), 3: chain.cover}


def chain_case_totals(n_x: int, n_y: int, n_z: int) -> Dict[int, float]:
    """Closed-form GenPerm sums of u_x, v_x, v_z, u_z under each case cover."""
    return {
        1: 4 - 5 / (2 * n_x) - 5 / (2 * n_z) - 3 / n_y + 1 / n_x**2 + 1 / n_z**2,
        2: 4 - 2 / n_x - 2 / n_y - 2 / n_z - 2 / n_y**2,
        3: 4 - 1 / n_x - 2 / n_y - 1 / n_z,
    }


# -----------------------------
# Ring of cliques
# -----------------------------
def gen_clique_ring(k: int, s: int) -> Tuple[Graph, Cover]:
    """
    k cliques of size s in a circle; bridge vertex i (degree 2) joins the
    second-lowest vertex of clique i to the lowest vertex of clique i+1.
    The cover is the k cliques plus one singleton per bridge.
    """
    if k < 3:
        raise SynthError(f"a ring needs at least 3 cliques, got {k}")
    _check_sizes(s)
    cliques = [list(range(i * s, (i + 1) * s)) for i in range(k)]
    bridges = [k * s + i for i in range(k)]
    edges = []
    for clique in cliques:
        edges.extend(_clique_edges(clique))
    for i, b in enumerate(bridges):
        edges.append((cliques[i][1], b))
        edges.append((b, cliques[(i + 1) % k][0]))
    g = build_graph(edges)
    return g, build_cover(g, cliques + [[b] for b in bridges])


def ring_ground_truth_genperm(k: int, s: int) -> float:
    """Network GenPerm of gen_clique_ring's ground truth: two attachment vertices per clique score (s-1)/s."""
    return (k * (s - 2) + 2 * k * (s - 1) / s) / (k * s + k)


# -----------------------------
# Clique star
# -----------------------------
@dataclass
class CliqueStar:
    graph: Graph
    cover: Cover
    center: List[int]
    surrounding: List[List[int]]


def gen_clique_star(n: int, surround_sizes: List[int]) -> CliqueStar:
    """
    Center clique K_n; surrounding clique j has size surround_sizes[j] and
    shares the center edge (j, j+1 mod n) of the cycle 0..n-1.
    """
    if n < MIN_CLIQUE:
        raise SynthError(f"center clique size {n} below {MIN_CLIQUE}")
    if len(surround_sizes) > n:
        raise SynthError(f"{len(surround_sizes)} surrounding cliques but the center cycle has {n} edges")
    _check_sizes(*surround_sizes)

    center = list(range(n))
    edges = _clique_edges(center)
    surrounding = []
    next_id = n
    for j, size in enumerate(surround_sizes):
        fresh = list(range(next_id, next_id + size - 2))
        next_id += size - 2
        clique = [j, (j + 1) % n] + fresh
        surrounding.append(sorted(clique))
        edges.extend(e for e in _clique_edges(clique) if not (e[0] < n and e[1] < n))
    g = build_graph(edges)
    return CliqueStar(g, build_cover(g, [center] + surrounding), center, surrounding)


# -----------------------------
# Two cliques and a bridge
# -----------------------------
def gen_bridge_pair(s_a: int, s_b: int | None = None) -> Tuple[Graph, Cover]:
    """K_{s_a} and K_{s_b} joined by one edge between their lowest-id vertices."""
    s_b = s_a if s_b is None else s_b
    _check_sizes(s_a, s_b)
    a = list(range(s_a))
    b = list(range(s_a, s_a + s_b))
    g = build_graph(_clique_edges(a) + _clique_edges(b) + [(a[0], b[0])])
    return g, build_cover(g, [a, b])


# -----------------------------
# CliqueSpec dispatch
# -----------------------------
class CliqueSpec(BaseModel):
    sizes: List[int]
    topology: Literal["chain", "ring", "star", "bridge-pair"]
    seed: int = 0

    @field_validator("sizes")
    @classmethod
    def _sizes_valid(cls, sizes: List[int]) -> List[int]:
        if not sizes or min(sizes) < MIN_CLIQUE:
            raise ValueError(f"clique sizes must all be >= {MIN_CLIQUE}")
        return sizes

    @model_validator(mode="after")
    def _fits_topology(self) -> "CliqueSpec":
        n = len(self.sizes)
        if self.topology == "chain" and n != 3:
            raise ValueError("chain takes exactly three sizes")
        if self.topology == "ring" and (n < 3 or len(set(self.sizes)) != 1):
            raise ValueError("ring takes at least three equal sizes")
        if self.topology == "star" and not 2 <= n <= self.sizes[0] + 1:
            raise ValueError("star takes the center size followed by 1..center surrounding sizes")
        if self.topology == "bridge-pair" and n != 2:
            raise ValueError("bridge-pair takes exactly two sizes")
        return self


def generate_cliques(spec: CliqueSpec) -> Tuple[Graph, Cover]:
    s = spec.sizes
    if spec.topology == "chain":
        chain = gen_clique_chain(*s)
        return chain.graph, chain.cover
    if spec.topology == "ring":
        return gen_clique_ring(len(s), s[0])
    if spec.topology == "star":
        star = gen_clique_star(s[0], s[1:])
        return star.graph, star.cover
    return gen_bridge_pair(s[0], s[1])
