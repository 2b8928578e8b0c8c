# genperm/backend/detect/max_genperm.py
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Literal, Optional, Sequence, Set

import numpy as np
from pydantic import BaseModel, Field
from tqdm import tqdm

from genperm.backend.config import DEFAULT_SEED, MAX_ITER
from genperm.backend.errors import DetectionError
from genperm.backend.experiments.trials import derive_seeds
from genperm.backend.graph.cover import Cover, build_cover, canonical_order, lift_communities
from genperm.backend.graph.graph import Graph, connected_components, induced_subgraph
from genperm.backend.metrics.genperm import genperm_network, genperm_per_vertex, genperm_value, internal_clustering

logger = logging.getLogger(__name__)

# float guard for "> 0", "> current" and "== 1" comparisons on one vertex
_EPS = 1e-12
# same for sums over a neighbourhood
_TIE = 1e-9


class DetectConfig(BaseModel):
    max_iter: int = Field(MAX_ITER, ge=1)
    ordering: Literal["id", "shuffle"] = "id"
    seed: int = DEFAULT_SEED
    objective_tolerance: float = Field(0.0, ge=0.0)
    per_component: bool = False
    # warm start: continue from these communities instead of one per edge
    initial_communities: Optional[List[List[int]]] = None
    progress: bool = False


@dataclass
class DetectionResult:
    cover: Cover
    per_vertex_genperm: np.ndarray
    objective_history: List[float]
    iterations_used: int
    converged: bool
    vertex_updates: List[int] = field(default_factory=list)
    merges: List[int] = field(default_factory=list)


class _SweepState:
    """
    Mutable community assignment swept by MaxGenPerm.

    Community ids are handed out once and never reused; a community that loses
    its last member is deleted on the spot. Every accepted change leaves the
    summed GenPerm of the touched vertices no lower than before.
    """

    def __init__(self, g: Graph, communities: Iterable[Iterable[int]]):
        self.g = g
        self.members: Dict[int, Set[int]] = {}
        self.membership: List[Set[int]] = [set() for _ in range(g.node_count)]
        self._next_id = 0
        for comm in communities:
            self._open(comm)

    def _open(self, nodes: Iterable[int]) -> int:
        cid = self._next_id
        self._next_id += 1
        self.members[cid] = set(nodes)
        for v in self.members[cid]:
            self.membership[v].add(cid)
        return cid

    def _assign(self, v: int, new: Set[int]) -> None:
        old = self.membership[v]
        for c in old - new:
            group = self.members[c]
            group.discard(v)
            if not group:
                del self.members[c]
        for c in new - old:
            self.members[c].add(v)
        self.membership[v] = set(new)
        if not new:
            self._open((v,))

    def communities(self) -> List[List[int]]:
        # {v} left over from an edge community adds nothing once v sits elsewhere
        kept = [m for m in self.members.values() if len(m) > 1 or not self._in_group(next(iter(m)))]
        return canonical_order(kept)

    def _in_group(self, v: int) -> bool:
        return any(len(self.members[c]) > 1 for c in self.membership[v])

    # -----------------------------
    # Scoring
    # -----------------------------
    def _shares(self, x: int, over: Optional[Dict[int, Set[int]]] = None) -> Dict[int, float]:
        """P_g^c(x) for every community of x, memberships in `over` taking precedence."""
        over = over or {}
        g = self.g
        mine = over.get(x, self.membership[x])
        sharing: Dict[int, int] = {}
        external: Dict[int, int] = defaultdict(int)
        nbrs_in_c: Dict[int, List[int]] = defaultdict(list)
        for u in g.neighbors(x):
            theirs = over.get(u, self.membership[u])
            shared = mine & theirs
            if shared:
                sharing[u] = len(shared)
                for c in shared:
                    nbrs_in_c[c].append(u)
            else:
                for c in theirs:
                    external[c] += 1
        internal = len(sharing)
        e_max = max(max(external.values(), default=0), 1)
        degree = g.degree(x)
        out = {}
        for c in mine:
            nb = nbrs_in_c.get(c)
            if not nb:
                out[c] = 0.0
                continue
            i_c = sum(1.0 / sharing[u] for u in nb)
            out[c] = genperm_value(i_c, internal, e_max, degree, internal_clustering(g, nb, internal))
        return out

    def _total(self, x: int, over: Optional[Dict[int, Set[int]]] = None) -> float:
        return sum(self._shares(x, over).values())

    def _gain(self, over: Dict[int, Set[int]], affected: Iterable[int], before: Dict[int, float]) -> float:
        delta = 0.0
        for x in affected:
            if x not in before:
                before[x] = self._total(x)
            delta += self._total(x, over) - before[x]
        return delta

    # -----------------------------
    # One vertex update
    # -----------------------------
    def update(self, v: int) -> bool:
        """
        Apply the MaxGenPerm move for v; True when its membership changed.

        Every community holding a neighbour of v is scored with v added on top
        of its current membership. Those with a positive share that also raise
        the GenPerm of the neighbours they touch form the new membership, which
        is adopted when it beats v's current total without lowering the summed
        GenPerm of v and its neighbours.
        """
        g = self.g
        cur = self.membership[v]
        current = self._shares(v)
        p_cur = sum(current.values())
        if p_cur >= 1.0 - _EPS:
            return False

        comm_nbrs: Dict[int, List[int]] = defaultdict(list)
        for u in g.neighbors(v):
            for c in self.membership[u]:
                comm_nbrs[c].append(u)
        base = {u: len(self.membership[u] & cur) for u in g.neighbors(v)}
        outside = [u for u, k in base.items() if not k]
        internal_base = len(base) - len(outside)
        external: Dict[int, int] = defaultdict(int)
        for u in outside:
            for c in self.membership[u]:
                external[c] += 1
        ranked = sorted(((n, c) for c, n in external.items()), reverse=True)
        degree = g.degree(v)

        before: Dict[int, float] = {}
        temp: Set[int] = set()
        for c in sorted(comm_nbrs):
            if c in cur:
                if current[c] > _EPS:
                    temp.add(c)
                continue
            nb = comm_nbrs[c]
            fresh = [u for u in nb if base[u] == 0]
            internal = internal_base + len(fresh)
            i_c = sum(1.0 / (base[u] + 1) for u in nb)
            e_max = self._e_max_joining(ranked, fresh)
            score = genperm_value(i_c, internal, e_max, degree, internal_clustering(g, nb, internal))
            if score <= _EPS:
                continue
            affected = {v, *nb, *outside}
            if self._gain({v: cur | {c}}, affected, before) > _TIE:
                temp.add(c)

        p_new = self._total(v, {v: temp}) if temp else 0.0
        if p_new <= p_cur + _EPS:
            return False
        if self._gain({v: temp}, [v, *g.neighbors(v)], before) <= _TIE:
            logger.debug("vertex %d: move kept back, neighbourhood GenPerm would not rise", v)
            return False
        logger.debug("vertex %d: %d -> %d communities, %.6f -> %.6f", v, len(cur), len(temp), p_cur, p_new)
        self._assign(v, temp)
        return True

    def _e_max_joining(self, ranked, fresh: Sequence[int]) -> int:
        """E_max(v) once the neighbours in `fresh` start sharing a community with v."""
        if not fresh:
            return max(ranked[0][0], 1) if ranked else 1
        dropped: Dict[int, int] = defaultdict(int)
        for u in fresh:
            for c in self.membership[u]:
                dropped[c] += 1
        best = 0
        for n, c in ranked:
            if n <= best:
                break
            best = max(best, n - dropped[c])
        return max(best, 1)

    # -----------------------------
    # Merging the communities of one vertex
    # -----------------------------
    def consolidate(self, v: int) -> int:
        """
        Merge pairs of v's communities whose union is still joined by every
        edge across the two sides, whenever the merge does not lower the
        GenPerm of the members and their neighbours. Returns the merge count.
        """
        merged = 0
        while True:
            for a in sorted(self.membership[v]):
                partners = sorted(
                    (b for b in self.membership[v] if b != a),
                    key=lambda b: (-len(self.members[a] & self.members[b]), b),
                )
                if any(self._merge(a, b) for b in partners if self._joinable(a, b)):
                    merged += 1
                    break
            else:
                return merged

    def _joinable(self, a: int, b: int) -> bool:
        left = self.members[a] - self.members[b]
        right = self.members[b] - self.members[a]
        return all(right <= self.g.neighbor_set(x) for x in left)

    def _merge(self, a: int, b: int) -> bool:
        keep, gone = set(self.members[a]), set(self.members[b])
        affected = keep | gone
        for w in keep | gone:
            affected.update(self.g.neighbors(w))
        before = {x: self._total(x) for x in affected}

        for w in gone:
            self.membership[w].discard(b)
            self.membership[w].add(a)
        self.members[a] = keep | gone
        del self.members[b]
        if sum(self._total(x) - before[x] for x in affected) >= -_TIE:
            return True

        self.members[a] = keep
        self.members[b] = gone
        for w in gone:
            self.membership[w].add(b)
            if w not in keep:
                self.membership[w].discard(a)
        return False


def _order(n: int, cfg: DetectConfig, seed: int) -> List[int]:
    if cfg.ordering == "shuffle":
        return [int(v) for v in np.random.default_rng(seed).permutation(n)]
    return list(range(n))


def _detect_connected(g: Graph, cfg: DetectConfig, seed: int, initial: Optional[List[List[int]]]) -> DetectionResult:
    if initial is None:
        initial = [list(e) for e in g.edges]
    else:
        initial = [list(c) for c in build_cover(g, initial).communities]
    state = _SweepState(g, initial)
    order = _order(g.node_count, cfg, seed)

    history: List[float] = []
    updates: List[int] = []
    merges: List[int] = []
    converged = False
    for it in range(1, cfg.max_iter + 1):
        changed = merged = 0
        for v in tqdm(order, desc=f"sweep {it}", disable=not cfg.progress, leave=False):
            if state.update(v):
                changed += 1
                merged += state.consolidate(v)
        cover = build_cover(g, state.communities())
        value = genperm_network(g, cover)
        updates.append(changed)
        merges.append(merged)
        logger.info(
            "iteration %d: %d vertex moves, %d merges, GenPerm %.12g, %d communities", it, changed, merged, value, len(cover)
        )
        if history and value < history[-1] - _TIE:
            logger.warning("network GenPerm fell from %.12g to %.12g at iteration %d", history[-1], value, it)
        repeated = bool(history) and abs(value - history[-1]) <= cfg.objective_tolerance
        history.append(value)
        if changed == 0 or repeated:
            converged = True
            break

    return DetectionResult(
        cover=cover,
        per_vertex_genperm=genperm_per_vertex(g, cover),
        objective_history=history,
        iterations_used=len(history),
        converged=converged,
        vertex_updates=updates,
        merges=merges,
    )


def max_genperm(g: Graph, cfg: DetectConfig | None = None) -> DetectionResult:
    """
    MaxGenPerm: greedy per-vertex GenPerm maximization.

    Starts from one community per edge (or cfg.initial_communities) and sweeps
    the vertices in the configured order until a sweep moves nothing, the
    network GenPerm repeats or max_iter sweeps are done. After each accepted
    move the communities of the moved vertex are merged where that costs no
    GenPerm, so a clique split into overlapping pieces ends up whole.
    Disconnected graphs need cfg.per_component.
    """
    cfg = cfg or DetectConfig()
    degrees = g.degrees()
    if g.node_count == 0:
        raise DetectionError("cannot detect communities in an empty graph")
    if (degrees == 0).any():
        raise DetectionError(f"graph has isolated vertices, e.g. {int(np.flatnonzero(degrees == 0)[0])}")

    labels = connected_components(g)
    n_comp = int(labels.max()) + 1
    if n_comp == 1:
        return _detect_connected(g, cfg, cfg.seed, cfg.initial_communities)
    if not cfg.per_component:
        raise DetectionError(f"graph has {n_comp} connected components; enable per-component detection")

    logger.info("detecting on %d components separately", n_comp)
    seeds = derive_seeds(cfg.seed, n_comp)
    merged: List[List[int]] = []
    parts = []
    for comp, seed in enumerate(seeds):
        nodes = np.flatnonzero(labels == comp)
        sub, id_map = induced_subgraph(g, nodes)
        initial = None
        if cfg.initial_communities is not None:
            initial = [[id_map[v] for v in c if v in id_map] for c in cfg.initial_communities]
            initial = [c for c in initial if c]
        result = _detect_connected(sub, cfg, seed, initial)
        merged.extend(lift_communities(result.cover.communities, id_map))
        parts.append((len(nodes), result))

    cover = build_cover(g, canonical_order(merged))
    iterations = max(r.iterations_used for _, r in parts)
    history = []
    for t in range(iterations - 1):
        weighted = sum(n * r.objective_history[min(t, r.iterations_used - 1)] for n, r in parts)
        history.append(weighted / g.node_count)
    history.append(genperm_network(g, cover))

    def per_sweep(counts) -> List[int]:
        return [sum(c[t] for c in counts if t < len(c)) for t in range(iterations)]

    return DetectionResult(
        cover=cover,
        per_vertex_genperm=genperm_per_vertex(g, cover),
        objective_history=history,
        iterations_used=iterations,
        converged=all(r.converged for _, r in parts),
        vertex_updates=per_sweep([r.vertex_updates for _, r in parts]),
        merges=per_sweep([r.merges for _, r in parts]),
    )


def detect_cover(g: Graph, cfg: DetectConfig | None = None) -> Cover:
    """The cover found by max_genperm; a plain graph -> cover detector."""
    return max_genperm(g, cfg).cover
