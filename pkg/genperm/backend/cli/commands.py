# genperm/backend/cli/commands.py
"""
Sub-commands of the `genperm` executable.

Scalar reports go out as JSON, tables as CSV, communities in the line format
(one community per line). Node ids in and out follow the global --one-indexed
flag; community indices (--community) always count from 0 in file order.
"""
import logging
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import List, Optional, Sequence

import click
import yaml

from genperm.backend.cli.manifest import RunClock, emit, render_csv, render_json
from genperm.backend.config import DEFAULT_SEED, MAX_ITER
from genperm.backend.detect import DetectConfig, detect_cover, max_genperm, ordering_runs
from genperm.backend.errors import CoverError
from genperm.backend.experiments.core_periphery import degree_assortativity, farness_profile, genperm_assortativity
from genperm.backend.experiments.perturbation import STRATEGIES, PerturbationSpec, perturb, robustness_sweep
from genperm.backend.experiments.profile import binned_profile
from genperm.backend.experiments.removal import layered_removal
from genperm.backend.experiments.sampling import sample_subnetwork
from genperm.backend.experiments.spreading import POLICIES, spread, spreading_comparison
from genperm.backend.graph import Cover, Graph, build_cover, build_graph
from genperm.backend.ingestion import (
    format_communities,
    load_communities,
    load_cover,
    load_edge_list,
    write_communities,
    write_edge_list,
)
from genperm.backend.metrics import SCORING_METRICS, genperm_table, score_cover
from genperm.backend.synth import (
    gen_bridge_pair,
    gen_clique_chain,
    gen_clique_ring,
    gen_clique_star,
    gen_planted_overlap,
)
from genperm.backend.validate import rank_correlation_protocol, validate_covers

logger = logging.getLogger(__name__)


@dataclass
class CliSettings:
    one_indexed: bool = False
    jobs: int = 1

    def node_id(self, v: int) -> int:
        return v + 1 if self.one_indexed else v

    def node_ids(self, vs) -> List[int]:
        return [self.node_id(int(v)) for v in vs]


pass_settings = click.make_pass_decorator(CliSettings, ensure=True)


# -----------------------------
# Shared options and loaders
# -----------------------------
def _existing(flag: str, dest: str, required: bool = True, help: str | None = None):
    return click.option(
        flag, dest, required=required, help=help,
        type=click.Path(exists=True, dir_okay=False, path_type=Path),
    )


def _target(flag: str, dest: str, required: bool = False, help: str | None = None):
    return click.option(flag, dest, required=required, help=help, type=click.Path(dir_okay=False, path_type=Path))


graph_option = _existing("--graph", "graph_path", help="Edge-list file.")
cover_option = _existing("--cover", "cover_path", help="Community file (line or membership format).")
out_option = _target("--out", "out", help="Write here instead of stdout (adds a .manifest.json sidecar).")
seed_option = click.option(
    "--seed", type=int, envvar="GENPERM_SEED", default=DEFAULT_SEED, show_default=True,
    help="RNG seed; falls back to GENPERM_SEED.",
)


def _number_list(kind):
    def parse(ctx, param, value):
        if value is None:
            return None
        try:
            return [kind(x) for x in value.split(",") if x.strip()]
        except ValueError:
            raise click.BadParameter(f"expected comma-separated {kind.__name__} values, got {value!r}") from None
    return parse


def _read_graph(settings: CliSettings, path: Path) -> Graph:
    g, _ = load_edge_list(path, one_indexed=settings.one_indexed)
    return g


def _read_cover(settings: CliSettings, path: Path, g: Graph) -> Cover:
    return load_cover(path, g, one_indexed=settings.one_indexed)


def _community_text(settings: CliSettings, cover: Cover) -> str:
    return format_communities(cover.communities, one_indexed=settings.one_indexed)


def _write_pair(settings: CliSettings, g: Graph, cover: Cover, out_graph: Path, out_cover: Path) -> List[Path]:
    write_edge_list(g, out_graph, one_indexed=settings.one_indexed)
    write_communities(cover, out_cover, one_indexed=settings.one_indexed)
    return [out_graph, out_cover]


def _pick_community(cover: Cover, c: int) -> int:
    if not 0 <= c < len(cover):
        raise CoverError(f"community index {c} outside 0..{len(cover) - 1}")
    return c


# -----------------------------
# detect / score / validate / rankcorr
# -----------------------------
@click.command()
@graph_option
@click.option("--max-iter", type=click.IntRange(min=1), default=MAX_ITER, show_default=True)
@click.option("--ordering", type=click.Choice(["id", "shuffle"]), default="id", show_default=True)
@seed_option
@click.option("--tolerance", type=click.FloatRange(min=0.0), default=0.0, show_default=True,
              help="Stop when the network GenPerm moves by no more than this.")
@click.option("--per-component", is_flag=True, help="Detect on each connected component separately.")
@_existing("--init", "init_path", required=False, help="Warm start from these communities.")
@click.option("--progress", is_flag=True, help="Show a progress bar per sweep.")
@out_option
@_target("--report", "report_path", help="Write the run report (JSON) here.")
@pass_settings
def detect(settings, graph_path, max_iter, ordering, seed, tolerance, per_component, init_path, progress, out, report_path):
    """Detect communities with MaxGenPerm."""
    clock = RunClock(
        "detect", {"graph": graph_path, "init": init_path},
        {"max_iter": max_iter, "ordering": ordering, "tolerance": tolerance, "per_component": per_component,
         "one_indexed": settings.one_indexed},
        seed,
    )
    g = _read_graph(settings, graph_path)
    initial = load_communities(init_path, one_indexed=settings.one_indexed) if init_path else None
    cfg = DetectConfig(
        max_iter=max_iter,
        ordering=ordering,
        seed=seed,
        objective_tolerance=tolerance,
        per_component=per_component,
        initial_communities=initial,
        progress=progress,
    )
    result = max_genperm(g, cfg)

    written = []
    if report_path is not None:
        report = {
            "genperm": result.objective_history[-1],
            "communities": len(result.cover),
            "iterations": result.iterations_used,
            "converged": result.converged,
            "objective_history": result.objective_history,
            "vertex_updates": result.vertex_updates,
            "merges": result.merges,
        }
        report_path.parent.mkdir(parents=True, exist_ok=True)
        report_path.write_text(render_json(report), encoding="utf-8")
        written.append(report_path)
    emit(_community_text(settings, result.cover), out, clock, written)


@click.command()
@graph_option
@cover_option
@click.option("--table", is_flag=True, help="Per-(vertex, community) GenPerm CSV instead of the summary.")
@_target("--per-vertex", "per_vertex", help="Also write the per-(vertex, community) CSV here; its path joins the summary.")
@out_option
@pass_settings
def score(settings, graph_path, cover_path, table, per_vertex, out):
    """Score a cover with GenPerm, EQ, Q_ov, CC and OC."""
    clock = RunClock("score", {"graph": graph_path, "cover": cover_path}, {"table": table, "per_vertex": per_vertex})
    g = _read_graph(settings, graph_path)
    cover = _read_cover(settings, cover_path, g)
    header = ["v", "c", "genperm"]
    rows = [(settings.node_id(v), c, val) for v, c, val in genperm_table(g, cover)]
    if table:
        emit(render_csv(header, rows), out, clock)
        return
    payload = score_cover(g, cover).model_dump()
    written = []
    if per_vertex is not None:
        per_vertex.parent.mkdir(parents=True, exist_ok=True)
        per_vertex.write_text(render_csv(header, rows), encoding="utf-8")
        written.append(per_vertex)
    payload["per_vertex_path"] = str(per_vertex) if per_vertex is not None else None
    emit(render_json(payload), out, clock, written)


@click.command()
@_existing("--truth", "truth_path")
@_existing("--detected", "detected_path")
@_existing("--graph", "graph_path", required=False, help="Fixes the node universe; defaults to the ids in both files.")
@click.option("--omega-variant", type=click.Choice(["ordered", "unordered", "adjusted"]), default="ordered", show_default=True)
@out_option
@pass_settings
def validate(settings, truth_path, detected_path, graph_path, omega_variant, out):
    """Compare a detected cover with the ground truth (ONMI, Omega, F-Score)."""
    clock = RunClock("validate", {"truth": truth_path, "detected": detected_path, "graph": graph_path},
                     {"omega_variant": omega_variant})
    truth_lists = load_communities(truth_path, one_indexed=settings.one_indexed)
    detected_lists = load_communities(detected_path, one_indexed=settings.one_indexed)
    if graph_path is not None:
        g = _read_graph(settings, graph_path)
    else:
        top = max((max(c) for c in truth_lists + detected_lists if c), default=-1)
        g = build_graph([], node_count_hint=top + 1)
    report = validate_covers(build_cover(g, truth_lists), build_cover(g, detected_lists), omega_variant=omega_variant)
    payload = report.model_dump()
    payload["composite"] = report.composite
    emit(render_json(payload), out, clock)


@click.command()
@graph_option
@_existing("--truth", "truth_path")
@_existing("--candidates", "candidates_path", help="YAML/JSON list of {name, path} candidate covers.")
@out_option
@pass_settings
def rankcorr(settings, graph_path, truth_path, candidates_path, out):
    """Rank-correlate the five scoring metrics with the three validation metrics."""
    clock = RunClock("rankcorr", {"graph": graph_path, "truth": truth_path, "candidates": candidates_path},
                     {"jobs": settings.jobs})
    g = _read_graph(settings, graph_path)
    truth = _read_cover(settings, truth_path, g)
    listing = yaml.safe_load(candidates_path.read_text(encoding="utf-8")) or []
    if isinstance(listing, dict):
        listing = listing.get("candidates", [])
    candidates = []
    for entry in listing:
        if not isinstance(entry, dict) or "name" not in entry or "path" not in entry:
            raise CoverError(f"candidate entries need 'name' and 'path', got {entry!r}")
        path = Path(entry["path"])
        if not path.is_absolute():
            path = candidates_path.parent / path
        candidates.append((str(entry["name"]), _read_cover(settings, path, g)))
    emit(render_json(rank_correlation_protocol(g, truth, candidates, jobs=settings.jobs)), out, clock)


# -----------------------------
# perturb
# -----------------------------
@click.group()
def perturb_group():
    """Perturb a ground-truth cover."""


@perturb_group.command("apply")
@graph_option
@cover_option
@click.option("--strategy", type=click.Choice(STRATEGIES), required=True)
@click.option("--p", "p", type=click.FloatRange(min=0.0, max=0.5, min_open=True), required=True)
@seed_option
@out_option
@pass_settings
def perturb_apply(settings, graph_path, cover_path, strategy, p, seed, out):
    """Write one perturbed copy of the cover."""
    clock = RunClock("perturb apply", {"graph": graph_path, "cover": cover_path}, {"strategy": strategy, "p": p}, seed)
    g = _read_graph(settings, graph_path)
    cover = _read_cover(settings, cover_path, g)
    perturbed = perturb(g, cover, PerturbationSpec(strategy=strategy, p=p, seed=seed))
    emit(_community_text(settings, perturbed), out, clock)


@perturb_group.command("sweep")
@graph_option
@cover_option
@click.option("--strategy", "strategies", type=click.Choice(STRATEGIES), multiple=True,
              help="Repeat for several; defaults to all three.")
@click.option("--p-grid", callback=_number_list(float), default="0,0.1,0.2,0.3,0.4,0.5", show_default=True)
@click.option("--trials", type=click.IntRange(min=1), default=10, show_default=True)
@seed_option
@out_option
@pass_settings
def perturb_sweep(settings, graph_path, cover_path, strategies, p_grid, trials, seed, out):
    """Normalized scoring metrics over perturbation intensities (CSV)."""
    strategies = list(strategies) or list(STRATEGIES)
    clock = RunClock("perturb sweep", {"graph": graph_path, "cover": cover_path},
                     {"strategies": strategies, "p_grid": p_grid, "trials": trials, "jobs": settings.jobs}, seed)
    g = _read_graph(settings, graph_path)
    cover = _read_cover(settings, cover_path, g)
    rows = robustness_sweep(g, cover, strategies, p_grid, trials, seed=seed, jobs=settings.jobs)
    header = ["strategy", "p", "trials", *SCORING_METRICS, *(f"raw_{m}" for m in SCORING_METRICS)]
    table = [
        [r.strategy, float(r.p), r.trials, *(r.normalized[m] for m in SCORING_METRICS), *(r.raw[m] for m in SCORING_METRICS)]
        for r in rows
    ]
    emit(render_csv(header, table), out, clock)


# -----------------------------
# sample
# -----------------------------
@click.command()
@graph_option
@cover_option
@seed_option
@click.option("--anchor", type=int, default=None, help="Use this node instead of a random overlapping one.")
@_target("--out-graph", "out_graph", required=True)
@_target("--out-cover", "out_cover", required=True)
@out_option
@pass_settings
def sample(settings, graph_path, cover_path, seed, anchor, out_graph, out_cover, out):
    """Extract the community-centric subnetwork around an overlapping node."""
    clock = RunClock("sample", {"graph": graph_path, "cover": cover_path}, {"anchor": anchor}, seed)
    g = _read_graph(settings, graph_path)
    truth = _read_cover(settings, cover_path, g)
    if anchor is not None and settings.one_indexed:
        anchor -= 1
    result = sample_subnetwork(g, truth, seed, anchor=anchor)
    written = _write_pair(settings, result.graph, result.cover, out_graph, out_cover)
    summary = {
        "anchor": settings.node_id(result.anchor),
        "source_anchor": settings.node_id(result.source_anchor),
        "nodes": result.graph.node_count,
        "edges": result.graph.edge_count,
        "communities": len(result.cover),
    }
    emit(render_json(summary), out, clock, written)


# -----------------------------
# analyze
# -----------------------------
@click.group()
def analyze_group():
    """GenPerm distribution, core-periphery and robustness analyses."""


@analyze_group.command("profile")
@graph_option
@cover_option
@out_option
@pass_settings
def analyze_profile(settings, graph_path, cover_path, out):
    """Twenty-bin GenPerm distribution with per-bin averages (CSV)."""
    clock = RunClock("analyze profile", {"graph": graph_path, "cover": cover_path}, {})
    g = _read_graph(settings, graph_path)
    prof = binned_profile(g, _read_cover(settings, cover_path, g))
    rows = [
        [i + 1, prof.edges[i], prof.edges[i + 1], prof.counts[i], prof.fraction[i],
         prof.mean_overlap[i], prof.mean_internal_c[i], prof.mean_c_in[i], prof.mean_degree[i]]
        for i in range(len(prof.counts))
    ]
    header = ["bin", "lo", "hi", "count", "fraction", "mean_overlap", "mean_internal_c", "mean_c_in", "mean_degree"]
    emit(render_csv(header, rows), out, clock)


@analyze_group.command("farness")
@graph_option
@cover_option
@click.option("--community", type=int, required=True, help="0-based community index in file order.")
@click.option("--per-component", is_flag=True, help="Allow communities that induce a disconnected subgraph.")
@out_option
@pass_settings
def analyze_farness(settings, graph_path, cover_path, community, per_component, out):
    """Farness of each member next to its GenPerm share (CSV)."""
    clock = RunClock("analyze farness", {"graph": graph_path, "cover": cover_path},
                     {"community": community, "per_component": per_component})
    g = _read_graph(settings, graph_path)
    cover = _read_cover(settings, cover_path, g)
    prof = farness_profile(g, cover, _pick_community(cover, community), per_component=per_component)
    rows = [[settings.node_id(r.v), r.farness, r.genperm] for r in prof.rows]
    emit(render_csv(["v", "farness", "genperm"], rows), out, clock)


@analyze_group.command("assortativity")
@graph_option
@cover_option
@click.option("--community", "communities", type=int, multiple=True, help="Repeatable; defaults to every community.")
@click.option("--attribute", type=click.Choice(["genperm", "degree"]), default="genperm", show_default=True)
@out_option
@pass_settings
def analyze_assortativity(settings, graph_path, cover_path, communities, attribute, out):
    """Per-community assortativity of binned GenPerm or degree (CSV)."""
    clock = RunClock("analyze assortativity", {"graph": graph_path, "cover": cover_path},
                     {"communities": list(communities), "attribute": attribute})
    g = _read_graph(settings, graph_path)
    cover = _read_cover(settings, cover_path, g)
    fn = genperm_assortativity if attribute == "genperm" else degree_assortativity
    rows = []
    for c in communities or range(len(cover)):
        res = fn(g, cover, _pick_community(cover, c))
        rows.append([c, res.r, "yes" if res.degenerate else "no", res.edges])
    emit(render_csv(["community", "r", "degenerate", "edges"], rows), out, clock)


@analyze_group.command("removal")
@graph_option
@cover_option
@click.option("--x-grid", callback=_number_list(float), default="0,0.1,0.2,0.3", show_default=True,
              help="Shares of a layer to remove, in [0, 1].")
@click.option("--trials", type=click.IntRange(min=1), default=5, show_default=True)
@click.option("--max-iter", type=click.IntRange(min=1), default=MAX_ITER, show_default=True)
@seed_option
@out_option
@pass_settings
def analyze_removal(settings, graph_path, cover_path, x_grid, trials, max_iter, seed, out):
    """Mean ONMI after removing part of each GenPerm layer (CSV)."""
    clock = RunClock("analyze removal", {"graph": graph_path, "cover": cover_path},
                     {"x_grid": x_grid, "trials": trials, "max_iter": max_iter, "jobs": settings.jobs}, seed)
    g = _read_graph(settings, graph_path)
    truth = _read_cover(settings, cover_path, g)
    detector = partial(detect_cover, cfg=DetectConfig(max_iter=max_iter, per_component=True, seed=seed))
    rows = layered_removal(g, truth, detector, x_grid, trials, seed, jobs=settings.jobs)
    table = [[r.layer, float(r.x), r.removed, r.trials, r.mean_onmi] for r in rows]
    emit(render_csv(["layer", "x", "removed", "trials", "mean_onmi"], table), out, clock)


@analyze_group.command("constant")
@graph_option
@click.option("--runs", type=click.IntRange(min=2), default=10, show_default=True)
@click.option("--max-iter", type=click.IntRange(min=1), default=MAX_ITER, show_default=True)
@click.option("--per-component", is_flag=True)
@seed_option
@out_option
@pass_settings
def analyze_constant(settings, graph_path, runs, max_iter, per_component, seed, out):
    """Constant communities over shuffled vertex orderings (JSON)."""
    clock = RunClock("analyze constant", {"graph": graph_path},
                     {"runs": runs, "max_iter": max_iter, "per_component": per_component, "jobs": settings.jobs}, seed)
    g = _read_graph(settings, graph_path)
    cfg = DetectConfig(max_iter=max_iter, per_component=per_component)
    report = ordering_runs(g, runs, seed, cfg=cfg, jobs=settings.jobs)
    payload = {
        "runs": runs,
        "seeds": report.seeds,
        "genperm": [r.objective_history[-1] for r in report.results],
        "phi": report.phi,
        "groups": [settings.node_ids(grp) for grp in report.groups],
    }
    emit(render_json(payload), out, clock)


# -----------------------------
# spread
# -----------------------------
@click.command("spread")
@graph_option
@_existing("--cover", "cover_path", required=False, help="Community file; not needed with --initiators.")
@click.option("--policy", "policies", type=click.Choice(POLICIES), multiple=True, help="Repeatable; defaults to all three.")
@click.option("--k", type=click.IntRange(min=1), default=10, show_default=True, help="Number of initiators.")
@click.option("--runs", type=click.IntRange(min=1), default=100, show_default=True)
@click.option("--initiators", callback=_number_list(int), default=None,
              help="Comma-separated initiators: run once and print the trace instead.")
@seed_option
@out_option
@pass_settings
def spread_cmd(settings, graph_path, cover_path, policies, k, runs, initiators, seed, out):
    """Message spreading: steps to full coverage per initiator policy."""
    policies = list(policies) or list(POLICIES)
    clock = RunClock("spread", {"graph": graph_path, "cover": cover_path},
                     {"policies": policies, "k": k, "runs": runs, "initiators": initiators, "jobs": settings.jobs}, seed)
    g = _read_graph(settings, graph_path)
    if initiators:
        shift = 1 if settings.one_indexed else 0
        trace = spread(g, [v - shift for v in initiators], seed)
        payload = trace.model_dump()
        payload["initiators"] = settings.node_ids(trace.initiators)
        emit(render_json(payload), out, clock)
        return
    if cover_path is None:
        raise click.UsageError("--cover is required unless --initiators is given")
    cover = _read_cover(settings, cover_path, g)
    summaries = spreading_comparison(g, cover, policies, k, runs, seed, jobs=settings.jobs)
    rows = [[s.policy, s.k, s.runs, s.mean_steps, s.stderr] for s in summaries]
    emit(render_csv(["policy", "k", "runs", "mean_steps", "stderr"], rows), out, clock)


# -----------------------------
# generate
# -----------------------------
@click.group()
def generate_group():
    """Write synthetic graphs with their ground-truth covers."""


def _generated(settings: CliSettings, name: str, flags: dict, g: Graph, cover: Cover,
               out_graph: Path, out_cover: Path, out: Optional[Path], seed: Optional[int] = None) -> None:
    clock = RunClock(f"generate {name}", {}, flags, seed)
    written = _write_pair(settings, g, cover, out_graph, out_cover)
    summary = {"nodes": g.node_count, "edges": g.edge_count, "communities": len(cover)}
    emit(render_json(summary), out, clock, written)


def _generator_outputs(fn):
    fn = _target("--out-graph", "out_graph", required=True)(fn)
    fn = _target("--out-cover", "out_cover", required=True)(fn)
    return out_option(fn)


@generate_group.command("chain")
@click.argument("n_x", type=int)
@click.argument("n_y", type=int)
@click.argument("n_z", type=int)
@_generator_outputs
@pass_settings
def generate_chain(settings, n_x, n_y, n_z, out_graph, out_cover, out):
    """Three cliques X-Y-Z joined by single edges."""
    chain = gen_clique_chain(n_x, n_y, n_z)
    _generated(settings, "chain", {"n_x": n_x, "n_y": n_y, "n_z": n_z}, chain.graph, chain.cover,
               out_graph, out_cover, out)


@generate_group.command("ring")
@click.option("--k", type=int, required=True, help="Number of cliques.")
@click.option("--s", type=int, required=True, help="Clique size.")
@_generator_outputs
@pass_settings
def generate_ring(settings, k, s, out_graph, out_cover, out):
    """k cliques in a circle, consecutive ones joined by a bridge vertex."""
    g, cover = gen_clique_ring(k, s)
    _generated(settings, "ring", {"k": k, "s": s}, g, cover, out_graph, out_cover, out)


@generate_group.command("star")
@click.option("--center", type=int, required=True, help="Center clique size.")
@click.option("--surround", callback=_number_list(int), required=True, help="Comma-separated surrounding clique sizes.")
@_generator_outputs
@pass_settings
def generate_star(settings, center, surround, out_graph, out_cover, out):
    """A center clique whose cycle edges are shared with surrounding cliques."""
    star = gen_clique_star(center, surround)
    _generated(settings, "star", {"center": center, "surround": surround}, star.graph, star.cover,
               out_graph, out_cover, out)


@generate_group.command("bridge-pair")
@click.option("--size", type=int, required=True)
@click.option("--size-b", type=int, default=None, help="Size of the second clique; defaults to --size.")
@_generator_outputs
@pass_settings
def generate_bridge_pair(settings, size, size_b, out_graph, out_cover, out):
    """Two cliques joined by one edge."""
    g, cover = gen_bridge_pair(size, size_b)
    _generated(settings, "bridge-pair", {"size": size, "size_b": size_b}, g, cover, out_graph, out_cover, out)


@generate_group.command("planted")
@click.option("--blocks", callback=_number_list(int), required=True, help="Comma-separated block sizes.")
@click.option("--overlap", type=click.FloatRange(0.0, 1.0), default=0.1, show_default=True)
@click.option("--p-in", type=click.FloatRange(0.0, 1.0), required=True)
@click.option("--p-out", type=click.FloatRange(0.0, 1.0), required=True)
@seed_option
@_generator_outputs
@pass_settings
def generate_planted(settings, blocks, overlap, p_in, p_out, seed, out_graph, out_cover, out):
    """Planted blocks with overlapping nodes."""
    g, cover = gen_planted_overlap(blocks, overlap, p_in, p_out, seed)
    _generated(settings, "planted", {"blocks": blocks, "overlap": overlap, "p_in": p_in, "p_out": p_out},
               g, cover, out_graph, out_cover, out, seed)


COMMANDS: Sequence[click.Command] = (
    detect,
    score,
    validate,
    rankcorr,
    sample,
    spread_cmd,
)
GROUPS = {
    "perturb": perturb_group,
    "analyze": analyze_group,
    "generate": generate_group,
}
