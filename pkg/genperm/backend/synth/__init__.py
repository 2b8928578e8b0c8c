from genperm.backend.synth.cliques import (
    CliqueChain,
    CliqueSpec,
    CliqueStar,
    chain_case_covers,
    gen_bridge_pair,
    gen_clique_chain,
    gen_clique_ring,
    gen_clique_star,
    generate_cliques,
    ring_ground_truth_genperm,
    chain_case_totals,
)
from genperm.backend.synth.planted import gen_planted_overlap

__all__ = [
    "CliqueChain",
    "CliqueSpec",
    "CliqueStar",
    "chain_case_covers",
    "gen_bridge_pair",
    "gen_clique_chain",
    "gen_clique_ring",
    "gen_clique_star",
    "gen_planted_overlap",
    "generate_cliques",
    "ring_ground_truth_genperm",
    "chain_case_totals",
]
