from genperm.backend.ingestion.community_file import (
    detect_format,
    format_communities,
    load_communities,
    load_cover,
    parse_communities,
    write_communities,
)
from genperm.backend.ingestion.edge_list import (
    ParseReport,
    format_edge_list,
    load_edge_list,
    parse_edge_lines,
    write_edge_list,
)

__all__ = [
    "ParseReport",
    "detect_format",
    "format_communities",
    "format_edge_list",
    "load_communities",
    "load_cover",
    "load_edge_list",
    "parse_communities",
    "parse_edge_lines",
    "write_communities",
    "write_edge_list",
]
