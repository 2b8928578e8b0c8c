# genperm/backend/ingestion/edge_list.py
import logging
from pathlib import Path
from typing import Iterable, List, TextIO, Tuple

from pydantic import BaseModel

from genperm.backend.errors import GraphError, GraphFormatError
from genperm.backend.graph.graph import Graph, build_graph

logger = logging.getLogger(__name__)


class ParseReport(BaseModel):
    source: str = "<lines>"
    lines_read: int = 0
    comments_skipped: int = 0
    blank_lines: int = 0
    pairs_read: int = 0
    duplicates_dropped: int = 0
    self_loops_dropped: int = 0
    one_indexed: bool = False


def parse_edge_lines(lines: Iterable[str], one_indexed: bool = False) -> Tuple[List[Tuple[int, int]], ParseReport]:
    """
    Parse edge-list text: two whitespace-separated ids per line.

    Lines starting with '#' are comments; columns after the second (LFR weights)
    are ignored. With `one_indexed` every id is shifted down by one.
    """
    pairs: List[Tuple[int, int]] = []
    shift = 1 if one_indexed else 0
    line_no = blank = comments = 0
    for line_no, line in enumerate(lines, start=1):
        text = line.strip()
        if not text:
            blank += 1
            continue
        if text.startswith("#"):
            comments += 1
            continue
        parts = text.split()
        if len(parts) < 2:
            raise GraphFormatError(f"expected two node ids, got {text!r}", line_no)
        try:
            u, v = int(parts[0]) - shift, int(parts[1]) - shift
        except ValueError:
            raise GraphFormatError(f"non-integer node id in {text!r}", line_no) from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"node id below {shift} in {text!r}", line_no)
        pairs.append((u, v))
    report = ParseReport(
        lines_read=line_no,
        comments_skipped=comments,
        blank_lines=blank,
        pairs_read=len(pairs),
        one_indexed=one_indexed,
    )
    return pairs, report


def load_edge_list(
    path: str | Path,
    one_indexed: bool = False,
    node_count_hint: int | None = None,
) -> Tuple[Graph, ParseReport]:
    """Read an edge-list file (LFR network.dat included) into a Graph."""
    path = Path(path)
    if not path.exists():
        raise GraphError(f"edge list not found: {path}")
    if node_count_hint is None:
        node_count_hint = node_count_from_header(path)
    with path.open("r", encoding="utf-8") as fh:
        pairs, report = parse_edge_lines(fh, one_indexed=one_indexed)
    g = build_graph(pairs, node_count_hint=node_count_hint)
    report.source = str(path)
    report.duplicates_dropped = g.duplicates_dropped
    report.self_loops_dropped = g.self_loops_dropped
    logger.info(
        "loaded %s: %d nodes, %d edges (%d duplicates, %d self-loops dropped)",
        path, g.node_count, g.edge_count, g.duplicates_dropped, g.self_loops_dropped,
    )
    return g, report


def format_edge_list(g: Graph, one_indexed: bool = False) -> str:
    shift = 1 if one_indexed else 0
    header = f"# nodes {g.node_count} edges {g.edge_count}\n"
    return header + "".join(f"{u + shift} {v + shift}\n" for u, v in g.edges)


def write_edge_list(g: Graph, target: str | Path | TextIO, one_indexed: bool = False) -> None:
    """Write one edge per line; the header comment records the node count."""
    text = format_edge_list(g, one_indexed=one_indexed)
    if hasattr(target, "write"):
        target.write(text)
        return
    dest = Path(target)
    dest.parent.mkdir(parents=True, exist_ok=True)
    dest.write_text(text, encoding="utf-8")


def node_count_from_header(path: str | Path) -> int | None:
    """Node count recorded by write_edge_list, so trailing isolated nodes survive a round trip."""
    with Path(path).open("r", encoding="utf-8") as fh:
        first = fh.readline().split()
    if len(first) >= 3 and first[0] == "#" and first[1] == "nodes":
        try:
            return int(first[2])
        except ValueError:
            return None
    return None
