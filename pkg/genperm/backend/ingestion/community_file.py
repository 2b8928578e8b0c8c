# genperm/backend/ingestion/community_file.py
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Literal, Sequence, TextIO

from genperm.backend.errors import CoverError, CoverFormatError
from genperm.backend.graph.cover import Cover, build_cover
from genperm.backend.graph.graph import Graph

logger = logging.getLogger(__name__)

CommunityFormat = Literal["auto", "lines", "membership"]


def _content_lines(lines: Iterable[str]) -> List[tuple]:
    out = []
    for line_no, line in enumerate(lines, start=1):
        text = line.rstrip("\r\n")
        if not text.strip() or text.lstrip().startswith("#"):
            continue
        out.append((line_no, text))
    return out


def detect_format(lines: Sequence[str]) -> str:
    """
    Guess between "lines" (one community per line) and "membership"
    (`node<TAB>c1 c2 ...`, LFR community.dat).

    Membership files have exactly one tab per line separating a unique node id
    from space-separated labels; anything else is read as one community per line.
    """
    content = _content_lines(lines)
    if not content:
        return "lines"
    heads = set()
    for _, text in content:
        head, sep, tail = text.strip(" ").partition("\t")
        if not sep or "\t" in tail.strip() or not head.strip().lstrip("-").isdigit():
            return "lines"
        if head in heads:
            return "lines"
        heads.add(head)
    return "membership"


def parse_communities(
    lines: Iterable[str],
    fmt: CommunityFormat = "auto",
    one_indexed: bool = False,
) -> List[List[int]]:
    """Parse community text into member lists (0-based node ids)."""
    lines = list(lines)
    if fmt == "auto":
        fmt = detect_format(lines)
    shift = 1 if one_indexed else 0

    def node(tok: str, line_no: int) -> int:
        try:
            v = int(tok) - shift
        except ValueError:
            raise CoverFormatError(f"non-integer node id {tok!r}", line_no) from None
        if v < 0:
            raise CoverFormatError(f"node id {tok} below {shift}", line_no)
        return v

    if fmt == "lines":
        return [[node(t, no) for t in text.split()] for no, text in _content_lines(lines)]
    if fmt != "membership":
        raise CoverError(f"unknown community format {fmt!r}")

    by_label: Dict[str, List[int]] = {}
    for no, text in _content_lines(lines):
        head, sep, tail = text.partition("\t")
        tokens = [head.strip()] + tail.split() if sep else text.split()
        if len(tokens) < 2 or not tokens[0]:
            raise CoverFormatError("membership line needs a node and at least one label", no)
        v = node(tokens[0], no)
        for label in tokens[1:]:
            by_label.setdefault(label, []).append(v)

    def label_key(label: str):
        return (0, int(label), label) if label.lstrip("-").isdigit() else (1, 0, label)

    return [by_label[label] for label in sorted(by_label, key=label_key)]


def load_communities(
    path: str | Path,
    fmt: CommunityFormat = "auto",
    one_indexed: bool = False,
) -> List[List[int]]:
    path = Path(path)
    if not path.exists():
        raise CoverError(f"community file not found: {path}")
    with path.open("r", encoding="utf-8") as fh:
        communities = parse_communities(fh, fmt=fmt, one_indexed=one_indexed)
    logger.info("loaded %d communities from %s", len(communities), path)
    return communities


def load_cover(
    path: str | Path,
    graph: Graph,
    fmt: CommunityFormat = "auto",
    one_indexed: bool = False,
) -> Cover:
    return build_cover(graph, load_communities(path, fmt=fmt, one_indexed=one_indexed))


def format_communities(communities: Iterable[Iterable[int]], one_indexed: bool = False) -> str:
    shift = 1 if one_indexed else 0
    return "".join(" ".join(str(v + shift) for v in sorted(c)) + "\n" for c in communities)


def write_communities(
    cover: Cover | Sequence[Iterable[int]],
    target: str | Path | TextIO,
    one_indexed: bool = False,
) -> None:
    """Write one community per line, members ascending, in cover order."""
    communities = cover.communities if isinstance(cover, Cover) else cover
    text = format_communities(communities, one_indexed=one_indexed)
    if hasattr(target, "write"):
        target.write(text)
        return
    dest = Path(target)
    dest.parent.mkdir(parents=True, exist_ok=True)
    dest.write_text(text, encoding="utf-8")
