"""Text formats: transaction databases, edge lists, pattern files, stats.

Database: one transaction per line of ``label:quantity`` tokens.
Graph: one edge per line, two labels.  In both, blank lines and lines
starting with ``#`` are skipped.  Labels may not contain whitespace,
``:`` or ``#``.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path

from smhuim.graph import ItemGraph
from smhuim.model import ItemDictionary, Transaction, TransactionDatabase

log = logging.getLogger(__name__)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int | None = None, source: str = ""):
        self.line = line
        self.column = column
        self.source = source
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        prefix = f"{source}: " if source else ""
        super().__init__(f"{prefix}{where}: {message}")


def _tokens(line: str):
    """Yield ``(column, token)`` pairs, columns 1-based."""
    col = 0
    n = len(line)
    while col < n:
        while col < n and line[col].isspace():
            col += 1
        start = col
        while col < n and not line[col].isspace():
            col += 1
        if start < col:
            yield start + 1, line[start:col]


def _content_lines(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, line


# -- databases --------------------------------------------------------------

def read_database_text(text: str, dictionary: ItemDictionary | None = None,
                       source: str = "") -> TransactionDatabase:
    dictionary = dictionary if dictionary is not None else ItemDictionary()
    txs = []
    for lineno, line in _content_lines(text):
        seen = set()
        items = []
        for col, tok in _tokens(line):
            label, sep, qty = tok.rpartition(":")
            if not sep or not label or "#" in label or ":" in label:
                raise ParseError(f"malformed token {tok!r}, expected label:quantity",
                                 lineno, col, source)
            try:
                q = int(qty)
            except ValueError:
                raise ParseError(f"quantity {qty!r} is not an integer", lineno, col,
                                 source) from None
            if q < 1:
                raise ParseError("quantity must be ≥ 1", lineno, col, source)
            if label in seen:
                raise ParseError(f"duplicate item {label!r}", lineno, col, source)
            seen.add(label)
            items.append((dictionary.add(label), q))
        txs.append(Transaction(len(txs) + 1, tuple(items)))
    return TransactionDatabase(tuple(txs), dictionary)


def parse_database(path, dictionary: ItemDictionary | None = None) -> TransactionDatabase:
    """Read a database file; tids are 1..n in file order."""
    path = Path(path)
    return read_database_text(path.read_text("utf-8"), dictionary, source=str(path))


def format_database(db: TransactionDatabase) -> str:
    labels = db.dictionary.id_to_label
    return "".join(
        " ".join(f"{labels[i]}:{q}" for i, q in t.items) + "\n" for t in db.transactions
    )


def database_rows(db: TransactionDatabase) -> list:
    """Transactions as lists of ``(label, quantity)``; id-independent view."""
    labels = db.dictionary.id_to_label
    return [[(labels[i], q) for i, q in t.items] for t in db.transactions]


# -- graphs -----------------------------------------------------------------

def read_graph_text(text: str, dictionary: ItemDictionary, source: str = ""):
    """Parse an edge list against ``dictionary``.

    Labels unknown to the dictionary are registered as graph-only vertices.
    Returns ``(graph, warnings)``; one warning per dictionary item absent
    from the file (it becomes an isolated vertex).
    """
    known_before = len(dictionary)
    edges = set()
    mentioned = set()
    for lineno, line in _content_lines(text):
        toks = list(_tokens(line))
        if len(toks) != 2:
            raise ParseError(f"expected two labels, found {len(toks)}", lineno,
                             toks[2][0] if len(toks) > 2 else None, source)
        (cu, a), (cv, b) = toks
        for col, label in ((cu, a), (cv, b)):
            if ":" in label:
                raise ParseError(f"malformed label {label!r}", lineno, col, source)
        if a == b:
            raise ParseError(f"self-loop on {a!r}", lineno, cv, source)
        u, v = dictionary.add(a), dictionary.add(b)
        mentioned.update((u, v))
        edges.add((min(u, v), max(u, v)))
    warnings = []
    for item in range(known_before):
        if item not in mentioned:
            msg = f"item {dictionary.label(item)!r} has no edges; treated as isolated vertex"
            warnings.append(msg)
            log.warning(msg)
    return ItemGraph(len(dictionary), sorted(edges)), warnings


def parse_graph(path, dictionary: ItemDictionary) -> ItemGraph:
    path = Path(path)
    graph, _ = read_graph_text(path.read_text("utf-8"), dictionary, source=str(path))
    return graph


def format_graph(graph: ItemGraph, dictionary: ItemDictionary) -> str:
    labels = dictionary.id_to_label
    return "".join(f"{labels[u]} {labels[v]}\n" for u, v in graph.edges())


# -- patterns and stats -----------------------------------------------------

def format_value(value) -> str:
    """Integers print exactly; other values with 6 decimals."""
    if isinstance(value, int) or (isinstance(value, float) and value.is_integer()):
        return str(int(value))
    return f"{value:.6f}"


def format_patterns(patterns, dictionary: ItemDictionary) -> str:
    lines = []
    for p in patterns:
        labels = " ".join(dictionary.labels(sorted(p.itemset)))
        lines.append(f"{labels} #UTIL: {format_value(p.utility)}\n")
    return "".join(lines)


def read_patterns_text(text: str, dictionary: ItemDictionary, source: str = "") -> dict:
    """``{itemset ids: utility}`` from a pattern file."""
    out = {}
    for lineno, line in _content_lines(text):
        body, sep, value = line.partition("#UTIL:")
        if not sep:
            raise ParseError("missing '#UTIL:'", lineno, None, source)
        items = tuple(sorted(dictionary.id(s) for s in body.split()))
        raw = value.strip()
        try:
            out[items] = int(raw) if raw.lstrip("-").isdigit() else float(raw)
        except ValueError:
            raise ParseError(f"bad utility {raw!r}", lineno, None, source) from None
    return out


def write_text_atomic(path, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def format_stats(stats) -> str:
    return json.dumps(stats.to_dict(), indent=2, sort_keys=True) + "\n"
