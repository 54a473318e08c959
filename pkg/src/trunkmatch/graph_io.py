"""Graph and matching data model, DIMACS I/O and random generators.

Adjacency order is part of a graph's identity: it is the order in which
each neighbour first appears in the edge list, and the search engine takes
sprouts in that order.  A ``Graph`` therefore keeps its edge list in
insertion order, and ``write_dimacs`` replays it verbatim so that
``parse_dimacs(write_dimacs(g)) == g``.
"""

from __future__ import annotations

import io
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, TextIO, Union


class GraphFormatError(ValueError):
    """Malformed graph or matching file; ``lineno`` is 1-based."""

    def __init__(self, message: str, lineno: Optional[int] = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class InvalidMatchingError(ValueError):
    pass


class IsolatedVertexError(ValueError):
    pass


class GenerationError(ValueError):
    pass


def edge_key(u: int, v: int) -> tuple[int, int]:
    """Normalized (low, high) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: tuple[tuple[int, int], ...]
    labels: Optional[tuple[str, ...]] = None
    adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    _edge_set: frozenset = field(init=False, repr=False)

    def __post_init__(self):
        adj: list[list[int]] = [[] for _ in range(self.n)]
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            key = edge_key(u, v)
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels must have one entry per vertex")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels) or None)
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        object.__setattr__(self, "adj", tuple(tuple(a) for a in adj))
        object.__setattr__(self, "_edge_set", frozenset(seen))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels=None) -> "Graph":
        return cls(n, tuple((u, v) for u, v in edges),
                   tuple(labels) if labels is not None else None)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._edge_set

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.adj[v]]

    def label(self, v: int) -> str:
        if self.labels is not None:
            return self.labels[v]
        return str(v + 1)

    def vertex_by_label(self, name: str) -> int:
        """Resolve a label, falling back to a 1-based index."""
        if self.labels is not None and name in self.labels:
            return self.labels.index(name)
        try:
            idx = int(name) - 1
        except ValueError:
            raise KeyError(f"unknown vertex {name!r}") from None
        if not 0 <= idx < self.n:
            raise KeyError(f"vertex {name!r} out of range")
        return idx

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n, self.edges, self.labels) == (other.n, other.edges, other.labels)

    def __hash__(self):
        return hash((self.n, self.edges, self.labels))


def require_solvable(g: Graph) -> None:
    """Reject graphs the solver does not accept (isolated vertices, no vertices)."""
    if g.n == 0:
        raise IsolatedVertexError("graph has no vertices")
    iso = g.isolated_vertices()
    if iso:
        shown = ", ".join(g.label(v) for v in iso[:5])
        raise IsolatedVertexError(f"{len(iso)} isolated vertices (e.g. {shown})")


class Matching:
    """Set of vertex-disjoint edges with an O(1) mate index."""

    __slots__ = ("n", "mate", "edges")

    def __init__(self, n: int, pairs: Iterable[Sequence[int]] = ()):
        mate: list[Optional[int]] = [None] * n
        edges = set()
        for u, v in pairs:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise InvalidMatchingError(f"bad matching edge ({u}, {v})")
            if mate[u] is not None or mate[v] is not None:
                raise InvalidMatchingError(f"edge ({u}, {v}) shares a vertex with another matching edge")
            mate[u] = v
            mate[v] = u
            edges.add(edge_key(u, v))
        self.n = n
        self.mate: tuple[Optional[int], ...] = tuple(mate)
        self.edges: frozenset[tuple[int, int]] = frozenset(edges)

    @classmethod
    def empty(cls, n: int) -> "Matching":
        return cls(n)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, e) -> bool:
        return edge_key(*e) in self.edges

    def __eq__(self, other):
        if not isinstance(other, Matching):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Matching(n={self.n}, edges={sorted(self.edges)})"

    def is_free(self, v: int) -> bool:
        return self.mate[v] is None

    def free_vertices(self) -> list[int]:
        return [v for v in range(self.n) if self.mate[v] is None]

    def matched_vertices(self) -> list[int]:
        return [v for v in range(self.n) if self.mate[v] is not None]

    def validate(self, g: Graph) -> None:
        if self.n != g.n:
            raise InvalidMatchingError(f"matching is on {self.n} vertices, graph has {g.n}")
        for u, v in self.edges:
            if not g.has_edge(u, v):
                raise InvalidMatchingError(f"matching edge ({u + 1}, {v + 1}) is not in the graph")


# ---------------------------------------------------------------------------
# DIMACS

Source = Union[str, bytes, TextIO]


def _lines(source: Source):
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if isinstance(source, str):
        source = io.StringIO(source)
    for lineno, line in enumerate(source, start=1):
        yield lineno, line.strip()


def parse_dimacs(source: Source) -> Graph:
    """Read the DIMACS ``edge`` format (plus optional ``l <v> <name>`` labels)."""
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    labels: dict[int, str] = {}

    def vertex(tok: str, lineno: int) -> int:
        try:
            v = int(tok)
        except ValueError:
            raise GraphFormatError(f"bad vertex index {tok!r}", lineno) from None
        if not 1 <= v <= n:
            raise GraphFormatError(f"vertex {v} out of range 1..{n}", lineno)
        return v - 1

    for lineno, line in _lines(source):
        if not line or line[0] == "c":
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise GraphFormatError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "edge":
                raise GraphFormatError("header must be 'p edge <n> <m>'", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError("non-integer counts in header", lineno) from None
            if n < 0 or m < 0:
                raise GraphFormatError("negative counts in header", lineno)
        elif n is None:
            raise GraphFormatError(f"{tag!r} line before header", lineno)
        elif tag == "e":
            if len(parts) != 3:
                raise GraphFormatError("edge line must be 'e <u> <v>'", lineno)
            u, v = vertex(parts[1], lineno), vertex(parts[2], lineno)
            if u == v:
                raise GraphFormatError(f"loop at vertex {u + 1}", lineno)
            key = edge_key(u, v)
            if key in seen:
                raise GraphFormatError(
                    f"duplicate edge {u + 1}-{v + 1} (first at line {seen[key]})", lineno)
            seen[key] = lineno
            edges.append((u, v))
        elif tag == "l":
            if len(parts) != 3:
                raise GraphFormatError("label line must be 'l <v> <name>'", lineno)
            labels[vertex(parts[1], lineno)] = parts[2]
        else:
            raise GraphFormatError(f"unknown line type {tag!r}", lineno)

    if n is None:
        raise GraphFormatError("missing 'p edge' header")
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    label_tuple = None
    if labels:
        if len(labels) != n:
            raise GraphFormatError(f"labels given for {len(labels)} of {n} vertices")
        label_tuple = tuple(labels[v] for v in range(n))
    return Graph(n, tuple(edges), label_tuple)


def write_dimacs(g: Graph) -> str:
    out = [f"p edge {g.n} {g.m}\n"]
    if g.labels is not None:
        out.extend(f"l {v + 1} {name}\n" for v, name in enumerate(g.labels))
    out.extend(f"e {u + 1} {v + 1}\n" for u, v in g.edges)
    return "".join(out)


def read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_dimacs(fh)


def parse_matching(source: Source, g: Graph) -> Matching:
    """Read ``<u> <v>`` lines (1-based, ``#`` comments) and validate against ``g``."""
    pairs = []
    for lineno, line in _lines(source):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError("matching line must be '<u> <v>'", lineno)
        try:
            u, v = int(parts[0]) - 1, int(parts[1]) - 1
        except ValueError:
            raise GraphFormatError("non-integer vertex in matching", lineno) from None
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise GraphFormatError(f"vertex out of range 1..{g.n}", lineno)
        if not g.has_edge(u, v):
            raise GraphFormatError(f"{u + 1}-{v + 1} is not an edge of the graph", lineno)
        pairs.append((u, v))
    try:
        return Matching(g.n, pairs)
    except InvalidMatchingError as exc:
        raise GraphFormatError(str(exc)) from None


def write_matching(m: Matching) -> str:
    return "".join(f"{u + 1} {v + 1}\n" for u, v in sorted(m.edges))


# ---------------------------------------------------------------------------
# Generators


def _sub_rng(seed: int, *path) -> random.Random:
    # str seeds are hashed with sha512, stable across runs and platforms
    return random.Random(":".join(str(p) for p in (seed,) + path))


def gen_random_regular(n: int, delta: int, seed: int, max_restarts: int = 1000) -> Graph:
    """Random simple ``delta``-regular graph from the pairing model.

    Stubs are shuffled and paired; pairs that would form a loop or a
    repeated edge go back into the pool and are re-shuffled.  If the pool
    gets stuck the whole attempt restarts from a derived sub-seed.
    """
    if delta < 0 or n <= 0:
        raise GenerationError("need n > 0 and delta >= 0")
    if (n * delta) % 2:
        raise GenerationError(f"n*delta = {n * delta} is odd; no {delta}-regular graph on {n} vertices")
    if delta >= n:
        raise GenerationError(f"delta={delta} must be < n={n}")

    for attempt in range(max_restarts):
        rng = _sub_rng(seed, "regular", n, delta, attempt)
        edges = _try_pairing(n, delta, rng)
        if edges is not None:
            return Graph(n, tuple(edges))
    raise GenerationError(f"no simple pairing found after {max_restarts} restarts")


def _try_pairing(n: int, delta: int, rng: random.Random, max_stalls: int = 50):
    edges: list[tuple[int, int]] = []
    present = set()
    stubs = [v for v in range(n) for _ in range(delta)]
    stalls = 0
    while stubs:
        rng.shuffle(stubs)
        leftover = []
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            key = edge_key(u, v)
            if u == v or key in present:
                leftover.extend((u, v))
            else:
                present.add(key)
                edges.append((u, v))
        if len(leftover) == len(stubs):
            stalls += 1
            if stalls > max_stalls:
                return None
        else:
            stalls = 0
        stubs = leftover
    return edges


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) with isolated vertices removed.

    Surviving vertices are renumbered densely; ``labels`` keeps the
    original 1-based index of each one.
    """
    if not 0.0 <= p <= 1.0:
        raise GenerationError(f"p={p} outside [0, 1]")
    rng = _sub_rng(seed, "gnp", n, repr(p))
    raw = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    keep = sorted({x for e in raw for x in e})
    index = {v: i for i, v in enumerate(keep)}
    return Graph(len(keep), tuple((index[u], index[v]) for u, v in raw),
                 tuple(str(v + 1) for v in keep))


def greedy_matching(g: Graph) -> Matching:
    """Maximal matching: scan vertices and their adjacency in order."""
    mate: list[Optional[int]] = [None] * g.n
    pairs = []
    for u in range(g.n):
        if mate[u] is not None:
            continue
        for v in g.adj[u]:
            if mate[v] is None:
                mate[u], mate[v] = v, u
                pairs.append((u, v))
                break
    return Matching(g.n, pairs)
