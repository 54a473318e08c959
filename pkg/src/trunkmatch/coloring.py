"""Complex-colouring view of a matching.

Every edge is split into two links, one per endpoint, and every vertex
has exactly one red link.  An edge whose two links are both red is a
matched edge; an edge with one red and one blue link is a *variable*.
A configuration is stored as ``red_target[v]``: the neighbour that ``v``'s
red link points to.
"""

from __future__ import annotations

import enum
from typing import Callable, NamedTuple, Optional, Sequence

from .graph_io import Graph, InvalidMatchingError, Matching, edge_key


class ColoringError(ValueError):
    pass


class IneffectiveExchange(ColoringError):
    pass


class LinkColor(str, enum.Enum):
    RED = "r"
    BLUE = "b"


class EdgeColoring(NamedTuple):
    u: int
    v: int
    color_at_u: LinkColor
    color_at_v: LinkColor

    @property
    def is_variable(self) -> bool:
        return self.color_at_u is not self.color_at_v

    @property
    def is_red(self) -> bool:
        return self.color_at_u is LinkColor.RED and self.color_at_v is LinkColor.RED


class ColorConfiguration:
    __slots__ = ("host", "red_target")

    def __init__(self, host: Graph, red_target: Sequence[int]):
        if len(red_target) != host.n:
            raise ColoringError("one red target per vertex required")
        for v, t in enumerate(red_target):
            if not host.has_edge(v, t):
                raise ColoringError(f"red link of {v} points at non-neighbour {t}")
        self.host = host
        self.red_target = tuple(red_target)

    def __eq__(self, other):
        if not isinstance(other, ColorConfiguration):
            return NotImplemented
        return self.host == other.host and self.red_target == other.red_target

    def __repr__(self):
        return f"ColorConfiguration(red_target={list(self.red_target)})"

    def is_consistent(self) -> bool:
        rt = self.red_target
        return all(self.host.has_edge(v, rt[v]) for v in range(self.host.n))

    def color(self, v: int, u: int) -> LinkColor:
        """Colour of ``v``'s link on edge ``<v,u>``."""
        return LinkColor.RED if self.red_target[v] == u else LinkColor.BLUE

    def edge_coloring(self, u: int, v: int) -> EdgeColoring:
        if not self.host.has_edge(u, v):
            raise ColoringError(f"{u}-{v} is not an edge")
        return EdgeColoring(u, v, self.color(u, v), self.color(v, u))

    def variables(self) -> list[tuple[int, int]]:
        rt = self.red_target
        return [edge_key(u, v) for u, v in self.host.edges
                if (rt[u] == v) != (rt[v] == u)]

    def variable_count(self) -> int:
        # each variable holds exactly one red link; red-red edges hold two
        return self.host.n - 2 * len(self.matched_edges())

    def matched_edges(self) -> set[tuple[int, int]]:
        rt = self.red_target
        return {edge_key(v, rt[v]) for v in range(self.host.n) if rt[rt[v]] == v}

    def exposed(self) -> set[int]:
        rt = self.red_target
        return {v for v in range(self.host.n) if rt[rt[v]] != v}

    def to_matching(self) -> Matching:
        return Matching(self.host.n, self.matched_edges())

    def dump(self) -> str:
        """One ``u v <cu><cv>`` line per edge, 1-based."""
        lines = []
        for u, v in self.host.edges:
            ec = self.edge_coloring(u, v)
            lines.append(f"{u + 1} {v + 1} {ec.color_at_u.value}{ec.color_at_v.value}\n")
        return "".join(lines)


def from_matching(g: Graph, m: Matching) -> ColorConfiguration:
    """Colour ``m``: matched vertices point at their mate, free ones at a neighbour.

    A free vertex points at its lowest-index neighbour that does not
    already point back at it, so no extra red-red edge appears.  A free
    vertex whose every neighbour points back has no consistent colouring
    for ``m`` and raises ColoringError.
    """
    if m.n != g.n:
        raise InvalidMatchingError("matching and graph sizes differ")
    m.validate(g)
    target: list[Optional[int]] = list(m.mate)
    for v in range(g.n):
        if target[v] is not None:
            continue
        nbrs = sorted(g.adj[v])
        if not nbrs:
            raise ColoringError(f"vertex {v} is isolated")
        pick = next((u for u in nbrs if target[u] != v), None)
        if pick is None:
            raise ColoringError(f"free vertex {v} cannot point red without forming a matched edge")
        target[v] = pick
    return ColorConfiguration(g, target)


def to_matching(c: ColorConfiguration) -> Matching:
    return c.to_matching()


def color_exchange(c: ColorConfiguration, pivot: int,
                   e1: Sequence[int], e2: Sequence[int]) -> ColorConfiguration:
    """Swap the colours of the two links at ``pivot`` on edges ``e1`` and ``e2``.

    Far-end links keep their colours.  Exactly one of the two pivot links
    must be red (otherwise the swap is a no-op), and the number of
    variables on the two edges must not grow.
    """
    a = _other_end(c.host, pivot, e1)
    b = _other_end(c.host, pivot, e2)
    if a == b:
        raise ColoringError("the two edges must be distinct")
    rt = c.red_target
    if rt[pivot] == a:
        new = b
    elif rt[pivot] == b:
        new = a
    else:
        raise IneffectiveExchange(f"neither link at {pivot} is red")

    def n_var(pv_target: int) -> int:
        return sum((pv_target == x) != (rt[x] == pivot) for x in (a, b))

    if n_var(new) > n_var(rt[pivot]):
        raise IneffectiveExchange(f"exchange at {pivot} would add variables")
    target = list(rt)
    target[pivot] = new
    return ColorConfiguration(c.host, target)


def _other_end(g: Graph, pivot: int, e: Sequence[int]) -> int:
    u, v = e
    if pivot == u:
        other = v
    elif pivot == v:
        other = u
    else:
        raise ColoringError(f"edge {tuple(e)} is not incident to {pivot}")
    if not g.has_edge(pivot, other):
        raise ColoringError(f"{pivot}-{other} is not an edge")
    return other


StepHook = Callable[[ColorConfiguration], None]


def eliminate_along_path(c: ColorConfiguration, p: Sequence[int],
                         on_step: Optional[StepHook] = None) -> ColorConfiguration:
    """Cancel the two variables at the ends of augmenting path ``p``.

    First each endpoint's red link is turned onto the path, then a variable
    is walked from ``p[0]`` down the path by colour exchanges until it meets
    the one at ``p[-1]``.  ``on_step`` sees every intermediate configuration.
    """
    from .matcher import NotAugmentingPathError, check_augmenting_path
    m = c.to_matching()
    try:
        check_augmenting_path(m, p, c.host)
    except NotAugmentingPathError as exc:
        raise ColoringError(f"not an augmenting path: {exc}") from None

    def step(cfg, pivot, e1, e2):
        cfg = color_exchange(cfg, pivot, e1, e2)
        if on_step is not None:
            on_step(cfg)
        return cfg

    first, last = p[0], p[-1]
    if c.red_target[first] != p[1]:
        c = step(c, first, (first, c.red_target[first]), (first, p[1]))
    for i in range(1, len(p) - 1):
        c = step(c, p[i], (p[i - 1], p[i]), (p[i], p[i + 1]))
    if c.red_target[last] != p[-2]:
        c = step(c, last, (last, c.red_target[last]), (last, p[-2]))
    return c
