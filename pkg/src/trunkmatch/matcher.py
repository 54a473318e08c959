"""Maximum matching driver: repeated trunk searches from free vertices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .graph_io import Graph, Matching, edge_key, greedy_matching, require_solvable
from .trunk_search import Result, SearchOutcome, default_budget, search


class NotAugmentingPathError(ValueError):
    pass


INIT_MODES = ("empty", "greedy")


@dataclass
class MatcherConfig:
    init_mode: str = "greedy"
    prefer_free_tips: bool = False
    budget_factor: float = 1.0
    trace: bool = False
    seed: int = 0  # reserved; every mode is deterministic

    def __post_init__(self):
        if self.init_mode not in INIT_MODES:
            raise ValueError(f"init_mode must be one of {INIT_MODES}")
        if not self.budget_factor > 0:
            raise ValueError("budget_factor must be positive")

    def budget(self, g: Graph) -> int:
        return max(1, math.ceil(self.budget_factor * default_budget(g)))


@dataclass
class MatchResult:
    matching: Matching
    initial_size: int
    augmentations: int = 0
    searches: int = 0
    total_steps: int = 0
    failed_roots: set[int] = field(default_factory=set)
    budget_exceeded: set[int] = field(default_factory=set)
    max_path: int = 0
    max_sprouts: int = 0

    @property
    def exposed(self) -> int:
        return self.matching.n - 2 * len(self.matching)

    def summary(self) -> str:
        return (f"matched={len(self.matching)} exposed={self.exposed} "
                f"augmentations={self.augmentations} steps={self.total_steps}")


def initial_matching(g: Graph, mode: str = "greedy") -> Matching:
    if mode == "empty":
        return Matching.empty(g.n)
    if mode == "greedy":
        return greedy_matching(g)
    raise ValueError(f"unknown init mode {mode!r}")


def check_augmenting_path(m: Matching, p: Sequence[int], g: Optional[Graph] = None) -> None:
    """Raise NotAugmentingPathError unless ``p`` is ``m``-augmenting."""
    if len(p) < 2 or len(p) % 2:
        raise NotAugmentingPathError(f"path needs an even number (>= 2) of vertices, got {len(p)}")
    if len(set(p)) != len(p):
        raise NotAugmentingPathError("path repeats a vertex")
    if any(not 0 <= v < m.n for v in p):
        raise NotAugmentingPathError("path vertex out of range")
    if m.mate[p[0]] is not None or m.mate[p[-1]] is not None:
        raise NotAugmentingPathError("path endpoints must both be free")
    for i in range(len(p) - 1):
        u, v = p[i], p[i + 1]
        if g is not None and not g.has_edge(u, v):
            raise NotAugmentingPathError(f"{u}-{v} is not an edge")
        if (m.mate[u] == v) != (i % 2 == 1):
            raise NotAugmentingPathError(f"alternation broken at position {i}")


def augment(m: Matching, p: Sequence[int], g: Optional[Graph] = None,
            crosscheck: bool = False) -> Matching:
    """Return ``m`` xor ``p``, one edge larger.

    ``crosscheck`` re-derives the result through the colour-exchange walk
    (needs ``g``).
    """
    check_augmenting_path(m, p, g)
    path_edges = {edge_key(p[i], p[i + 1]) for i in range(len(p) - 1)}
    out = Matching(m.n, m.edges ^ path_edges)
    assert len(out) == len(m) + 1
    if crosscheck:
        if g is None:
            raise ValueError("crosscheck needs the graph")
        from .coloring import eliminate_along_path, from_matching
        walked = eliminate_along_path(from_matching(g, m), p).to_matching()
        assert walked == out, "colour walk disagrees with symmetric difference"
    return out


Observer = Callable[[int, Matching, SearchOutcome], None]


def maximum_matching(g: Graph, cfg: Optional[MatcherConfig] = None,
                     initial: Optional[Matching] = None,
                     order: Optional[Sequence[int]] = None,
                     observer: Optional[Observer] = None) -> MatchResult:
    """Grow a matching until every free vertex is matched or has failed once.

    Free vertices are tried in ascending index order (or ``order``).  A root
    whose search fails is never searched again in this run.  ``observer``
    is called after every search with ``(root, matching_searched, outcome)``.
    """
    cfg = cfg or MatcherConfig()
    require_solvable(g)
    if initial is None:
        m = initial_matching(g, cfg.init_mode)
    else:
        initial.validate(g)
        m = initial
    budget = cfg.budget(g)
    res = MatchResult(m, len(m))
    queue = list(order) if order is not None else list(range(g.n))
    for v0 in queue:
        if m.mate[v0] is not None:
            continue
        out = search(g, m, v0, budget=budget, trace=cfg.trace,
                     prefer_free_tips=cfg.prefer_free_tips)
        res.searches += 1
        res.total_steps += out.steps_used
        res.max_path = max(res.max_path, out.max_path)
        res.max_sprouts = max(res.max_sprouts, out.max_sprouts)
        if observer is not None:
            observer(v0, m, out)
        if out.result is Result.AUGMENTING_PATH:
            m = augment(m, out.path, g)
            res.augmentations += 1
        elif out.result is Result.BUDGET_EXCEEDED:
            res.budget_exceeded.add(v0)
            res.failed_roots.add(v0)
        else:
            res.failed_roots.add(v0)
    res.matching = m
    return res
