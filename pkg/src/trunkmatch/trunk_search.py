"""Depth-first augmenting-path search without blossom shrinking.

The search state is a *trunk*: an alternating path ``P`` grown from one
free vertex, plus a LIFO stack ``S`` of sprouts (free edges hanging off
even-parity path vertices) that have not been tried yet.  Each step either
extends ``P`` by a (mate, next) pair or, when the path closes a cycle or
runs into a dead end, pops the newest sprout, cuts ``P`` back to that
sprout's root and continues through it.  Cycles are never contracted; the
path is simply deflected around them.

Vertices on ``P`` are distinct at all times.  A cycle is recognised when the
chosen tip is already on ``P``; the tip is reported in the event (and in the
trace rendering) but never stored twice.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .graph_io import Graph, Matching


class SearchError(ValueError):
    pass


class EventKind(str, enum.Enum):
    INIT = "Init"
    GROW = "Grow"
    ODD_CYCLE = "OddCycle"
    EVEN_CYCLE = "EvenCycle"
    DEAD_END = "DeadEnd"
    DETOUR = "Detour"
    AUGMENT = "Augment"
    FAIL = "Fail"
    BUDGET_EXCEEDED = "BudgetExceeded"


CYCLE_EVENTS = (EventKind.ODD_CYCLE, EventKind.EVEN_CYCLE)
_NEEDS_DETOUR = (EventKind.ODD_CYCLE, EventKind.EVEN_CYCLE, EventKind.DEAD_END)


class Sprout(NamedTuple):
    root: int
    tip: int


class PathEntry(NamedTuple):
    vertex: int
    parity: int


@dataclass
class SearchEvent:
    """One grow/prune step.

    ``edge`` is the sprout that was taken (from the mate's sprout set, or
    popped from the stack when ``popped`` is set).  For cycle events
    ``revisited_parity`` is the parity already stored for the tip.
    """

    kind: EventKind
    edge: Optional[Sprout] = None
    pushed: tuple[Sprout, ...] = ()
    popped: bool = False
    revisited_parity: Optional[int] = None
    vertex: Optional[int] = None


def mate(m: Matching, v: int) -> Optional[int]:
    return m.mate[v]


def sprout_set(g: Graph, m: Matching, v: int) -> list[Sprout]:
    """Free edges at ``v`` in adjacency order."""
    mv = m.mate[v]
    return [Sprout(v, u) for u in g.adj[v] if u != mv]


def default_budget(g: Graph) -> int:
    return 4 * (g.m + 1) * (g.n + 1)


class Trunk:
    """Search state ``{P, S}`` rooted at one free vertex.

    ``pos[v]`` is the index of ``v`` on the path or -1; a vertex's parity
    is its index mod 2.
    """

    def __init__(self, g: Graph, m: Matching, root: int, prefer_free_tips: bool = False):
        self.graph = g
        self.matching = m
        self.root = root
        self.prefer_free_tips = prefer_free_tips
        self.path: list[int] = []
        self.pos: list[int] = [-1] * g.n
        self.sprouts: list[Sprout] = []
        self.max_path = 0
        self.max_sprouts = 0

    # -- state ---------------------------------------------------------------

    @property
    def tip(self) -> int:
        return self.path[-1]

    def parity(self, v: int) -> Optional[int]:
        p = self.pos[v]
        return None if p < 0 else p & 1

    def entries(self) -> list[PathEntry]:
        return [PathEntry(v, i & 1) for i, v in enumerate(self.path)]

    def _append(self, v: int) -> None:
        self.pos[v] = len(self.path)
        self.path.append(v)
        if len(self.path) > self.max_path:
            self.max_path = len(self.path)

    def _push(self, items) -> None:
        self.sprouts.extend(items)
        if len(self.sprouts) > self.max_sprouts:
            self.max_sprouts = len(self.sprouts)

    def _truncate_after(self, v: int) -> None:
        keep = self.pos[v] + 1
        for u in self.path[keep:]:
            self.pos[u] = -1
        del self.path[keep:]

    def _choose(self, sprouts: list[Sprout]) -> int:
        if self.prefer_free_tips:
            mate_of, pos = self.matching.mate, self.pos
            for i, s in enumerate(sprouts):
                if mate_of[s.tip] is None and pos[s.tip] < 0:
                    return i
        return 0

    def _classify_tip(self, x: int) -> EventKind:
        p = self.pos[x]
        if p >= 0:
            return EventKind.ODD_CYCLE if p & 1 == 0 else EventKind.EVEN_CYCLE
        if self.matching.mate[x] is None:
            return EventKind.AUGMENT
        return EventKind.GROW

    def check_invariants(self) -> None:
        """Raise AssertionError if ``P`` or ``S`` is malformed."""
        mate_of = self.matching.mate
        path = self.path
        assert path and path[0] == self.root and mate_of[self.root] is None
        assert len(set(path)) == len(path), "repeated vertex on P"
        for i, v in enumerate(path):
            assert self.pos[v] == i
        assert sum(1 for p in self.pos if p >= 0) == len(path)
        for i in range(len(path) - 1):
            u, v = path[i], path[i + 1]
            assert self.graph.has_edge(u, v)
            matched = mate_of[u] == v
            assert matched == (i % 2 == 1), f"alternation broken at {i}"
        last = -1
        for s in self.sprouts:
            p = self.pos[s.root]
            assert p >= 0 and p % 2 == 0, f"sprout root {s.root} not an s-root on P"
            assert p >= last, "sprout stack out of path order"
            assert mate_of[s.root] != s.tip
            last = p


def init_search(g: Graph, m: Matching, v0: int,
                prefer_free_tips: bool = False) -> tuple[Trunk, SearchEvent]:
    """Start a trunk at free vertex ``v0``.

    If ``v0`` has a free neighbour the one-edge augmenting path is taken
    immediately.
    """
    if not 0 <= v0 < g.n:
        raise SearchError(f"vertex {v0} out of range")
    if m.mate[v0] is not None:
        raise SearchError(f"root {g.label(v0)} is matched")
    sprouts = sprout_set(g, m, v0)
    if not sprouts:
        raise SearchError(f"root {g.label(v0)} is isolated")
    t = Trunk(g, m, v0, prefer_free_tips)
    t._append(v0)
    for s in sprouts:
        if m.mate[s.tip] is None:
            t._append(s.tip)
            return t, SearchEvent(EventKind.AUGMENT, s)
    k = t._choose(sprouts)
    first = sprouts[k]
    rest = tuple(sprouts[:k] + sprouts[k + 1:])
    t._append(first.tip)
    t._push(rest)
    return t, SearchEvent(EventKind.INIT, first, rest)


def grow_step(t: Trunk) -> SearchEvent:
    """Extend ``P`` through the mate of its odd tip."""
    tip = t.path[-1]
    w = t.matching.mate[tip]
    if (len(t.path) - 1) & 1 == 0 or w is None:
        raise RuntimeError("grow_step needs a matched tip with odd parity")
    assert t.pos[w] < 0, "mate of the tip is already on P"
    sprouts = sprout_set(t.graph, t.matching, w)
    if not sprouts:
        return SearchEvent(EventKind.DEAD_END, vertex=w)
    k = t._choose(sprouts)
    first = sprouts[k]
    rest = tuple(sprouts[:k] + sprouts[k + 1:])
    x = first.tip
    kind = t._classify_tip(x)
    t._append(w)
    t._push(rest)
    if kind in CYCLE_EVENTS:
        return SearchEvent(kind, first, rest, revisited_parity=t.pos[x] & 1)
    t._append(x)
    return SearchEvent(kind, first, rest)


def detour(t: Trunk) -> SearchEvent:
    """Pop the newest sprout, cut ``P`` back to its root and go through it."""
    if not t.sprouts:
        return SearchEvent(EventKind.FAIL)
    s = t.sprouts.pop()
    # the root was pushed together with the sprout and is still on P
    assert t.pos[s.root] >= 0 and t.pos[s.root] & 1 == 0
    t._truncate_after(s.root)
    kind = t._classify_tip(s.tip)
    if kind in CYCLE_EVENTS:
        return SearchEvent(kind, s, popped=True, revisited_parity=t.pos[s.tip] & 1)
    t._append(s.tip)
    if kind is EventKind.GROW:
        kind = EventKind.DETOUR
    return SearchEvent(kind, s, popped=True)


# -- full search ---------------------------------------------------------------


class Result(str, enum.Enum):
    AUGMENTING_PATH = "augmenting_path"
    NO_AUGMENTING_PATH = "no_augmenting_path"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass
class TraceRecord:
    step: int
    kind: EventKind
    path: tuple[PathEntry, ...]
    sprouts: tuple[Sprout, ...]
    remark: str

    def to_tsv(self, g: Graph) -> str:
        path = " ".join(f"{g.label(e.vertex)} {e.parity}" for e in self.path)
        sprouts = ";".join(f"<{g.label(s.root)},{g.label(s.tip)}>" for s in self.sprouts)
        return f"{self.step}\t{self.kind.value}\t{path}\t{sprouts}\t{self.remark}"


@dataclass
class SearchOutcome:
    result: Result
    path: Optional[list[int]] = None
    trace: list[TraceRecord] = field(default_factory=list)
    steps_used: int = 0
    max_path: int = 0
    max_sprouts: int = 0

    @property
    def found(self) -> bool:
        return self.result is Result.AUGMENTING_PATH


def _edge_str(g: Graph, s: Sprout) -> str:
    return f"<{g.label(s.root)},{g.label(s.tip)}>"


def describe(ev: SearchEvent, g: Graph, root: Optional[int] = None) -> str:
    """Short remark for the trace's last column."""
    lab = g.label
    parts = []
    if ev.kind is EventKind.INIT or (ev.kind is EventKind.AUGMENT and root is not None
                                     and ev.edge is not None and ev.edge.root == root
                                     and not ev.popped):
        parts.append(f"start at free {lab(root)}")
    if ev.kind is EventKind.DEAD_END:
        return f"dead end: {lab(ev.vertex)} has no free edge"
    if ev.kind is EventKind.FAIL:
        return "sprout stack empty"
    if ev.kind is EventKind.BUDGET_EXCEEDED:
        return "step budget exhausted"
    if ev.popped:
        parts.append(f"pop {_edge_str(g, ev.edge)}")
        parts.append(f"prune after {lab(ev.edge.root)}")
    else:
        parts.append(f"take {_edge_str(g, ev.edge)}")
        if ev.pushed:
            parts.append("push " + ";".join(_edge_str(g, s) for s in ev.pushed))
    tip = lab(ev.edge.tip)
    if ev.kind is EventKind.ODD_CYCLE:
        parts.append(f"odd cycle: {tip} already on P at parity 0")
    elif ev.kind is EventKind.EVEN_CYCLE:
        parts.append(f"even cycle: {tip} already on P at parity 1")
    elif ev.kind is EventKind.AUGMENT:
        parts.append(f"{tip} is free: augmenting path found")
    return "; ".join(parts)


def _snapshot(t: Trunk, ev: SearchEvent, step: int) -> TraceRecord:
    entries = t.entries()
    if ev.kind in CYCLE_EVENTS:
        # show the revisited vertex where it would have gone
        entries.append(PathEntry(ev.edge.tip, 1))
    return TraceRecord(step, ev.kind, tuple(entries), tuple(t.sprouts),
                       describe(ev, t.graph, t.root))


def search(g: Graph, m: Matching, v0: int, budget: Optional[int] = None,
           trace: bool = False, prefer_free_tips: bool = False) -> SearchOutcome:
    """Look for an ``m``-augmenting path starting at free vertex ``v0``.

    Runs grow/detour steps until an augmenting path is found, the sprout
    stack runs dry, or ``budget`` steps have been used.
    """
    if budget is None:
        budget = default_budget(g)
    if budget <= 0:
        raise SearchError("budget must be positive")
    t, ev = init_search(g, m, v0, prefer_free_tips)
    records: list[TraceRecord] = []
    steps = 1
    if trace:
        records.append(_snapshot(t, ev, steps))
    kind = ev.kind
    while kind is not EventKind.AUGMENT:
        if steps >= budget:
            if trace:
                records.append(_snapshot(t, SearchEvent(EventKind.BUDGET_EXCEEDED), steps + 1))
            return SearchOutcome(Result.BUDGET_EXCEEDED, None, records, steps,
                                 t.max_path, t.max_sprouts)
        ev = detour(t) if kind in _NEEDS_DETOUR else grow_step(t)
        steps += 1
        kind = ev.kind
        if trace:
            records.append(_snapshot(t, ev, steps))
        if kind is EventKind.FAIL:
            return SearchOutcome(Result.NO_AUGMENTING_PATH, None, records, steps,
                                 t.max_path, t.max_sprouts)
    return SearchOutcome(Result.AUGMENTING_PATH, list(t.path), records, steps,
                         t.max_path, t.max_sprouts)


def render_trace(records: list[TraceRecord], g: Graph) -> str:
    return "".join(r.to_tsv(g) + "\n" for r in records)
