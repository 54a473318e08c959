"""Exhaustive reference answers for small graphs.

Nothing here touches the trunk search or the matcher; only the Graph and
Matching types are shared.  Every entry point refuses graphs above its
size guard instead of degrading to a heuristic.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from typing import Optional

from .graph_io import Graph, Matching, write_dimacs

MAX_N = 24
MAX_N_GE = 20


class OracleSizeError(ValueError):
    pass


def _guard(n: int, limit: int) -> None:
    if n > limit:
        raise OracleSizeError(f"oracle limited to n <= {limit}, got n = {n}")


def _nbr_masks(g: Graph) -> list[int]:
    masks = []
    for v in range(g.n):
        bits = 0
        for u in g.adj[v]:
            bits |= 1 << u
        masks.append(bits)
    return masks


def _max_matching_mask(nbr: list[int], alive: int) -> list[tuple[int, int]]:
    """Maximum matching of the subgraph induced by bitmask ``alive``."""
    memo: dict[int, int] = {}

    def best(mask: int) -> int:
        # size of a maximum matching inside ``mask``
        if mask in memo:
            return memo[mask]
        orig = mask
        # drop vertices with no neighbour left
        while mask:
            low = mask & -mask
            v = low.bit_length() - 1
            if nbr[v] & mask:
                break
            mask ^= low
        if not mask:
            memo[orig] = 0
            return 0
        if mask in memo:
            memo[orig] = memo[mask]
            return memo[mask]
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        value = best(rest)  # v left unmatched
        cap = bin(mask).count("1") // 2
        cand = nbr[v] & rest
        while cand and value < cap:
            ub = cand & -cand
            value = max(value, 1 + best(rest ^ ub))
            cand ^= ub
        memo[mask] = memo[orig] = value
        return value

    pairs = []
    mask = alive
    target = best(mask)
    while target:
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        if best(rest) == target:
            mask = rest
            continue
        cand = nbr[v] & rest
        while cand:
            ub = cand & -cand
            if 1 + best(rest ^ ub) == target:
                pairs.append((v, ub.bit_length() - 1))
                mask = rest ^ ub
                target -= 1
                break
            cand ^= ub
    return pairs


def nu_bruteforce(g: Graph) -> tuple[int, Matching]:
    """Exact maximum matching size and one optimal matching."""
    _guard(g.n, MAX_N)
    pairs = _max_matching_mask(_nbr_masks(g), (1 << g.n) - 1)
    return len(pairs), Matching(g.n, pairs)


def has_augmenting_path_exhaustive(g: Graph, m: Matching, v0: int) -> tuple[bool, Optional[list[int]]]:
    """Try every simple alternating path from free ``v0``."""
    _guard(g.n, MAX_N)
    if m.mate[v0] is not None:
        raise ValueError(f"vertex {v0} is not free")
    mate = m.mate
    on_path = [False] * g.n
    on_path[v0] = True
    path = [v0]

    def extend(v: int) -> bool:
        # v is at even distance; try every non-matching edge out of it
        for u in g.adj[v]:
            if on_path[u] or mate[v] == u:
                continue
            w = mate[u]
            if w is None:
                path.append(u)
                return True
            if on_path[w]:
                continue
            on_path[u] = on_path[w] = True
            path.extend((u, w))
            if extend(w):
                return True
            path.pop()
            path.pop()
            on_path[u] = on_path[w] = False
        return False

    if extend(v0):
        return True, list(path)
    return False, None


def verify_maximum(g: Graph, m: Matching) -> bool:
    m.validate(g)
    nu, _ = nu_bruteforce(g)
    return len(m) == nu


@dataclass
class GEDecomposition:
    D: frozenset[int]
    A: frozenset[int]
    C: frozenset[int]
    nu: int
    witness: Matching
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def _components(g: Graph, verts: frozenset[int]) -> list[list[int]]:
    seen = set()
    comps = []
    for s in sorted(verts):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in g.adj[v]:
                if u in verts and u not in seen:
                    seen.add(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def gallai_edmonds_bruteforce(g: Graph) -> GEDecomposition:
    """D/A/C partition from nu(G - v) for every v, with structure checks.

    ``problems`` lists every violated structural property (empty when the
    decomposition behaves as the structure theorem says).
    """
    _guard(g.n, MAX_N_GE)
    nbr = _nbr_masks(g)
    full = (1 << g.n) - 1
    witness_pairs = _max_matching_mask(nbr, full)
    nu = len(witness_pairs)
    D = frozenset(v for v in range(g.n)
                  if len(_max_matching_mask(nbr, full ^ (1 << v))) == nu)
    A = frozenset(u for v in D for u in g.adj[v] if u not in D)
    C = frozenset(range(g.n)) - D - A
    witness = Matching(g.n, witness_pairs)
    ge = GEDecomposition(D, A, C, nu, witness)
    ge.problems = _check_structure(g, ge, nbr)
    return ge


def _check_structure(g: Graph, ge: GEDecomposition, nbr: list[int]) -> list[str]:
    problems = []
    mate = ge.witness.mate
    for comp in _components(g, ge.C):
        inside = sum(1 for v in comp if mate[v] is not None and mate[v] in comp)
        if len(comp) % 2:
            problems.append(f"C-component {comp} is odd")
        if inside != len(comp):
            problems.append(f"witness not perfect on C-component {comp}")
    for comp in _components(g, ge.D):
        k = len(comp)
        if k % 2 == 0:
            problems.append(f"D-component {comp} is even")
            continue
        cmask = sum(1 << v for v in comp)
        for w in comp:
            if len(_max_matching_mask(nbr, cmask ^ (1 << w))) != (k - 1) // 2:
                problems.append(f"D-component {comp} not factor-critical at {w}")
                break
        inside = sum(1 for v in comp if mate[v] is not None and mate[v] in comp)
        if inside != k - 1:
            problems.append(f"witness not near-perfect on D-component {comp}")
    # A matched into distinct D-components
    comp_of = {v: i for i, comp in enumerate(_components(g, ge.D)) for v in comp}
    used = set()
    for a in ge.A:
        b = mate[a]
        if b is None or b not in comp_of:
            problems.append(f"A-vertex {a} not matched into D")
        elif comp_of[b] in used:
            problems.append(f"two A-vertices matched into D-component {comp_of[b]}")
        else:
            used.add(comp_of[b])
    return problems


def write_counterexample(directory: str, g: Graph, report: dict) -> str:
    """Store ``g`` and ``report`` under a content hash; returns the .dimacs path."""
    text = write_dimacs(g)
    digest = hashlib.sha256(text.encode()).hexdigest()[:16]
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, f"{digest}.dimacs")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    with open(os.path.join(directory, f"{digest}.json"), "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True, default=str)
    return path
