"""Named example graphs with their starting matchings.

Edge lists are written in the order that produces the adjacency order each
worked example depends on; reordering them changes which sprout is taken
first.  The ``_alt`` variants differ from their base graph only in that
order.
"""

from __future__ import annotations

from .graph_io import Graph, Matching

FIXTURE_NAMES = ("fig4", "fig4_alt", "fig5", "fig5_alt", "fig8", "sylvester", "petersen")


def _build(labels: str, edges: str, matched: str) -> tuple[Graph, Matching]:
    names = labels.split()
    idx = {name: i for i, name in enumerate(names)}

    def pairs(text: str):
        return [tuple(idx[x] for x in e.split("-")) for e in text.split()]

    g = Graph.from_edges(len(names), pairs(edges), names)
    return g, Matching(g.n, pairs(matched))


# va: v1 vb ve | vc: vb vd vy | vd: ve vx vc
_FIG4 = "v0-v1 v1-va va-vb va-ve vb-vc vd-ve vd-vx vc-vd vc-vy vy-vz"
# vd: ve vc vx
_FIG4_ALT = "v0-v1 v1-va va-vb va-ve vb-vc vd-ve vc-vd vd-vx vc-vy vy-vz"
_FIG4_M = "v1-va vb-vc vd-ve vy-vz"
_FIG4_V = "v0 v1 va vb vc vd ve vx vy vz"

# vb: va vc vy | vd: vc va vx
_FIG5 = "v0-v1 v1-v2 v2-va va-vb vb-vc vc-vd va-vd vb-vy vd-vx vy-vz"
# vb: va vy vc | vd: vc vx va
_FIG5_ALT = "v0-v1 v1-v2 v2-va va-vb vb-vy vb-vc vc-vd vd-vx va-vd vy-vz"
_FIG5_M = "v1-v2 va-vb vc-vd vy-vz"
_FIG5_V = "v0 v1 v2 va vb vc vd vx vy vz"

# va: v1 vb ve | vb: vc va vh | vc: vb vf vg | vf: vd vc vg
_FIG8 = "v0-v1 v1-va vb-vc va-vb va-ve vd-vf vc-vf vc-vg vb-vh vd-ve vf-vg"
_FIG8_M = "v1-va vb-vc vd-ve vf-vg"
_FIG8_V = "v0 v1 va vb vc vd ve vf vg vh"


def _sylvester() -> tuple[Graph, Matching]:
    # cut vertex va joined to one vertex of each of three 5-cycles
    names = ["va"] + [f"g{k}_{i}" for k in range(1, 4) for i in range(1, 6)]
    edges = []
    for k in range(3):
        base = 1 + 5 * k
        edges.append((0, base))
        edges.extend((base + i, base + (i + 1) % 5) for i in range(5))
    g = Graph.from_edges(len(names), edges, names)
    return g, Matching.empty(g.n)


def _petersen() -> tuple[Graph, Matching]:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    g = Graph.from_edges(10, outer + spokes + inner)
    return g, Matching.empty(10)


def fixture(name: str) -> tuple[Graph, Matching]:
    """Return ``(graph, initial_matching)`` for a named example."""
    if name == "fig4":
        return _build(_FIG4_V, _FIG4, _FIG4_M)
    if name == "fig4_alt":
        return _build(_FIG4_V, _FIG4_ALT, _FIG4_M)
    if name == "fig5":
        return _build(_FIG5_V, _FIG5, _FIG5_M)
    if name == "fig5_alt":
        return _build(_FIG5_V, _FIG5_ALT, _FIG5_M)
    if name == "fig8":
        return _build(_FIG8_V, _FIG8, _FIG8_M)
    if name == "sylvester":
        return _sylvester()
    if name == "petersen":
        return _petersen()
    raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
