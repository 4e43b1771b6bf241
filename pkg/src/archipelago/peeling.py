"""Peeling decompositions and the clustered colorings they support.

peel() repeatedly removes a small island from the graph (layer by layer)
until every remaining component is at or below the regime's guarantee
threshold; those components form the base. Coloring the base first and the
layers in reverse removal order, with each island member avoiding only its
already-colored neighbors outside the island, keeps every monochromatic
component inside a single layer or a single base component.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass

from archipelago.graphs import Graph, connected_components, girth, has_triangle
from archipelago.islands import Regime, find_island, forbidden_configuration, is_island


class TheoremViolation(RuntimeError):
    """A component above the guarantee threshold had no island.

    On honestly embedded inputs this cannot happen; it signals either a
    mismatched Euler characteristic or a broken precondition. The residual
    component is kept for inspection.
    """

    def __init__(self, regime: Regime, chi: int, residual: tuple[int, ...]):
        self.regime = regime
        self.chi = chi
        self.threshold = regime.threshold(chi)
        self.residual = residual
        super().__init__(
            f"regime {regime.name}: component of {len(residual)} vertices exceeds "
            f"threshold {self.threshold} (chi={chi}) but contains no "
            f"{regime.k}-island of at most {regime.size} vertices"
        )


@dataclass(frozen=True)
class PeelDecomposition:
    """Removal layers plus the base left at the end.

    Each layer was an island of the graph still present when it was removed;
    base components all have at most `threshold` vertices.
    """

    graph: Graph
    regime: Regime
    chi: int
    threshold: int
    layers: tuple[tuple[int, ...], ...]
    base: tuple[int, ...]

    def replay_ok(self) -> bool:
        """Re-verify every layer against the graph it was removed from."""
        gone: set[int] = set()
        for layer in self.layers:
            live = [v for v in range(self.graph.n) if v not in gone]
            sub, relabel = self.graph.induced(live)
            if not is_island(sub, [relabel[v] for v in layer], self.regime.k):
                return False
            if len(layer) > self.regime.size:
                return False
            gone.update(layer)
        if sorted(self.base) != sorted(set(range(self.graph.n)) - gone):
            return False
        if self.base:
            sub, _ = self.graph.induced(self.base)
            if any(len(c) > self.threshold for c in connected_components(sub)):
                return False
        return True


def peel(g: Graph, regime: Regime, chi: int, footnote_12: bool = False) -> PeelDecomposition:
    """Decompose g into islands and a small base.

    chi is the Euler characteristic of a surface the graph embeds in; it only
    enters through the threshold below which island-free components are
    acceptable. Regime B requires a triangle-free graph, regime C girth at
    least 6.

    footnote_12 asserts, on the caller's authority, that the input is a
    2-edge-connected planar graph; regime C then looks for islands of at
    most 12 vertices first and falls back to 16 with a warning when none
    exists, rather than failing.
    """
    if regime.name == "B" and has_triangle(g):
        raise ValueError("regime B needs a triangle-free graph")
    if regime.name == "C" and girth(g) < 6:
        raise ValueError("regime C needs girth at least 6")
    if footnote_12 and regime.name != "C":
        raise ValueError("the 12-island refinement applies to regime C only")
    threshold = regime.threshold(chi)
    alive = [True] * g.n
    live_deg = [g.degree(v) for v in range(g.n)]
    layers: list[tuple[int, ...]] = []
    base: list[int] = []

    def remove(vs):
        for v in vs:
            alive[v] = False
        for v in vs:
            for u in g.neighbors(v):
                if alive[u]:
                    live_deg[u] -= 1

    def cascade(comp):
        # vertices whose live degree is at most k are single-vertex islands
        queue = deque(sorted(v for v in comp if live_deg[v] <= regime.k))
        queued = set(queue)
        while queue:
            v = queue.popleft()
            if not alive[v]:
                continue
            layers.append((v,))
            remove([v])
            for u in g.neighbors(v):
                if alive[u] and live_deg[u] <= regime.k and u not in queued:
                    queued.add(u)
                    queue.append(u)

    worklist = deque(tuple(c) for c in connected_components(g))
    while worklist:
        comp = [v for v in worklist.popleft() if alive[v]]
        if not comp:
            continue
        cascade(comp)
        comp = [v for v in comp if alive[v]]
        if not comp:
            continue
        sub, relabel = g.induced(comp)
        inv = {i: v for v, i in relabel.items()}
        pieces = connected_components(sub)
        if len(pieces) > 1:
            worklist.extend(tuple(inv[i] for i in piece) for piece in pieces)
            continue
        witness = forbidden_configuration(sub, regime)
        if footnote_12 and (witness is None or len(witness.members) > 12):
            twelve = find_island(sub, regime.k, 12)
            if twelve is not None:
                witness = twelve
            else:
                if witness is None:
                    witness = find_island(sub, regime.k, regime.size)
                if witness is not None:
                    warnings.warn(
                        "no 12-island in a residual component; using up to 16 "
                        "(is the input really 2-edge-connected and planar?)",
                        RuntimeWarning,
                        stacklevel=2,
                    )
        elif witness is None:
            witness = find_island(sub, regime.k, regime.size)
        if witness is not None:
            members = sorted(inv[i] for i in witness.members)
            layers.append(tuple(members))
            remove(members)
            worklist.append(tuple(v for v in comp if alive[v]))
            continue
        if len(comp) <= threshold:
            base.extend(comp)
            continue
        raise TheoremViolation(regime, chi, tuple(comp))

    return PeelDecomposition(
        graph=g,
        regime=regime,
        chi=chi,
        threshold=threshold,
        layers=tuple(layers),
        base=tuple(sorted(base)),
    )


def extend_coloring(dec: PeelDecomposition, lists) -> dict[int, int]:
    """Color a decomposition from per-vertex lists of at least k+1 colors each.

    Base vertices take the first color of their list. Layers are colored in
    reverse removal order; each island member takes the first list color not
    used by an already-colored neighbor outside its own island. Monochromatic
    components then have at most max(island size, threshold) vertices.
    """
    g = dec.graph
    k = dec.regime.k
    for v in range(g.n):
        if v not in lists:
            raise ValueError(f"no color list for vertex {v}")
        if len(set(lists[v])) < k + 1:
            raise ValueError(f"list of vertex {v} has fewer than {k + 1} distinct colors")
    coloring: dict[int, int] = {}
    for v in dec.base:
        coloring[v] = lists[v][0]
    for layer in reversed(dec.layers):
        members = set(layer)
        for v in sorted(layer):
            used = {
                coloring[u]
                for u in g.neighbors(v)
                if u in coloring and u not in members
            }
            for c in lists[v]:
                if c not in used:
                    coloring[v] = c
                    break
            else:
                raise AssertionError(f"vertex {v} ran out of colors; broken layer")
    return coloring


def color_from_lists(
    g: Graph, lists, regime: Regime, chi: int, footnote_12: bool = False
) -> dict[int, int]:
    """Peel g and color it from lists; the one-call form of the two steps."""
    return extend_coloring(peel(g, regime, chi, footnote_12=footnote_12), lists)


def color_four_plus_sink(g: Graph, chi: int):
    """Five colors: 1..4 form tiny components, 5 is the sink for the base.

    Peels with the (4, 3) regime. Base vertices get color 5; island members
    take the smallest color among 1..5 not used by an already-colored
    neighbor outside the island. A member only reaches color 5 when its (at
    most four) outside neighbors use exactly 1..4, so color 5 never crosses a
    layer boundary: components of colors 1..4 have at most 3 vertices, and
    color-5 components at most max(3, threshold).

    Returns (coloring, decomposition).
    """
    from archipelago.islands import REGIME_A

    dec = peel(g, REGIME_A, chi)
    coloring = {v: 5 for v in dec.base}
    for layer in reversed(dec.layers):
        members = set(layer)
        for v in sorted(layer):
            used = {
                coloring[u]
                for u in g.neighbors(v)
                if u in coloring and u not in members
            }
            coloring[v] = next(c for c in (1, 2, 3, 4, 5) if c not in used)
    return coloring, dec


@dataclass(frozen=True)
class ColoringReport:
    """Audit of a coloring's monochromatic components."""

    max_component: int
    components: tuple[tuple[int, tuple[int, ...]], ...]  # (color, members)
    component_sizes: dict  # color -> largest component of that color
    list_violations: tuple[tuple[int, int], ...]  # (vertex, color not in its list)
    oversized_components: tuple[tuple[int, ...], ...]

    @property
    def ok(self) -> bool:
        return not self.list_violations and not self.oversized_components


def audit(g: Graph, coloring, max_size: int | None = None, lists=None) -> ColoringReport:
    """Connected components of each color class, checked against bounds.

    Raises if any vertex is uncolored. When max_size is given, components
    larger than it are reported as oversized; when lists is given, vertices
    colored outside their list are reported.
    """
    for v in range(g.n):
        if v not in coloring:
            raise ValueError(f"vertex {v} is uncolored")
    seen = [False] * g.n
    comps: list[tuple[int, tuple[int, ...]]] = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        color = coloring[s]
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if not seen[y] and coloring[y] == color:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append((color, tuple(sorted(comp))))
    sizes: dict = {}
    for color, members in comps:
        sizes[color] = max(sizes.get(color, 0), len(members))
    violations = tuple(
        (v, coloring[v])
        for v in range(g.n)
        if lists is not None and coloring[v] not in lists[v]
    )
    oversized = tuple(
        members for _, members in comps if max_size is not None and len(members) > max_size
    )
    return ColoringReport(
        max_component=max((len(m) for _, m in comps), default=0),
        components=tuple(comps),
        component_sizes=sizes,
        list_violations=violations,
        oversized_components=oversized,
    )
