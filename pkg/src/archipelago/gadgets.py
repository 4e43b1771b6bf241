"""Terminal gadgets and the two hardness reductions built on them.

The building blocks force color relations between named terminal vertices
under colorings whose monochromatic components are bounded:

* tree / J couplers: girth-8 bipartite gadgets whose two roots must agree;
* N links: force their two terminals apart;
* equalizers (complete bipartite K_{2,m}): force their two terminals equal;
* uncrossers: let two independent color channels pass through each other,
  which planarizes a drawing one crossing at a time.

Reductions translate 3-uniform hypergraph 2-colorability into bounded
monochromatic-component 2-colorability, once with girth 8 preserved and once
inside the plane.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from archipelago.graphs import Embedding, Graph, connected_components, euler_characteristic
from archipelago.peeling import audit
from archipelago.solver import mc_decide


@dataclass(frozen=True)
class Hypergraph3:
    """3-uniform hypergraph: a vertex count and a tuple of sorted triples."""

    n: int
    edges: tuple

    def __post_init__(self):
        for e in self.edges:
            if len(e) != 3 or len(set(e)) != 3:
                raise ValueError(f"hyperedge {e} must have 3 distinct vertices")
            if not all(isinstance(v, int) and 0 <= v < self.n for v in e):
                raise ValueError(f"hyperedge {e} out of range")
            if tuple(sorted(e)) != tuple(e):
                raise ValueError(f"hyperedge {e} must be sorted")

    @classmethod
    def from_edges(cls, n: int, edges) -> "Hypergraph3":
        return cls(n, tuple(tuple(sorted(e)) for e in edges))


def parse_hypergraph(text: str) -> Hypergraph3:
    lines = [
        ln.split("#", 1)[0].strip()
        for ln in text.splitlines()
    ]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty hypergraph file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError("header must be 'n m'")
    n, m = int(header[0]), int(header[1])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} hyperedges, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"hyperedge line {ln!r} must have 3 vertices")
        edges.append(tuple(sorted(int(p) for p in parts)))
    return Hypergraph3(n, tuple(edges))


def serialize_hypergraph(h: Hypergraph3) -> str:
    out = [f"{h.n} {len(h.edges)}"]
    out.extend(f"{a} {b} {c}" for a, b, c in h.edges)
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class GadgetGraph:
    graph: Graph
    terminals: dict
    embedding: Embedding | None = None

    def __post_init__(self):
        for name, v in self.terminals.items():
            if not 0 <= v < self.graph.n:
                raise ValueError(f"terminal {name} = {v} out of range")
        if self.embedding is not None:
            if self.embedding.graph != self.graph:
                raise ValueError("embedding belongs to a different graph")
            if euler_characteristic(self.embedding) != 2:
                raise ValueError("gadget embeddings must be spherical")


def _planar_embedding(g: Graph) -> Embedding:
    """Rotation system from a planarity test, re-verified by face tracing."""
    import networkx as nx

    ng = nx.Graph()
    ng.add_nodes_from(range(g.n))
    ng.add_edges_from(g.edges())
    ok, emb = nx.check_planarity(ng)
    if not ok:
        raise ValueError("graph is not planar")
    rotations = [list(emb.neighbors_cw_order(v)) for v in range(g.n)]
    out = Embedding(g, rotations)
    if euler_characteristic(out) != 2:
        raise AssertionError("planar rotation system does not trace to a sphere")
    return out


class _Assembler:
    """Grows a graph by splicing in gadget copies with shared terminals."""

    def __init__(self, n: int = 0):
        self.n = n
        self.edges: list[tuple[int, int]] = []

    def fresh(self) -> int:
        v = self.n
        self.n += 1
        return v

    def add_edge(self, u: int, v: int):
        self.edges.append((u, v))

    def splice(self, gadget: GadgetGraph, identify: dict) -> dict:
        """Copy a gadget in, mapping the given local ids onto existing ones."""
        mapping = dict(identify)
        for v in range(gadget.graph.n):
            if v not in mapping:
                mapping[v] = self.fresh()
        for u, v in gadget.graph.edges():
            self.add_edge(mapping[u], mapping[v])
        return mapping

    def graph(self) -> Graph:
        return Graph(self.n, self.edges)


# -- coupler trees ------------------------------------------------------------


def _tree_sizes(t: int) -> tuple[int, int]:
    b = 5 * t
    return b, 1 + b + b * b + b**3


def build_tree(t: int) -> GadgetGraph:
    """Complete rooted tree of height 3, branching 5t, root terminal x.

    Ids are breadth-first, so the (5t)^3 leaves occupy the final contiguous
    block in lexicographic order of their (l1, l2, l3) labels; tree_leaf maps
    a label to its id.
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    b, n = _tree_sizes(t)
    edges = []
    for i in range(b):
        edges.append((0, 1 + i))
    for i in range(b):
        for j in range(b):
            edges.append((1 + i, 1 + b + i * b + j))
    leaf_base = 1 + b + b * b
    for ij in range(b * b):
        for l in range(b):
            edges.append((1 + b + ij, leaf_base + ij * b + l))
    return GadgetGraph(Graph(n, edges), {"x": 0})


def tree_leaf(t: int, l1: int, l2: int, l3: int) -> int:
    """Id of the leaf labelled (l1, l2, l3), labels counted from 1."""
    b, _ = _tree_sizes(t)
    for l in (l1, l2, l3):
        if not 1 <= l <= b:
            raise ValueError(f"leaf label {l} outside 1..{b}")
    return 1 + b + b * b + ((l1 - 1) * b + (l2 - 1)) * b + (l3 - 1)


def build_J(t: int) -> GadgetGraph:
    """Two coupler trees glued leaf-to-leaf with reversed labels.

    The leaf (l1, l2, l3) of the y-side tree is the leaf (l3, l2, l1) of the
    z-side tree, so only the z-side's two internal layers are new vertices.
    Terminals y and z are the two roots.
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    b, size_y = _tree_sizes(t)
    tree = build_tree(t)
    z = size_y
    n = size_y + 1 + b + b * b
    edges = list(tree.graph.edges())
    for m1 in range(b):
        edges.append((z, z + 1 + m1))
    for m1 in range(b):
        for m2 in range(b):
            edges.append((z + 1 + m1, z + 1 + b + m1 * b + m2))
    for m1 in range(b):
        for m2 in range(b):
            for m3 in range(b):
                # z-side leaf (m1, m2, m3) is the y-side leaf (m3, m2, m1)
                leaf = tree_leaf(t, m3 + 1, m2 + 1, m1 + 1)
                edges.append((z + 1 + b + m1 * b + m2, leaf))
    return GadgetGraph(Graph(n, edges), {"y": 0, "z": z})


@dataclass(frozen=True)
class CountingCheck:
    t: int
    lhs: int
    rhs: Fraction
    holds: bool


def counting_check_J(t: int) -> CountingCheck:
    """Exact check that (4t+1)^3 exceeds half of (5t)^3.

    This margin is what forces the two coupler roots to agree: a root
    colored c passes color 1-c to at least 4t+1 of any internal vertex's 5t
    children, so more than half of all leaves end up colored by root parity,
    and the two trees share all their leaves.
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    lhs = (4 * t + 1) ** 3
    rhs = Fraction((5 * t) ** 3, 2)
    return CountingCheck(t, lhs, rhs, lhs > rhs)


# -- links and the uncrosser ---------------------------------------------------


def build_N(k: int) -> GadgetGraph:
    """Distinct-color link: terminals y, z over a path of 3k^4 vertices.

    y sees the even-indexed path vertices and z the odd ones. If y and z
    shared a color, too few path vertices could take it, leaving a run of
    the opposite color longer than k(k-1).
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    length = 3 * k**4
    edges = []
    for i in range(1, length + 1):
        v = 1 + i  # v_i; y is 0, z is 1
        if i < length:
            edges.append((v, v + 1))
        edges.append((0 if i % 2 == 0 else 1, v))
    return GadgetGraph(Graph(length + 2, edges), {"y": 0, "z": 1})


def build_equalizer(k: int) -> GadgetGraph:
    """Equal-color link: K_{2, 2k(k-1)-1} with terminals on the small side.

    If the terminals differed, each of the 2k(k-1)-1 middle vertices would
    join one terminal's component, and some component would exceed k(k-1).
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    middles = 2 * k * (k - 1) - 1
    edges = [(side, 2 + i) for side in (0, 1) for i in range(middles)]
    return GadgetGraph(Graph(2 + middles, edges), {"y": 0, "z": 1})


def build_uncrosser(k: int) -> GadgetGraph:
    """Crossing replacement with terminals x_N, x_S, x_W, x_E, x_C, y_1..y_{2(k-1)}.

    One color channel runs west to east, the other north to south. The y_i
    chain alternates via distinct-links from x_W and ends equalized to x_E;
    every y_i carries k-1 pendants equalized to x_N and a direct edge to x_C,
    and x_C is distinct-linked to x_S. Correctness is computational: the
    construction must pass validate_uncrosser.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    asm = _Assembler()
    terminals = {name: asm.fresh() for name in ("x_N", "x_S", "x_W", "x_E", "x_C")}
    ys = []
    for i in range(1, 2 * (k - 1) + 1):
        ys.append(asm.fresh())
        terminals[f"y_{i}"] = ys[-1]
    distinct = build_N(k)
    equal = build_equalizer(k)

    chain = [terminals["x_W"], *ys]
    for u, v in zip(chain, chain[1:]):
        asm.splice(distinct, {0: u, 1: v})
    asm.splice(equal, {0: ys[-1], 1: terminals["x_E"]})
    for y in ys:
        for _ in range(k - 1):
            p = asm.fresh()
            asm.add_edge(y, p)
            asm.splice(equal, {0: p, 1: terminals["x_N"]})
        asm.add_edge(terminals["x_C"], y)
    asm.splice(distinct, {0: terminals["x_C"], 1: terminals["x_S"]})

    g = asm.graph()
    return GadgetGraph(g, terminals, _planar_embedding(g))


@dataclass(frozen=True)
class UncrosserReport:
    """Solver-checked terminal behavior of an uncrosser candidate.

    Verdict "pass" means: under components bounded by k(k-1), no coloring
    separates x_N from x_S or x_W from x_E; and under components bounded by
    k, both an agreeing and a disagreeing x_N/x_W coloring exist.
    """

    verdict: str  # "pass" | "fail" | "inconclusive"
    checks: dict = field(repr=False)
    counterexample: dict | None = None
    same_witness: dict | None = field(default=None, repr=False)
    distinct_witness: dict | None = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"


def validate_uncrosser(u: GadgetGraph, k: int, budget: int = 10**6) -> UncrosserReport:
    t = u.terminals
    kk = k * (k - 1)
    checks = {
        "north_south_split": (mc_decide(u.graph, kk, pins={t["x_N"]: 0, t["x_S"]: 1}, budget=budget), "no"),
        "west_east_split": (mc_decide(u.graph, kk, pins={t["x_W"]: 0, t["x_E"]: 1}, budget=budget), "no"),
        "corner_agree": (mc_decide(u.graph, k, pins={t["x_N"]: 0, t["x_W"]: 0}, budget=budget), "yes"),
        "corner_disagree": (mc_decide(u.graph, k, pins={t["x_N"]: 0, t["x_W"]: 1}, budget=budget), "yes"),
    }
    counterexample = None
    failed = inconclusive = False
    for name, (res, want) in checks.items():
        if res.verdict == "inconclusive":
            inconclusive = True
        elif res.verdict != want:
            failed = True
            if want == "no" and res.verdict == "yes":
                counterexample = res.coloring
    verdict = "fail" if failed else ("inconclusive" if inconclusive else "pass")
    return UncrosserReport(
        verdict,
        {name: res for name, (res, _) in checks.items()},
        counterexample,
        checks["corner_agree"][0].coloring,
        checks["corner_disagree"][0].coloring,
    )


# -- reductions ----------------------------------------------------------------


def reduce_girth8(h: Hypergraph3, k: int) -> GadgetGraph:
    """Hypergraph 2-colorability as bounded-component coloring at girth 8.

    Primitive vertices keep ids 0..n-1. Each hyperedge contributes a path of
    k+1 fresh vertices, and the j-th path vertex (j from 1) is the y-root of
    a fresh coupler whose z-root is the hyperedge's vertex u_{j mod 3}. A
    2-coloring of the hypergraph extends to components of size at most 2;
    a monochromatic hyperedge forces a monochromatic path of k+1 vertices.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    coupler = build_J(k)
    z_local = coupler.terminals["z"]
    asm = _Assembler(h.n)
    terminals = {f"v{v}": v for v in range(h.n)}
    for idx, triple in enumerate(h.edges):
        prev = None
        for j in range(1, k + 2):
            ej = asm.fresh()
            terminals[f"e{idx}_{j}"] = ej
            if prev is not None:
                asm.add_edge(prev, ej)
            asm.splice(coupler, {0: ej, z_local: triple[j % 3]})
            prev = ej
    return GadgetGraph(asm.graph(), terminals)


def forward_coloring_girth8(h: Hypergraph3, hcol, g: GadgetGraph, k: int) -> dict:
    """Extend a valid hypergraph 2-coloring over the girth-8 reduction.

    Every coupler copy is properly 2-colored from its z-root, which makes
    the only monochromatic edges path edges; a run of three would be a
    monochromatic hyperedge. The result is audited to components of size 2.
    """
    for e in h.edges:
        if hcol[e[0]] == hcol[e[1]] == hcol[e[2]]:
            raise ValueError(f"hyperedge {e} is monochromatic")
    b, size_y = _tree_sizes(k)
    z_local = size_y
    n_local = size_y + 1 + b * b + b
    # parity of the distance from the y-root, by local id block
    blocks = [
        (1, 0),  # y-root
        (1 + b, 1),
        (1 + b + b * b, 0),
        (size_y, 1),  # leaves
        (z_local + 1, 0),  # z-root, distance 6
        (z_local + 1 + b, 1),
        (n_local, 0),
    ]

    def parity(local: int) -> int:
        for hi, par in blocks:
            if local < hi:
                return par
        raise AssertionError(f"local id {local} outside coupler")

    coloring = {v: hcol[v] for v in range(h.n)}
    cursor = h.n
    for triple in h.edges:
        for j in range(1, k + 2):
            ej = cursor
            cursor += 1
            base = hcol[triple[j % 3]]
            coloring[ej] = base
            # fresh ids follow local order with y (local 0) and z skipped
            for local in range(1, n_local):
                if local == z_local:
                    continue
                rank = local - 1 if local < z_local else local - 2
                coloring[cursor + rank] = base ^ parity(local)
            cursor += n_local - 2
    if cursor != g.graph.n:
        raise ValueError("graph does not match this hypergraph and k")
    report = audit(g.graph, coloring, max_size=2)
    if report.oversized_components:
        raise AssertionError("forward coloring produced an oversized component")
    return coloring


def _layout_crossings(targets: list[int], slots: dict, delta: Fraction):
    """Pairwise crossings of straight connectors between two vertical lines.

    Connector p runs from path vertex p at height p + delta (p+1)^2 on one
    line to its primitive's slot height on the other. Returns, per connector,
    the crossing list sorted from the primitive side inward, each entry
    (abscissa, other connector). Raises on tied abscissas.
    """
    heights = [p + delta * (p + 1) ** 2 for p in range(len(targets))]
    crossings: list[list[tuple[Fraction, int]]] = [[] for _ in targets]
    for i in range(len(targets)):
        a_i, b_i = Fraction(slots[targets[i]]), heights[i]
        for j in range(i + 1, len(targets)):
            if targets[i] == targets[j]:
                continue
            a_j, b_j = Fraction(slots[targets[j]]), heights[j]
            if (a_i - a_j) * (b_i - b_j) >= 0:
                continue
            # heights at x: b + (a - b) x; equal at the crossing abscissa
            x = (b_j - b_i) / ((a_i - b_i) - (a_j - b_j))
            crossings[i].append((x, j))
            crossings[j].append((x, i))
    for row in crossings:
        row.sort(key=lambda entry: -entry[0])
        if len({x for x, _ in row}) != len(row):
            raise ValueError("tied crossing abscissas")
    return crossings


def reduce_planar(h: Hypergraph3, k: int) -> GadgetGraph:
    """Hypergraph 2-colorability as bounded-component coloring in the plane.

    Each hyperedge gets a path of k(k-1)+1 fresh vertices whose j-th vertex
    is equalized to the hyperedge's vertex u_{j mod 3}; a monochromatic
    hyperedge would force the whole path monochromatic. The drawing puts
    path vertices on one vertical line in path order and primitives on
    another in first-use order; every crossing of two straight connectors
    is replaced by an uncrosser, entered west-east by the lower-index
    connector and north-south by the other, with equalizers joining the
    pieces. The emitted embedding is re-traced to Euler characteristic 2.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    # a single spherical drawing cannot hold disconnected pieces
    if {v for t in h.edges for v in t} != set(range(h.n)):
        raise ValueError("every vertex must occur in some hyperedge; "
                         "drop isolated vertices first")
    length = k * (k - 1) + 1
    targets = [triple[j % 3] for triple in h.edges for j in range(1, length + 1)]
    slots: dict[int, int] = {}
    for u in targets:
        if u not in slots:
            slots[u] = len(slots)
    for u in range(h.n):
        if u not in slots:
            slots[u] = len(slots)

    delta = Fraction(1, 128)
    crossings = None
    for _ in range(32):
        try:
            crossings = _layout_crossings(targets, slots, delta)
            break
        except ValueError:
            delta /= 8
    if crossings is None:
        raise RuntimeError("could not break crossing ties")

    asm = _Assembler(h.n)
    terminals = {f"v{v}": v for v in range(h.n)}
    path_ids = []
    for idx in range(len(h.edges)):
        prev = None
        for j in range(1, length + 1):
            ej = asm.fresh()
            terminals[f"e{idx}_{j}"] = ej
            path_ids.append(ej)
            if prev is not None:
                asm.add_edge(prev, ej)
            prev = ej

    uncrosser = build_uncrosser(k)
    equal = build_equalizer(k)
    # one shared uncrosser per crossing pair, keyed with the lower index first
    shared: dict[tuple[int, int], dict] = {}
    for p, target in enumerate(targets):
        stops = []
        for x, q in crossings[p]:
            key = (min(p, q), max(p, q))
            if key not in shared:
                shared[key] = asm.splice(uncrosser, {})
            copy = shared[key]
            if p < q:
                stops.append((copy[uncrosser.terminals["x_W"]], copy[uncrosser.terminals["x_E"]]))
            else:
                stops.append((copy[uncrosser.terminals["x_N"]], copy[uncrosser.terminals["x_S"]]))
        at = target
        for enter, exit_ in stops:
            asm.splice(equal, {0: at, 1: enter})
            at = exit_
        asm.splice(equal, {0: at, 1: path_ids[p]})

    g = asm.graph()
    if len(connected_components(g)) > 1:
        raise ValueError("the hypergraph must be connected through shared "
                         "vertices; reduce its pieces separately")
    return GadgetGraph(g, terminals, _planar_embedding(g))


# -- brute-force hypergraph oracle ----------------------------------------------


def hyper2color(h: Hypergraph3):
    """2-coloring of the hypergraph with no monochromatic triple, or None.

    Depth-first over vertices in id order, pruning as soon as a fully
    colored triple goes monochromatic. Exhaustive, so refusals are proofs;
    capped at 30 vertices.
    """
    if h.n > 30:
        raise ValueError("hypergraph too large for exhaustive search (n > 30)")
    by_max: list[list[tuple]] = [[] for _ in range(h.n)]
    for e in h.edges:
        by_max[e[2]].append(e)
    colors = [-1] * h.n

    def consistent(v: int) -> bool:
        return all(
            not (colors[a] == colors[b] == colors[c]) for a, b, c in by_max[v]
        )

    v = 0
    choice = [0] * h.n
    while True:
        if v == h.n:
            return {u: colors[u] for u in range(h.n)}
        if choice[v] == 2:
            choice[v] = 0
            colors[v] = -1
            v -= 1
            if v < 0:
                return None
            continue
        colors[v] = choice[v]
        choice[v] += 1
        if consistent(v):
            v += 1
