"""Core graph and surface-embedding types.

Graphs are simple and undirected, with vertices 0..n-1. Embeddings are rotation
systems (cyclic neighbor orders) with optional edge signs, so non-orientable
surfaces are supported. Faces are recovered by tracing directed edges, and the
Euler characteristic follows from the face count.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "_adj", "_m")

    def __init__(self, n: int, edges):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        seen = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self._adj = tuple(tuple(sorted(nbrs)) for nbrs in adj)
        self._m = len(seen)

    @classmethod
    def from_edges(cls, edges) -> "Graph":
        edges = list(edges)
        n = 1 + max((max(u, v) for u, v in edges), default=-1)
        return cls(n, edges)

    @property
    def m(self) -> int:
        return self._m

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self):
        for u in range(self.n):
            for v in self._adj[u]:
                if u < v:
                    yield (u, v)

    def induced(self, vertices) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph plus the old-id -> new-id map."""
        keep = sorted(set(vertices))
        relabel = {v: i for i, v in enumerate(keep)}
        edges = [
            (relabel[u], relabel[v])
            for u in keep
            for v in self._adj[u]
            if u < v and v in relabel
        ]
        return Graph(len(keep), edges), relabel

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"


@dataclass(frozen=True)
class Face:
    """One face of an embedding, as the closed walk of vertices along its boundary.

    `walk` is the orbit traced with positive orientation flag; `reverse_walk` is
    its mirror orbit. Both are kept because a face of a signed embedding has no
    preferred side.
    """

    walk: tuple[int, ...]
    reverse_walk: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.walk)

    def vertices(self) -> frozenset[int]:
        return frozenset(self.walk)


class Embedding:
    """Rotation system with optional edge signs.

    `rotations[v]` lists the neighbors of v in cyclic order; it must be a
    permutation of the graph's adjacency at v. `signs` maps unordered edges to
    +1/-1; edges absent from the map are positive. All-positive signs describe
    an orientable surface.
    """

    __slots__ = ("graph", "rotations", "_sign", "_pos", "_faces")

    def __init__(self, graph: Graph, rotations, signs=None):
        self.graph = graph
        rots = []
        for v in range(graph.n):
            rot = tuple(rotations[v])
            if tuple(sorted(rot)) != graph.neighbors(v):
                raise ValueError(f"rotation at {v} is not a permutation of its neighbors")
            rots.append(rot)
        self.rotations = tuple(rots)
        sign = {}
        if signs:
            for (u, v), s in signs.items():
                if s not in (1, -1):
                    raise ValueError(f"sign of ({u}, {v}) must be +1 or -1")
                if not graph.has_edge(u, v):
                    raise ValueError(f"signed edge ({u}, {v}) not in graph")
                if s == -1:
                    sign[(u, v) if u < v else (v, u)] = -1
        self._sign = sign
        # position of u within rotations[v], for O(1) face-tracing steps
        self._pos = tuple(
            {u: i for i, u in enumerate(rot)} for rot in self.rotations
        )
        self._faces: tuple[Face, ...] | None = None

    def sign(self, u: int, v: int) -> int:
        return self._sign.get((u, v) if u < v else (v, u), 1)

    @property
    def faces(self) -> tuple[Face, ...]:
        if self._faces is None:
            self._faces = trace_faces(self)
        return self._faces

    def __repr__(self) -> str:
        neg = len(self._sign)
        return f"Embedding({self.graph!r}, negative_edges={neg})"


def trace_faces(emb: Embedding) -> tuple[Face, ...]:
    """Recover the faces of a signed rotation system.

    States are (u, v, d): the directed edge u->v carried with orientation flag
    d in {+1, -1}. The successor of (u, v, d) flips the flag by the sign of uv
    and then takes the next (flag-directionally) neighbor of v after u. Orbits
    of this successor map come in mirror pairs swapped by reversal; each pair
    is one face. Requires a connected graph, since the Euler characteristic of
    a disconnected embedding is not that of a single surface.
    """
    g = emb.graph
    if g.n == 0:
        raise ValueError("cannot trace faces of the empty graph")
    if g.n > 1 and len(connected_components(g)) > 1:
        raise ValueError("face tracing requires a connected graph")
    if g.m == 0:
        # single isolated vertex: one face, the sphere
        return (Face(walk=(0,), reverse_walk=(0,)),)

    def step(u: int, v: int, d: int) -> tuple[int, int, int]:
        d2 = d * emb.sign(u, v)
        rot = emb.rotations[v]
        i = emb._pos[v][u]
        w = rot[(i + d2) % len(rot)]
        return (v, w, d2)

    def reverse(state: tuple[int, int, int]) -> tuple[int, int, int]:
        u, v, d = state
        return (v, u, -d * emb.sign(u, v))

    todo = set()
    for u, v in g.edges():
        for d in (1, -1):
            todo.add((u, v, d))
            todo.add((v, u, d))

    faces = []
    total_degree = 0
    while todo:
        start = min(todo)
        orbit = []
        state = start
        while True:
            orbit.append(state)
            state = step(*state)
            if state == start:
                break
        mirror = {reverse(s) for s in orbit}
        if mirror == set(orbit):
            raise ValueError("orbit is self-paired; rotation system is inconsistent")
        todo.difference_update(orbit)
        todo.difference_update(mirror)
        walk = tuple(s[0] for s in orbit)
        rstart = reverse(orbit[0])
        rorbit = [rstart]
        state = step(*rstart)
        while state != rstart:
            rorbit.append(state)
            state = step(*state)
        faces.append(Face(walk=walk, reverse_walk=tuple(s[0] for s in rorbit)))
        total_degree += len(walk)

    if total_degree != 2 * g.m:
        raise AssertionError("face degrees do not sum to twice the edge count")
    return tuple(faces)


def euler_characteristic(emb: Embedding) -> int:
    """n - m + f for the embedding's traced faces."""
    return emb.graph.n - emb.graph.m + len(emb.faces)


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex lists of the connected components, each sorted, ordered by minimum."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def distance(g: Graph, s: int, t: int) -> float:
    """BFS distance between s and t; math.inf if disconnected."""
    if s == t:
        return 0
    level = {s: 0}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if y not in level:
                level[y] = level[x] + 1
                if y == t:
                    return level[y]
                queue.append(y)
    return math.inf


def bipartition(g: Graph) -> tuple[set[int], set[int]] | None:
    """Two color classes if g is bipartite, else None."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if color[y] == -1:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return None
    return (
        {v for v in range(g.n) if color[v] == 0},
        {v for v in range(g.n) if color[v] == 1},
    )


def girth(g: Graph) -> float:
    """Length of a shortest cycle; math.inf for forests.

    BFS from every vertex; a non-tree edge (x, y) seen from root r witnesses a
    cycle of length level[x] + level[y] + 1 through r when y is not x's BFS
    parent. The shortest cycle is found from any root lying on it, so the
    minimum over roots is exact. Roots after the first are pruned against the
    best bound found so far.
    """
    best = math.inf
    for r in range(g.n):
        level = {r: 0}
        parent = {r: -1}
        queue = deque([r])
        while queue:
            x = queue.popleft()
            lx = level[x]
            if 2 * lx + 1 >= best:
                break
            for y in g.neighbors(x):
                if y not in level:
                    level[y] = lx + 1
                    parent[y] = x
                    queue.append(y)
                elif y != parent[x] and level[y] >= lx:
                    cand = lx + level[y] + 1
                    if cand < best:
                        best = cand
        if best == 3:
            break
    return best


def degeneracy_order(g: Graph) -> tuple[int, list[int]]:
    """Degeneracy of g plus an elimination order witnessing it.

    Repeatedly removes a minimum-degree vertex; the largest degree seen at
    removal time is the degeneracy. Every suffix of the returned order induces
    a subgraph whose first vertex has at most that many later neighbors.
    """
    if g.n == 0:
        return 0, []
    deg = [g.degree(v) for v in range(g.n)]
    heap = [(deg[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    removed = [False] * g.n
    order = []
    degeneracy = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        degeneracy = max(degeneracy, d)
        order.append(v)
        for u in g.neighbors(v):
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return degeneracy, order


def has_triangle(g: Graph) -> bool:
    """True if some edge closes a triangle. Cheaper than girth() == 3."""
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    for u, v in g.edges():
        small, large = (u, v) if len(adj[u]) <= len(adj[v]) else (v, u)
        for w in adj[small]:
            if w != large and w in adj[large]:
                return True
    return False


# ---------------------------------------------------------------------------
# file formats


def parse_graph(text: str) -> Graph:
    """Parse the plain edge-list format.

    First significant line is "n m"; each following line is an edge "u v".
    Lines starting with "#" and blank lines are ignored.
    """
    lines = _significant_lines(text)
    if not lines:
        raise ValueError("empty graph file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"bad header {lines[0]!r}; expected 'n m'")
    n, m = int(header[0]), int(header[1])
    edges = []
    for line in lines[1 : 1 + m]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if len(edges) != m:
        raise ValueError(f"expected {m} edges, found {len(edges)}")
    if len(lines) > 1 + m:
        raise ValueError(f"trailing content after {m} edges: {lines[1 + m]!r}")
    return Graph(n, edges)


def serialize_graph(g: Graph, comments: list[str] | None = None) -> str:
    out = [f"# {c}" for c in comments or []]
    out.append(f"{g.n} {g.m}")
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def parse_embedding(text: str) -> Embedding:
    """Parse the embedding format: a graph section, rotation lines, optional signs.

    Rotation lines look like "v: a b c". An optional section opened by a line
    "signs:" lists negative edges as "u v -1".
    """
    lines = _significant_lines(text)
    if not lines:
        raise ValueError("empty embedding file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"bad header {lines[0]!r}; expected 'n m'")
    n, m = int(header[0]), int(header[1])
    edges = []
    for line in lines[1 : 1 + m]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    g = Graph(n, edges)

    rotations: dict[int, list[int]] = {}
    signs: dict[tuple[int, int], int] = {}
    in_signs = False
    for line in lines[1 + m :]:
        if line.strip() == "signs:":
            in_signs = True
            continue
        if in_signs:
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"bad sign line {line!r}; expected 'u v -1'")
            u, v, s = int(parts[0]), int(parts[1]), int(parts[2])
            signs[(u, v)] = s
        else:
            head, sep, rest = line.partition(":")
            if not sep:
                raise ValueError(f"bad rotation line {line!r}; expected 'v: a b c'")
            v = int(head)
            if not 0 <= v < n:
                raise ValueError(f"rotation line for out-of-range vertex {v}")
            rotations[v] = [int(x) for x in rest.split()]
    for v in range(n):
        if v not in rotations:
            if g.degree(v) == 0:
                rotations[v] = []
            else:
                raise ValueError(f"missing rotation for vertex {v}")
    return Embedding(g, [rotations[v] for v in range(n)], signs)


def serialize_embedding(emb: Embedding, comments: list[str] | None = None) -> str:
    g = emb.graph
    out = [f"# {c}" for c in comments or []]
    out.append(f"{g.n} {g.m}")
    out.extend(f"{u} {v}" for u, v in g.edges())
    for v in range(g.n):
        out.append(f"{v}: " + " ".join(str(u) for u in emb.rotations[v]))
    neg = sorted(k for k, s in emb._sign.items() if s == -1)
    if neg:
        out.append("signs:")
        out.extend(f"{u} {v} -1" for u, v in neg)
    return "\n".join(out) + "\n"


def _significant_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def parse_terminals(text: str) -> dict[str, int]:
    """Extract '# terminal NAME ID' annotations from a graph or embedding file."""
    terms = {}
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 3 and parts[0] == "terminal":
                terms[parts[1]] = int(parts[2])
    return terms


def terminal_comments(terminals: dict[str, int]) -> list[str]:
    return [f"terminal {name} {vid}" for name, vid in terminals.items()]
