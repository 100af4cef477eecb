"""Quivers: Cayley graphs of (Z/nZ)^t, separated quivers, shape classification.

Vertices are integers; Cayley quivers carry a codec between vertex ids and
exponent vectors (mixed-radix base n).  Arrows into a given vertex carry
distinct labels, so a path is determined by its target and label word.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cartan import CartanMatrix


class BudgetExceededError(RuntimeError):
    pass


@dataclass(frozen=True)
class Arrow:
    source: int
    target: int
    label: int


class CayleyData:
    """Group structure behind a Cayley quiver: exponent vectors mod n."""

    def __init__(self, C: CartanMatrix, n: int):
        self.C = C
        self.n = n
        self.t = C.t
        self.columns = [C.column(j) for j in range(C.t)]

    def encode(self, vec) -> int:
        out = 0
        for x in reversed([v % self.n for v in vec]):
            out = out * self.n + x
        return out

    def decode(self, v: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.t):
            out.append(v % self.n)
            v //= self.n
        return tuple(out)

    def add(self, a: int, b: int) -> int:
        va, vb = self.decode(a), self.decode(b)
        return self.encode([x + y for x, y in zip(va, vb)])

    def sub_column(self, v: int, j: int) -> int:
        vec = self.decode(v)
        return self.encode([x - c for x, c in zip(vec, self.columns[j])])

    def vertex_name(self, v: int) -> str:
        return "K(" + ",".join(str(x) for x in self.decode(v)) + ")"


class Quiver:
    """Finite directed multigraph; in-arrows at each vertex have distinct labels."""

    def __init__(self, num_vertices: int, arrows, vertex_names=None, cayley: CayleyData | None = None):
        self.num_vertices = num_vertices
        self.arrows = tuple(arrows)
        self.cayley = cayley
        self._names = vertex_names
        self.in_arrows: list[list[Arrow]] = [[] for _ in range(num_vertices)]
        self.out_arrows: list[list[Arrow]] = [[] for _ in range(num_vertices)]
        self._by_target_label: dict[tuple[int, int], Arrow] = {}
        for a in self.arrows:
            if not (0 <= a.source < num_vertices and 0 <= a.target < num_vertices):
                raise ValueError(f"arrow endpoints out of range: {a}")
            key = (a.target, a.label)
            if key in self._by_target_label:
                raise ValueError("in-arrow labels must be distinct at each vertex")
            self._by_target_label[key] = a
            self.in_arrows[a.target].append(a)
            self.out_arrows[a.source].append(a)

    @property
    def num_arrows(self) -> int:
        return len(self.arrows)

    def vertex_name(self, v: int) -> str:
        if self._names is not None:
            return self._names[v]
        if self.cayley is not None:
            return self.cayley.vertex_name(v)
        return f"v{v}"

    def arrow_into(self, target: int, label: int) -> Arrow:
        try:
            return self._by_target_label[(target, label)]
        except KeyError:
            raise ValueError(f"no arrow labelled {label} into vertex {target}") from None

    def path_source(self, target: int, word: tuple[int, ...]) -> int:
        v = target
        for lab in word:
            v = self.arrow_into(v, lab).source
        return v

    def weak_components(self) -> tuple[int, list[int]]:
        """Connected components of the underlying undirected graph."""
        label = [-1] * self.num_vertices
        count = 0
        for start in range(self.num_vertices):
            if label[start] != -1:
                continue
            stack = [start]
            label[start] = count
            while stack:
                v = stack.pop()
                for a in self.out_arrows[v]:
                    if label[a.target] == -1:
                        label[a.target] = count
                        stack.append(a.target)
                for a in self.in_arrows[v]:
                    if label[a.source] == -1:
                        label[a.source] = count
                        stack.append(a.source)
            count += 1
        return count, label

    def separated(self) -> "Quiver":
        """Double the vertices into levels 0/1 and redirect every arrow
        from (source, 0) to (target, 1)."""
        V = self.num_vertices
        arrows = [Arrow(a.source, V + a.target, i) for i, a in enumerate(self.arrows)]
        names = [f"{self.vertex_name(v)}|0" for v in range(V)] + [
            f"{self.vertex_name(v)}|1" for v in range(V)
        ]
        return Quiver(2 * V, arrows, vertex_names=names)


def build_cayley_quiver(C: CartanMatrix, n: int, vertex_budget: int | None = 200_000) -> Quiver:
    """Cayley graph of (Z/nZ)^t with respect to the columns of C: one arrow
    of each direction j into every vertex, from vertex - column_j."""
    if not C.is_valid():
        raise ValueError("matrix fails Cartan validity")
    if n < 1:
        raise ValueError("n must be positive")
    data = CayleyData(C, n)
    count = n**C.t
    if vertex_budget is not None and count > vertex_budget:
        raise BudgetExceededError(
            f"Cayley quiver needs {count} vertices, budget is {vertex_budget}"
        )
    arrows = []
    for v in range(count):
        for j in range(C.t):
            arrows.append(Arrow(data.sub_column(v, j), v, j))
    q = Quiver(count, arrows, cayley=data)
    if n > 2:
        assert all(a.source != a.target for a in q.arrows), "Cayley quiver grew a loop"
    return q


def loop_quiver(num_loops: int, names: list[str] | None = None) -> Quiver:
    """One vertex with num_loops loops; the free-algebra quiver."""
    arrows = [Arrow(0, 0, i) for i in range(num_loops)]
    q = Quiver(1, arrows, vertex_names=["*"])
    q.loop_names = names or [f"x{i + 1}" for i in range(num_loops)]
    return q


@dataclass(frozen=True)
class GraphShape:
    kind: str  # "dynkin" | "euclidean" | "wild"
    name: str | None
    vertices: tuple[int, ...]

    def as_dict(self) -> dict:
        return {"kind": self.kind, "name": self.name, "size": len(self.vertices)}


def classify_components(q: Quiver) -> list[GraphShape]:
    """Classify each weak component's underlying multigraph against the
    simply laced Dynkin and extended Dynkin catalogues; anything else is wild.

    Orientation is dropped.  Conventions for the degenerate extended shapes:
    a single vertex with one loop is ~A0 and a double edge between two
    vertices is ~A1.
    """
    count, labels = q.weak_components()
    comp_vertices: list[list[int]] = [[] for _ in range(count)]
    for v, c in enumerate(labels):
        comp_vertices[c].append(v)
    comp_edges: list[list[Arrow]] = [[] for _ in range(count)]
    for a in q.arrows:
        comp_edges[labels[a.source]].append(a)
    return [
        _classify_one(tuple(vs), es) for vs, es in zip(comp_vertices, comp_edges)
    ]


def _classify_one(vertices: tuple[int, ...], edges: list[Arrow]) -> GraphShape:
    V = len(vertices)
    E = len(edges)
    loops = [a for a in edges if a.source == a.target]
    if loops:
        if V == 1 and E == 1:
            return GraphShape("euclidean", "~A0", vertices)
        return GraphShape("wild", None, vertices)
    pair_counts: dict[tuple[int, int], int] = {}
    deg = {v: 0 for v in vertices}
    for a in edges:
        key = (min(a.source, a.target), max(a.source, a.target))
        pair_counts[key] = pair_counts.get(key, 0) + 1
        deg[a.source] += 1
        deg[a.target] += 1
    if any(c > 1 for c in pair_counts.values()):
        if V == 2 and E == 2:
            return GraphShape("euclidean", "~A1", vertices)
        return GraphShape("wild", None, vertices)
    if E == V:
        if all(d == 2 for d in deg.values()):
            return GraphShape("euclidean", f"~A{V - 1}", vertices)
        return GraphShape("wild", None, vertices)
    if E != V - 1:
        return GraphShape("wild", None, vertices)
    return _classify_tree(vertices, pair_counts, deg)


def _classify_tree(vertices, pair_counts, deg) -> GraphShape:
    V = len(vertices)
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for (u, v) in pair_counts:
        adj[u].append(v)
        adj[v].append(u)
    maxdeg = max(deg.values()) if deg else 0
    branch = sorted(v for v in vertices if deg[v] >= 3)
    if maxdeg <= 2:
        return GraphShape("dynkin", f"A{V}", vertices)
    if maxdeg >= 5:
        return GraphShape("wild", None, vertices)
    if maxdeg == 4:
        if V == 5 and len(branch) == 1:
            return GraphShape("euclidean", "~D4", vertices)
        return GraphShape("wild", None, vertices)
    if len(branch) == 1:
        arms = sorted(_arm_length(adj, deg, branch[0], u) for u in adj[branch[0]])
        if arms[0] is None or None in arms:
            return GraphShape("wild", None, vertices)
        key = tuple(arms)
        if key[0] == 1 and key[1] == 1:
            return GraphShape("dynkin", f"D{V}", vertices)
        named = {
            (1, 2, 2): ("dynkin", "E6"),
            (1, 2, 3): ("dynkin", "E7"),
            (1, 2, 4): ("dynkin", "E8"),
            (2, 2, 2): ("euclidean", "~E6"),
            (1, 3, 3): ("euclidean", "~E7"),
            (1, 2, 5): ("euclidean", "~E8"),
        }
        if key in named:
            kind, name = named[key]
            return GraphShape(kind, name, vertices)
        return GraphShape("wild", None, vertices)
    if len(branch) == 2:
        # ~D family: both branch vertices carry exactly two leaves and the
        # rest is a path joining them
        for b in branch:
            leaf_arms = sum(1 for u in adj[b] if deg[u] == 1)
            if deg[b] != 3 or leaf_arms != 2:
                return GraphShape("wild", None, vertices)
        interior = [v for v in vertices if deg[v] == 2]
        if len(interior) == V - 6:
            return GraphShape("euclidean", f"~D{V - 1}", vertices)
        return GraphShape("wild", None, vertices)
    return GraphShape("wild", None, vertices)


def _arm_length(adj, deg, branch, first):
    """Edge count from a degree-3 vertex to a leaf along a plain path; None
    if another branch vertex interrupts."""
    length = 1
    prev, cur = branch, first
    while deg[cur] == 2:
        nxt = [u for u in adj[cur] if u != prev]
        prev, cur = cur, nxt[0]
        length += 1
    return length if deg[cur] == 1 else None


def to_dot(q: Quiver) -> str:
    """Graphviz dot text for external visualization."""
    lines = ["digraph quiver {"]
    for v in range(q.num_vertices):
        lines.append(f'  n{v} [label="{q.vertex_name(v)}"];')
    for a in q.arrows:
        lines.append(f'  n{a.source} -> n{a.target} [label="{a.label + 1}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
