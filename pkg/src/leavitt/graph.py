"""Finite directed graphs, their paths and cycles.

Vertex and edge ids are identifiers; declaration order is the canonical
order used everywhere downstream (designated edges, cycle bases, output).
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

_ID = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class GraphParseError(ValueError):
    pass


@dataclass(frozen=True)
class Path:
    """A finite path; the empty path at ``source`` is the vertex itself."""

    source: str
    range: str
    edges: tuple[str, ...] = ()

    def __len__(self):
        return len(self.edges)

    def __str__(self):
        return ".".join(self.edges) if self.edges else self.source

    @property
    def is_cycle(self) -> bool:
        return bool(self.edges) and self.source == self.range


@dataclass(frozen=True)
class CycleInfo:
    cycle: Path
    vertex_simple: bool
    has_exit: bool


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]
    _vindex: dict = field(init=False, repr=False, compare=False, hash=False)
    _eindex: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        vindex = {}
        for v in self.vertices:
            if not _ID.match(v):
                raise GraphParseError(f"bad vertex id {v!r}")
            if v in vindex:
                raise GraphParseError(f"duplicate vertex {v!r}")
            vindex[v] = len(vindex)
        eindex = {}
        for e, s, r in self.edges:
            if not _ID.match(e):
                raise GraphParseError(f"bad edge id {e!r}")
            if e in eindex or e in vindex:
                raise GraphParseError(f"duplicate id {e!r}")
            for x in (s, r):
                if x not in vindex:
                    raise GraphParseError(f"edge {e!r} uses undeclared vertex {x!r}")
            eindex[e] = len(eindex)
        object.__setattr__(self, "_vindex", vindex)
        object.__setattr__(self, "_eindex", eindex)

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[Sequence[str]]) -> "Graph":
        return cls(tuple(vertices), tuple(tuple(e) for e in edges))

    def vertex_index(self, v: str) -> int:
        try:
            return self._vindex[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v!r}") from None

    def edge_index(self, e: str) -> int:
        try:
            return self._eindex[e]
        except KeyError:
            raise KeyError(f"unknown edge {e!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self._vindex

    def has_edge(self, e: str) -> bool:
        return e in self._eindex

    def s(self, e: str) -> str:
        return self.edges[self.edge_index(e)][1]

    def r(self, e: str) -> str:
        return self.edges[self.edge_index(e)][2]

    def out_edges(self, v: str) -> list[str]:
        self.vertex_index(v)
        return [e for e, s, _ in self.edges if s == v]

    def is_sink(self, v: str) -> bool:
        return not self.out_edges(v)

    def path(self, edges: Sequence[str] = (), vertex: str | None = None) -> Path:
        """Validated path from an edge sequence, or the vertex path at ``vertex``."""
        edges = tuple(edges)
        if not edges:
            if vertex is None:
                raise ValueError("empty path needs a vertex")
            self.vertex_index(vertex)
            return Path(vertex, vertex)
        for e1, e2 in zip(edges, edges[1:]):
            if self.r(e1) != self.s(e2):
                raise ValueError(f"{e1} and {e2} are not composable")
        src = self.s(edges[0])
        if vertex is not None and vertex != src:
            raise ValueError(f"path does not start at {vertex}")
        return Path(src, self.r(edges[-1]), edges)

    def concat(self, p: Path, q: Path) -> Path:
        if p.range != q.source:
            raise ValueError(f"{p} and {q} are not composable")
        return Path(p.source, q.range, p.edges + q.edges)

    def to_text(self) -> str:
        lines = [f"vertex {v}" for v in self.vertices]
        lines += [f"edge {e} {s} {r}" for e, s, r in self.edges]
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    vertices, edges = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex" and len(parts) == 2:
            vertices.append(parts[1])
        elif parts[0] == "edge" and len(parts) == 4:
            edges.append(tuple(parts[1:]))
        else:
            raise GraphParseError(f"line {lineno}: cannot parse {raw.strip()!r}")
    if not vertices:
        raise GraphParseError("graph has no vertices")
    return Graph.build(vertices, edges)


def regular_vertices(g: Graph) -> list[str]:
    # finite graphs: regular means not a sink
    return [v for v in g.vertices if g.out_edges(v)]


def cycle_has_exit(g: Graph, c: Path) -> bool:
    if not c.is_cycle:
        raise ValueError(f"{c} is not a cycle")
    return any(len(g.out_edges(g.s(e))) > 1 for e in c.edges)


def vertex_simple_cycles(g: Graph) -> list[CycleInfo]:
    """All vertex-simple cycles, each based at its least vertex."""
    out = []
    for base in g.vertices:
        b = g.vertex_index(base)

        def walk(v, edges, seen):
            for e in g.out_edges(v):
                w = g.r(e)
                if w == base:
                    p = g.path(edges + [e])
                    out.append(CycleInfo(p, True, cycle_has_exit(g, p)))
                elif g.vertex_index(w) > b and w not in seen:
                    walk(w, edges + [e], seen | {w})

        walk(base, [], {base})
    return out


def cycles_without_exit(g: Graph) -> list[CycleInfo]:
    return [c for c in vertex_simple_cycles(g) if not c.has_exit]


def condition_L(g: Graph) -> bool:
    return all(c.has_exit for c in vertex_simple_cycles(g))


def paths_from(g: Graph, v: str, length: int) -> list[Path]:
    """All paths of exactly ``length`` edges starting at ``v``."""
    frontier = [g.path(vertex=v)]
    for _ in range(length):
        frontier = [g.concat(p, g.path([e])) for p in frontier for e in g.out_edges(p.range)]
    return frontier


def closed_paths(g: Graph, u: str, max_len: int) -> list[Path]:
    """Cycles (closed paths of positive length) based at ``u``, up to ``max_len``."""
    return [p for k in range(1, max_len + 1) for p in paths_from(g, u, k) if p.range == u]


def _rotate_to(g: Graph, c: Path, u: str) -> Path:
    i = next(k for k, e in enumerate(c.edges) if g.s(e) == u)
    return g.path(c.edges[i:] + c.edges[:i])


def killing_path(g: Graph, u: str, betas: Sequence[Path]) -> Path:
    """A path ``gamma`` from ``u`` with ``gamma* beta gamma = 0`` for every beta.

    ``gamma = tau^m mu f`` where ``tau`` is the least minimal-length cycle at
    ``u``, ``mu`` is the shortest prefix of ``tau`` ending at a branching
    vertex, ``f`` is the least other edge leaving that vertex and ``tau^m``
    is longer than every beta.
    """
    if not betas:
        raise ValueError("killing_path needs at least one cycle")
    if len(set(betas)) != len(betas):
        raise ValueError("cycles must be distinct")
    for b in betas:
        if not b.is_cycle or b.source != u:
            raise ValueError(f"{b} is not a cycle based at {u}")
    through_u = [
        _rotate_to(g, c.cycle, u)
        for c in vertex_simple_cycles(g)
        if any(g.s(e) == u for e in c.cycle.edges)
    ]
    if not through_u:
        raise ValueError(f"{u} is not the base of a cycle")
    if not all(cycle_has_exit(g, c) for c in through_u):
        raise ValueError(f"cycles based at {u} have no exit")
    # shortest closed walk at u is vertex simple; break ties by edge order
    tau = min(through_u, key=lambda c: (len(c), [g.edge_index(e) for e in c.edges]))
    i = next(k for k, e in enumerate(tau.edges) if len(g.out_edges(g.s(e))) > 1)
    mu = tau.edges[:i]
    branch = g.s(tau.edges[i])
    f = next(e for e in g.out_edges(branch) if e != tau.edges[i])
    longest = max(len(b) for b in betas)
    m = longest // len(tau) + 1
    return g.path(tau.edges * m + mu + (f,))


# graphs used throughout the examples


def two_loop() -> Graph:
    return Graph.build(["v"], [("a", "v", "v"), ("b", "v", "v")])


def rose(n: int) -> Graph:
    """One vertex ``u`` with loops ``e1..en``."""
    if n < 1:
        raise ValueError("rose needs n >= 1")
    return Graph.build(["u"], [(f"e{i}", "u", "u") for i in range(1, n + 1)])


def line_graph(n: int) -> Graph:
    """``u1 -> u2 -> ... -> un`` with edges ``e1..e(n-1)``."""
    if n < 1:
        raise ValueError("line graph needs n >= 1")
    return Graph.build(
        [f"u{i}" for i in range(1, n + 1)],
        [(f"e{j}", f"u{j}", f"u{j + 1}") for j in range(1, n)],
    )


def cycle_graph(n: int) -> Graph:
    """Single vertex-simple cycle ``e1..en`` through ``u1..un``; C_1 is the Laurent graph."""
    if n < 1:
        raise ValueError("cycle graph needs n >= 1")
    return Graph.build(
        [f"u{i}" for i in range(1, n + 1)],
        [(f"e{j}", f"u{j}", f"u{j % n + 1}") for j in range(1, n + 1)],
    )


def laurent() -> Graph:
    return Graph.build(["u"], [("z", "u", "u")])


def toeplitz() -> Graph:
    return Graph.build(["u", "v"], [("e", "u", "u"), ("f", "u", "v")])


def two_vertex_F() -> Graph:
    """Loops e, f at u, edges g: u -> v and h: v -> u."""
    return Graph.build(
        ["u", "v"],
        [("e", "u", "u"), ("f", "u", "u"), ("g", "u", "v"), ("h", "v", "u")],
    )


def random_graph(rng: random.Random, max_vertices: int = 5, max_edges: int = 8) -> Graph:
    nv = rng.randint(1, max_vertices)
    ne = rng.randint(0, max_edges)
    vs = [f"v{i}" for i in range(nv)]
    es = [(f"e{j}", rng.choice(vs), rng.choice(vs)) for j in range(ne)]
    return Graph.build(vs, es)
