"""Random graphs, paths and elements shared by the test modules."""
import random

from leavitt.algebra import LeavittAlgebra
from leavitt.graph import Graph, condition_L, random_graph


def random_path(g: Graph, rng: random.Random, start: str, max_len: int):
    edges = []
    v = start
    for _ in range(rng.randint(0, max_len)):
        out = g.out_edges(v)
        if not out:
            break
        e = rng.choice(out)
        edges.append(e)
        v = g.r(e)
    return g.path(edges, vertex=start)


def random_path_into(g: Graph, rng: random.Random, end: str, max_len: int):
    edges = []
    v = end
    for _ in range(rng.randint(0, max_len)):
        inc = [e for e, _, r in g.edges if r == v]
        if not inc:
            break
        e = rng.choice(inc)
        edges.insert(0, e)
        v = g.s(e)
    if not edges:
        return g.path(vertex=end)
    return g.path(edges)


def random_monomial(A: LeavittAlgebra, rng: random.Random, max_len: int = 2):
    g = A.graph
    alpha = random_path(g, rng, rng.choice(g.vertices), max_len)
    beta = random_path_into(g, rng, alpha.range, max_len)
    return A.mono(alpha, beta)


def random_element(A: LeavittAlgebra, rng: random.Random, terms: int = 3, max_len: int = 2):
    x = A.zero()
    for _ in range(rng.randint(1, terms)):
        x = x + random_monomial(A, rng, max_len).scale(rng.randint(-3, 3))
    return x


def random_condition_L_graph(rng: random.Random, max_vertices: int = 5, max_edges: int = 8) -> Graph:
    while True:
        g = random_graph(rng, max_vertices, max_edges)
        if condition_L(g):
            return g


def random_split(rng: random.Random, base: str, splits: int) -> list[str]:
    """Partition of Z(base) made by repeatedly splitting a random leaf w into wa, wb."""
    family = [base]
    for _ in range(splits):
        w = family.pop(rng.randrange(len(family)))
        family += [w + "a", w + "b"]
    return family
