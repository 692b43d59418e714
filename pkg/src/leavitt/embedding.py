"""Embeddings of L_R(E) into L_{2,R}: construction, application and certification.

Everything is built inside :func:`leavitt.cylinder.l2`, the algebra generated
by ``a, b`` with ``a*a = b*b = 1 = aa* + bb*``.  Projections always carry a
Murray-von Neumann witness ``t`` with ``t*t = 1`` and ``tt* = p``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .algebra import (Element, FamilyReport, LeavittAlgebra, family_check,
                      full_spectrum_up_to, is_partial_unitary)
from .cylinder import (format_word, is_partition_of, l2, offending_words,
                       standard_partition)
from .graph import (Graph, condition_L, cycles_without_exit, laurent,
                    line_graph, rose, toeplitz, two_loop, two_vertex_F)
from .rings import INTEGERS_MOD, ZZ, RingSpec

DEFAULT_DEGREE = 6

FULL_SPECTRUM_UNITARY = "a.a.a* + a.b.a*.b* + b.b*.b*"


class PreconditionError(ValueError):
    """Inputs violate a construction's hypotheses (bad partition, Condition (L), ...)."""


class FamilyCheckError(ValueError):
    def __init__(self, report: FamilyReport):
        super().__init__("; ".join(f"{r} {i}" for r, i in report.failures))
        self.report = report


@dataclass(frozen=True)
class TrackedProjection:
    p: Element
    witness: Element

    def verify(self) -> bool:
        t, p = self.witness, self.p
        ts = t.star()
        one = p.algebra.one()
        return (p * p == p and p.star() == p and ts * t == one
                and t * ts == p and t * ts * t == t)


def _tracked(t: Element) -> TrackedProjection:
    return TrackedProjection(t * t.star(), t)


def orthogonal_projections(n: int, sum_to_one: bool, ring: RingSpec = ZZ) -> list[TrackedProjection]:
    """``n`` pairwise orthogonal projections in L_2, each equivalent to 1.

    Without ``sum_to_one`` the witnesses are ``a^i b`` for ``i = 1..n``.
    With it, start from ``{1}`` and repeatedly split the last projection
    (witness ``t``) into ``ta (ta)*`` and ``tb (tb)*``, so the family sums to 1.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    A = l2(ring)
    a, b = A.edge("a"), A.edge("b")
    if not sum_to_one:
        return [_tracked(A.path(("a",) * i + ("b",))) for i in range(1, n + 1)]
    witnesses = [A.one()]
    while len(witnesses) < n:
        t = witnesses.pop()
        witnesses += [t * a, t * b]
    return [_tracked(t) for t in witnesses]


def subdivide(p: TrackedProjection, k: int, sum_to_p: bool) -> list[TrackedProjection]:
    """Split ``p`` into ``k`` orthogonal projections equivalent to ``p``.

    Conjugation by the witness ``t`` carries L_2 onto ``p L_2 p``, so the
    pieces are ``t q t*`` for ``q`` from :func:`orthogonal_projections`,
    with witnesses ``t w_q``.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    t = p.witness
    ring = t.algebra.ring
    return [_tracked(t * q.witness) for q in orthogonal_projections(k, sum_to_p, ring)]


def full_spectrum_unitary(ring: RingSpec = ZZ) -> Element:
    return l2(ring).parse(FULL_SPECTRUM_UNITARY)


def is_two_loop_family(x: Element, y: Element) -> bool:
    A = x.algebra
    one = A.one()
    return (x.star() * x == one and y.star() * y == one
            and x * x.star() + y * y.star() == one)


def endomorphism_unitary(phi_a: Element, phi_b: Element) -> Element:
    """The unitary ``phi(a) a* + phi(b) b*`` of a unital endomorphism of L_2."""
    if not is_two_loop_family(phi_a, phi_b):
        raise ValueError("phi(a), phi(b) do not satisfy the L_2 relations")
    A = phi_a.algebra
    return phi_a * A.ghost("a") + phi_b * A.ghost("b")


def power_endomorphism(n: int, ring: RingSpec = ZZ) -> tuple[Element, Element]:
    """``phi(a) = a^n`` and ``phi(b) = sum_i a^i b w_i*`` over ``w_i`` in ``standard_partition(n)``.

    ``n = 2`` gives ``phi(b) = bb* + aba*``.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    A = l2(ring)
    phi_a = A.path(("a",) * n) if n else A.one()
    phi_b = A.zero()
    for i, w in enumerate(standard_partition(n)):
        head = A.path(("a",) * i + ("b",))
        tail = A.path(tuple(w)) if w else A.one()
        phi_b = phi_b + head * tail.star()
    return phi_a, phi_b


@dataclass
class CycleIsometries:
    ts: list[Element]
    v: Element
    p1: Element

    def conclusions_hold(self, ps: Sequence[TrackedProjection]) -> bool:
        n = len(self.ts)
        for i, t in enumerate(self.ts):
            ts = t.star()
            if ts * t != ps[(i + 1) % n].p or t * ts != ps[i].p or t * ts * t != t:
                return False
        return is_partial_unitary(self.v, self.p1)


def cycle_isometries(ps: Sequence[TrackedProjection], ring: RingSpec | None = None) -> CycleIsometries:
    """Partial isometries ``t_i: p_{i+1} -> p_i`` whose product is a full-spectrum partial unitary.

    ``t_i = w_i w_{i+1}*`` for ``i < n`` and ``t_n = u (t_1...t_{n-1})*`` with
    ``u = s U s*``, ``s`` the witness of ``p_n`` and ``U`` the full-spectrum unitary.
    """
    n = len(ps)
    if n < 1:
        raise ValueError("need at least one projection")
    for i in range(n):
        for j in range(n):
            if i != j and not (ps[i].p * ps[j].p).is_zero():
                raise ValueError(f"projections {i + 1} and {j + 1} are not orthogonal")
    A = ps[0].p.algebra
    U = full_spectrum_unitary(A.ring)
    ts = [ps[i].witness * ps[i + 1].witness.star() for i in range(n - 1)]
    s = ps[-1].witness
    u = s * U * s.star()
    chain = A.one()
    for t in ts:
        chain = chain * t
    ts.append(u * chain.star())
    v = A.one()
    for t in ts:
        v = v * t
    return CycleIsometries(ts, v, ps[0].p)


@dataclass
class EFamily:
    """Images of the generators of L_R(E) in a target algebra."""

    graph: Graph
    target: LeavittAlgebra
    vertex_images: dict[str, Element]
    edge_images: dict[str, Element]
    display: dict[str, str] = field(default_factory=dict)

    def image(self, gen: str) -> Element:
        if gen in self.vertex_images:
            return self.vertex_images[gen]
        return self.edge_images[gen]

    def generators(self) -> list[str]:
        return list(self.graph.vertices) + [e for e, _, _ in self.graph.edges]

    def shown(self, gen: str) -> str:
        return self.display.get(gen) or str(self.image(gen))

    def check(self) -> FamilyReport:
        return family_check(self.graph, self.vertex_images, self.edge_images)

    def is_unital(self) -> bool:
        total = self.target.zero()
        for p in self.vertex_images.values():
            total = total + p
        return total == self.target.one()

    def table_lines(self) -> list[str]:
        return [f"{gen} -> {self.shown(gen)}" for gen in self.generators()]


def build_family(E: Graph, ring: RingSpec = ZZ, unital: bool = True) -> EFamily:
    """Leavitt E-family in L_2 for any finite graph E.

    Vertex projections come from :func:`orthogonal_projections` (summing to 1
    when ``unital``), each non-sink ``p_v`` is split over ``s^-1(v)`` in edge
    order, ordinary edges get ``t_e = w(q_{s(e),e}) w(p_{r(e)})*``, and edges
    on exit-free cycles are replaced by :func:`cycle_isometries`.
    """
    A = l2(ring)
    P = dict(zip(E.vertices, orthogonal_projections(len(E.vertices), unital, ring)))
    Q = {}
    for v in E.vertices:
        out = E.out_edges(v)
        if out:
            Q.update(zip(out, subdivide(P[v], len(out), True)))
    T = {e: Q[e].witness * P[r].witness.star() for e, _, r in E.edges}
    for info in cycles_without_exit(E):
        edges = info.cycle.edges
        # an exit-free cycle vertex emits one edge, so q_{s(e),e} = p_{s(e)}
        iso = cycle_isometries([P[E.s(e)] for e in edges])
        T.update(zip(edges, iso.ts))
    return EFamily(E, A, {v: P[v].p for v in E.vertices}, T)


def _word_monomial(A: LeavittAlgebra, alpha: str, beta: str) -> Element:
    x = A.path(tuple(alpha)) if alpha else A.one()
    y = A.path(tuple(beta)) if beta else A.one()
    return x * y.star()


def build_family_from_paths(E: Graph, alpha: Mapping[str, str], beta: Mapping[str, str],
                            ring: RingSpec = ZZ) -> EFamily:
    """``p_v = alpha_v alpha_v*`` and ``t_e = beta_e alpha_{r(e)}*`` from cylinder partitions.

    Needs Condition (L), ``{alpha_v}`` partitioning {a,b}^N and, at each
    non-sink ``v``, ``{beta_e : s(e) = v}`` partitioning Z(alpha_v).
    """
    missing = [v for v in E.vertices if v not in alpha] + [e for e, _, _ in E.edges if e not in beta]
    if missing:
        raise PreconditionError(f"no word assigned to {', '.join(missing)}")
    extra = [k for k in alpha if not E.has_vertex(k)] + [k for k in beta if not E.has_edge(k)]
    if extra:
        raise PreconditionError(f"words assigned to unknown generators {', '.join(extra)}")
    if not condition_L(E):
        bad = ", ".join(str(c.cycle) for c in cycles_without_exit(E))
        raise PreconditionError(f"graph violates Condition (L): cycles without exit {bad}")
    words = [alpha[v] for v in E.vertices]
    if not is_partition_of(words, ""):
        raise PreconditionError(
            "alpha words do not partition {a,b}^N: "
            + " ".join(format_word(w) for w in offending_words(words) or words))
    for v in E.vertices:
        out = E.out_edges(v)
        if not out:
            continue
        ws = [beta[e] for e in out]
        if not is_partition_of(ws, alpha[v]):
            raise PreconditionError(
                f"beta words at {v} do not partition Z({format_word(alpha[v])}): "
                + " ".join(format_word(w) for w in offending_words(ws, alpha[v]) or ws))
    A = l2(ring)
    P, T, display = {}, {}, {}
    for v in E.vertices:
        P[v] = _word_monomial(A, alpha[v], alpha[v])
        display[v] = A.render_paths(tuple(alpha[v]), tuple(alpha[v]))
    for e, _, r in E.edges:
        T[e] = _word_monomial(A, beta[e], alpha[r])
        display[e] = A.render_paths(tuple(beta[e]), tuple(alpha[r]))
    return EFamily(E, A, P, T, display)


def apply_hom(fam: EFamily, x: Element) -> Element:
    """Image of ``x`` under the homomorphism ``alpha beta* -> t_alpha p_{r(alpha)} t_beta*``."""
    src = x.algebra
    if src.graph != fam.graph:
        raise ValueError("element is not from the family's source algebra")
    if src.ring != fam.target.ring:
        raise ValueError("source and target rings differ")
    E = fam.graph
    cache: dict = {}

    def path_image(idx: tuple) -> Element:
        if idx not in cache:
            out = None
            for i in idx:
                t = fam.edge_images[E.edges[i][0]]
                out = t if out is None else out * t
            cache[idx] = out
        return cache[idx]

    total = fam.target.zero()
    for (a, b, v), c in x.terms.items():
        img = fam.vertex_images[E.vertices[v]]
        if a:
            img = path_image(a) * img
        if b:
            img = img * path_image(b).star()
        total = total + img.scale(c)
    return total


@dataclass
class InjectivityCert:
    relations: FamilyReport
    degree: int
    g1: dict[str, tuple[bool, str]] = field(default_factory=dict)
    g2: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def g1_ok(self) -> bool:
        return all(ok for ok, _ in self.g1.values())

    @property
    def g2_ok(self) -> bool:
        return all(ok for _, ok in self.g2)

    @property
    def valid(self) -> bool:
        return self.relations.passed and self.g1_ok and self.g2_ok

    def lines(self) -> list[str]:
        out = self.relations.lines()
        out.append(f"G1 (r p_v != 0 for r != 0): {'PASS' if self.g1_ok else 'FAIL'}")
        for v, (ok, why) in self.g1.items():
            out.append(f"  {v}: {'ok' if ok else 'VIOLATION'} ({why})")
        if not self.g2:
            out.append("G2 (full spectrum on exit-free cycles): PASS (no cycles without exit)")
        else:
            out.append(f"G2 (full spectrum on exit-free cycles, degree <= {self.degree}): "
                       f"{'PASS' if self.g2_ok else 'FAIL'}")
            for cyc, ok in self.g2:
                out.append(f"  {cyc}: {'independent' if ok else 'DEPENDENT'}")
            out.append(f"  note: bounded-degree evidence only; polynomials of degree > {self.degree} are not checked")
        out.append(f"certificate: {'VALID' if self.valid else 'INVALID'}")
        return out


def _g1_status(p: Element) -> tuple[bool, str]:
    ring = p.algebra.ring
    for c, key in p.monomials():
        if ring.is_unit_value(c):
            return True, f"unit coefficient {ring.format(c)} on {p.algebra.render_key(key)}"
    if p.is_zero():
        return False, "image is 0"
    # coefficients live on a free basis, so r p = 0 iff r kills every coefficient
    if ring.kind == INTEGERS_MOD:
        g = ring.modulus
        for c, _ in p.monomials():
            g = math.gcd(g, int(c))
        if g > 1:
            return False, f"annihilated by {ring.modulus // g}"
        return True, "coefficients generate the unit ideal"
    return True, "nonzero over a torsion-free ring"


def certify_injective(fam: EFamily, degree: int = DEFAULT_DEGREE) -> InjectivityCert:
    """Relations, G1 and degree-bounded G2 evidence for injectivity of the induced map."""
    if degree < 1:
        raise ValueError("degree bound must be >= 1")
    report = fam.check()
    if not report.passed:
        raise FamilyCheckError(report)
    cert = InjectivityCert(report, degree)
    for v in fam.graph.vertices:
        cert.g1[v] = _g1_status(fam.vertex_images[v])
    E = fam.graph
    src = LeavittAlgebra(E, fam.target.ring)
    for info in cycles_without_exit(E):
        c = info.cycle
        img = apply_hom(fam, src.path(c))
        p = fam.vertex_images[c.source]
        try:
            ok = full_spectrum_up_to(img, p, degree)
        except ValueError:
            ok = False
        cert.g2.append((str(c), ok))
    return cert


# built-in examples


@dataclass
class Example:
    name: str
    graph: Graph
    build: Callable[[RingSpec], EFamily]
    expected: dict[str, str]


def _paths_example(name, graph, alpha, beta):
    def build(ring):
        return build_family_from_paths(graph, alpha, beta, ring)

    A = l2()
    expected = {v: A.render_paths(tuple(w), tuple(w)) for v, w in alpha.items()}
    expected.update({e: A.render_paths(tuple(w), tuple(alpha[r]))
                     for e, w in beta.items() for e2, _, r in graph.edges if e2 == e})
    return Example(name, graph, build, expected)


def _laurent() -> Example:
    g = laurent()

    def build(ring):
        fam = build_family(g, ring)
        fam.display["z"] = FULL_SPECTRUM_UNITARY
        return fam

    return Example("laurent", g, build, {"u": "1", "z": FULL_SPECTRUM_UNITARY})


def _l_n(n: int) -> Example:
    if n < 2:
        raise ValueError("l_n needs n >= 2 (L_1 has a cycle without exit; use laurent)")
    g = rose(n)
    words = standard_partition(n)
    return _paths_example(f"l_n({n})", g, {"u": ""},
                          {f"e{i}": w for i, w in enumerate(words, 1)})


def _a_n(n: int) -> Example:
    g = line_graph(n)
    alphas = standard_partition(n)
    return _paths_example(f"a_n({n})", g,
                          {f"u{i}": w for i, w in enumerate(alphas, 1)},
                          {f"e{j}": alphas[j - 1] for j in range(1, n)})


def _toeplitz() -> Example:
    return _paths_example("toeplitz", toeplitz(), {"u": "a", "v": "b"}, {"e": "aa", "f": "ab"})


def _l2_into_LF() -> Example:
    src = two_loop()
    expected = {"v": "u + v", "a": "e + g", "b": "f + v"}

    def build(ring):
        F = LeavittAlgebra(two_vertex_F(), ring)
        return EFamily(src, F, {"v": F.parse(expected["v"])},
                       {"a": F.parse(expected["a"]), "b": F.parse(expected["b"])},
                       dict(expected))

    return Example("l2_into_LF", src, build, expected)


EXAMPLES: dict[str, Callable[..., Example]] = {
    "laurent": _laurent,
    "l_n": _l_n,
    "a_n": _a_n,
    "toeplitz": _toeplitz,
    "l2_into_LF": _l2_into_LF,
}

PARAMETRIZED = {"l_n", "a_n"}


def builtin_examples() -> dict[str, Callable[..., Example]]:
    return dict(EXAMPLES)


def builtin_example(name: str, n: int | None = None) -> Example:
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    if name in PARAMETRIZED:
        if n is None:
            raise ValueError(f"example {name} needs a size parameter")
        return EXAMPLES[name](n)
    if n is not None:
        raise ValueError(f"example {name} takes no parameter")
    return EXAMPLES[name]()
