"""Canonical-form arithmetic in the Leavitt path algebra L_R(E) of a finite graph.

Elements are R-linear combinations of monomials ``alpha beta*`` with
``r(alpha) = r(beta)``.  The normal form excludes monomials whose two paths
both end in the designated edge ``d_v`` of a regular vertex ``v`` (the last
edge ``v`` emits in declaration order); such a tail is rewritten with

    d_v d_v*  ->  v - sum(f f* for f in s^-1(v) if f != d_v)

Two elements are equal iff their normal forms are identical.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import _kernel
from .graph import Graph, Path
from .linalg import ExactMatrix, kernel_is_trivial
from .rings import ZZ, RingElem, RingMismatchError, RingSpec


class AlgebraMismatchError(ValueError):
    pass


class ExpressionError(ValueError):
    pass


class LeavittAlgebra:
    """L_R(E) for a finite graph E and a coefficient ring R."""

    def __init__(self, graph: Graph, ring: RingSpec = ZZ):
        self.graph = graph
        self.ring = ring
        g = graph
        edge_src = tuple(g.vertex_index(s) for _, s, _ in g.edges)
        edge_rng = tuple(g.vertex_index(r) for _, _, r in g.edges)
        out = [[] for _ in g.vertices]
        for i, s in enumerate(edge_src):
            out[s].append(i)
        designated = tuple(es[-1] if es else -1 for es in out)
        siblings = tuple(tuple(es[:-1]) for es in out)
        self.tables = (edge_src, edge_rng, designated, siblings)
        self.modulus = ring.modulus

    def __eq__(self, other):
        return (isinstance(other, LeavittAlgebra)
                and self.graph == other.graph and self.ring == other.ring)

    def __hash__(self):
        return hash((self.graph, self.ring))

    def __repr__(self):
        return f"LeavittAlgebra({len(self.graph.vertices)} vertices, {len(self.graph.edges)} edges, {self.ring})"

    def designated_edges(self) -> dict[str, str]:
        g = self.graph
        return {g.vertices[v]: g.edges[d][0]
                for v, d in enumerate(self.tables[2]) if d >= 0}

    # constructors

    def element(self, terms: Mapping, reduce: bool = True) -> "Element":
        """Element from a raw ``{(alpha, beta, v): coeff}`` combination (index keys)."""
        norm = self.ring.normalize
        raw = {k: norm(c) for k, c in terms.items()}
        if reduce:
            raw = _kernel.reduce_terms(raw, self.tables, self.modulus)
        else:
            raw = {k: c for k, c in raw.items() if c}
        return Element(self, raw)

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        """Sum of all vertices, the unit of L_R(E) for finite E."""
        return self.element({((), (), i): 1 for i in range(len(self.graph.vertices))})

    def scalar(self, r) -> "Element":
        return self.one() * r

    def vertex(self, v: str) -> "Element":
        return Element(self, {((), (), self.graph.vertex_index(v)): self.ring.one})

    def edge(self, e: str) -> "Element":
        i = self.graph.edge_index(e)
        return Element(self, {((i,), (), self.tables[1][i]): self.ring.one})

    def ghost(self, e: str) -> "Element":
        return self.edge(e).star()

    def path(self, alpha: Path | Sequence[str]) -> "Element":
        if isinstance(alpha, Path):
            if not alpha.edges:
                return self.vertex(alpha.source)
            alpha = alpha.edges
        p = self.graph.path(alpha)
        return self.mono(p, self.graph.path(vertex=p.range))

    def mono(self, alpha: Path, beta: Path) -> "Element":
        """The monomial ``alpha beta*`` (reduced)."""
        if alpha.range != beta.range:
            raise ValueError(f"r({alpha}) != r({beta})")
        g = self.graph
        key = (tuple(g.edge_index(e) for e in alpha.edges),
               tuple(g.edge_index(e) for e in beta.edges),
               g.vertex_index(alpha.range))
        return self.element({key: self.ring.one})

    def parse(self, text: str) -> "Element":
        return _Parser(self, text).parse()

    # rendering

    def render_key(self, key) -> str:
        a, b, v = key
        g = self.graph
        parts = [g.edges[i][0] for i in a] + [g.edges[i][0] + "*" for i in reversed(b)]
        if parts:
            return ".".join(parts)
        return "1" if len(g.vertices) == 1 else g.vertices[v]

    def render_paths(self, alpha: Sequence[str], beta: Sequence[str]) -> str:
        """Render ``alpha beta*`` as written, without reducing it."""
        g = self.graph
        a = tuple(g.edge_index(e) for e in alpha)
        b = tuple(g.edge_index(e) for e in beta)
        return self.render_key((a, b, 0))

    def render_terms(self, terms: Iterable[tuple]) -> str:
        """Render ``(coeff, key)`` pairs in the given order."""
        out = []
        for c, key in terms:
            neg = not self.modulus and c < 0
            mag = -c if neg else c
            body = self.render_key(key)
            if mag != 1:
                coeff = self.ring.format(mag)
                body = coeff if body == "1" else f"{coeff}*{body}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out) if out else "0"


def _order(key):
    a, b, v = key
    return (len(a) + len(b), a, b, v)


@dataclass(frozen=True, eq=False)
class Element:
    algebra: LeavittAlgebra
    terms: dict = field(repr=False)

    # structure

    def monomials(self) -> list[tuple]:
        """``(coeff, key)`` pairs in canonical order."""
        return [(self.terms[k], k) for k in sorted(self.terms, key=_order)]

    def coefficients(self) -> list[RingElem]:
        ring = self.algebra.ring
        return [RingElem(ring, c) for c, _ in self.monomials()]

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return self.algebra.render_terms(self.monomials())

    def __repr__(self):
        return f"Element({self})"

    def _same(self, other: "Element") -> LeavittAlgebra:
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise AlgebraMismatchError("elements live in different algebras")
        return self.algebra

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        A = self._same(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return A.element(out, reduce=False)

    def __neg__(self):
        return self.algebra.element({k: -c for k, c in self.terms.items()}, reduce=False)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, r) -> "Element":
        A = self.algebra
        if isinstance(r, RingElem) and r.ring != A.ring:
            raise RingMismatchError(f"{r.ring} scalar on {A.ring} algebra")
        r = A.ring.normalize(r)
        return A.element({k: c * r for k, c in self.terms.items()}, reduce=False)

    def __mul__(self, other):
        if isinstance(other, Element):
            A = self._same(other)
            return Element(A, _kernel.mul_terms(self.terms, other.terms, A.tables, A.modulus))
        if isinstance(other, (int, Fraction, RingElem)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RingElem)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        return power(self, n)

    def star(self) -> "Element":
        # (alpha beta*)* = beta alpha*; both paths already end at v
        return Element(self.algebra, {(b, a, v): c for (a, b, v), c in self.terms.items()})


# functional surface


def mul(x: Element, y: Element) -> Element:
    return x * y


def add(x: Element, y: Element) -> Element:
    return x + y


def scalar_mul(r, x: Element) -> Element:
    return x.scale(r)


def involute(x: Element) -> Element:
    return x.star()


def is_zero(x: Element) -> bool:
    return x.is_zero()


def equals(x: Element, y: Element) -> bool:
    x._same(y)
    return x == y


def power(x: Element, n: int) -> Element:
    """``x**n``; ``x**0`` is the unit of the algebra."""
    if n < 0:
        raise ValueError("negative powers are not defined; use star() for partial unitaries")
    result = x.algebra.one()
    base = x
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def reduce(algebra: LeavittAlgebra, raw: Mapping, order=None) -> Element:
    """Normal form of a raw combination of (possibly non-normal) monomials.

    ``order`` (a ``random.Random``) randomizes the rewrite order; the result
    does not depend on it.
    """
    norm = algebra.ring.normalize
    raw = {k: norm(c) for k, c in raw.items()}
    if order is None:
        terms = _kernel.reduce_terms(raw, algebra.tables, algebra.modulus)
    else:
        from ._kernel_py import reduce_terms
        terms = reduce_terms(raw, algebra.tables, algebra.modulus, order)
    return Element(algebra, terms)


def is_projection(p: Element) -> bool:
    return p * p == p and p.star() == p


def is_partial_unitary(u: Element, p: Element) -> bool:
    us = u.star()
    return is_projection(p) and us * u == p and u * us == p


def poly_apply(q, u: Element, p: Element) -> Element:
    """Evaluate a Laurent polynomial at the partial unitary ``u`` over ``p``.

    ``q`` is either a sequence ``k_0, k_1, ...`` or a mapping from (possibly
    negative) exponents to coefficients.  ``z^0`` maps to ``p`` and negative
    powers use ``u*``.
    """
    if not is_partial_unitary(u, p):
        raise ValueError("u is not a partial unitary over p")
    coeffs = dict(q) if isinstance(q, Mapping) else dict(enumerate(q))
    out = u.algebra.zero()
    us = u.star()
    for n, k in sorted(coeffs.items()):
        if n == 0:
            term = p
        elif n > 0:
            term = power(u, n)
        else:
            term = power(us, -n)
        out = out + term.scale(k)
    return out


def coefficient_matrix(xs: Sequence[Element]) -> ExactMatrix | None:
    if not xs:
        return None
    A = xs[0].algebra
    for x in xs[1:]:
        xs[0]._same(x)
    keys = sorted({k for x in xs for k in x.terms}, key=_order)
    if not keys:
        return None
    rows = [[x.terms.get(k, 0) for x in xs] for k in keys]
    return ExactMatrix.from_rows(A.ring, rows)


def linearly_independent(xs: Sequence[Element]) -> bool:
    """Exact R-linear independence via the coefficient matrix on normal-form monomials."""
    if not xs:
        return True
    m = coefficient_matrix(xs)
    if m is None:
        return False
    return kernel_is_trivial(m)


def full_spectrum_up_to(u: Element, p: Element, degree: int) -> bool:
    """True iff no nonzero polynomial of degree <= ``degree`` kills ``u``."""
    if degree < 1:
        raise ValueError("degree bound must be >= 1")
    if not is_partial_unitary(u, p):
        raise ValueError("u is not a partial unitary over p")
    powers = [p]
    for _ in range(degree):
        powers.append(powers[-1] * u)
    return linearly_independent(powers)


@dataclass
class FamilyReport:
    checked: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def _check(self, relation: str, instance: str, ok: bool):
        self.checked += 1
        if not ok:
            self.failures.append((relation, instance))

    def lines(self) -> list[str]:
        if self.passed:
            return [f"relations: PASS ({self.checked} instances)"]
        out = [f"relations: FAIL ({len(self.failures)} of {self.checked} instances)"]
        out += [f"  {rel} {inst}" for rel, inst in self.failures]
        return out


def family_check(graph: Graph, vertex_images: Mapping[str, Element],
                 edge_images: Mapping[str, Element]) -> FamilyReport:
    """Check the Leavitt E-family relations for the given images, ghosts taken as adjoints."""
    missing = [v for v in graph.vertices if v not in vertex_images]
    missing += [e for e, _, _ in graph.edges if e not in edge_images]
    if missing:
        raise ValueError(f"no image for {', '.join(missing)}")
    P = {v: vertex_images[v] for v in graph.vertices}
    T = {e: edge_images[e] for e, _, _ in graph.edges}
    Ts = {e: t.star() for e, t in T.items()}
    rep = FamilyReport()
    for v in graph.vertices:
        p = P[v]
        rep._check("(1)", f"p_{v}^2 = p_{v}", p * p == p)
        rep._check("(1)", f"p_{v}* = p_{v}", p.star() == p)
        for w in graph.vertices:
            if w != v:
                rep._check("(1)", f"p_{v} p_{w} = 0", (p * P[w]).is_zero())
    for e, s, r in graph.edges:
        t, ts = T[e], Ts[e]
        rep._check("(2)", f"p_{s} t_{e} = t_{e}", P[s] * t == t)
        rep._check("(2)", f"t_{e} p_{r} = t_{e}", t * P[r] == t)
        rep._check("(3)", f"p_{r} t_{e}* = t_{e}*", P[r] * ts == ts)
        rep._check("(3)", f"t_{e}* p_{s} = t_{e}*", ts * P[s] == ts)
        for f, _, _ in graph.edges:
            prod = ts * T[f]
            if f == e:
                rep._check("(4)", f"t_{e}* t_{e} = p_{r}", prod == P[r])
            else:
                rep._check("(4)", f"t_{e}* t_{f} = 0", prod.is_zero())
    for v in graph.vertices:
        out = graph.out_edges(v)
        if out:
            total = P[v].algebra.zero()
            for f in out:
                total = total + T[f] * Ts[f]
            rep._check("(5)", f"p_{v} = sum t_f t_f* over s(f) = {v}", total == P[v])
    return rep


# expression parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _Parser:
    """Grammar: ``expr := [+-] term ([+-] term)*``, ``term := factor (('.'|'*') factor)*``,
    ``factor := INT ['/' INT] | ID ['*'] | '(' expr ')' ['*']``.
    ``*`` after an identifier or ``)`` is the involution; after a number it is
    multiplication.  ``1`` is the unit.
    """

    def __init__(self, algebra: LeavittAlgebra, text: str):
        self.A = algebra
        self.toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m.group(1):
                self.toks.append(("num", m.group(1)))
            elif m.group(2):
                self.toks.append(("id", m.group(2)))
            elif m.group(3):
                if m.group(3) not in "+-.*/()":
                    raise ExpressionError(f"unexpected character {m.group(3)!r}")
                self.toks.append(("op", m.group(3)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if tok[0] is None or (op is not None and tok != ("op", op)):
            raise ExpressionError(f"expected {op or 'token'}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self) -> Element:
        if not self.toks:
            raise ExpressionError("empty expression")
        x = self.expr()
        if self.i != len(self.toks):
            raise ExpressionError(f"trailing input at {self.peek()[1]!r}")
        return x

    def expr(self) -> Element:
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        x = self.term()
        x = -x if sign < 0 else x
        while self.peek() in (("op", "-"), ("op", "+")):
            op = self.take()[1]
            y = self.term()
            x = x - y if op == "-" else x + y
        return x

    def term(self) -> Element:
        x, scalar = self.factor()
        while True:
            tok = self.peek()
            if tok == ("op", "."):
                self.take()
            elif tok == ("op", "*") and scalar:
                self.take()
            else:
                break
            y, scalar = self.factor()
            x = x * y
        return x

    def factor(self):
        kind, val = self.take()
        A = self.A
        if kind == "num":
            num = int(val)
            den = 1
            if self.peek() == ("op", "/"):
                self.take()
                den = int(self.take()[1])
                if den == 0:
                    raise ExpressionError("division by zero")
            try:
                c = A.ring.normalize(Fraction(num, den))
            except (ValueError, ZeroDivisionError) as exc:
                raise ExpressionError(str(exc)) from None
            return A.one().scale(c), True
        if kind == "id":
            g = A.graph
            if g.has_edge(val):
                x = A.edge(val)
            elif g.has_vertex(val):
                x = A.vertex(val)
            else:
                raise ExpressionError(f"unknown generator {val!r}")
            if self.peek() == ("op", "*"):
                self.take()
                x = x.star()
            return x, False
        if val == "(":
            x = self.expr()
            self.take(")")
            if self.peek() == ("op", "*"):
                self.take()
                x = x.star()
            return x, False
        raise ExpressionError(f"unexpected {val!r}")
