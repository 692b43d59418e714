import random

import pytest
from hypothesis import given, settings, strategies as st

from leavitt import algebra as alg
from leavitt.algebra import (AlgebraMismatchError, ExpressionError, LeavittAlgebra,
                             family_check, full_spectrum_up_to, involute,
                             linearly_independent, poly_apply, power, reduce,
                             scalar_mul)
from leavitt.cylinder import l2
from leavitt.embedding import full_spectrum_unitary
from leavitt.graph import cycle_graph, laurent, toeplitz, two_loop, two_vertex_F
from leavitt.rings import QQ, ZZ, zmod

from conftest import RINGS, TEST_GRAPHS
from support import random_element


def key(A, alpha, beta, v):
    g = A.graph
    return (tuple(g.edge_index(e) for e in alpha), tuple(g.edge_index(e) for e in beta), g.vertex_index(v))


def identity_family(A):
    g = A.graph
    return ({v: A.vertex(v) for v in g.vertices}, {e: A.edge(e) for e, _, _ in g.edges})


# generators and products


def test_vertices_orthogonal(graph):
    A = LeavittAlgebra(graph)
    for v in graph.vertices:
        for w in graph.vertices:
            prod = A.vertex(v) * A.vertex(w)
            assert prod == (A.vertex(v) if v == w else A.zero())


def test_ghost_edge_products(graph):
    A = LeavittAlgebra(graph)
    for e, _, r in graph.edges:
        for f, _, _ in graph.edges:
            prod = A.ghost(e) * A.edge(f)
            assert prod == (A.vertex(r) if e == f else A.zero())


def test_path_times_range_vertex(graph):
    A = LeavittAlgebra(graph)
    rng = random.Random(0)
    from support import random_path
    for _ in range(20):
        p = random_path(graph, rng, rng.choice(graph.vertices), 3)
        assert A.path(p) * A.vertex(p.range) == A.path(p)


def test_l2_relations(L2):
    a, b = L2.edge("a"), L2.edge("b")
    one = L2.one()
    assert b.star() * a == L2.zero()
    assert a.star() * b == L2.zero()
    assert a.star() * a == one and b.star() * b == one
    assert a * a.star() + b * b.star() == one


def test_monomial_rule_gamma_equals_beta(graph):
    # (alpha beta*)(beta delta*) = alpha delta*
    A = LeavittAlgebra(graph)
    g = graph
    rng = random.Random(1)
    from support import random_path, random_path_into
    for _ in range(30):
        beta = random_path(g, rng, rng.choice(g.vertices), 2)
        alpha = random_path_into(g, rng, beta.range, 2)
        delta = random_path_into(g, rng, beta.range, 2)
        assert A.mono(alpha, beta) * A.mono(beta, delta) == A.mono(alpha, delta)


def test_beta_delta_cancellation(L2):
    g = L2.graph
    x = L2.mono(g.path(["a"]), g.path(["b", "a"]))
    y = L2.mono(g.path(["b", "a"]), g.path(["a", "a"]))
    assert x * y == L2.mono(g.path(["a"]), g.path(["a", "a"]))


# reduction


def test_reduce_designated_pair(L2):
    raw = {key(L2, "b", "b", "v"): 1}
    assert reduce(L2, raw) == L2.one() - L2.parse("a.a*")
    assert L2.designated_edges() == {"v": "b"}


def test_reduce_conjugated(L2):
    raw = {key(L2, "ab", "ab", "v"): 1}
    expected = L2.parse("a.a*") - L2.parse("a.a.a*.a*")
    assert reduce(L2, raw) == expected
    for seed in range(10):
        assert reduce(L2, raw, order=random.Random(seed)) == expected
    assert str(expected) == "a.a* - a.a.a*.a*"


def test_reduce_idempotent_on_normal(L2):
    x = L2.parse("a.a.a* + 2*a.b.a*.b* - b*")
    assert reduce(L2, x.terms) == x


@pytest.mark.parametrize("name", sorted(TEST_GRAPHS))
def test_confluence_randomized(name):
    A = LeavittAlgebra(TEST_GRAPHS[name])
    g = A.graph
    rng = random.Random(sorted(TEST_GRAPHS).index(name))
    from support import random_path, random_path_into
    for _ in range(150):
        raw = {}
        for _ in range(rng.randint(1, 4)):
            alpha = random_path(g, rng, rng.choice(g.vertices), 4)
            beta = random_path_into(g, rng, alpha.range, 4)
            k = key(A, alpha.edges, beta.edges, alpha.range)
            raw[k] = raw.get(k, 0) + rng.randint(-3, 3)
        ref = reduce(A, raw)
        for s in range(3):
            assert reduce(A, raw, order=random.Random(s)) == ref


@pytest.mark.parametrize("name", sorted(TEST_GRAPHS))
@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_associativity_randomized(name, ring):
    A = LeavittAlgebra(TEST_GRAPHS[name], ring)
    rng = random.Random(7)
    for _ in range(60):
        x, y, z = (random_element(A, rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z


@pytest.mark.parametrize("name", sorted(TEST_GRAPHS))
def test_involution_properties(name):
    A = LeavittAlgebra(TEST_GRAPHS[name])
    rng = random.Random(3)
    for _ in range(60):
        x, y = random_element(A, rng), random_element(A, rng)
        assert (x * y).star() == y.star() * x.star()
        assert x.star().star() == x
        assert (x.scale(5)).star() == x.star().scale(5)
        assert (x + y).star() == x.star() + y.star()
    for v in A.graph.vertices:
        assert A.vertex(v).star() == A.vertex(v)


def test_involute_product(L2):
    a, b = L2.edge("a"), L2.edge("b")
    assert involute(a * b) == b.star() * a.star()
    assert str(involute(a * b)) == "b*.a*"


def test_scalar_characteristic():
    A = LeavittAlgebra(toeplitz(), zmod(3))
    assert scalar_mul(3, A.vertex("u")).is_zero()
    assert scalar_mul(4, A.vertex("u")) == A.vertex("u")


def test_relations_hold_for_canonical_generators(graph):
    for ring in RINGS:
        A = LeavittAlgebra(graph, ring)
        rep = family_check(graph, *identity_family(A))
        assert rep.passed, rep.failures


def test_family_check_reports_zero_vertex():
    A = LeavittAlgebra(toeplitz())
    P, T = identity_family(A)
    P["u"] = A.zero()
    rep = family_check(A.graph, P, T)
    rels = {r for r, _ in rep.failures}
    assert not rep.passed
    assert "(5)" in rels and "(2)" in rels


def test_family_check_l2_into_F():
    F = LeavittAlgebra(two_vertex_F())
    rep = family_check(two_loop(), {"v": F.parse("u + v")},
                       {"a": F.parse("e + g"), "b": F.parse("f + v")})
    assert rep.passed
    s, t = F.parse("e + g"), F.parse("f + v")
    assert s.star() * s == F.one() and t.star() * t == F.one()
    assert s * s.star() + t * t.star() == F.one()


def test_mismatch_raises():
    A, B = l2(ZZ), l2(QQ)
    with pytest.raises(AlgebraMismatchError):
        A.edge("a") * B.edge("a")
    with pytest.raises(AlgebraMismatchError):
        alg.equals(A.one(), LeavittAlgebra(toeplitz()).one())
    with pytest.raises(KeyError):
        A.vertex("nope")


def test_degree_growth_cap(graph):
    A = LeavittAlgebra(graph)
    rng = random.Random(11)
    maxout = max((len(graph.out_edges(v)) for v in graph.vertices), default=1) or 1
    for _ in range(40):
        x, y = random_element(A, rng), random_element(A, rng)
        depth = 4
        assert len((x * y).terms) <= len(x.terms) * len(y.terms) * maxout ** depth


# functional calculus and independence


def test_poly_apply(L2):
    u = full_spectrum_unitary()
    one = L2.one()
    assert poly_apply([1], u, one) == one
    assert poly_apply([0, 1], u, one) == u
    assert poly_apply({1: 1, -1: -1}, u, one) == u - u.star()
    with pytest.raises(ValueError):
        poly_apply([1], L2.edge("a"), one)


def test_linearly_independent(L2):
    a = L2.edge("a")
    assert linearly_independent([L2.one(), a, a * a])
    assert not linearly_independent([a, a])
    u = full_spectrum_unitary()
    assert linearly_independent([L2.one(), u, power(u, 2), power(u, 3)])
    assert not linearly_independent([L2.zero()])


def test_full_spectrum_up_to(L2):
    u = full_spectrum_unitary()
    assert full_spectrum_up_to(u, L2.one(), 8)
    assert not full_spectrum_up_to(L2.one(), L2.one(), 1)
    C1 = LeavittAlgebra(laurent())
    assert full_spectrum_up_to(C1.edge("z"), C1.one(), 8)
    with pytest.raises(ValueError):
        full_spectrum_up_to(L2.edge("a"), L2.one(), 3)


def test_cycle_without_exit_full_spectrum_torsion():
    C3 = LeavittAlgebra(cycle_graph(3), zmod(4))
    alpha = C3.path(["e1", "e2", "e3"])
    assert full_spectrum_up_to(alpha, C3.vertex("u1"), 6)


# rendering and parsing


def test_render_grammar(L2):
    u = L2.parse("a.a.a* + a.b.a*.b* + b.b*.b*")
    assert str(u) == "b* - a.a*.b* + a.a.a* + a.b.a*.b*"
    assert str(L2.zero()) == "0"
    assert str(L2.parse("-2*a + 3")) == "3 - 2*a"
    F = LeavittAlgebra(two_vertex_F())
    assert str(F.one()) == "u + v"
    assert str(LeavittAlgebra(toeplitz(), QQ).parse("1/2*e.f.f*")) == "1/2*e - 1/2*e.e.e*"


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_render_parse_roundtrip(graph, ring):
    A = LeavittAlgebra(graph, ring)
    rng = random.Random(5)
    for _ in range(40):
        x = random_element(A, rng)
        assert A.parse(str(x)) == x


def test_parser_forms(L2):
    assert L2.parse("(a + b)*") == L2.ghost("a") + L2.ghost("b")
    assert L2.parse("(a+b)*.(a+b)") == L2.scalar(2)
    assert L2.parse("- a + a") == L2.zero()
    assert L2.parse("v") == L2.one()


@pytest.mark.parametrize("bad", ["", "a +", "c", "a..b", "(a", "a $ b", "1/0*a"])
def test_parser_errors(L2, bad):
    with pytest.raises(ExpressionError):
        L2.parse(bad)


# backend agreement


@pytest.mark.parametrize("name", sorted(TEST_GRAPHS))
def test_backends_agree(name):
    from leavitt import _kernel_py
    try:
        from leavitt import _kernel_c
    except ImportError:
        pytest.skip("compiled kernel not built")
    for ring in RINGS:
        A = LeavittAlgebra(TEST_GRAPHS[name], ring)
        rng = random.Random(9)
        for _ in range(40):
            x, y = random_element(A, rng, 4, 3), random_element(A, rng, 4, 3)
            assert (_kernel_py.mul_terms(x.terms, y.terms, A.tables, A.modulus)
                    == _kernel_c.mul_terms(x.terms, y.terms, A.tables, A.modulus))


def test_each_backend_passes_core_identities(backend, L2):
    u = full_spectrum_unitary()
    assert u.star() * u == L2.one()
    assert u * u.star() == L2.one()
    assert power(u, 3) * L2.edge("a") == L2.path(("a",) * 4)


small_words = st.lists(st.sampled_from(["a", "b", "a*", "b*"]), min_size=1, max_size=5)


@settings(max_examples=150, deadline=None)
@given(small_words, small_words, small_words)
def test_associativity_words_hypothesis(w1, w2, w3):
    A = l2(ZZ)
    x, y, z = (A.parse(".".join(w)) for w in (w1, w2, w3))
    assert (x * y) * z == x * (y * z)
