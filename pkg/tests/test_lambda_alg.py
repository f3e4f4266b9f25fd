import random

import pytest

from forestalg import forests
from forestalg.lambda_alg import (Presentation, basic_forest_complex_homology,
                                  block_dimension, build_relations,
                                  expected_euler_characteristic,
                                  forest_normal_form, hilbert_polynomial,
                                  partition_component_dims, quad_to_tri,
                                  quad_tri_span_match, tri_to_quad,
                                  whitney_differential)
from forestalg.rings import QQ, ZZ
from forestalg.skewpoly import SkewPoly, ideal_slice


def test_relation_families():
    # five labels: one linear relation per 5-subset, the shared-3-subset
    # family, no six-index family
    quad5 = Presentation("quad", range(1, 6))
    lin = quad5.linear_relations()
    quads = quad5.quadratic_relations()
    assert len(lin) == 1 and all(len(r.terms) == 5 for r in lin)
    assert len(quads) == 10 and all(len(r.terms) == 1 for r in quads)
    # three labels for the tri presentation: one generator, no relations
    tri4 = Presentation("tri", range(1, 4))
    assert len(tri4.universe) == 1 and not tri4.relations()
    assert hilbert_polynomial(tri4) == [1, 1]
    # two labels, twisted: no generators at all
    tw2 = Presentation("twisted", range(1, 3))
    assert len(tw2.universe) == 0
    assert hilbert_polynomial(tw2) == [1]


def test_relation_family_label_equivariance():
    import itertools
    tri = Presentation("tri", range(1, 6))
    keys = set()
    for r in tri.relations():
        keys.add(frozenset(r.terms.items()))
    for perm in itertools.permutations(range(1, 6)):
        sigma = {i + 1: p for i, p in enumerate(perm)}
        for r in tri.relations():
            moved = SkewPoly.zero(ZZ)
            for mono, c in r.terms.items():
                img = SkewPoly.one(ZZ).scale(c)
                for gid in mono:
                    tup = tri.universe.label_tuple(gid)
                    img = img * tri.term(tuple(sigma[x] for x in tup))
                moved = moved + img
            key = frozenset(moved.terms.items())
            neg = frozenset(moved.scale(-1).terms.items())
            assert key in keys or neg in keys


def test_hilbert_polynomials_small():
    assert hilbert_polynomial(Presentation("tri", range(1, 3))) == [1]
    assert hilbert_polynomial(Presentation("tri", range(1, 5))) == [1, 4]
    assert hilbert_polynomial(Presentation("tri", range(1, 6))) == [1, 10, 9]
    assert hilbert_polynomial(Presentation("tri", range(1, 7))) == [1, 20, 64]
    assert hilbert_polynomial(Presentation("quad", range(1, 6))) == [1, 4]
    assert hilbert_polynomial(Presentation("quad", range(1, 7))) == [1, 10, 9]
    assert hilbert_polynomial(Presentation("twisted", range(1, 7))) == [1, 20, 64]


def test_blocked_matches_unblocked():
    # the blocked route equals a direct full-slice computation for six labels
    tri = Presentation("tri", range(1, 7))
    rels = [r.convert(QQ) for r in tri.relations()]
    for d, want in ((1, 20), (2, 64), (3, 0)):
        sl = ideal_slice(rels, d, tri.universe, QQ)
        assert sl.quotient_dimension() == want


def test_block_dimension_values():
    assert block_dimension("tri", 3, 1) == 1
    assert block_dimension("tri", 5, 2) == 9
    assert block_dimension("tri", 7, 3) == 225
    assert block_dimension("tri", 4, 2) == 0
    assert block_dimension("tri", 6, 3) == 0
    assert block_dimension("twisted", 5, 2) == 9


def test_quad_tri_isomorphism_roundtrip():
    n = 6
    quad = Presentation("quad", range(1, n + 1))
    tri = Presentation("tri", range(1, n))
    assert quad_tri_span_match(n)
    # generator with the top label maps straight across
    x = tri.term((1, 2, 3))
    fwd = tri_to_quad(x, tri, quad)
    assert fwd == quad.term((1, 2, 3, n))
    assert quad_to_tri(fwd, quad, tri) == x
    # a generator without the top label: the 5-term relation rewrites it,
    # and the roundtrip is the identity modulo the relations
    y = quad.term((1, 2, 3, 4))
    back = quad_to_tri(y, quad, tri)
    again = tri_to_quad(back, quad=quad, tri=tri)
    rels = [r.convert(QQ) for r in quad.relations()]
    sl = ideal_slice(rels, 1, quad.universe, QQ)
    assert sl.contains((y - again).convert(QQ))
    assert quad_to_tri(SkewPoly.zero(ZZ), quad, tri) == SkewPoly.zero(ZZ)


def test_normal_form_examples():
    p = Presentation("tri", range(1, 6))
    # a basic monomial is its own normal form
    x = p.monomial([(1, 2, 3), (3, 4, 5)]).convert(QQ)
    nf = forest_normal_form(x, p)
    assert len(nf) == 1
    ((g, c),) = nf.items()
    assert g.sorted_edges == ((1, 2, 3), (3, 4, 5)) and c == 1
    # a monomial with a cycle dies
    y = p.monomial([(2, 3, 4), (2, 4, 5)]).convert(QQ)
    assert forest_normal_form(y, p) == {}
    # a non-basic tree becomes an explicit combination
    z = p.monomial([(1, 4, 5), (2, 3, 5)]).convert(QQ)
    nf = forest_normal_form(z, p)
    assert nf and all(is_basic_graph(g) for g in nf)


def is_basic_graph(g):
    return forests.is_basic(g)[0]


def test_whitney_differential():
    tw = Presentation("twisted", range(1, 6))
    one_factor = tw.term((1, 2, 3))
    assert whitney_differential(one_factor, tw) == SkewPoly.one(ZZ)
    x = tw.monomial([(1, 2, 3), (1, 4, 5)])
    d = whitney_differential(x, tw)
    assert d == tw.term((1, 4, 5)) - tw.term((1, 2, 3))
    with pytest.raises(ValueError):
        whitney_differential(x, Presentation("tri", range(1, 6)))


def test_whitney_differential_squares_to_zero():
    tw = Presentation("twisted", range(1, 8))
    rng = random.Random(6)
    fs = forests.enumerate_basic_forests(tw.labels, 3)
    for F in rng.sample(fs, 20):
        gids = tuple(sorted(tw.universe.gen_id(e)[0] for e in F.sorted_edges))
        x = SkewPoly(ZZ, {gids: 1})
        dd = whitney_differential(whitney_differential(x, tw), tw)
        assert not dd


def test_basic_forest_complex():
    # odd label count: contractible (all reduced homology vanishes)
    for m in (3, 5, 7):
        ranks = basic_forest_complex_homology(range(1, m + 1))
        assert all(v == 0 for v in ranks.values())
    # even label count: concentrated in the top degree with the poset rank
    from forestalg.poset_homology import OddPartitionPoset, reduced_homology
    for m in (4, 6):
        ranks = basic_forest_complex_homology(range(1, m + 1))
        top = (m - 2) // 2
        hom = {d: h for d, h, _ in reduced_homology(OddPartitionPoset(m))}
        assert ranks[top] == hom[top]
        assert all(v == 0 for e, v in ranks.items() if e != top)


def test_partition_component_dims():
    tw5 = Presentation("twisted", range(1, 6))
    dims = partition_component_dims(tw5)
    whole = tuple([tuple(range(1, 6))])
    assert dims[whole]["dimension"] == 9
    assert all(len(p) % 2 == 1 for part in dims for p in part)
    tw4 = Presentation("twisted", range(1, 5))
    dims4 = partition_component_dims(tw4)
    assert tuple([tuple(range(1, 5))]) not in dims4   # even part: dimension 0


def test_euler_characteristic():
    assert expected_euler_characteristic(3) == 1
    assert expected_euler_characteristic(5) == -3
    assert expected_euler_characteristic(7) == 45
    assert expected_euler_characteristic(9) == -1575
    for n in (4, 6, 8, 10):
        assert expected_euler_characteristic(n) == 0
    from forestalg.series import odd_square_product_poly
    for n in range(3, 10):
        poly = odd_square_product_poly(n - 1)
        value = sum(c * (-1) ** d for d, c in poly.items())
        assert value == expected_euler_characteristic(n)


def test_build_relations_api():
    p = Presentation("quad", range(1, 6))
    rels = build_relations(p)
    assert all(r.is_homogeneous() for r in rels)
