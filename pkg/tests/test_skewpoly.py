import random

import pytest

from forestalg.lambda_alg import Presentation
from forestalg.rings import GF2, QQ, ZZ, RingMismatchError
from forestalg.skewpoly import (GeneratorUniverse, SkewPoly, ideal_slice,
                                mul_monomials, partial_derivation,
                                poly_from_json_terms, quotient_dimension)


def _rand_poly(rng, universe, ring, max_terms=3, max_deg=2):
    p = SkewPoly.zero(ring)
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_deg)
        gids = rng.sample(range(len(universe)), d)
        mono = SkewPoly.one(ring).scale(rng.randint(-3, 3))
        for g in gids:
            mono = mono * SkewPoly.generator(ring, g)
        p = p + mono
    return p


def test_generator_normalization():
    u = GeneratorUniverse(range(1, 6), 3)
    gid, sign = u.gen_id((1, 3, 2))
    assert sign == -1 and u.label_tuple(gid) == (1, 2, 3)
    assert u.gen_id((1, 1, 2)) is None
    sym = GeneratorUniverse(range(1, 6), 3, symmetric=True)
    assert sym.gen_id((3, 1, 2))[1] == 1


def test_product_examples():
    p = Presentation("tri", range(1, 6))
    nu123 = p.term((1, 2, 3))
    nu145 = p.term((1, 4, 5))
    assert not (nu123 * nu123)            # odd square
    a = nu123 * nu145
    b = nu145 * nu123
    assert list(a.terms.values()) == [1]  # sorted product, sign +1
    assert b == a.scale(-1)               # one transposition of odd factors


def test_supercommutativity_and_associativity_random():
    rng = random.Random(11)
    p = Presentation("tri", range(1, 6))
    for _ in range(30):
        a = _rand_poly(rng, p.universe, ZZ)
        b = _rand_poly(rng, p.universe, ZZ)
        c = _rand_poly(rng, p.universe, ZZ)
        assert (a * b) * c == a * (b * c)
        for da in a.degrees() or {0}:
            for db in b.degrees() or {0}:
                ah = a.homogeneous_part(da)
                bh = b.homogeneous_part(db)
                assert ah * bh == (bh * ah).scale((-1) ** (da * db))


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        SkewPoly.generator(ZZ, 0) * SkewPoly.generator(QQ, 0)


def test_partial_derivation():
    p = Presentation("tri", range(1, 7))
    x = p.term((1, 2, 3))
    y = p.term((1, 4, 5))
    gx = x.terms and next(iter(x.terms))[0]
    gy = next(iter(y.terms))[0]
    assert partial_derivation(x, gx) == SkewPoly.one(ZZ)
    assert partial_derivation(p.term((2, 3, 4)), gx) == SkewPoly.zero(ZZ)
    # derivation rule d(ab) = d(a) b + (-1)^deg(a) a d(b)
    rng = random.Random(3)
    for _ in range(25):
        a = _rand_poly(rng, p.universe, ZZ)
        b = _rand_poly(rng, p.universe, ZZ)
        g = rng.randrange(len(p.universe))
        lhs = partial_derivation(a * b, g)
        rhs = SkewPoly.zero(ZZ)
        for d in a.degrees() or {0}:
            ah = a.homogeneous_part(d)
            rhs = rhs + partial_derivation(ah, g) * b \
                + ah.scale((-1) ** d) * partial_derivation(b, g)
        assert lhs == rhs


def test_quotient_dimension_examples():
    p5 = Presentation("tri", range(1, 5))       # four labels
    assert quotient_dimension([r.convert(QQ) for r in p5.relations()], 1,
                              p5.universe, QQ) == 4
    p6 = Presentation("tri", range(1, 6))
    assert quotient_dimension([r.convert(QQ) for r in p6.relations()], 2,
                              p6.universe, QQ) == 9
    p7 = Presentation("tri", range(1, 7))
    assert quotient_dimension([r.convert(QQ) for r in p7.relations()], 2,
                              p7.universe, QQ) == 64


def test_empty_relations_slice():
    p = Presentation("tri", range(1, 5))
    sl = ideal_slice([], 2, p.universe, QQ)
    assert sl.rank == 0 and sl.quotient_dimension() == len(sl.columns)


def test_reduce_projection_properties():
    p = Presentation("tri", range(1, 7))
    rels = [r.convert(QQ) for r in p.relations()]
    sl = ideal_slice(rels, 2, p.universe, QQ)
    for r in rels:
        assert not sl.reduce(r).terms           # relations reduce to zero
    rng = random.Random(9)
    for _ in range(20):
        x = SkewPoly.zero(QQ)
        for _ in range(3):
            m = tuple(sorted(rng.sample(range(len(p.universe)), 2)))
            x = x + SkewPoly(QQ, {m: rng.randint(-3, 3)})
        nf = sl.reduce(x)
        assert sl.reduce(nf) == nf              # idempotent
        assert sl.contains(x - nf)              # difference in the slice


def test_gf2_and_integer_slices_agree_on_free_quotients():
    p = Presentation("tri", range(1, 6))
    rels = p.relations()
    dim_q = quotient_dimension([r.convert(QQ) for r in rels], 2, p.universe, QQ)
    dim_2 = quotient_dimension([r.convert(GF2) for r in rels], 2, p.universe, GF2)
    dim_z, div = quotient_dimension(rels, 2, p.universe, ZZ, with_divisors=True)
    assert dim_q == dim_2 == dim_z == 9
    assert all(d == 1 for d in div)


def test_json_round_trip():
    p = Presentation("tri", range(1, 6))
    x = p.monomial([(1, 2, 3), (1, 4, 5)], coeff=3) + p.term((2, 3, 4)).scale(-2)
    data = x.to_json_terms(p.universe)
    back = poly_from_json_terms(ZZ, p.universe, data)
    assert back == x


def test_monomial_merge_sign():
    assert mul_monomials((0, 2), (1,)) == ((0, 1, 2), -1)
    assert mul_monomials((0,), (0,)) is None
    assert mul_monomials((), (4, 5)) == ((4, 5), 1)
