import random
from fractions import Fraction

import pytest

from forestalg.linalg import (BasisSolver, BitEchelon, FieldEchelon,
                              HermiteEchelon, bit_rank, coordinates_in_basis,
                              field_rank, kernel_basis_ZZ, kernel_basis_fast,
                              smith_divisors)


def _dense(rows, ncols):
    return [[r.get(c, 0) for c in range(ncols)] for r in rows]


def test_field_echelon_rank_and_reduce():
    rows = [{0: 1, 1: 2}, {1: 1, 2: 1}, {0: 1, 1: 3, 2: 1}]
    assert field_rank(rows) == 2
    ech = FieldEchelon(None)
    ech.extend(rows)
    assert ech.contains({0: 2, 1: 4})
    assert not ech.contains({2: 1})


def test_field_echelon_same_span():
    a = FieldEchelon(None)
    a.extend([{0: 1, 1: 1}, {1: 1, 2: 1}])
    b = FieldEchelon(None)
    b.extend([{0: 1, 2: -1}, {0: 1, 1: 2, 2: 1}])
    assert a.same_span(b)


def test_modular_rank_matches_rational():
    rng = random.Random(1)
    for _ in range(10):
        rows = [{c: rng.randint(-3, 3) for c in rng.sample(range(8), 4)}
                for _ in range(6)]
        assert field_rank(rows) == field_rank(rows, p=2 ** 31 - 1)


def test_bit_echelon():
    ech = BitEchelon()
    assert ech.add(0b011)
    assert ech.add(0b110)
    assert not ech.add(0b101)  # the sum of the first two
    assert ech.rank == 2
    assert bit_rank([0b1, 0b10, 0b11]) == 2


def test_hermite_membership():
    ech = HermiteEchelon()
    ech.extend([{0: 2, 1: 1}, {1: 2}])
    assert ech.contains({0: 2, 1: 3})
    assert ech.contains({0: 4, 1: 2})
    assert not ech.contains({0: 1})          # not in the lattice
    assert not ech.contains({1: 1})


def test_smith_divisors_known_matrix():
    rows = [{0: 12, 1: 6, 2: 4, 3: 8},
            {0: 3, 1: 9, 2: 6, 3: 12},
            {0: 2, 1: 16, 2: 14, 3: 28},
            {0: 20, 1: 10, 2: 10, 3: 20}]
    rank, divisors = smith_divisors(rows)
    assert rank == 3
    assert divisors == [1, 10, 30]


def test_smith_divisors_identity_like():
    rank, divisors = smith_divisors([{0: 1, 5: 7}, {1: -1}, {2: 1, 0: 3}])
    assert rank == 3
    assert divisors == [1, 1, 1]


def test_kernel_basis_matches_rank():
    rng = random.Random(7)
    for _ in range(12):
        rows = [{c: rng.randint(-2, 2) for c in rng.sample(range(6), 3)}
                for _ in range(7)]
        rows = [{c: v for c, v in r.items() if v} for r in rows]
        k1 = kernel_basis_ZZ(rows)
        k2 = kernel_basis_fast(rows)
        assert len(k1) == len(k2) == 7 - field_rank(rows)
        for vec in k1 + k2:
            acc = {}
            for i, v in vec.items():
                for c, w in rows[i].items():
                    acc[c] = acc.get(c, 0) + v * w
            assert all(x == 0 for x in acc.values())


def test_kernel_lattice_saturated():
    # rows = [2, 0], [0, 1]: kernel of e0 -> (2,), e1 -> (1,): the lattice
    # {(a, b): 2a + b = 0} has basis (1, -2), not (2, -4)
    rows = [{0: 2}, {0: 1}]
    for ker in (kernel_basis_ZZ(rows), kernel_basis_fast(rows)):
        assert len(ker) == 1
        vec = ker[0]
        from math import gcd
        g = 0
        for v in vec.values():
            g = gcd(g, abs(v))
        assert g == 1


def test_basis_solver_and_coordinates():
    basis = [{0: 1, 1: 1}, {1: 1, 2: 1}]
    solver = BasisSolver(basis)
    assert solver.coordinates({0: 1, 2: -1}) == [Fraction(1), Fraction(-1)]
    assert solver.coordinates({0: 1}) is None
    assert coordinates_in_basis({0: 2, 1: 3, 2: 1}, basis) == [Fraction(2), Fraction(1)]
    with pytest.raises(ValueError):
        BasisSolver([{0: 1}, {0: 2}])
