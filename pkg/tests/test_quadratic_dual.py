import pytest

from forestalg.quadratic_dual import (dual_block_dimension,
                                      dual_span_matches_explicit,
                                      duality_dimension_identity,
                                      inverse_hilbert_coefficients,
                                      koszul_numerator_check,
                                      ln_dimension_from_pbw, un_dimension)


def test_span_matches_explicit():
    for n in (4, 5, 6, 7):
        assert dual_span_matches_explicit(n)


def test_duality_dimension_identity():
    for n in (4, 5, 6, 7):
        assert duality_dimension_identity(n)


def test_one_generator_case():
    # a single generator: the dual is a polynomial ring in one variable
    assert [un_dimension(4, d) for d in range(5)] == [1, 1, 1, 1, 1]
    assert ln_dimension_from_pbw(4, 3) == [1, 0, 0]


def test_dimensions_small():
    assert [un_dimension(5, d) for d in range(4)] == [1, 4, 16, 64]
    assert un_dimension(6, 2) == 91
    # degree one always matches the generator count
    from math import comb
    for n in (5, 6, 7, 8, 9):
        assert un_dimension(n, 1) == comb(n - 1, 3)


def test_block_dimensions():
    assert dual_block_dimension(3, 2) == 1
    assert dual_block_dimension(4, 2) == 12
    assert dual_block_dimension(4, 3) == 60
    assert dual_block_dimension(5, 2) == 21
    # exact and modular agree on a nontrivial block
    assert dual_block_dimension(5, 2, p=None) == 21
    assert dual_block_dimension(6, 3, p=None) == dual_block_dimension(6, 3)


def test_inverse_hilbert():
    assert inverse_hilbert_coefficients(5, 3) == [1, 4, 16, 64]
    assert inverse_hilbert_coefficients(4, 4) == [1, 1, 1, 1, 1]
    assert inverse_hilbert_coefficients(6, 2) == [1, 10, 91]


def test_pbw_examples():
    assert ln_dimension_from_pbw(5, 2) == [4, 6]
    assert ln_dimension_from_pbw(6, 1) == [10]
    l7 = ln_dimension_from_pbw(7, 3)
    assert all(v >= 0 for v in l7)


def test_koszul_check():
    for n in (4, 5, 6):
        rep = koszul_numerator_check(n, 3)
        assert rep["match"] and not rep["promoted_degrees"]
    rep7 = koszul_numerator_check(7, 3)
    assert rep7["match"]


def test_degree_bounds():
    with pytest.raises(ValueError):
        un_dimension(7, 4)
    assert un_dimension(6, 4) == inverse_hilbert_coefficients(6, 4)[4]
