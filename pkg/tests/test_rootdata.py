from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qspair.errors import ParameterError, ShapeError
from qspair import rootdata
from qspair.rootdata import (
    build_from_cartan,
    build_type_a,
    coroot,
    pairing,
    standard_order_type_a,
)


def test_type_a_n2_single_root_norm():
    rs = build_type_a(2)
    assert len(rs.positive_roots) == 1
    a1 = rs.simple_roots[0]
    assert pairing(rs, a1, a1) == 2


def test_type_a_n3_form_values():
    rs = build_type_a(3)
    assert len(rs.positive_roots) == 3
    L1 = (1, 0, 0)
    L2 = (0, 1, 0)
    assert pairing(rs, L1, L1) == Fraction(2, 3)
    assert pairing(rs, L1, L2) == Fraction(-1, 3)


def test_type_a_n4_derived_values():
    # frozen from expanding (L_i, L_j) = delta_ij - 1/4
    rs = build_type_a(4)
    assert len(rs.positive_roots) == 6
    a1, a2 = rs.simple_roots[0], rs.simple_roots[1]
    assert pairing(rs, a1, a2) == -1
    L14 = (1, 0, 0, -1)
    L23 = (0, 1, -1, 0)
    assert pairing(rs, L14, L23) == 0


def test_invalid_dimension():
    with pytest.raises(ParameterError):
        build_type_a(1)


def test_pairing_shape_error():
    rs = build_type_a(3)
    with pytest.raises(ShapeError):
        pairing(rs, (1, 0), (0, 1, 0))


def test_coroot_normalization():
    rs = build_type_a(5)
    for a in rs.simple_roots:
        assert pairing(rs, a, coroot(rs, a)) == 2


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6])
def test_cartan_consistency_and_count(N):
    rs = build_type_a(N)
    for i, ai in enumerate(rs.simple_roots):
        for j, aj in enumerate(rs.simple_roots):
            assert 2 * pairing(rs, ai, aj) / pairing(rs, ai, ai) == rs.cartan[i][j]
    # positive definiteness on the root span: Gram of simple roots
    gram = [
        [pairing(rs, a, b) for b in rs.simple_roots] for a in rs.simple_roots
    ]
    # leading principal minors via exact fraction-free expansion
    n = len(gram)
    for k in range(1, n + 1):
        sub = [row[:k] for row in gram[:k]]
        assert _det(sub) > 0
    assert 2 * len(rs.positive_roots) == N * (N - 1)


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = Fraction(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _det(minor)
    return total


def test_generic_cartan_matches_type_a():
    rs = build_type_a(4)
    gen = build_from_cartan(rs.cartan)
    assert len(gen.positive_roots) == len(rs.positive_roots)
    for a in gen.simple_roots:
        assert pairing(gen, a, a) == 2


def test_generic_cartan_b2():
    # B2: roots of two lengths; short roots have square length 2
    b2 = build_from_cartan([[2, -2], [-1, 2]])
    assert len(b2.positive_roots) == 4
    lengths = sorted(set(pairing(b2, r, r) for r in b2.positive_roots))
    assert lengths == [2, 4]


@given(
    st.lists(st.fractions(min_value=-3, max_value=3), min_size=4, max_size=4),
    st.lists(st.fractions(min_value=-3, max_value=3), min_size=4, max_size=4),
    st.fractions(min_value=-2, max_value=2),
)
@settings(max_examples=40, deadline=None)
def test_pairing_bilinear_symmetric(u, v, c):
    rs = build_type_a(4)
    assert pairing(rs, u, v) == pairing(rs, v, u)
    cu = [c * x for x in u]
    assert pairing(rs, cu, v) == c * pairing(rs, u, v)
    zero = (0, 0, 0, 0)
    assert pairing(rs, u, zero) == 0


def test_lex_order_noncompact_above_compact():
    # AIII (4, 2): noncompact roots cross the block boundary
    z = (Fraction(1, 2), Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 2))
    order = standard_order_type_a(z)
    rs = build_type_a(4)
    noncompact = [r for r in rs.positive_roots
                  if sum(Fraction(c) * zz for c, zz in zip(r, z)) != 0]
    compact = [r for r in rs.positive_roots if r not in noncompact]
    for nc in noncompact:
        for co in compact:
            assert order.key(nc) > order.key(co)


def test_order_rejects_duplicates():
    order = rootdata.RootOrder(first_vector=(Fraction(0), Fraction(0)))
    with pytest.raises(ParameterError):
        order.check_regular([(1, 0), (0, 1)])
