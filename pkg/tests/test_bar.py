import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from adhmkit.bar.complex import (build_bar, check_simplicial_identities, homology,
                                 normalized_chains, truncated_euler)
from adhmkit.bar.monoids import FiniteMonoid, MonoidModule, all_monoids
from adhmkit.bar.smith import smith_diagonal
from adhmkit.errors import ConfigInvalid, SizeGuard
from oracles import oracle_group_homology


def point(m, side):
    return MonoidModule.point(m, side)


def classifying(m, levels):
    return build_bar(point(m, "right"), m, point(m, "left"), levels)


def as_pairs(groups):
    return [(g.rank, g.torsion) for g in groups]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cyclic_group_matches_oracle(n):
    c = FiniteMonoid.cyclic(n)
    want = oracle_group_homology(c.table, 0, n, 3)
    assert as_pairs(homology(classifying(c, 5), 3)) == want


def test_c2_homology_values():
    got = homology(classifying(FiniteMonoid.cyclic(2), 5), 3)
    assert [str(g) for g in got] == ["Z", "Z/2", "0", "Z/2"]


def test_c2_boundaries_by_hand():
    # one nondegenerate cell per level; d_n alternates 0, 2, 0, 2, ...
    ranks, bd = normalized_chains(classifying(FiniteMonoid.cyclic(2), 4), 4)
    assert ranks == [1, 1, 1, 1, 1]
    assert [m[0][0] for m in bd[1:]] == [0, 2, 0, 2]


def test_trivial_monoid_is_a_point():
    t = FiniteMonoid.trivial()
    bc = classifying(t, 4)
    assert all(len(level) == 1 for level in bc.levels)
    assert as_pairs(homology(bc, 3)) == [(1, ())] + [(0, ())] * 3


def test_level_cardinality():
    c = FiniteMonoid.cyclic(3)
    reg = MonoidModule.regular(c, "right")
    bc = build_bar(reg, c, point(c, "left"), 4)
    assert [len(level) for level in bc.levels] == [3 * 3 ** n for n in range(5)]


def test_simplicial_identities_c2():
    c = FiniteMonoid.cyclic(2)
    assert check_simplicial_identities(classifying(c, 4)) == []
    reg_l, reg_r = MonoidModule.regular(c, "right"), MonoidModule.regular(c, "left")
    assert check_simplicial_identities(build_bar(reg_l, c, reg_r, 4)) == []


def test_identity_checker_catches_a_broken_face():
    bc = classifying(FiniteMonoid.cyclic(3), 3)
    bc.faces[2][1] = list(reversed(bc.faces[2][1]))
    assert check_simplicial_identities(bc)


@pytest.mark.parametrize("order", [1, 2, 3])
def test_free_module_bar_is_contractible(order):
    for m in all_monoids(order):
        bc = build_bar(MonoidModule.regular(m, "right"), m, point(m, "left"), 4)
        assert as_pairs(homology(bc, 3)) == [(1, ())] + [(0, ())] * 3
        assert check_simplicial_identities(bc) == []


def test_all_monoids_counts():
    # order 3 has 7 classes; labelled tables with unit 0 are 2 / |Aut| each:
    # O2+1, Y2+1, C2+1, <a | a^3 = a^2> give 2; L2+1, R2+1, C3 give 1
    assert [len(all_monoids(n)) for n in (1, 2, 3)] == [1, 2, 11]


def test_euler_identity():
    for m in all_monoids(2) + [FiniteMonoid.cyclic(3)]:
        bc = classifying(m, 5)
        for d in range(6):
            lhs, rhs = truncated_euler(bc, d)
            assert lhs == rhs


def test_degree_cap_truncation():
    # finite graded monoids are concentrated in degree 0, so grade the modules instead
    m = FiniteMonoid.cyclic(2)
    xl = MonoidModule(m, ("p", "q"), ((0, 1), (1, 0)), "right", (0, 0))
    xr = MonoidModule(m, ("u", "v"), ((0, 0), (1, 1)), "left", (0, 1))
    full = build_bar(xl, m, xr, 3)
    capped = build_bar(xl, m, xr, 3, degree_cap=0)
    assert [len(level) for level in capped.levels] == [2 * 2 ** n for n in range(4)]
    assert all(full.degree(s) <= 0 for level in capped.levels for s in level)
    assert check_simplicial_identities(capped) == []


def test_graded_monoid_validation():
    with pytest.raises(ConfigInvalid):
        FiniteMonoid(("e", "t"), ((0, 1), (1, 1)), grading=(0, 1))
    with pytest.raises(ConfigInvalid):
        FiniteMonoid(("e", "a", "b"), ((0, 1, 2), (1, 2, 1), (2, 2, 2)))


def test_module_validation():
    c = FiniteMonoid.cyclic(2)
    with pytest.raises(ConfigInvalid):
        MonoidModule(c, ("p", "q"), ((0, 0), (1, 0)))  # g . g must be the identity action
    with pytest.raises(ConfigInvalid):
        build_bar(point(c, "left"), c, point(c, "left"), 2)


def test_size_guards():
    c = FiniteMonoid.cyclic(2)
    with pytest.raises(SizeGuard):
        classifying(c, 9)
    with pytest.raises(SizeGuard):
        classifying(FiniteMonoid.cyclic(6), 8)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
def test_smith_matches_sympy(rows):
    want = [abs(int(v)) for v in invariant_factors(Matrix(rows), domain=ZZ) if v != 0]
    assert smith_diagonal(rows) == want


def test_smith_big_integers():
    big = 10 ** 30
    assert smith_diagonal([[big, 0], [0, big * 3]]) == [big, 3 * big]
    assert smith_diagonal([[2, 0], [0, 3]]) == [1, 6]
