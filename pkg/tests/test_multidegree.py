import itertools
from math import comb

import pytest

from adhmkit.bar.multidegree import (MultiDegree, check_support_initiality,
                                     enumerate_multidegrees, support)
from adhmkit.errors import SizeGuard


def brute(k, n, points):
    keys = [(a, x) for a in range(n + 1) for x in points]
    out = []
    for vals in itertools.product(range(k + 1), repeat=len(keys) + 1):
        if sum(vals) == k:
            out.append((vals[0], tuple(zip(keys, vals[1:]))))
    return sorted(out)


def test_k_zero():
    mds = enumerate_multidegrees(0, 2, "xy")
    assert len(mds) == 1 and support(mds[0]) == frozenset()


def test_single_point_two_choices():
    mds = enumerate_multidegrees(1, 0, "x")
    assert sorted((md.k0, md[(0, "x")]) for md in mds) == [(0, 1), (1, 0)]


@pytest.mark.parametrize("k,n,points", [(2, 1, "xy"), (3, 0, "xyz"), (2, 2, "x"), (4, 1, "")])
def test_enumeration_matches_brute_force(k, n, points):
    mds = enumerate_multidegrees(k, n, points)
    assert sorted((md.k0, md.parts) for md in mds) == brute(k, n, points)
    # stars and bars count
    assert len(mds) == comb(k + (n + 1) * len(points), k)


def test_support_bounded_by_k():
    for k in range(4):
        for md in enumerate_multidegrees(k, 1, "xyz"):
            assert len(support(md)) <= k


def test_support_definition():
    md = MultiDegree(2, 0, (((0, "x"), 1), ((0, "y"), 0), ((1, "x"), 0), ((1, "y"), 1)))
    assert support(md) == {"x", "y"}
    with pytest.raises(ValueError):
        MultiDegree(2, 0, (((0, "x"), 1),))


def test_initial_element_two_points():
    rep = check_support_initiality(2, "xy", n=0)
    assert rep.passed
    md = MultiDegree(2, 0, (((0, "x"), 1), ((0, "y"), 1)))
    assert support(md) == {"x", "y"}


@pytest.mark.parametrize("k,size", list(itertools.product(range(4), range(4))))
def test_support_initiality(k, size):
    assert check_support_initiality(k, "xyz"[:size]).passed


def test_size_guard():
    with pytest.raises(SizeGuard):
        enumerate_multidegrees(5, 1, "x")
    with pytest.raises(SizeGuard):
        enumerate_multidegrees(1, 1, "abcde")
