"""Distributions of total charge over the bar coordinates, and their supports."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import SizeGuard


@dataclass(frozen=True)
class MultiDegree:
    """``k0`` plus one entry ``k[(alpha, x)]`` per level ``alpha`` and point ``x``."""

    k: int
    k0: int
    parts: tuple[tuple[tuple[int, str], int], ...]

    def __post_init__(self):
        if self.k0 < 0 or any(v < 0 for _, v in self.parts):
            raise ValueError("entries must be non-negative")
        if self.k0 + sum(v for _, v in self.parts) != self.k:
            raise ValueError("entries must sum to k")

    def __getitem__(self, key: tuple[int, str]) -> int:
        return dict(self.parts)[key]


def _guard(k, n, points):
    if k > 4 or n > 4 or len(points) > 4:
        raise SizeGuard("need k <= 4, n <= 4 and |I| <= 4")
    if k < 0 or n < 0:
        raise ValueError("k and n must be non-negative")


def _compositions(total: int, parts: int):
    # weak compositions via stars and bars
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev, out = -1, []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 2 - prev)
        yield out


def enumerate_multidegrees(k: int, n: int, points) -> list[MultiDegree]:
    """All multidegrees of total ``k`` with levels ``alpha = 0..n`` over ``points``."""
    points = tuple(points)
    _guard(k, n, points)
    keys = [(alpha, x) for alpha in range(n + 1) for x in points]
    return [MultiDegree(k, comp[0], tuple(zip(keys, comp[1:])))
            for comp in _compositions(k, 1 + len(keys))]


def support(md: MultiDegree) -> frozenset:
    return frozenset(x for (_, x), v in md.parts if v > 0)


@dataclass
class InitialityReport:
    k: int
    points: tuple
    n: int
    checked: int
    passed: bool
    failures: list


def check_support_initiality(k: int, points, n: int = 1) -> InitialityReport:
    """For every multidegree, ``supp`` must be the unique minimum of
    ``{J : supp <= J <= I, |J| <= k}`` ordered by inclusion."""
    points = tuple(points)
    mds = enumerate_multidegrees(k, n, points)
    subsets = [frozenset(c) for r in range(len(points) + 1)
               for c in itertools.combinations(points, r)]
    failures = []
    for md in mds:
        supp = support(md)
        objs = [j for j in subsets if supp <= j and len(j) <= k]
        # J is initial iff it includes into every object (inclusions are unique)
        initial = [j for j in objs if all(j <= other for other in objs)]
        if initial != [supp]:
            failures.append({"multidegree": md, "support": sorted(supp),
                             "initial": [sorted(j) for j in initial]})
    return InitialityReport(k, points, n, len(mds), not failures, failures)
