"""
Finite ordinal categories used by the bar construction.

Four flavors share the objects ``[n] = {0..n}`` (and ``[-1]``, the empty
ordinal, for every flavor but ``Delta``):

``Delta``
    monotone maps ``{0..m} -> {0..n}``.
``DeltaTilde``
    the same, with ``[-1]`` adjoined as the empty set.
``DeltaBar``
    monotone maps ``{0..m+1} -> {0..n+1}`` fixing the top point.
``DeltaHat``
    monotone maps ``{-1..m+1} -> {-1..n+1}`` fixing both end points.

The lemma checks (initial/final objects, cofinality of the inclusions
``Delta -> DeltaBar -> DeltaHat``) enumerate undercategories explicitly.
Hom-set counts inside the undercategories use a small dynamic programme
over monotone lifts; the tests cross-check it against brute force.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from ..errors import FlavorDomain, SizeGuard


class Flavor(str, Enum):
    DELTA = "Delta"
    DELTA_TILDE = "DeltaTilde"
    DELTA_BAR = "DeltaBar"
    DELTA_HAT = "DeltaHat"


def _check_object(flavor: Flavor, n: int):
    lo = 0 if flavor is Flavor.DELTA else -1
    if n < lo:
        raise FlavorDomain(f"[{n}] is not an object of {flavor.value}")


def points(flavor: Flavor, n: int) -> tuple[int, ...]:
    """Underlying ordered set on which morphisms out of / into ``[n]`` act."""
    flavor = Flavor(flavor)
    _check_object(flavor, n)
    if flavor in (Flavor.DELTA, Flavor.DELTA_TILDE):
        return tuple(range(n + 1))
    if flavor is Flavor.DELTA_BAR:
        return tuple(range(n + 2))
    return tuple(range(-1, n + 2))


def _fixed(flavor: Flavor, m: int, n: int) -> dict[int, int]:
    if flavor is Flavor.DELTA_BAR:
        return {m + 1: n + 1}
    if flavor is Flavor.DELTA_HAT:
        return {-1: -1, m + 1: n + 1}
    return {}


@dataclass(frozen=True)
class OrdinalMap:
    """A morphism ``[m] -> [n]``; ``values[i]`` is the image of ``points(m)[i]``."""

    flavor: Flavor
    m: int
    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "flavor", Flavor(self.flavor))
        dom, cod = points(self.flavor, self.m), points(self.flavor, self.n)
        if len(self.values) != len(dom):
            raise ValueError("values must list one image per domain point")
        if any(v not in cod for v in self.values):
            raise ValueError(f"values {self.values} leave the codomain")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise ValueError(f"values {self.values} are not order preserving")
        object.__setattr__(self, "_table", dict(zip(dom, self.values)))
        for src, dst in _fixed(self.flavor, self.m, self.n).items():
            if self(src) != dst:
                raise ValueError(f"{self.flavor.value} maps must send {src} to {dst}")

    def __call__(self, i: int) -> int:
        return self._table[i]

    def compose(self, first: "OrdinalMap") -> "OrdinalMap":
        """``self o first``."""
        if first.flavor is not self.flavor or first.n != self.m:
            raise ValueError("maps are not composable")
        return OrdinalMap(self.flavor, first.m, self.n,
                          tuple(self(v) for v in first.values))

    @classmethod
    def identity(cls, flavor, n: int) -> "OrdinalMap":
        return cls(flavor, n, n, points(flavor, n))


def enumerate_hom(flavor, m: int, n: int) -> list[OrdinalMap]:
    """Every morphism ``[m] -> [n]`` of the given flavor, lexicographically."""
    flavor = Flavor(flavor)
    _check_object(flavor, m)
    _check_object(flavor, n)
    dom, cod = points(flavor, m), points(flavor, n)
    fixed = _fixed(flavor, m, n)
    out = []
    for vals in itertools.combinations_with_replacement(cod, len(dom)):
        if all(vals[dom.index(s)] == t for s, t in fixed.items()):
            out.append(OrdinalMap(flavor, m, n, vals))
    return out


def hom_count(flavor, m: int, n: int) -> int:
    return len(enumerate_hom(flavor, m, n))


def extend_to_bar(mu: OrdinalMap) -> OrdinalMap:
    """Inclusion Delta (or DeltaTilde) -> DeltaBar: send the new top point to the top."""
    if mu.flavor not in (Flavor.DELTA, Flavor.DELTA_TILDE):
        raise FlavorDomain("only Delta/DeltaTilde maps extend to DeltaBar")
    return OrdinalMap(Flavor.DELTA_BAR, mu.m, mu.n, mu.values + (mu.n + 1,))


def extend_to_hat(mu: OrdinalMap) -> OrdinalMap:
    """Inclusion DeltaBar -> DeltaHat: send -1 to -1."""
    if mu.flavor is not Flavor.DELTA_BAR:
        raise FlavorDomain("only DeltaBar maps extend to DeltaHat")
    return OrdinalMap(Flavor.DELTA_HAT, mu.m, mu.n, (-1,) + mu.values)


def restrict_bar(mu: OrdinalMap) -> OrdinalMap:
    """The bijection DeltaBar(m, n) -> Delta(m, n+1) for m >= 0 (forget the top)."""
    if mu.flavor is not Flavor.DELTA_BAR or mu.m < 0:
        raise FlavorDomain("restriction needs a DeltaBar map out of [m], m >= 0")
    return OrdinalMap(Flavor.DELTA, mu.m, mu.n + 1, mu.values[:-1])


# -- counting lifts ------------------------------------------------------------

def count_lifts(through: OrdinalMap, target: OrdinalMap, flavor) -> int:
    """Number of ``nu`` in ``flavor(target.m, through.m)`` with ``through o nu == target``.

    ``through`` and ``target`` share a codomain and may be of a larger flavor
    than ``nu``; ``nu`` is compared after the canonical inclusion.
    """
    flavor = Flavor(flavor)
    src, mid = target.m, through.m
    _check_object(flavor, src)
    _check_object(flavor, mid)
    dom = points(flavor, src)
    cod = points(flavor, mid)
    fixed = _fixed(flavor, src, mid)
    # lift the target on the extra points added by the inclusion must agree as well
    extra_dom = [p for p in points(target.flavor, src) if p not in dom]
    for p in extra_dom:
        img = _included_value(flavor, through.flavor, src, mid, p)
        if through(img) != target(p):
            return 0
    if not cod:
        return 1 if not dom else 0
    # ways[v]: monotone partial lifts whose latest value is v
    tt, ft = target._table, through._table
    ways = {cod[0] - 1: 1}
    for p in dom:
        want = tt[p]
        allowed = (fixed[p],) if p in fixed else cod
        nxt = {}
        for v in allowed:
            if ft[v] == want:
                total = sum(w for prev, w in ways.items() if prev <= v)
                if total:
                    nxt[v] = total
        if not nxt:
            return 0
        ways = nxt
    return sum(ways.values())


def _included_value(small: Flavor, big: Flavor, m: int, n: int, p: int) -> int:
    # image of an extra point p of the bigger flavor under an included map [m] -> [n]
    if p == -1:
        return -1
    if p == m + 1:
        return n + 1
    raise ValueError(f"point {p} is not added by the inclusion {small.value} -> {big.value}")


# -- lemma checks --------------------------------------------------------------

@dataclass
class InitialObjectReport:
    flavor: str
    up_to: int
    initial: bool
    final: bool
    hom_from_empty: dict
    hom_to_empty: dict

    @property
    def passed(self) -> bool:
        return self.initial and self.final


def check_initial_object(flavor, up_to: int) -> InitialObjectReport:
    """Is ``[-1]`` initial and final, judged on objects ``[-1] .. [up_to]``?"""
    flavor = Flavor(flavor)
    if up_to > 6:
        raise SizeGuard("up_to must be at most 6")
    if flavor is Flavor.DELTA:
        return InitialObjectReport(flavor.value, up_to, False, False, {}, {})
    objs = range(-1, up_to + 1)
    src = {n: hom_count(flavor, -1, n) for n in objs}
    dst = {n: hom_count(flavor, n, -1) for n in objs}
    return InitialObjectReport(flavor.value, up_to,
                               all(v == 1 for v in src.values()),
                               all(v == 1 for v in dst.values()), src, dst)


@dataclass
class CofinalityReport:
    which: str
    up_to: int
    passed: bool
    witnesses: dict
    failures: list


def _under_objects(which: str, n: int, depth: int):
    """Objects ``(mu, [m])`` of the undercategory ``[n] / F`` with ``m <= depth``.

    In the opposite categories an object is a morphism ``F[m] -> [n]`` of the
    bigger flavor.
    """
    if which == "Delta->DeltaBar":
        big, lo = Flavor.DELTA_BAR, 0
    else:
        big, lo = Flavor.DELTA_HAT, -1
    return [(mu, m) for m in range(lo, depth + 1) for mu in enumerate_hom(big, m, n)]


def _small(which: str) -> Flavor:
    return Flavor.DELTA if which == "Delta->DeltaBar" else Flavor.DELTA_BAR


def _expected_witness(which: str, n: int) -> OrdinalMap:
    if which == "Delta->DeltaBar":
        # identity of [n+1] under DeltaBar(n+1, n) = Delta(n+1, n+1)
        return OrdinalMap(Flavor.DELTA_BAR, n + 1, n, tuple(range(n + 2)) + (n + 1,))
    # f(-1) = -1, f(i) = i - 1
    return OrdinalMap(Flavor.DELTA_HAT, n + 1, n, (-1,) + tuple(i - 1 for i in range(n + 3)))


def check_cofinal_inclusion(which: str, up_to: int, depth: int | None = None) -> CofinalityReport:
    """Initial objects of the undercategories of ``Delta -> DeltaBar`` or ``DeltaBar -> DeltaHat``.

    For each object ``[n]`` (``n <= up_to``) the undercategory is enumerated
    on objects ``[m]`` with ``m <= depth`` (default ``n + 2``).  An object
    is initial when it has exactly one morphism to every enumerated object;
    the check passes when exactly one such object exists and it is the
    expected witness.
    """
    if which not in ("Delta->DeltaBar", "DeltaBar->DeltaHat"):
        raise ValueError(f"unknown inclusion {which!r}")
    if up_to > 5:
        raise SizeGuard("up_to must be at most 5")
    small = _small(which)
    witnesses, failures = {}, []
    for n in range(-1, up_to + 1):
        objs = _under_objects(which, n, (n + 2) if depth is None else depth)
        expected = _expected_witness(which, n)

        def is_initial(obj):
            mu, _ = obj
            return all(count_lifts(mu, other, small) == 1 for other, _m in objs)

        # an initial object has a unique endomorphism and a unique map to the witness
        cands = [o for o in objs
                 if count_lifts(o[0], o[0], small) == 1
                 and count_lifts(o[0], expected, small) == 1]
        initial = [o for o in cands if is_initial(o)]
        if len(initial) != 1 or initial[0][0] != expected:
            failures.append({"n": n, "initial": [o[0].values for o in initial]})
        else:
            witnesses[n] = {"m": initial[0][1], "values": list(initial[0][0].values)}
    return CofinalityReport(which, up_to, not failures, witnesses, failures)
