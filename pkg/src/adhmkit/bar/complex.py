"""
Two-sided bar constructions of finite monoids and their integral homology.

Level ``n`` of ``B(X_L, A, X_R)`` is ``X_L x A^n x X_R``.  Faces multiply
neighbouring entries (``d_0`` lets ``A`` act on ``X_L``, ``d_n`` on
``X_R``); degeneracies insert the unit.  Homology is that of the normalized
chain complex, computed exactly with :func:`smith_diagonal`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import ConfigInvalid, SizeGuard
from .monoids import FiniteMonoid, MonoidModule
from .smith import smith_diagonal

MAX_LEVEL = 8
MAX_CELLS = 200_000


@dataclass
class BarComplex:
    xl: MonoidModule
    monoid: FiniteMonoid
    xr: MonoidModule
    max_level: int
    degree_cap: int | None
    levels: list[list[tuple[int, ...]]]
    faces: list[list[list[int]]]         # faces[n][i][idx] -> index in level n-1
    degeneracies: list[list[list[int]]]  # degeneracies[n][i][idx] -> index in level n+1

    def degree(self, simplex: tuple[int, ...]) -> int:
        x, *mid, y = simplex
        return (self.xl.grading[x] + sum(self.monoid.grading[a] for a in mid)
                + self.xr.grading[y])

    def is_degenerate(self, simplex: tuple[int, ...]) -> bool:
        return self.monoid.unit in simplex[1:-1]

    def nondegenerate(self, n: int) -> list[int]:
        return [i for i, s in enumerate(self.levels[n]) if not self.is_degenerate(s)]


def _face(xl, a, xr, simplex, i):
    x, *mid, y = simplex
    n = len(mid)
    if i == 0:
        return (xl.act(x, mid[0]), *mid[1:], y)
    if i == n:
        return (x, *mid[:-1], xr.act(y, mid[-1]))
    return (x, *mid[:i - 1], a.mul(mid[i - 1], mid[i]), *mid[i + 1:], y)


def _degeneracy(a, simplex, i):
    # insert the unit after the i-th monoid entry
    return simplex[:i + 1] + (a.unit,) + simplex[i + 1:]


def build_bar(xl: MonoidModule, a: FiniteMonoid, xr: MonoidModule, max_level: int,
              degree_cap: int | None = None) -> BarComplex:
    """Levels ``0..max_level`` of ``B(xl, a, xr)`` with face and degeneracy tables.

    ``xl`` must be a right module and ``xr`` a left module over ``a``.  With
    ``degree_cap`` only simplices of total degree ``<= degree_cap`` are kept;
    faces and degeneracies preserve degree, so the truncation is a
    simplicial subset.
    """
    if xl.monoid != a or xr.monoid != a:
        raise ConfigInvalid("modules must be over the given monoid")
    if xl.side != "right" or xr.side != "left":
        raise ConfigInvalid("X_L must be a right module and X_R a left module")
    if not 0 <= max_level <= MAX_LEVEL:
        raise SizeGuard(f"max_level must be in 0..{MAX_LEVEL}")
    if len(xl) * len(a) ** max_level * len(xr) > MAX_CELLS:
        raise SizeGuard(f"top level would exceed {MAX_CELLS} simplices")

    def keep(s):
        if degree_cap is None:
            return True
        x, *mid, y = s
        return xl.grading[x] + sum(a.grading[v] for v in mid) + xr.grading[y] <= degree_cap

    levels = []
    for n in range(max_level + 1):
        cells = itertools.product(range(len(xl)), *([range(len(a))] * n), range(len(xr)))
        levels.append([s for s in cells if keep(s)])
    index = [{s: i for i, s in enumerate(level)} for level in levels]
    faces = [[]]
    for n in range(1, max_level + 1):
        faces.append([[index[n - 1][_face(xl, a, xr, s, i)] for s in levels[n]]
                      for i in range(n + 1)])
    degens = []
    for n in range(max_level):
        degens.append([[index[n + 1][_degeneracy(a, s, i)] for s in levels[n]]
                       for i in range(n + 1)])
    degens.append([])
    return BarComplex(xl, a, xr, max_level, degree_cap, levels, faces, degens)


def check_simplicial_identities(bc: BarComplex) -> list[str]:
    """Exhaustively check the simplicial identities; returns violations (empty if none)."""
    bad = []
    d, s = bc.faces, bc.degeneracies
    N = bc.max_level
    for n in range(N + 1):
        for idx in range(len(bc.levels[n])):
            if n >= 2:
                for j in range(n + 1):
                    for i in range(j):
                        if d[n - 1][i][d[n][j][idx]] != d[n - 1][j - 1][d[n][i][idx]]:
                            bad.append(f"d{i}d{j} at level {n}, simplex {idx}")
            if n + 1 <= N:
                for j in range(n + 1):
                    up = s[n][j][idx]
                    for i in range(n + 2):
                        lhs = d[n + 1][i][up]
                        if i < j:
                            rhs = s[n - 1][j - 1][d[n][i][idx]]
                        elif i in (j, j + 1):
                            rhs = idx
                        else:
                            rhs = s[n - 1][j][d[n][i - 1][idx]]
                        if lhs != rhs:
                            bad.append(f"d{i}s{j} at level {n}, simplex {idx}")
            if n + 2 <= N:
                for j in range(n + 1):
                    for i in range(j + 1):
                        if s[n + 1][i][s[n][j][idx]] != s[n + 1][j + 1][s[n][i][idx]]:
                            bad.append(f"s{i}s{j} at level {n}, simplex {idx}")
    return bad


def normalized_chains(bc: BarComplex, top: int) -> tuple[list[int], list[list[list[int]]]]:
    """Ranks of the normalized chain groups ``N_0..N_top`` and boundary matrices.

    ``boundaries[n]`` is the matrix of ``N_n -> N_{n-1}`` (rows index
    ``N_{n-1}``); ``boundaries[0]`` is empty.
    """
    if top > bc.max_level:
        raise ValueError("not enough levels built")
    basis = [bc.nondegenerate(n) for n in range(top + 1)]
    pos = [{idx: p for p, idx in enumerate(b)} for b in basis]
    boundaries: list[list[list[int]]] = [[]]
    for n in range(1, top + 1):
        mat = [[0] * len(basis[n]) for _ in basis[n - 1]]
        for col, idx in enumerate(basis[n]):
            for i in range(n + 1):
                face = bc.faces[n][i][idx]
                row = pos[n - 1].get(face)
                if row is not None:
                    mat[row][col] += -1 if i % 2 else 1
        boundaries.append(mat)
    return [len(b) for b in basis], boundaries


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    rank: int
    torsion: tuple[int, ...]

    def to_json(self) -> dict:
        return {"degree": self.degree, "rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = ["Z"] * self.rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def homology(bc: BarComplex, through_degree: int) -> list[HomologyGroup]:
    """Integral homology ``H_0..H_D`` of the normalized chain complex (``D < max_level``)."""
    if not 0 <= through_degree < bc.max_level:
        raise ValueError("through_degree must be below max_level")
    ranks, bd = normalized_chains(bc, through_degree + 1)
    diag = [smith_diagonal(m) if m and m[0] else [] for m in bd]
    out = []
    for n in range(through_degree + 1):
        rank_out = len(diag[n]) if n else 0
        incoming = diag[n + 1]
        free = ranks[n] - rank_out - len(incoming)
        out.append(HomologyGroup(n, free, tuple(d for d in incoming if d > 1)))
    return out


def homology_report(groups: list[HomologyGroup]) -> list[dict]:
    return [g.to_json() for g in groups]


def truncated_euler(bc: BarComplex, through_degree: int) -> tuple[int, int]:
    """Both sides of the Euler identity for the truncation ``N_0..N_D``.

    Left: alternating sum of chain ranks.  Right: alternating sum of the
    ranks of ``H_0..H_{D-1}`` plus ``(-1)^D rank Z_D``, the top cycles.
    """
    D = through_degree
    ranks, bd = normalized_chains(bc, D)
    groups = homology(bc, D - 1) if D else []
    lhs = sum((-1) ** n * ranks[n] for n in range(D + 1))
    rank_d = len(smith_diagonal(bd[D])) if D and bd[D] and bd[D][0] else 0
    rhs = sum((-1) ** n * groups[n].rank for n in range(D)) + (-1) ** D * (ranks[D] - rank_d)
    return lhs, rhs
