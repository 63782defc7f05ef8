"""Finite graded monoids and their one-sided modules, given by multiplication tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..errors import ConfigInvalid


@dataclass(frozen=True)
class FiniteMonoid:
    """``table[i][j]`` is the index of ``elements[i] * elements[j]``."""

    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    unit: int = 0
    grading: tuple[int, ...] = field(default=())

    def __post_init__(self):
        n = len(self.elements)
        object.__setattr__(self, "elements", tuple(str(e) for e in self.elements))
        object.__setattr__(self, "table", tuple(tuple(int(v) for v in row) for row in self.table))
        grading = tuple(self.grading) if self.grading else (0,) * n
        object.__setattr__(self, "grading", tuple(int(g) for g in grading))
        t = self.table
        if n == 0 or len(t) != n or any(len(row) != n for row in t):
            raise ConfigInvalid("multiplication table must be n x n with n >= 1")
        if any(not 0 <= v < n for row in t for v in row):
            raise ConfigInvalid("table entries must index elements")
        if not 0 <= self.unit < n or len(self.grading) != n:
            raise ConfigInvalid("bad unit index or grading length")
        if any(g < 0 for g in self.grading):
            raise ConfigInvalid("degrees must be non-negative")
        e = self.unit
        if any(t[e][i] != i or t[i][e] != i for i in range(n)):
            raise ConfigInvalid("unit law fails")
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ConfigInvalid(f"associativity fails at ({a}, {b}, {c})")
        for a, b in itertools.product(range(n), repeat=2):
            if self.grading[t[a][b]] != self.grading[a] + self.grading[b]:
                raise ConfigInvalid(f"grading is not additive at ({a}, {b})")

    def __len__(self):
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @classmethod
    def trivial(cls) -> "FiniteMonoid":
        return cls(("e",), ((0,),))

    @classmethod
    def cyclic(cls, n: int) -> "FiniteMonoid":
        """The cyclic group of order ``n``; element ``i`` is ``g^i``."""
        names = tuple("e" if i == 0 else f"g{i}" for i in range(n))
        return cls(names, tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "table": [list(r) for r in self.table],
                "unit": self.unit, "grading": list(self.grading)}

    @classmethod
    def from_json(cls, obj: dict) -> "FiniteMonoid":
        try:
            return cls(tuple(obj["elements"]), tuple(map(tuple, obj["table"])),
                       int(obj.get("unit", 0)), tuple(obj.get("grading") or ()))
        except (KeyError, TypeError) as exc:
            raise ConfigInvalid(f"malformed monoid: {exc}") from exc


def all_monoids(order: int) -> list[FiniteMonoid]:
    """Every monoid structure on ``{0..order-1}`` with unit 0 (not up to isomorphism)."""
    n = order
    others = range(1, n)
    found = []
    cells = list(itertools.product(others, repeat=2))
    for values in itertools.product(range(n), repeat=len(cells)):
        t = [[0] * n for _ in range(n)]
        for i in range(n):
            t[0][i] = t[i][0] = i
        for (a, b), v in zip(cells, values):
            t[a][b] = v
        try:
            found.append(FiniteMonoid(tuple(str(i) for i in range(n)), tuple(map(tuple, t))))
        except ConfigInvalid:
            continue
    return found


@dataclass(frozen=True)
class MonoidModule:
    """A set with a one-sided action of a :class:`FiniteMonoid`.

    ``table[x][a]`` is the index of ``x . a`` (``side="right"``) or of
    ``a . x`` (``side="left"``).
    """

    monoid: FiniteMonoid
    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    side: str = "right"
    grading: tuple[int, ...] = field(default=())

    def __post_init__(self):
        m = self.monoid
        n = len(self.elements)
        object.__setattr__(self, "elements", tuple(str(e) for e in self.elements))
        object.__setattr__(self, "table", tuple(tuple(int(v) for v in row) for row in self.table))
        grading = tuple(self.grading) if self.grading else (0,) * n
        object.__setattr__(self, "grading", tuple(int(g) for g in grading))
        t = self.table
        if self.side not in ("left", "right"):
            raise ConfigInvalid("side must be 'left' or 'right'")
        if n == 0 or len(t) != n or any(len(row) != len(m) for row in t):
            raise ConfigInvalid("action table must be |module| x |monoid|")
        if any(not 0 <= v < n for row in t for v in row) or len(self.grading) != n:
            raise ConfigInvalid("bad action table entries or grading length")
        if any(t[x][m.unit] != x for x in range(n)):
            raise ConfigInvalid("unit does not act trivially")
        for x, a, b in itertools.product(range(n), range(len(m)), range(len(m))):
            if self.side == "right":
                ok = t[t[x][a]][b] == t[x][m.mul(a, b)]
            else:
                ok = t[t[x][b]][a] == t[x][m.mul(a, b)]
            if not ok:
                raise ConfigInvalid(f"action axiom fails at ({x}, {a}, {b})")
        for x, a in itertools.product(range(n), range(len(m))):
            if self.grading[t[x][a]] != self.grading[x] + m.grading[a]:
                raise ConfigInvalid(f"grading is not additive at ({x}, {a})")

    def __len__(self):
        return len(self.elements)

    def act(self, x: int, a: int) -> int:
        return self.table[x][a]

    @classmethod
    def point(cls, monoid: FiniteMonoid, side: str = "right") -> "MonoidModule":
        """The one-point module (requires every degree of ``monoid`` to be 0)."""
        return cls(monoid, ("*",), (tuple(0 for _ in monoid.elements),), side)

    @classmethod
    def regular(cls, monoid: FiniteMonoid, side: str = "right") -> "MonoidModule":
        """``monoid`` acting on itself by multiplication."""
        n = len(monoid)
        if side == "right":
            t = tuple(tuple(monoid.mul(x, a) for a in range(n)) for x in range(n))
        else:
            t = tuple(tuple(monoid.mul(a, x) for a in range(n)) for x in range(n))
        return cls(monoid, monoid.elements, t, side, monoid.grading)

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "table": [list(r) for r in self.table],
                "side": self.side, "grading": list(self.grading)}

    @classmethod
    def from_json(cls, monoid: FiniteMonoid, obj, side: str = "right") -> "MonoidModule":
        """Accepts a full module object or the shorthands ``"point"`` / ``"regular"``."""
        if obj == "point":
            return cls.point(monoid, side)
        if obj == "regular":
            return cls.regular(monoid, side)
        try:
            return cls(monoid, tuple(obj["elements"]), tuple(map(tuple, obj["table"])),
                       obj.get("side", side), tuple(obj.get("grading") or ()))
        except (KeyError, TypeError) as exc:
            raise ConfigInvalid(f"malformed module: {exc}") from exc
