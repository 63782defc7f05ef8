"""
Moduli-level maps between monad configurations.

Isometries of the framing, Whitney sum, pullback to the blowup, the radial
delta-chart homeomorphisms, and the explicit gluing maps that combine two
charge-one configurations sitting near distinct points ``x`` and ``y`` of C^2
into a single charge-two configuration.

Conventions
-----------
A charge-one configuration fed to a gluing map is centred at the origin of
its own chart; the gluing translates it to ``x`` (first factor) or ``y``
(second factor).  Pulling a configuration on the plane back to the blowup at
a point ``p`` first re-centres coordinates at ``p``: the ``center`` argument
of :func:`pullback`.  With these conventions the compatibility of gluing with
pullback, isometries and Whitney sum holds on the nose for representatives,
not merely up to gauge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .adhm import AdhmConfig, BlowupConfig, Config
from .errors import (ConfigInvalid, DenominatorVanishes, OutOfChart,
                     ShapeMismatch, WrongDegree)
from .linalg import as_cmatrix

ISOMETRY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Isometry:
    """A linear isometry V -> V' given by an ``r_to x r_from`` matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_cmatrix(self.matrix)
        r_to, r_from = m.shape
        if r_to < r_from:
            raise ShapeMismatch(f"an isometry C^{r_from} -> C^{r_to} needs r_to >= r_from")
        if np.linalg.norm(m.conj().T @ m - np.eye(r_from)) > ISOMETRY_TOL:
            raise ValueError("matrix is not an isometry (M^H M != I)")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def r_from(self) -> int:
        return self.matrix.shape[1]

    @property
    def r_to(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def inclusion(cls, r_from: int, r_to: int, offset: int = 0) -> "Isometry":
        """Coordinate inclusion placing C^r_from at coordinates ``offset..``."""
        m = np.zeros((r_to, r_from))
        m[offset:offset + r_from, :] = np.eye(r_from)
        return cls(m)

    @classmethod
    def random(cls, r_from: int, r_to: int, rng) -> "Isometry":
        z = rng.standard_normal((r_to, r_from)) + 1j * rng.standard_normal((r_to, r_from))
        q, _ = np.linalg.qr(z)
        return cls(q[:, :r_from])


@dataclass(frozen=True)
class GluingContext:
    """Centres ``x``, ``y`` in C^2, chart radius ``delta`` and a denominator floor."""

    x: tuple[complex, complex]
    y: tuple[complex, complex]
    delta: float
    tol: float = 1e-8

    def __post_init__(self):
        x = tuple(complex(v) for v in self.x)
        y = tuple(complex(v) for v in self.y)
        if len(x) != 2 or len(y) != 2:
            raise ConfigInvalid("x and y must be points of C^2")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        if not (self.delta > 0 and self.tol > 0):
            raise ConfigInvalid("delta and tol must be positive")
        dist = float(np.linalg.norm(np.subtract(y, x)))
        if not self.delta < dist:
            raise ConfigInvalid(f"delta={self.delta} must be below |x - y| = {dist}")
        if not abs(y[0] - x[0]) > 2 * self.delta:
            raise ConfigInvalid("first coordinates of x and y must differ by more than 2*delta")

    @property
    def z(self) -> tuple[complex, complex]:
        """``y - x``."""
        return (self.y[0] - self.x[0], self.y[1] - self.x[1])


def _require_k1(*cfgs):
    for cfg in cfgs:
        if cfg.k != 1:
            raise WrongDegree(f"gluing and delta-charts need k=1, got k={cfg.k}")


def _same_r(c1, c2):
    if c1.r != c2.r:
        raise ShapeMismatch(f"framing ranks differ: {c1.r} != {c2.r}")


# -- functorial maps ---------------------------------------------------------

def isometry_act(alpha: Isometry, cfg: Config) -> Config:
    """Push the framing forward along ``alpha``: ``b <- b alpha^H``, ``c <- alpha c``."""
    if cfg.r != alpha.r_from:
        raise ShapeMismatch(f"isometry starts at C^{alpha.r_from}, config has r={cfg.r}")
    m = alpha.matrix
    return cfg.replace(b=cfg.b @ m.conj().T, c=m @ cfg.c)


def _block_diag(p, q):
    out = np.zeros((p.shape[0] + q.shape[0], p.shape[1] + q.shape[1]), dtype=np.complex128)
    out[:p.shape[0], :p.shape[1]] = p
    out[p.shape[0]:, p.shape[1]:] = q
    return out


def whitney_sum(c1: Config, c2: Config) -> Config:
    """Direct sum of bundles; the framing of the result is V1 + V2."""
    if type(c1) is not type(c2):
        raise ShapeMismatch(f"cannot sum {c1.kind} with {c2.kind}")
    m1, m2 = c1.matrices(), c2.matrices()
    return type(c1)(**{name: _block_diag(m1[name], m2[name]) for name in m1})


def translate(cfg: AdhmConfig, shift) -> AdhmConfig:
    """Translate the underlying instanton by ``shift`` in C^2."""
    s1, s2 = (complex(v) for v in shift)
    eye = np.eye(cfg.k)
    return cfg.replace(a1=cfg.a1 + s1 * eye, a2=cfg.a2 + s2 * eye)


def pullback(cfg: AdhmConfig, d=None, center=(0, 0)) -> BlowupConfig:
    """Pull a configuration on the plane back to the blowup at ``center``.

    ``d`` is the chosen isomorphism W0 -> W1 (identity by default); the
    gauge class of the result does not depend on it.
    """
    if not isinstance(cfg, AdhmConfig):
        raise ShapeMismatch("pullback takes an AdhmConfig")
    k = cfg.k
    d = np.eye(k) if d is None else as_cmatrix(d, k, k)
    base = translate(cfg, (-complex(center[0]), -complex(center[1])))
    di = np.linalg.inv(d) if k else d
    return BlowupConfig(di @ base.a1, di @ base.a2, d, di @ base.b, base.c)


# -- delta charts -------------------------------------------------------------

def chart_modulus(cfg: Config) -> float:
    """``|d a1|`` for a charge-one 5-tuple, ``|a1|`` for a charge-one 4-tuple."""
    _require_k1(cfg)
    if isinstance(cfg, BlowupConfig):
        return float(abs(cfg.d[0, 0] * cfg.a1[0, 0]))
    return float(abs(cfg.a1[0, 0]))


def to_delta_chart(cfg: Config, ctx: GluingContext) -> Config:
    """Radial shrink ``a1 <- delta / (1 + |d a1|) * a1`` onto the open delta-ball."""
    rho = chart_modulus(cfg)
    return cfg.replace(a1=cfg.a1 * (ctx.delta / (1.0 + rho)))


def from_delta_chart(cfg: Config, ctx: GluingContext) -> Config:
    """Inverse of :func:`to_delta_chart`: ``a1 <- a1 / (delta - |d a1|)``."""
    rho = chart_modulus(cfg)
    if rho >= ctx.delta:
        raise OutOfChart(f"|d a1| = {rho} is not below delta = {ctx.delta}")
    return cfg.replace(a1=cfg.a1 / (ctx.delta - rho))


# -- gluing -------------------------------------------------------------------

def _check_in_chart(cfg, ctx):
    rho = chart_modulus(cfg)
    if rho >= ctx.delta:
        raise OutOfChart(f"chart modulus {rho} is not below delta = {ctx.delta}")


def _safe_div(num, den, tol):
    if abs(den) <= tol:
        raise DenominatorVanishes(f"|{den}| <= {tol}")
    return num / den


def boxplus_oo(c1: AdhmConfig, c2: AdhmConfig, ctx: GluingContext) -> AdhmConfig:
    """Glue charge-one instantons centred at ``x`` and ``y`` into charge two."""
    _require_k1(c1, c2)
    _same_r(c1, c2)
    _check_in_chart(c1, ctx)
    _check_in_chart(c2, ctx)
    x1, x2 = ctx.x
    y1, y2 = ctx.y
    p = c1.a1[0, 0] + x1
    q = c2.a1[0, 0] + y1
    a1 = np.diag([p, q])
    a2 = np.array([
        [c1.a2[0, 0] + x2, _safe_div((c1.b @ c2.c)[0, 0], q - p, ctx.tol)],
        [_safe_div((c2.b @ c1.c)[0, 0], p - q, ctx.tol), c2.a2[0, 0] + y2],
    ])
    return AdhmConfig(a1, a2, np.vstack([c1.b, c2.b]), np.hstack([c1.c, c2.c]))


def _glue_blowup_first(m: BlowupConfig, c: AdhmConfig, z, tol: float) -> BlowupConfig:
    # blowup factor sits at the origin, the plane factor is translated by z
    da = m.d[0, 0] * m.a1[0, 0]
    q = c.a1[0, 0] + z[0]
    a1 = np.diag([m.a1[0, 0], q])
    a2 = np.array([
        [m.a2[0, 0], _safe_div((m.b @ c.c)[0, 0], q - da, tol)],
        [_safe_div((c.b @ m.c)[0, 0], da - q, tol), c.a2[0, 0] + z[1]],
    ])
    d = np.diag([m.d[0, 0], 1.0])
    return BlowupConfig(a1, a2, d, np.vstack([m.b, c.b]), np.hstack([m.c, c.c]))


def boxplus_xo(m: BlowupConfig, c: AdhmConfig, ctx: GluingContext) -> BlowupConfig:
    """Glue a charge-one blowup datum at ``x`` with a plane instanton at ``y``."""
    if not (isinstance(m, BlowupConfig) and isinstance(c, AdhmConfig)):
        raise ShapeMismatch("boxplus_xo takes (BlowupConfig, AdhmConfig)")
    _require_k1(m, c)
    _same_r(m, c)
    _check_in_chart(m, ctx)
    _check_in_chart(c, ctx)
    return _glue_blowup_first(m, c, ctx.z, ctx.tol)


_SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])


def boxplus_oy(c: AdhmConfig, m: BlowupConfig, ctx: GluingContext) -> BlowupConfig:
    """Glue a plane instanton at ``x`` with a charge-one blowup datum at ``y``.

    This is the ``x``-side formula with the factors exchanged and translation
    ``x - y``; blocks are then reordered so the first block belongs to ``c``.
    """
    if not (isinstance(c, AdhmConfig) and isinstance(m, BlowupConfig)):
        raise ShapeMismatch("boxplus_oy takes (AdhmConfig, BlowupConfig)")
    _require_k1(c, m)
    _same_r(c, m)
    _check_in_chart(c, ctx)
    _check_in_chart(m, ctx)
    w = (-ctx.z[0], -ctx.z[1])
    out = _glue_blowup_first(m, c, w, ctx.tol)
    p = _SWAP
    return BlowupConfig(p @ out.a1 @ p, p @ out.a2 @ p, p @ out.d @ p, p @ out.b, out.c @ p)


def glue_denominators(c1: Config, c2: Config, ctx: GluingContext, side: str = "oo") -> float:
    """Smallest modulus among the denominators a gluing map would divide by."""
    if side == "oo":
        return float(abs(c2.a1[0, 0] + ctx.y[0] - c1.a1[0, 0] - ctx.x[0]))
    if side == "xo":
        return float(abs(c2.a1[0, 0] + ctx.z[0] - c1.d[0, 0] * c1.a1[0, 0]))
    if side == "oy":
        return float(abs(c1.a1[0, 0] - ctx.z[0] - c2.d[0, 0] * c2.a1[0, 0]))
    raise ValueError(f"unknown side {side!r}")
