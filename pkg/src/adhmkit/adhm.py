"""
Monad data for framed bundles on the projective plane and its one-point blowup.

Two configuration spaces are modelled:

* :class:`AdhmConfig` -- quadruples ``(a1, a2, b, c)`` with ``a_i`` in
  End(W1), ``b`` in Hom(V, W1) and ``c`` in Hom(W1, V), subject to
  ``[a1, a2] + b c = 0``;
* :class:`BlowupConfig` -- quintuples ``(a1, a2, d, b, c)`` with ``a_i`` in
  Hom(W1, W0), ``d`` in Hom(W0, W1), ``b`` in Hom(V, W0), ``c`` in Hom(W1, V),
  subject to ``a1 d a2 - a2 d a1 + b c = 0``.

Points of the moduli spaces are gauge orbits of nondegenerate
configurations, so equality of moduli points is decided by
:func:`gauge_equivalent` rather than by comparing matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Union

import numpy as np

from . import linalg
from .errors import NotInvertible, ShapeMismatch, Unsatisfiable
from .linalg import DEFAULT_TOL, Subspace, as_cmatrix

GAUGE_TOL = 1e-6
RESIDUAL_TOL = 1e-10
MAX_REJECTIONS = 1000


@dataclass(frozen=True, eq=False)
class AdhmConfig:
    a1: np.ndarray
    a2: np.ndarray
    b: np.ndarray
    c: np.ndarray

    kind = "adhm"

    def __post_init__(self):
        a1 = as_cmatrix(self.a1)
        k = a1.shape[0]
        b = as_cmatrix(self.b, rows=k)
        r = b.shape[1]
        _freeze(self, a1=as_cmatrix(a1, k, k), a2=as_cmatrix(self.a2, k, k),
                b=b, c=as_cmatrix(self.c, r, k))

    @property
    def k(self) -> int:
        return self.a1.shape[0]

    @property
    def r(self) -> int:
        return self.b.shape[1]

    @classmethod
    def empty(cls, r: int) -> "AdhmConfig":
        z = np.zeros((0, 0))
        return cls(z, z, np.zeros((0, r)), np.zeros((r, 0)))

    def matrices(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def replace(self, **kw) -> "AdhmConfig":
        return type(self)(**{**self.matrices(), **kw})

    def __repr__(self):
        return f"AdhmConfig(k={self.k}, r={self.r})"


@dataclass(frozen=True, eq=False)
class BlowupConfig:
    a1: np.ndarray
    a2: np.ndarray
    d: np.ndarray
    b: np.ndarray
    c: np.ndarray

    kind = "blowup"

    def __post_init__(self):
        a1 = as_cmatrix(self.a1)
        k = a1.shape[0]
        b = as_cmatrix(self.b, rows=k)
        r = b.shape[1]
        _freeze(self, a1=as_cmatrix(a1, k, k), a2=as_cmatrix(self.a2, k, k),
                d=as_cmatrix(self.d, k, k), b=b, c=as_cmatrix(self.c, r, k))

    @property
    def k(self) -> int:
        return self.a1.shape[0]

    @property
    def r(self) -> int:
        return self.b.shape[1]

    @classmethod
    def empty(cls, r: int) -> "BlowupConfig":
        z = np.zeros((0, 0))
        return cls(z, z, z, np.zeros((0, r)), np.zeros((r, 0)))

    matrices = AdhmConfig.matrices
    replace = AdhmConfig.replace

    def __repr__(self):
        return f"BlowupConfig(k={self.k}, r={self.r})"


Config = Union[AdhmConfig, BlowupConfig]


def _freeze(obj, **arrays):
    for name, arr in arrays.items():
        arr.setflags(write=False)
        object.__setattr__(obj, name, arr)


@dataclass(frozen=True, eq=False)
class GaugeElement:
    """Element of GL(W1), or of GL(W0) x GL(W1) when ``g0`` is given."""

    g1: np.ndarray
    g0: np.ndarray | None = None

    def __post_init__(self):
        g1 = as_cmatrix(self.g1)
        k = g1.shape[0]
        g1 = as_cmatrix(g1, k, k)
        if not linalg.is_invertible(g1):
            raise NotInvertible("g1 is singular")
        g0 = self.g0
        if g0 is not None:
            g0 = as_cmatrix(g0, k, k)
            if not linalg.is_invertible(g0):
                raise NotInvertible("g0 is singular")
            g0.setflags(write=False)
        g1.setflags(write=False)
        object.__setattr__(self, "g1", g1)
        object.__setattr__(self, "g0", g0)

    @property
    def k(self) -> int:
        return self.g1.shape[0]

    @classmethod
    def identity(cls, k: int, blowup: bool = False) -> "GaugeElement":
        eye = np.eye(k)
        return cls(eye, eye if blowup else None)

    def __matmul__(self, other: "GaugeElement") -> "GaugeElement":
        if (self.g0 is None) != (other.g0 is None):
            raise ShapeMismatch("cannot compose 4-tuple and 5-tuple gauge elements")
        g0 = None if self.g0 is None else self.g0 @ other.g0
        return GaugeElement(self.g1 @ other.g1, g0)


def second_chern(cfg: Config) -> int:
    return cfg.k


def integrability_residual(cfg: AdhmConfig) -> float:
    """Frobenius norm of ``a1 a2 - a2 a1 + b c``."""
    if not isinstance(cfg, AdhmConfig):
        raise ShapeMismatch("expected an AdhmConfig")
    m = cfg.a1 @ cfg.a2 - cfg.a2 @ cfg.a1 + cfg.b @ cfg.c
    return float(np.linalg.norm(m))


def blowup_integrability_residual(cfg: BlowupConfig) -> float:
    """Frobenius norm of ``a1 d a2 - a2 d a1 + b c``."""
    if not isinstance(cfg, BlowupConfig):
        raise ShapeMismatch("expected a BlowupConfig")
    m = cfg.a1 @ cfg.d @ cfg.a2 - cfg.a2 @ cfg.d @ cfg.a1 + cfg.b @ cfg.c
    return float(np.linalg.norm(m))


def residual(cfg: Config) -> float:
    if isinstance(cfg, BlowupConfig):
        return blowup_integrability_residual(cfg)
    return integrability_residual(cfg)


def is_surjective(cfg: BlowupConfig, tol: float = DEFAULT_TOL) -> bool:
    """``a1(W1) + a2(W1) + b(V) = W0``."""
    if cfg.k == 0:
        return True
    return linalg.numeric_rank(np.hstack([cfg.a1, cfg.a2, cfg.b]), tol) == cfg.k


def is_valid(cfg: Config, tol: float = 1e-9) -> bool:
    """Integrability holds to ``tol`` (and surjectivity, for 5-tuples)."""
    if isinstance(cfg, BlowupConfig):
        return blowup_integrability_residual(cfg) <= tol and is_surjective(cfg)
    return integrability_residual(cfg) <= tol


# -- nondegeneracy -----------------------------------------------------------

def _scale(cfg: Config) -> float:
    # Im b and Ker c are judged against the whole configuration, so that a
    # round-off sized b or c counts as zero
    return config_norm(cfg) or 1.0


def stable_closure(cfg: AdhmConfig, tol: float = DEFAULT_TOL) -> Subspace:
    """Smallest (a1, a2)-invariant subspace of W1 containing Im b."""
    u = linalg.image(cfg.b, tol, _scale(cfg))
    for _ in range(cfg.k + 1):
        nxt = linalg.image(np.hstack([u.basis, cfg.a1 @ u.basis, cfg.a2 @ u.basis]), tol)
        if nxt.dim == u.dim:
            return nxt
        u = nxt
    return u


def costable_closure(cfg: AdhmConfig, tol: float = DEFAULT_TOL) -> Subspace:
    """Largest (a1, a2)-invariant subspace of W1 contained in Ker c."""
    u = linalg.kernel(cfg.c, tol, _scale(cfg))
    for _ in range(cfg.k + 1):
        nxt = linalg.intersect_subspaces(
            u,
            linalg.intersect_subspaces(linalg.preimage(cfg.a1, u, tol),
                                       linalg.preimage(cfg.a2, u, tol), tol),
            tol)
        if nxt.dim == u.dim:
            return nxt
        u = nxt
    return u


def is_stable(cfg: AdhmConfig, tol: float = DEFAULT_TOL) -> bool:
    return stable_closure(cfg, tol).dim == cfg.k


def is_costable(cfg: AdhmConfig, tol: float = DEFAULT_TOL) -> bool:
    return costable_closure(cfg, tol).dim == 0


def is_nondegenerate(cfg: AdhmConfig, tol: float = DEFAULT_TOL) -> bool:
    return is_stable(cfg, tol) and is_costable(cfg, tol)


def blowup_stable_pair(cfg: BlowupConfig, tol: float = DEFAULT_TOL) -> tuple[Subspace, Subspace]:
    """Smallest pair (U0, U1) with Im b in U0, d(U0) in U1 and a_i(U1) in U0."""
    k = cfg.k
    u0 = linalg.image(cfg.b, tol, _scale(cfg))
    u1 = Subspace.zero(k)
    for _ in range(2 * k + 2):
        n1 = linalg.sum_subspaces(u1, linalg.apply(cfg.d, u0, tol), tol)
        n0 = linalg.image(np.hstack([u0.basis, cfg.a1 @ n1.basis, cfg.a2 @ n1.basis]), tol)
        if (n0.dim, n1.dim) == (u0.dim, u1.dim):
            return n0, n1
        u0, u1 = n0, n1
    return u0, u1


def blowup_costable_pair(cfg: BlowupConfig, tol: float = DEFAULT_TOL) -> tuple[Subspace, Subspace]:
    """Largest pair (U0, U1) with U1 in Ker c, d(U0) in U1 and a_i(U1) in U0."""
    k = cfg.k
    u0 = Subspace.full(k)
    u1 = linalg.kernel(cfg.c, tol, _scale(cfg))
    for _ in range(2 * k + 2):
        n0 = linalg.intersect_subspaces(u0, linalg.preimage(cfg.d, u1, tol), tol)
        n1 = linalg.intersect_subspaces(
            u1,
            linalg.intersect_subspaces(linalg.preimage(cfg.a1, n0, tol),
                                       linalg.preimage(cfg.a2, n0, tol), tol),
            tol)
        if (n0.dim, n1.dim) == (u0.dim, u1.dim):
            return n0, n1
        u0, u1 = n0, n1
    return u0, u1


def blowup_closure_test(cfg: BlowupConfig, tol: float = DEFAULT_TOL) -> bool:
    """Pair-closure nondegeneracy test, valid for every k.

    Sound but possibly over-strict for k >= 2: it answers True only when no
    invariant pair of equal dimensions can witness degeneracy.  The minimal
    stable pair must fill W0 and the maximal costable pair must have U1 = 0.
    """
    if cfg.k == 0:
        return True
    u0, _ = blowup_stable_pair(cfg, tol)
    _, v1 = blowup_costable_pair(cfg, tol)
    return u0.dim == cfg.k and v1.dim == 0


def blowup_is_nondegenerate(cfg: BlowupConfig, tol: float = DEFAULT_TOL) -> bool:
    if cfg.k == 1:
        cut = tol * _scale(cfg)
        return bool(np.linalg.norm(cfg.b) > cut and np.linalg.norm(cfg.c) > cut)
    return blowup_closure_test(cfg, tol)


def nondegenerate(cfg: Config, tol: float = DEFAULT_TOL) -> bool:
    if isinstance(cfg, BlowupConfig):
        return blowup_is_nondegenerate(cfg, tol)
    return is_nondegenerate(cfg, tol)


# -- gauge action ------------------------------------------------------------

def gauge_apply(g: GaugeElement, cfg: Config) -> Config:
    if g.k != cfg.k:
        raise ShapeMismatch(f"gauge acts on dimension {g.k}, config has k={cfg.k}")
    g1 = g.g1
    g1i = np.linalg.inv(g1) if cfg.k else g1
    if isinstance(cfg, BlowupConfig):
        if g.g0 is None:
            raise ShapeMismatch("5-tuples need a (g0, g1) gauge element")
        g0 = g.g0
        g0i = np.linalg.inv(g0) if cfg.k else g0
        return BlowupConfig(g0 @ cfg.a1 @ g1i, g0 @ cfg.a2 @ g1i,
                            g1 @ cfg.d @ g0i, g0 @ cfg.b, cfg.c @ g1i)
    if g.g0 is not None:
        raise ShapeMismatch("4-tuples take a GL(W1) gauge element")
    return AdhmConfig(g1 @ cfg.a1 @ g1i, g1 @ cfg.a2 @ g1i, g1 @ cfg.b, cfg.c @ g1i)


def config_distance(c1: Config, c2: Config) -> float:
    """Frobenius distance between two configurations of the same kind and shape."""
    _check_same_kind(c1, c2)
    if c1.k != c2.k:
        raise ShapeMismatch(f"k differs: {c1.k} != {c2.k}")
    m1, m2 = c1.matrices(), c2.matrices()
    return float(np.sqrt(sum(np.linalg.norm(m1[n] - m2[n]) ** 2 for n in m1)))


def config_norm(cfg: Config) -> float:
    return float(np.sqrt(sum(np.linalg.norm(m) ** 2 for m in cfg.matrices().values())))


def _check_same_kind(c1: Config, c2: Config):
    if type(c1) is not type(c2):
        raise ShapeMismatch(f"cannot compare {c1.kind} with {c2.kind}")
    if c1.r != c2.r:
        raise ShapeMismatch(f"framing rank differs: {c1.r} != {c2.r}")


def _vec_left(a, cols):
    # row-major vec of a @ X for X with `cols` columns
    return np.kron(a, np.eye(cols))


def _vec_right(b, rows):
    # row-major vec of X @ b for X with `rows` rows
    return np.kron(np.eye(rows), b.T)


def gauge_system(src: Config, dst: Config) -> tuple[np.ndarray, np.ndarray]:
    """Linear system whose solutions are gauge elements taking ``src`` to ``dst``.

    Unknowns are ``vec(g1)`` (4-tuples) or ``[vec(g0), vec(g1)]`` (5-tuples),
    row-major.
    """
    k, r = src.k, src.r
    kk = k * k
    blocks, rhs = [], []
    if isinstance(src, AdhmConfig):
        for s, t in ((src.a1, dst.a1), (src.a2, dst.a2)):
            blocks.append(_vec_right(s, k) - _vec_left(t, k))   # g s - t g = 0
            rhs.append(np.zeros(kk))
        blocks.append(_vec_right(src.b, k))                       # g b = b'
        rhs.append(dst.b.ravel())
        blocks.append(_vec_left(dst.c, k))                        # c' g = c
        rhs.append(src.c.ravel())
    else:
        for s, t in ((src.a1, dst.a1), (src.a2, dst.a2)):
            blocks.append(np.hstack([_vec_right(s, k), -_vec_left(t, k)]))    # g0 s - t g1
            rhs.append(np.zeros(kk))
        blocks.append(np.hstack([-_vec_left(dst.d, k), _vec_right(src.d, k)]))  # g1 d - d' g0
        rhs.append(np.zeros(kk))
        blocks.append(np.hstack([_vec_right(src.b, k), np.zeros((k * r, kk))]))  # g0 b = b'
        rhs.append(dst.b.ravel())
        blocks.append(np.hstack([np.zeros((r * k, kk)), _vec_left(dst.c, k)]))   # c' g1 = c
        rhs.append(src.c.ravel())
    return np.vstack(blocks), np.concatenate(rhs)


def _unpack(x: np.ndarray, k: int, blowup: bool) -> GaugeElement | None:
    kk = k * k
    try:
        if blowup:
            return GaugeElement(x[kk:].reshape(k, k), x[:kk].reshape(k, k))
        return GaugeElement(x.reshape(k, k))
    except NotInvertible:
        return None


def gauge_equivalent(c1: Config, c2: Config, tol: float = GAUGE_TOL,
                     seed: int = 0) -> GaugeElement | None:
    """A gauge element ``g`` with ``g . c1 = c2``, or None if there is none.

    The equations are linear in ``g``; they are solved by least squares and a
    candidate is accepted when ``|g . c1 - c2| < tol * max(1, |c2|)`` and ``g``
    is invertible.  When the solution set is an affine space of positive
    dimension, eight random points of it are also tried.  Configurations of
    different second Chern class are never equivalent.
    """
    _check_same_kind(c1, c2)
    if c1.k != c2.k:
        return None
    k = c1.k
    blowup = isinstance(c1, BlowupConfig)
    if k == 0:
        return GaugeElement.identity(0, blowup)
    a, rhs = gauge_system(c1, c2)
    x, _ = linalg.solve_least_squares(a, rhs)
    bound = tol * max(1.0, config_norm(c2))

    def accept(vec):
        g = _unpack(vec, k, blowup)
        if g is None:
            return None
        return g if config_distance(gauge_apply(g, c1), c2) < bound else None

    g = accept(x)
    if g is not None:
        return g
    null = linalg.kernel(a, DEFAULT_TOL)
    if null.dim:
        rng = np.random.default_rng(seed)
        for _ in range(8):
            z = rng.standard_normal(null.dim) + 1j * rng.standard_normal(null.dim)
            g = accept(x + null.basis @ z)
            if g is not None:
                return g
    return None


# -- random generation -------------------------------------------------------

def _cgauss(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unitary(n: int, rng) -> np.ndarray:
    q, r = np.linalg.qr(_cgauss(rng, n, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_gauge_matrix(k: int, rng, max_cond: float = 10.0) -> np.ndarray:
    """Random invertible k x k matrix with condition number at most ``max_cond``."""
    s = rng.uniform(1.0, max_cond, size=k)
    return random_unitary(k, rng) @ np.diag(s) @ random_unitary(k, rng)


def random_gauge(k: int, rng, blowup: bool = False, max_cond: float = 10.0) -> GaugeElement:
    g1 = random_gauge_matrix(k, rng, max_cond)
    g0 = random_gauge_matrix(k, rng, max_cond) if blowup else None
    return GaugeElement(g1, g0)


def _draw_solving_c(k, r, rng):
    a1, a2, b = _cgauss(rng, k, k), _cgauss(rng, k, k), _cgauss(rng, k, r)
    target = -(a1 @ a2 - a2 @ a1)
    bp = np.linalg.pinv(b)
    # general solution of b c = target: particular part plus Ker b component
    c = bp @ target + (np.eye(r) - bp @ b) @ _cgauss(rng, r, k)
    return AdhmConfig(a1, a2, b, c)


def _draw_separated(k, r, rng):
    # k separated charge-one pieces; off-diagonal a2 entries cancel the b c cross terms
    p = _cgauss(rng, k)
    b = _cgauss(rng, k, r)
    c = np.empty((r, k), dtype=np.complex128)
    for i in range(k):
        bi = b[i:i + 1]
        z = _cgauss(rng, r, 1)
        c[:, i:i + 1] = z - bi.conj().T @ (bi @ z) / (bi @ bi.conj().T)
    a2 = np.diag(_cgauss(rng, k))
    for i in range(k):
        for j in range(k):
            if i != j:
                a2[i, j] = (b[i] @ c[:, j]) / (p[j] - p[i])
    g = random_gauge_matrix(k, rng, 4.0)
    return gauge_apply(GaugeElement(g), AdhmConfig(np.diag(p), a2, b, c))


def random_nondegenerate(k: int, r: int, seed: int) -> AdhmConfig:
    """Seeded rejection sampler for nondegenerate quadruples.

    For ``r >= k`` the integrability constraint is solved for ``c``; when
    ``r < k`` the draw is a gauge-scrambled superposition of ``k`` separated
    charge-one configurations.
    """
    if k < 0 or r < 0:
        raise ValueError("k and r must be non-negative")
    if k == 0:
        return AdhmConfig.empty(r)
    rng = np.random.default_rng(seed)
    draw = _draw_solving_c if r >= k else _draw_separated
    for _ in range(MAX_REJECTIONS):
        cfg = draw(k, r, rng)
        if integrability_residual(cfg) < RESIDUAL_TOL and is_nondegenerate(cfg):
            return cfg
    raise Unsatisfiable(f"no nondegenerate configuration found for k={k}, r={r}")


def random_nondegenerate_blowup(k: int, r: int, seed: int, max_cond: float = 10.0) -> BlowupConfig:
    """A random gauge translate of the pullback of a random nondegenerate quadruple."""
    cfg = random_nondegenerate(k, r, seed)
    base = BlowupConfig(cfg.a1, cfg.a2, np.eye(k), cfg.b, cfg.c)
    rng = np.random.default_rng([seed, 1])
    return gauge_apply(random_gauge(k, rng, blowup=True, max_cond=max_cond), base)
