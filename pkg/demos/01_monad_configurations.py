"""
Monad configurations, their stability, and gauge equivalence
=============================================================

A framed bundle of charge k and rank r on the projective plane is encoded by
a quadruple (a1, a2, b, c) of complex matrices with [a1, a2] + b c = 0.
Its moduli point is the gauge orbit g.(a1, a2, b, c) = (g a1 g^-1, g a2 g^-1,
g b, c g^-1) of a nondegenerate quadruple.
"""

import numpy as np

from adhmkit.adhm import (AdhmConfig, gauge_apply, gauge_equivalent, integrability_residual,
                          is_costable, is_stable, random_gauge, random_nondegenerate)
from adhmkit.errors import Unsatisfiable

# %% A hand-written charge-two example
# a1 and a2 are the raising and lowering operators; their commutator is
# diag(1, -1), which b c = diag(-1, 1) cancels exactly.
cfg = AdhmConfig([[0, 1], [0, 0]], [[0, 0], [1, 0]], np.eye(2), np.diag([-1, 1]))
print("residual       ", integrability_residual(cfg))
print("stable/costable", is_stable(cfg), is_costable(cfg))

# %% Random nondegenerate data
# The sampler solves the quadratic constraint for c and rejects degenerate
# draws.  With a rank-one framing no nondegenerate point exists at all.
rand = random_nondegenerate(3, 2, seed=42)
print("k=3, r=2 residual", f"{integrability_residual(rand):.1e}")
try:
    random_nondegenerate(1, 1, seed=7)
except Unsatisfiable as exc:
    print("k=1, r=1:", exc)

# %% Gauge equivalence is a linear problem
rng = np.random.default_rng(0)
g = random_gauge(3, rng, max_cond=10)
moved = gauge_apply(g, rand)
found = gauge_equivalent(rand, moved)
print("recovered a gauge element:", found is not None)
print("unrelated configs equivalent:", gauge_equivalent(rand, random_nondegenerate(3, 2, 43)))
