"""
Gluing charge-one instantons and the blowup
===========================================

Two charge-one configurations near distinct points x and y of C^2 glue to a
charge-two configuration.  On the blowup at x the same gluing is written with
a quintuple (a1, a2, d, b, c), and pulling the glued plane configuration back
to the blowup agrees with gluing the pulled-back factor.
"""

from adhmkit.adhm import config_distance, gauge_equivalent, residual, second_chern
from adhmkit.adhm import random_nondegenerate
from adhmkit.gluing import (GluingContext, Isometry, boxplus_oo, boxplus_xo, chart_modulus,
                            from_delta_chart, isometry_act, pullback, to_delta_chart,
                            translate, whitney_sum)

ctx = GluingContext(x=(0, 0), y=(2, 1j), delta=0.5)

# %% Shrink each factor into the delta chart, then glue
c1 = to_delta_chart(random_nondegenerate(1, 2, seed=1), ctx)
c2 = to_delta_chart(random_nondegenerate(1, 2, seed=2), ctx)
print("chart moduli", chart_modulus(c1), chart_modulus(c2), "< delta =", ctx.delta)
glued = boxplus_oo(c1, c2, ctx)
print("glued: k =", second_chern(glued), " residual =", f"{residual(glued):.1e}")

# %% The chart maps are mutually inverse
back = from_delta_chart(c1, ctx)
print("round trip error", config_distance(to_delta_chart(back, ctx), c1))

# %% Compatibility with pullback to the blowup at x
lhs = pullback(glued, center=ctx.x)
rhs = boxplus_xo(pullback(c1), c2, ctx)
print("pullback then glue vs glue then pullback:", config_distance(lhs, rhs))

# %% Isometries of the framing commute with gluing
alpha = Isometry.inclusion(2, 4)
a = isometry_act(alpha, glued)
b = boxplus_oo(isometry_act(alpha, c1), isometry_act(alpha, c2), ctx)
print("isometry square commutes:", gauge_equivalent(a, b) is not None)

# %% Orthogonal framings turn gluing into a Whitney sum of the translated factors
w = boxplus_oo(isometry_act(Isometry.inclusion(2, 4, 0), c1),
               isometry_act(Isometry.inclusion(2, 4, 2), c2), ctx)
print("Whitney sum match:", config_distance(w, whitney_sum(translate(c1, ctx.x),
                                                           translate(c2, ctx.y))))
