"""
Bar constructions of finite monoids
===================================

Level n of B(X_L, A, X_R) is X_L x A^n x X_R.  For A = C2 acting trivially on
points this is the classifying space of C2, whose integral homology is
Z, Z/2, 0, Z/2, ...; replacing X_L by A itself gives a contractible space.
"""

from adhmkit.bar.complex import build_bar, check_simplicial_identities, homology
from adhmkit.bar.monoids import FiniteMonoid, MonoidModule
from adhmkit.bar.multidegree import check_support_initiality, enumerate_multidegrees, support
from adhmkit.bar.ordinals import check_cofinal_inclusion, check_initial_object, hom_count

c2 = FiniteMonoid.cyclic(2)
pt_r, pt_l = MonoidModule.point(c2, "right"), MonoidModule.point(c2, "left")

# %% Classifying space
bc = build_bar(pt_r, c2, pt_l, 6)
print("simplicial identity violations:", len(check_simplicial_identities(bc)))
print("H_*(B C2) =", ", ".join(str(g) for g in homology(bc, 5)))

# %% Free module on the left: homology of a point
free = build_bar(MonoidModule.regular(c2, "right"), c2, pt_l, 5)
print("H_*(B(C2, C2, *)) =", ", ".join(str(g) for g in homology(free, 4)))

# %% Ordinal categories
print("|Delta(1,1)| =", hom_count("Delta", 1, 1))
for flavor in ("DeltaBar", "DeltaHat"):
    rep = check_initial_object(flavor, 5)
    print(f"{flavor}: [-1] initial={rep.initial} final={rep.final}  Hom([n],[-1]) sizes {rep.hom_to_empty}")
for which in ("Delta->DeltaBar", "DeltaBar->DeltaHat"):
    rep = check_cofinal_inclusion(which, 3)
    print(which, "cofinal:", rep.passed, " witness for [1]:", rep.witnesses[1]["values"])

# %% Multidegrees and supports
mds = enumerate_multidegrees(2, 1, ("x", "y"))
print(len(mds), "multidegrees of total 2; supports:", sorted({tuple(sorted(support(m))) for m in mds}))
print("support is initial:", check_support_initiality(3, ("x", "y", "z")).passed)
