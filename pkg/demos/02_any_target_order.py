"""
Separable preferences can match any conjectured ranking
=======================================================

Pick whatever order over the alternatives you believe the consumer has.
A separable privacy preference exists that explains the data *and*
ranks the alternatives exactly that way whenever what is revealed is held
fixed. Here we try every one of the 24 orders on four alternatives.
"""

from itertools import permutations

from revpriv import ChoiceProblem, TargetOrder, rationalize_levelk, verify_levelk_witness
from revpriv.levelk import projection_pairs

p = ChoiceProblem.from_records(
    "xyzw",
    [("xz", "z"), ("xyz", "x"), ("wz", "w"), ("wyz", "z"), ("xw", "x"), ("xyw", "w")],
)

ok = 0
for ranking in permutations(p.alternatives):
    target = TargetOrder(ranking)
    w = rationalize_levelk(p, 1, target)
    agrees = all(target.prefers(a, b) for a, b in projection_pairs(w))
    ok += verify_levelk_witness(p, 1, target, w) and agrees
print(f"{ok} of 24 target orders are compatible with the data")
