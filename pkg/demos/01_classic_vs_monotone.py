"""
Classical revealed preference vs. a privacy-aware consumer
==========================================================

Three pairwise choices that go around in a circle cannot come from any
ranking of the alternatives. Once the consumer also cares about what each
choice tells an observer, the same data is easy to explain.
"""

from revpriv import ChoiceProblem, classic_rationalizable, rationalize_monotone, verify_monotone_witness

p = ChoiceProblem.from_records("xyz", [("xy", "x"), ("yz", "y"), ("xz", "z")])

# %% The classical test finds a revealed cycle
res = classic_rationalizable(p)
print("classically rationalizable:", res.rationalizable)
print("revealed cycle:", " > ".join(res.cycle))

# %% A monotone privacy preference that explains everything
w = rationalize_monotone(p)
print("monotone witness verified:", verify_monotone_witness(p, w))
for rank, v in enumerate(w.order.ranking):
    print(f"  {rank:2d}  {v}")
