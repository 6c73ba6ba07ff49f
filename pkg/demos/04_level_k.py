"""
Higher-order privacy concerns
=============================

A level-2 consumer worries about what the observer infers about their
level-1 privacy preferences. The objects being ranked become nested; this
script prints a few of them and checks that every level up to 3 still
rationalizes arbitrary data.
"""

from revpriv import ChoiceProblem, TargetOrder, rationalize_levelk, t_level, verify_levelk_witness

menu = {"x", "y", "z"}
for k in range(3):
    inferred = sorted(str(a) + " > " + str(b) for a, b in t_level(k, menu, "x"))
    print(f"level {k}: choosing x from {{x,y,z}} reveals")
    for line in inferred:
        print("   ", line)

p = ChoiceProblem.from_records("xyz", [("xy", "x"), ("yz", "y"), ("xz", "z"), ("xyz", "y")])
target = TargetOrder.parse("z>y>x")
for k in (1, 2, 3):
    w = rationalize_levelk(p, k, target)
    print(f"k={k}: {len(w.order)} ranked objects, verified={verify_levelk_witness(p, k, target, w)}")
