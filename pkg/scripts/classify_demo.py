"""Classify a gallery of signatures and decide set-level dichotomies.

Prints the per-signature class table for a few interesting signatures, then
the framework verdicts for signature sets around the gcd >= 5 boundary.

Usage: python scripts/classify_demo.py
"""

from planar_holant.algebra import ZETA
from planar_holant.sigcalc import sig, equality, exact_one, transform, Z
from planar_holant.classify import (
    classify_signature, dichotomy_single, dichotomy_plholant_set,
)

GALLERY = [
    ("Equality_3", equality(3)),
    ("ExactOne_4", exact_one(4)),
    ("[1,2,1]", sig([1, 2, 1])),
    ("[1,a,-a^2]", sig([1, ZETA, -(ZETA ** 2)])),
    ("[0,0,1,0,0]", sig([0, 0, 1, 0, 0])),
    ("Z(=_5)", transform(Z, equality(5))),
]


def main():
    classes = ["P", "A", "Adagger", "Matchgate", "Mhat", "MhatDagger",
               "P2", "Vplus", "Vminus"]
    print("%-12s %s" % ("signature", " ".join("%-9s" % c for c in classes)))
    for name, f in GALLERY:
        row = " ".join("%-9s" % ("yes" if classify_signature(f)[c] else "-")
                       for c in classes)
        print("%-12s %s" % (name, row))
    print()
    for name, f in GALLERY:
        if f.arity < 3:
            continue
        v = dichotomy_single(f)
        tag = "Tractable(%s)" % v.case if v.tractable \
            else "PHard"
        print("single %-12s -> %s" % (name, tag))
    print()
    sets = [
        ("{Z(=_5), Z(ExactOne_3)}",
         [transform(Z, equality(5)), transform(Z, exact_one(3))]),
        ("{Z(=_4), Z(ExactOne_3)}",
         [transform(Z, equality(4)), transform(Z, exact_one(3))]),
        ("{Equality_3, [1,2,4]}", [equality(3), sig([1, 2, 4])]),
    ]
    for name, F in sets:
        v = dichotomy_plholant_set(F)
        tag = "Tractable(%s)" % v.case if v.tractable else "PHard"
        print("set %-26s -> %s" % (name, tag))


if __name__ == "__main__":
    main()
