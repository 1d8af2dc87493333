"""Translating ideals around a group and watching the zero sets move.

A point ideal of Gm moves by g^-1 under left translation, composing translations
multiplies the group elements, and jets of order T of a multiple root peel off
one factor per derivative.
"""

from multest.calculus import interesting_part, jet_ideal, translate_ideal
from multest.groebner import Ideal
from multest.models import LEFT, get_model
from multest.poly import parse_poly


def main():
    gm = get_model("gm")
    one = Ideal([parse_poly("x1-x0", 2)], 2)
    for c in (2, 3, 6):
        print(f"identity point translated by {c}:", translate_ideal(one, gm.point(c), LEFT, gm))
    twice = translate_ideal(translate_ideal(one, gm.point(2), LEFT, gm), gm.point(3), LEFT, gm)
    print("by 2 then by 3:", twice)

    I = Ideal([parse_poly("(x1-x0)^3", 2)], 2)
    for T in range(4):
        print(f"jet ideal of order {T} of (x1-x0)^3:", jet_ideal(I, T, "E", gm))

    messy = Ideal([parse_poly("(x1-x0)^2", 2), parse_poly("x1*(x1-x0)", 2)], 2)
    print("\nthe part of", messy, "that sees points:", interesting_part(messy))


if __name__ == "__main__":
    main()
