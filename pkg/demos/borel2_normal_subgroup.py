"""A noncommutative run: the upper-triangular group and its unipotent radical.

In the entries (a, b, d) of [[a, b], [0, d]] the polynomial
(a - d)^2 + (a - 1)(a - 2)(a - 4)(a - 8) is unchanged by right and left
multiplication with unipotents and vanishes at 1 and at 2 * identity.  The chain
search finds a one-dimensional variety through the identity and the post-processing
recovers a normal subgroup containing it: the unipotent matrices [[1, *], [0, 1]].
"""

from multest.corpus import SCENARIOS
from multest.models import get_model
from multest.search import Scenario, chain_search, constants, verify_bound


def main():
    borel2 = get_model("borel2")
    data = SCENARIOS["borel2-theorem4"]
    s = Scenario.build(borel2, data["poly"], data["subalgebra"], data["sigma1"], data["S"],
                       data["T"], data["D"], theorem=4)
    rep = chain_search(s)
    for step in rep.chain:
        print(f"r={step.r}  points from Sigma_{step.sigma_level}  order {step.order}"
              f"  dim {step.dim}  local dim {step.local_dim}")
    print("\ncandidate variety:", rep.extra["candidate_variety"])
    print("normal core after", rep.extra["core_rounds"], "round(s):", rep.extra["normal_core"])
    print("stabilizer conditions on (a, b, d) = (s0, s1, s2):", rep.extra["subgroup_conditions"])
    print("subgroup H:", rep.W.basis_str(), f"(dim {rep.dim}, degree {rep.deg})")
    print("normality:", rep.extra["normality"])
    print(f"cosets N = {rep.N}, tau = {rep.tau}, bound {rep.bound_lhs} <= {rep.bound_rhs}")
    print("verified:", verify_bound(rep, constants(borel2)))


if __name__ == "__main__":
    main()
