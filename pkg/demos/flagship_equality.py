"""Where the multiplicity bound is sharp: a quartic tangent to the identity of Gm.

P = (x1 - x0)^4 vanishes to order exactly 4 at the identity [1:1] of the torus.
Asking for order > 3 at every point of Sigma_1 = {1} forces the obstruction to be
the identity point itself, and the bound N * binom(T + tau, tau) * deg <= c * D
is met with equality: 1 * 4 * 1 = 4.
"""

from multest.models import get_model
from multest.order import ord_direct
from multest.search import Scenario, chain_search, constants, verify_bound


def main():
    gm = get_model("gm")
    s = Scenario.build(gm, "(x1-x0)^4", "full", [1], S=1, T=3, D=4, theorem=2)
    print("order at the identity:", ord_direct(gm.identity, "full", s.P, gm))

    rep = chain_search(s)
    print("\nchain levels")
    for step in rep.chain:
        print(f"  r={step.r}  order={step.order}  dim={step.dim}  local dim at 1={step.local_dim}")
    print("\nobstruction W =", rep.W.basis_str(), f"(dim {rep.dim}, degree {rep.deg})")
    print(f"cosets N = {rep.N}, tau = {rep.tau}")
    print(f"bound: {rep.bound_lhs} <= {rep.bound_rhs}")
    print("verified:", verify_bound(rep, constants(gm)))
    if rep.length_check:
        binom, length = rep.length_check
        print(f"local length of the chain ideal at 1: {length} (needs >= {binom})")


if __name__ == "__main__":
    main()
