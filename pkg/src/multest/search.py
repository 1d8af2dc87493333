"""Obstruction search: ideal chains, component selection, normal core, stabilizer, bounds.

Chains follow the multiplicity-estimate construction: level r collects the
translated jets of P (order [(r-1)T/n], points of Sigma_[(r-1)S/n]) on the left
(theorems 1, 2) or the right (theorems 3, 4).  Level 1 is (P) plus the closure
ideal, so that a pair of consecutive levels with equal local dimension at the
identity always exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Sequence

from gmpy2 import mpq

from .calculus import _ideal, _resolve, partial_generators, translate_ideal
from .groebner import Ideal, ResourceError, intersect_all, saturate_poly
from .hilbert import dim_degree
from .models import (LEFT, RIGHT, DomainError, GroupModel, GroupPoint, LieSubalgebra,
                     _poly_det, get_model, random_points)
from .order import ord_direct
from .poly import Polynomial, ProjectivePoint
from .primes import minimal_primes, vanishes_at


class ScenarioError(DomainError):
    """A hypothesis of the selected theorem fails."""


class UnsupportedError(ValueError):
    """The requested quantity is outside what this package computes exactly."""


# ---- constants -------------------------------------------------------------

@dataclass(frozen=True)
class Constants:
    c5: int
    c6: int
    c7: int
    n: int
    degG: int
    c1: int
    c2: int
    c3: int
    c4: int

    def for_theorem(self, theorem: int) -> int:
        return (self.c1, self.c2, self.c3, self.c4)[theorem - 1]

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def constants(model: GroupModel) -> Constants:
    n = model.n
    degG = dim_degree(model.iG).degree
    low = model.c5 ** (2 * n) * model.c7 ** n * degG
    high = model.c5 ** (3 * n) * model.c7 ** n * degG
    return Constants(model.c5, model.c6, model.c7, n, degG, low, low, high, high)


# ---- small helpers ---------------------------------------------------------

def _identity_coords(model: GroupModel) -> tuple:
    return model.identity.projective.coords


def _components_through(I: Ideal, point: Sequence) -> list[Ideal]:
    """Minimal primes of I through ``point``, largest dimension first."""
    return list(minimal_primes(I, through=point))


def _local_dim(I: Ideal, point: Sequence) -> int:
    comps = _components_through(I, point)
    return max((dim_degree(P).dim for P in comps), default=-1)


def _boundary_form(model: GroupModel) -> Polynomial:
    """x0 times det in model coordinates: vanishes exactly off phi(G) on the closure."""
    lin = _raw_linear_forms(model)
    m = model.m
    A = [[lin[1 + i * m + j] for j in range(m)] for i in range(m)]
    return lin[0] * _poly_det(A)


def _raw_linear_forms(model: GroupModel) -> list[Polynomial]:
    """Raw coordinates (scale, then matrix entries) as linear forms in model coordinates."""
    n1 = model.nvars
    return [sum((Polynomial.variable(n1, t).scale(model.Minv[k][t]) for t in range(n1)
                 if model.Minv[k][t]), Polynomial.zero(n1)) for k in range(n1)]


def coset_ideal(W: Ideal, g: GroupPoint, side: str, model: GroupModel) -> Ideal:
    """Ideal of g*Z(W) (left) or Z(W)*g (right)."""
    return translate_ideal(W, model.point_inv(g), side, model)


def conjugate_ideal(V: Ideal, g: GroupPoint, model: GroupModel) -> Ideal:
    """Ideal of g Z(V) g^-1."""
    return translate_ideal(translate_ideal(V, g, RIGHT, model), model.point_inv(g), LEFT, model)


# ---- separators ------------------------------------------------------------

def separating_polynomial(points: Sequence[GroupPoint], W: Ideal) -> Polynomial:
    """Product of one linear form per point, vanishing there but not on Z(W)."""
    if dim_degree(W).dim <= 0:
        raise DomainError("a separating polynomial needs a positive-dimensional variety")
    nv = W.nvars
    out = Polynomial.constant(nv, 1)
    for g in points:
        c = g.projective.coords
        for e, f in combinations(range(nv), 2):
            form = (Polynomial.variable(nv, f).scale(c[e])
                    - Polynomial.variable(nv, e).scale(c[f]))
            if form and not W.contains(form):
                out = out * form
                break
        else:
            raise DomainError(f"no linear form through {g} avoids the variety")
    return out


# ---- lengths and Bezout ----------------------------------------------------

def _count_standard(lms: list[tuple], variables: list[int], below: int) -> int:
    """Monomials in ``variables`` of degree < below not divisible by any of lms."""
    count = 0
    nv = len(lms[0]) if lms else 0
    for deg in range(below):
        for combo in combinations_with_replacement(variables, deg):
            e = [0] * nv
            for v in combo:
                e[v] += 1
            if not any(all(a <= b for a, b in zip(m, e)) for m in lms):
                count += 1
    return count


def length_at_point(I: Ideal, z, model: GroupModel, max_order: int = 60) -> int:
    """Local length of the closure ring modulo I at an isolated point z."""
    pt = z.coords if isinstance(z, ProjectivePoint) else tuple(z)
    n1 = model.nvars
    k = ProjectivePoint(pt).first_nonzero
    zz = ProjectivePoint(pt).normalized(k)
    J = I + model.iG
    if not vanishes_at(J, zz):
        return 0
    shift = [Polynomial.constant(n1, 1) if i == k
             else Polynomial.variable(n1, i) + Polynomial.constant(n1, zz[i]) for i in range(n1)]
    xk = Polynomial.variable(n1, k)
    aff = Ideal([g.substitute(shift) for g in J.gens] + [xk], n1)
    others = [i for i in range(n1) if i != k]
    sat = intersect_all([saturate_poly(aff, Polynomial.variable(n1, i)) for i in others])
    origin = [0] * n1
    if all(not g.evaluate(origin) for g in sat.gens):
        raise UnsupportedError(f"{ProjectivePoint(pt)} is not isolated; "
                               "lengths along positive-dimensional components are not computed")
    prev = None
    for order in range(1, max_order + 1):
        power = [Polynomial.monomial(n1, _exps(n1, combo))
                 for combo in combinations_with_replacement(others, order)]
        gb = Ideal(list(aff.gens) + power, n1).gb()
        cnt = _count_standard(gb.leading_monomials(), others, order)
        if cnt == prev:
            return cnt
        prev = cnt
    raise ResourceError("length computation did not stabilize")


def _exps(n: int, combo) -> tuple:
    e = [0] * n
    for v in combo:
        e[v] += 1
    return tuple(e)


@dataclass
class BezoutReport:
    lhs: int
    rhs: int
    supported: bool
    points: list = field(default_factory=list)   # (prime ideal text, length, degree)
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.supported and self.lhs <= self.rhs

    def as_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "supported": self.supported,
                "holds": self.holds, "note": self.note,
                "points": [{"ideal": p, "length": l, "degree": d} for p, l, d in self.points]}


def bezout_check(J: Ideal, model: GroupModel, D: int | None = None) -> BezoutReport:
    """Sum of length times degree over points meeting phi(G), against D^n deg(closure)."""
    D = J.max_degree() if D is None else D
    if J.max_degree() > D:
        raise DomainError(f"generators of degree {J.max_degree()} exceed D = {D}")
    K = J + model.iG
    hd = dim_degree(K)
    degG = dim_degree(model.iG).degree
    if hd.dim > 0:
        return BezoutReport(0, 0, False, note=f"zero set has dimension {hd.dim}")
    rhs = D ** model.n * degG
    if hd.dim < 0:
        return BezoutReport(0, rhs, True, note="empty intersection")
    total = hd.degree
    boundary = _boundary_form(model)
    pts = []
    lhs = 0
    for Z in minimal_primes(K):
        if Z.contains(boundary):
            continue
        rest = intersect_all([saturate_poly(K, g) for g in Z.gens])
        rd = dim_degree(rest)
        rest_deg = rd.degree if rd.dim == 0 else 0
        zdeg = dim_degree(Z).degree
        contrib = total - rest_deg
        pts.append((" , ".join(Z.basis_str()), contrib // zdeg, zdeg))
        lhs += contrib
    return BezoutReport(lhs, rhs, True, pts)


# ---- tau, cosets -----------------------------------------------------------

def orbit_ideal(b: LieSubalgebra, model: GroupModel) -> Ideal:
    """Closure ideal of the subgroup integrating b (orbit through the identity)."""
    from .models import orbit_closure
    if b.orbit is None:
        raise UnsupportedError(f"subalgebra {b.name} has no algebraic orbit data")
    n1 = model.nvars
    nv = n1 + b.nparams + 1
    pos = [n1 + i for i in range(b.nparams)]
    A = [[e.embed(nv, pos) if e.nvars else Polynomial.constant(nv, e.constant_term())
          for e in row] for row in b.orbit]
    return orbit_closure(model, A, b.nparams)


def tau(W: Ideal, b, model: GroupModel) -> int:
    """dim B minus the local dimension at the identity of Z(W) meet the closure of B."""
    b = _resolve(model, b)
    one = _identity_coords(model)
    if not vanishes_at(W, one):
        raise DomainError("the identity is not on the variety")
    O = orbit_ideal(b, model)
    e = _local_dim(W + O, one)
    return b.d - e


def coset_count(W: Ideal, points: Sequence[GroupPoint], side: str, model: GroupModel) -> int:
    seen: list[Ideal] = []
    for g in points:
        C = coset_ideal(W, g, side, model)
        if not any(C == K for K in seen):
            seen.append(C)
    return len(seen)


# ---- normal core and stabilizer -------------------------------------------

def _symbolic_conjugation(model: GroupModel) -> list[Polynomial]:
    """Coordinates of g x g^-1 with g generic: ring is x, then the free entries of g."""
    n1, n = model.nvars, model.n
    nv = n1 + n
    xs = [Polynomial.variable(nv, i) for i in range(n1)]
    g = model.generic_phi(nv, n1)
    ginv = model.generic_phi_inverse(nv, n1)
    inner = [p.substitute(xs + ginv) for p in model.chartsR[0].polys]
    return [p.substitute(g + inner) for p in model.chartsL[0].polys]


def _symbolic_right(model: GroupModel) -> list[Polynomial]:
    n1, n = model.nvars, model.n
    nv = n1 + n
    xs = [Polynomial.variable(nv, i) for i in range(n1)]
    return [p.substitute(xs + model.generic_phi(nv, n1)) for p in model.chartsR[0].polys]


def _split_parameters(F: Polynomial, n1: int) -> dict:
    """Group the terms of F by their monomial in the trailing parameter variables."""
    out: dict = {}
    for m, c in F.terms.items():
        out.setdefault(m[n1:], {})[m[:n1]] = c
    return {k: Polynomial(n1, t) for k, t in out.items()}


def conjugation_invariant(W: Ideal, model: GroupModel) -> bool:
    """Exact check that g Z(W) g^-1 is inside Z(W) for a generic group element g."""
    conj = _symbolic_conjugation(model)
    n1 = model.nvars
    for f in W.gb().polys:
        F = f.substitute(conj)
        if any(not W.contains(part) for part in _split_parameters(F, n1).values()):
            return False
    return True


@dataclass
class CoreResult:
    ideal: Ideal
    rounds: int
    invariance: str        # "certified" or "unverified-invariance"


def _top_component(I: Ideal, point: Sequence) -> Ideal:
    comps = _components_through(I, point)
    if not comps:
        raise DomainError("no component through the identity")
    return max(comps, key=lambda P: dim_degree(P).dim)


def normal_core(V: Ideal, model: GroupModel, rounds: int = 4, per_round: int = 3,
                seed: int = 0, certify: bool = True) -> CoreResult:
    """Component through 1 of the intersection of the conjugates of Z(V)."""
    one = _identity_coords(model)
    if not vanishes_at(V, one):
        raise DomainError("the identity is not on V")
    pts = random_points(model, rounds * per_round, seed)
    core = V
    W = _top_component(core, one)
    quiet = 0
    for r in range(rounds):
        batch = pts[r * per_round:(r + 1) * per_round]
        for g in batch:
            core = core + conjugate_ideal(W, g, model)
        W_new = _top_component(core, one)
        if W_new == W:
            quiet += 1
            if quiet >= 1 and (not certify or conjugation_invariant(W, model)):
                return CoreResult(W, r + 1, "certified" if certify else "unverified-invariance")
        else:
            quiet = 0
        W = core = W_new
    if not certify and quiet:
        return CoreResult(W, rounds, "unverified-invariance")
    err = ResourceError("normal core did not stabilize within the sample budget")
    err.partial = CoreResult(W, rounds, "unverified-invariance")
    raise err


@dataclass
class SubgroupData:
    ideal: Ideal
    dim: int
    degree: int
    conditions: list            # polynomials in the free entries describing {h : Wh in W}
    samples_checked: int


def _homogenize_conditions(conds: list[Polynomial], model: GroupModel) -> list[Polynomial]:
    lin = _raw_linear_forms(model)
    m = model.m
    entry = [lin[1 + i * m + j] for i, j in model.free]
    out = []
    for c in conds:
        e = c.degree
        acc = Polynomial.zero(model.nvars)
        for mono, coef in c.terms.items():
            term = lin[0] ** (e - sum(mono))
            for t, k in enumerate(mono):
                if k:
                    term = term * entry[t] ** k
            acc = acc + term.scale(coef)
        out.append(acc)
    return out


def _subgroup_samples(model: GroupModel, H: Ideal, seed: int) -> list[GroupPoint]:
    """Rational points of Z(H) found among one-parameter orbits and random points."""
    found = [model.identity]
    cands = random_points(model, 12, seed)
    for name in model.subalgebra_names:
        b = model.subalgebra(name)
        if b.orbit is None:
            continue
        for v in (2, -1, 3):
            vals = [mpq(v + i) for i in range(b.nparams)]
            try:
                A = [[e.evaluate(vals) if e.nvars else e.constant_term() for e in row]
                     for row in b.orbit]
                cands.append(model.point_from_matrix(A))
            except (DomainError, ZeroDivisionError):
                continue
    for g in cands:
        if g not in found and vanishes_at(H, g.projective.coords):
            found.append(g)
    return found


def stabilizer(W: Ideal, model: GroupModel, seed: int = 0) -> SubgroupData:
    """Identity component of {h : Z(W) h = Z(W)} as a closure ideal."""
    n1, n = model.nvars, model.n
    right = _symbolic_right(model)
    rows: dict = {}
    for f in W.gb().polys:
        F = f.substitute(right)
        for pm, part in _split_parameters(F, n1).items():
            for xm, c in W.reduce(part).terms.items():
                rows.setdefault((f.canonical(), xm), {})[pm] = c
    conds = sorted({Polynomial(n, t).monic() for t in rows.values()}, key=lambda p: p.to_str())
    hom = _homogenize_conditions(conds, model)
    I = Ideal(hom + list(model.iG.gens), n1)
    lin = _raw_linear_forms(model)
    I = saturate_poly(I, lin[0])
    I = saturate_poly(I, _boundary_form(model))
    H = _top_component(I, _identity_coords(model))
    samples = _subgroup_samples(model, H, seed)
    for h in samples:
        if translate_ideal(W, h, RIGHT, model) != W:
            raise DomainError(f"stabilizer sample {h} does not preserve the variety")
    hd = dim_degree(H)
    return SubgroupData(H, hd.dim, hd.degree, conds, len(samples))


# ---- scenarios and the chain ----------------------------------------------

@dataclass
class Scenario:
    model: GroupModel
    P: Polynomial
    b: LieSubalgebra
    sigma1: list
    S: int
    T: int
    D: int
    theorem: int
    d0: int | None = None
    seed: int = 0

    @classmethod
    def build(cls, model, P, b, sigma1, S, T, D=None, theorem=2, d0=None, seed=0):
        model = get_model(model) if isinstance(model, str) else model
        if isinstance(P, str):
            from .poly import parse_poly
            P = parse_poly(P, model.nvars)
        b = _resolve(model, b)
        pts = [g if isinstance(g, GroupPoint) else model.parse_point(g) for g in sigma1]
        D = P.degree if D is None else D
        return cls(model, P, b, pts, S, T, D, theorem, d0, seed)


def check_hypotheses(s: Scenario) -> list[GroupPoint]:
    """Raise ScenarioError on the first failed hypothesis; return Sigma_S."""
    model = s.model
    if s.theorem not in (1, 2, 3, 4):
        raise ScenarioError(f"theorem must be 1..4, got {s.theorem}")
    if s.S < 0 or s.T < 0:
        raise ScenarioError("S and T must be nonnegative")
    if not s.P or not s.P.is_homogeneous():
        raise ScenarioError("P must be a nonzero homogeneous polynomial")
    if s.P.degree != s.D:
        raise ScenarioError(f"D = {s.D} differs from deg P = {s.P.degree}")
    if model.iG.contains(s.P):
        raise ScenarioError("P vanishes on the whole group closure")
    if model.identity not in s.sigma1:
        raise ScenarioError("the point set must contain the identity")
    if s.theorem in (1, 3):
        if s.d0 is None or not 1 <= s.d0 <= model.n:
            raise ScenarioError(f"d0 must lie in 1..{model.n}")
        k = len(set(s.sigma1)) - 1
        if sum(k ** i for i in range(s.S + 1)) > s.D:
            raise ScenarioError("the point count condition sum (|Sigma1|-1)^i <= D fails")
    if s.theorem in (3, 4):
        bad = [g for g in s.sigma1 if not model.ad_stable(g, s.b)]
        if bad:
            raise ScenarioError(f"Ad({bad[0]}) does not preserve {s.b.name}")
    sigma_S = model.sigma_generate(s.sigma1, s.S)
    for g in sigma_S:
        o = ord_direct(g, s.b, s.P, model, tmax=s.T)
        if not o.exceeds(s.T):
            raise ScenarioError(f"order of P at {g} is {o}, below T+1 = {s.T + 1}")
    return sigma_S


@dataclass
class ChainStep:
    r: int
    sigma_level: int
    order: int
    generators: int
    max_degree: int
    dim: int
    local_dim: int
    separators: int = 0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class ObstructionReport:
    theorem: int
    W: Ideal
    dim: int
    deg: int
    contains_identity: bool
    inside_ZP: bool
    N: int
    tau: int
    bound_lhs: int
    bound_rhs: int
    chain: list
    r0: int
    T: int
    D: int
    n: int
    coset_degrees: list
    conclusions: dict
    length_check: tuple | None = None      # (binomial, length) when the variety is a point
    chain_ideal: Ideal | None = None
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.conclusions.values()) and self.bound_lhs <= self.bound_rhs

    def as_dict(self) -> dict:
        out = {
            "theorem": self.theorem,
            "variety": self.W.basis_str(),
            "dim": self.dim, "deg": self.deg,
            "contains_identity": self.contains_identity,
            "inside_zero_set_of_P": self.inside_ZP,
            "coset_count": self.N, "tau": self.tau,
            "bound_lhs": self.bound_lhs, "bound_rhs": self.bound_rhs,
            "r0": self.r0,
            "chain": [c.as_dict() for c in self.chain],
            "coset_degrees": self.coset_degrees,
            "conclusions": dict(self.conclusions),
            "length_check": list(self.length_check) if self.length_check else None,
        }
        out.update(self.extra)
        return out


def _level_ideal(s: Scenario, side: str, sigma: list, order: int, separators: list) -> tuple:
    gens = []
    for g in sigma:
        gens.extend(partial_generators(Ideal([s.P], s.model.nvars), g, order, side, s.model, s.b))
    jet_max = max((p.degree for p in gens if p), default=0)
    for Q in separators:
        for g in sigma:
            gens.extend(partial_generators(Ideal([Q], s.model.nvars), g, order, side,
                                           s.model, s.b))
    return _ideal(gens, s.model), jet_max


def _separators_for(I_star: Ideal, sigma_S: list, T: int) -> list[Polynomial]:
    top = dim_degree(I_star).dim
    comps = [P for P in minimal_primes(I_star) if dim_degree(P).dim == top]
    return [separating_polynomial(sigma_S, P) ** (T + 1) for P in comps]


def build_chain(s: Scenario, sigma_S: list | None = None) -> tuple[list[Ideal], list[ChainStep]]:
    """Levels r = 1..n+1 with their local dimensions at the identity."""
    model = s.model
    n = model.n
    side = LEFT if s.theorem in (1, 2) else RIGHT
    sigma_S = sigma_S if sigma_S is not None else model.sigma_generate(s.sigma1, s.S)
    one = _identity_coords(model)
    forcing = s.theorem in (1, 3)
    levels: list[Ideal] = []
    steps: list[ChainStep] = []
    separators: list[Polynomial] = []
    for r in range(1, n + 2):
        lev = (r - 1) * s.S // n
        order = (r - 1) * s.T // n
        sigma = model.sigma_generate(s.sigma1, lev)
        I, jet_max = _level_ideal(s, side, sigma, order, separators)
        added = 0
        if forcing and r >= 2:
            prev_dim = dim_degree(levels[-1]).dim
            cur_dim = dim_degree(I).dim
            if cur_dim == prev_dim and cur_dim > 0 and s.d0 <= n - r:
                new = _separators_for(I, sigma_S, s.T)
                separators.extend(new)
                added = len(new)
                I = I + Ideal(new, model.nvars)
        if not vanishes_at(I, one):
            raise ScenarioError(f"chain level {r} does not vanish at the identity")
        levels.append(I)
        steps.append(ChainStep(r, lev, order, len(I.gens), jet_max,
                               dim_degree(I).dim, _local_dim(I, one), added))
    return levels, steps


def _select(levels: list[Ideal], steps: list[ChainStep], s: Scenario) -> tuple[int, Ideal]:
    """First r0 with equal local dimensions; the shared top component through 1."""
    one = _identity_coords(s.model)
    for i in range(len(levels) - 1):
        a, b = steps[i], steps[i + 1]
        if a.local_dim != b.local_dim:
            continue
        if s.theorem in (1, 3) and a.local_dim > s.d0:
            continue
        lower = _components_through(levels[i], one)
        for W in _components_through(levels[i + 1], one):
            if dim_degree(W).dim == b.local_dim and any(W == V for V in lower):
                return a.r, W
    raise ScenarioError("no pair of chain levels with equal local dimension")


def chain_search(s: Scenario) -> ObstructionReport:
    model = s.model
    sigma_S = check_hypotheses(s)
    levels, steps = build_chain(s, sigma_S)
    r0, V = _select(levels, steps, s)
    n = model.n
    one = _identity_coords(model)
    consts = constants(model)
    short = model.sigma_generate(s.sigma1, s.S // n)
    extra: dict = {}
    if s.theorem in (1, 2):
        W, side = V, LEFT
        obstruction = W
    else:
        core = normal_core(V, model, seed=s.seed)
        sub = stabilizer(core.ideal, model, seed=s.seed)
        W, side = sub.ideal, RIGHT
        obstruction = W
        witnesses = random_points(model, 3, s.seed + 1)
        normal_random = all(conjugate_ideal(W, g, model) == W for g in witnesses)
        extra = {
            "candidate_variety": V.basis_str(),
            "normal_core": core.ideal.basis_str(),
            "core_rounds": core.rounds,
            "invariance": core.invariance,
            "subgroup_conditions": [c.to_str([f"s{i}" for i in range(n)]) for c in sub.conditions],
            "stabilizer_samples": sub.samples_checked,
        }
        extra["normality"] = ("certified" if normal_random and conjugation_invariant(W, model)
                              else "unverified-invariance")
    hd = dim_degree(obstruction)
    t = tau(obstruction, s.b, model)
    N = coset_count(obstruction, short, side, model)
    coset_degrees = [dim_degree(coset_ideal(obstruction, g, side, model)).degree for g in short]
    lhs = N * comb(s.T // n + t, t) * hd.degree
    rhs = consts.for_theorem(s.theorem) * s.D ** (n - hd.dim)
    conclusions = {
        "identity_on_variety": vanishes_at(obstruction, one),
        "inside_zero_set_of_P": obstruction.contains(s.P),
        "bound": lhs <= rhs,
    }
    if s.theorem in (1, 3):
        conclusions["dimension_at_most_d0"] = hd.dim <= s.d0
    if s.theorem in (3, 4):
        conclusions["normal_subgroup"] = extra["normality"] == "certified"
    length_check = None
    if hd.dim == 0:
        try:
            length_check = (comb(t + s.T // n, t), length_at_point(levels[r0 - 1], one, model))
        except UnsupportedError:
            length_check = None
    return ObstructionReport(s.theorem, obstruction, hd.dim, hd.degree,
                             conclusions["identity_on_variety"],
                             conclusions["inside_zero_set_of_P"], N, t, lhs, rhs, steps, r0,
                             s.T, s.D, n, coset_degrees, conclusions, length_check,
                             levels[r0 - 1], extra)


def verify_bound(report: ObstructionReport, consts: Constants) -> bool:
    """Recompute the conclusion-(iv) inequality and its two supporting sub-checks."""
    n = report.n
    lhs = report.N * comb(report.T // n + report.tau, report.tau) * report.deg
    rhs = consts.for_theorem(report.theorem) * report.D ** (n - report.dim)
    if lhs != report.bound_lhs or rhs != report.bound_rhs or lhs > rhs:
        return False
    if any(d != report.deg for d in report.coset_degrees):
        return False
    if report.length_check is not None:
        binom_part, length = report.length_check
        if binom_part > length:
            return False
    return True
