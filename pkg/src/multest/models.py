"""Compactified matrix groups: embedding, translation charts, invariant derivations.

A matrix group of size m is embedded in projective space of dimension m*m by
A -> [1 : a11 : a12 : ... : amm], followed by a fixed linear change of
coordinates that makes every coordinate of the identity nonzero.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Sequence

from gmpy2 import mpq

from . import linalg
from .groebner import Ideal, eliminate
from .poly import (BiPolynomial, DimensionError, Polynomial, ProjectivePoint, Scalar,
                   parse_poly, to_scalar)


class ModelError(ValueError):
    """Model construction failed."""


class ValidationError(ModelError):
    def __init__(self, check: str, message: str):
        super().__init__(f"check ({check}) failed: {message}")
        self.check = check


class DomainError(ValueError):
    """Point outside the group (e.g. singular matrix)."""


class StabilityError(ValueError):
    """Adjoint word transform requested for a non-stable subalgebra."""


LEFT, RIGHT = "L", "R"


@dataclass(frozen=True)
class Chart:
    side: str
    polys: tuple[BiPolynomial, ...]

    @property
    def bidegree(self) -> tuple[int, int]:
        degs = {p.bidegree for p in self.polys if p}
        return degs.pop() if len(degs) == 1 else (0, 0)

    def evaluate(self, a: Sequence, b: Sequence) -> list[Scalar]:
        pt = list(a) + list(b)
        return [p.evaluate(pt) for p in self.polys]

    def substitute(self, images: Sequence[Polynomial]) -> list[Polynomial]:
        return [p.substitute(images) for p in self.polys]


@dataclass(frozen=True, eq=False)
class GroupPoint:
    """Group element: its matrix (affine coordinates) and its image in projective space."""

    projective: ProjectivePoint
    affine: tuple[tuple[Scalar, ...], ...]

    def __eq__(self, other):
        return isinstance(other, GroupPoint) and self.affine == other.affine

    def __hash__(self):
        return hash(self.affine)

    @property
    def chart_index(self) -> int:
        return self.projective.first_nonzero

    def normalized(self) -> tuple:
        """Coordinates scaled so that the chart coordinate equals 1."""
        return self.projective.normalized(self.chart_index)

    def sort_key(self):
        return tuple(v for row in self.affine for v in row)

    def __str__(self):
        if len(self.affine) == 1:
            return _num(self.affine[0][0])
        return "[" + ",".join("[" + ",".join(_num(v) for v in r) + "]" for r in self.affine) + "]"

    __repr__ = __str__


def _num(v) -> str:
    v = to_scalar(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


@dataclass(frozen=True)
class DerivationWord:
    """PBW word D1^t1 ... Dd^td in a chosen basis of a subalgebra."""

    exponents: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.exponents)

    @property
    def d(self) -> int:
        return len(self.exponents)

    def letters(self) -> tuple[int, ...]:
        return tuple(i for i, t in enumerate(self.exponents) for _ in range(t))

    def __str__(self):
        parts = [f"D{i + 1}" + (f"^{t}" if t > 1 else "") for i, t in enumerate(self.exponents) if t]
        return "*".join(parts) or "1"


@dataclass
class LieAlgebraData:
    d_full: int
    matrices: list            # basis matrices of the Lie algebra
    names: list[str]
    q_tables: dict            # (j, k) -> tuple of N+1 Polynomials
    structure: list           # structure[i][j] = coordinates of [X_i, X_j]

    def bracket(self, u: Sequence, v: Sequence) -> list:
        out = [mpq(0)] * self.d_full
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b:
                    c = a * b
                    out = [o + c * s for o, s in zip(out, self.structure[i][j])]
        return out


@dataclass
class LieSubalgebra:
    name: str
    basis: tuple[tuple[Scalar, ...], ...]
    structure: list = field(repr=False)        # brackets in the subalgebra's own basis
    orbit: tuple | None = field(default=None, repr=False)   # matrix of Polynomials in parameters
    nparams: int = 0

    @property
    def d(self) -> int:
        return len(self.basis)


class GroupModel:
    """Compactified matrix group with translation charts and derivation tables."""

    def __init__(self, name: str, matrix_size: int, free_entries: Sequence[tuple[int, int]],
                 lie_basis: Sequence, coordinate_change=None, subalgebras: dict | None = None,
                 q_tables: dict | None = None):
        self.name = name
        self.m = m = matrix_size
        self.free = tuple(tuple(e) for e in free_entries)
        if any(not (0 <= i < m and 0 <= j < m) for i, j in self.free):
            raise ModelError("free entry outside the matrix")
        if not all((i, i) in self.free for i in range(m)):
            raise ModelError("diagonal entries must be free")
        self.n = len(self.free)
        self.N = m * m
        raw_identity = [mpq(1)] + linalg.flatten(linalg.identity(m))
        if coordinate_change is None:
            coordinate_change = linalg.identity(self.N + 1)
            if any(v == 0 for v in raw_identity):
                for k in range(1, self.N + 1):
                    coordinate_change[k][0] = mpq(1)
        self.M = linalg.mat(coordinate_change)
        try:
            self.Minv = linalg.inverse(self.M)
        except ZeroDivisionError:
            raise ModelError("coordinate change is singular") from None
        if any(v == 0 for v in linalg.matvec(self.M, raw_identity)):
            raise ModelError("identity has a zero coordinate after the coordinate change")
        self.identity = self.point_from_matrix(linalg.identity(m))
        self.iG = self._closure_ideal()
        self.c7 = max(1, self.iG.max_degree())
        self.chartsL, self.chartsR = self._build_charts()
        self.c5 = self.chartsL[0].bidegree[0]
        self.lie = self._build_lie(lie_basis, q_tables)
        self.c6 = 2
        if q_tables:
            self.c6 = max(2, max(p.degree for qs in self.lie.q_tables.values() for p in qs))
        self._subalgebras: dict[str, LieSubalgebra] = {}
        for key, spec in (subalgebras or {}).items():
            self._subalgebras[key] = self.make_subalgebra(spec["basis"], spec.get("orbit"), key)

    def __repr__(self):
        return f"GroupModel({self.name!r}, n={self.n}, N={self.N})"

    # ---- points -------------------------------------------------------
    @property
    def nvars(self) -> int:
        return self.N + 1

    def _raw(self, A) -> list:
        return [mpq(1)] + linalg.flatten(A)

    def point_from_matrix(self, A) -> GroupPoint:
        A = linalg.mat(A)
        if len(A) != self.m or any(len(r) != self.m for r in A):
            raise DomainError(f"expected a {self.m}x{self.m} matrix")
        for i in range(self.m):
            for j in range(self.m):
                if A[i][j] and (i, j) not in self.free:
                    raise DomainError(f"entry ({i},{j}) must vanish in {self.name}")
        if linalg.det(A) == 0:
            raise DomainError("singular matrix")
        proj = ProjectivePoint(linalg.matvec(self.M, self._raw(A)))
        return GroupPoint(proj, tuple(tuple(r) for r in A))

    def point(self, *params) -> GroupPoint:
        """Group element from its free entries (row-major order)."""
        if len(params) == 1 and isinstance(params[0], (list, tuple)):
            params = tuple(params[0])
        if len(params) != self.n:
            raise DomainError(f"{self.name} takes {self.n} parameters")
        A = [[mpq(0)] * self.m for _ in range(self.m)]
        for (i, j), v in zip(self.free, params):
            A[i][j] = to_scalar(v)
        return self.point_from_matrix(A)

    def parse_point(self, value) -> GroupPoint:
        """Accept a scalar (1x1 groups), a parameter list, or a full matrix."""
        if isinstance(value, str):
            value = json.loads(value) if value.strip().startswith("[") else to_scalar(value)
        if isinstance(value, (list, tuple)) and value and isinstance(value[0], (list, tuple)):
            return self.point_from_matrix(value)
        if isinstance(value, (list, tuple)):
            return self.point(*value)
        return self.point(value)

    def params(self, g: GroupPoint) -> list:
        return [g.affine[i][j] for i, j in self.free]

    def point_mul(self, g: GroupPoint, h: GroupPoint) -> GroupPoint:
        return self.point_from_matrix(linalg.matmul(g.affine, h.affine))

    def point_inv(self, g: GroupPoint) -> GroupPoint:
        return self.point_from_matrix(linalg.inverse(g.affine))

    def chart_index(self, g: GroupPoint) -> int:
        return g.chart_index

    def sigma_generate(self, sigma1: Sequence[GroupPoint], S: int) -> list[GroupPoint]:
        """All products of S elements of sigma1 (which must contain 1)."""
        if self.identity not in sigma1:
            raise DomainError("the generating set must contain the identity")
        gens = list(dict.fromkeys(sigma1))
        cur = [self.identity]
        seen = {self.identity}
        for _ in range(S):
            nxt = list(cur)
            for a in cur:
                for b in gens:
                    c = self.point_mul(a, b)
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            cur = nxt
        return cur

    # ---- symbolic points -------------------------------------------
    def _param_matrix(self, nvars: int, offset: int) -> list[list[Polynomial]]:
        A = [[Polynomial.zero(nvars) for _ in range(self.m)] for _ in range(self.m)]
        for t, (i, j) in enumerate(self.free):
            A[i][j] = Polynomial.variable(nvars, offset + t)
        return A

    def embed_matrix(self, A: Sequence[Sequence[Polynomial]], scale: Polynomial | None = None
                     ) -> list[Polynomial]:
        """Homogeneous coordinates of a polynomial matrix, first raw coordinate ``scale``."""
        nv = A[0][0].nvars
        raw = [scale if scale is not None else Polynomial.constant(nv, 1)]
        raw += [e for row in A for e in row]
        return [sum((raw[t].scale(self.M[k][t]) for t in range(len(raw)) if self.M[k][t]),
                    Polynomial.zero(nv)) for k in range(self.nvars)]

    def generic_phi(self, nvars: int, offset: int) -> list[Polynomial]:
        """phi(g) with the free entries of g the variables offset, offset+1, ..."""
        return self.embed_matrix(self._param_matrix(nvars, offset))

    def generic_det(self, nvars: int, offset: int) -> Polynomial:
        return _poly_det(self._param_matrix(nvars, offset))

    def generic_phi_inverse(self, nvars: int, offset: int) -> list[Polynomial]:
        """Coordinates proportional to phi(g^-1): [det : adjugate entries]."""
        A = self._param_matrix(nvars, offset)
        return self.embed_matrix(_poly_adjugate(A), _poly_det(A))

    # ---- closure, charts, Lie algebra -------------------------------
    def _closure_ideal(self) -> Ideal:
        return orbit_closure(self, self._param_matrix(self.nvars + self.n + 1, self.nvars),
                             self.n)

    def _build_charts(self):
        n1 = self.nvars
        nv = 2 * n1
        x = [Polynomial.variable(nv, i) for i in range(n1)]
        y = [Polynomial.variable(nv, n1 + i) for i in range(n1)]
        m = self.m

        def ent(v, i, j):
            return v[1 + i * m + j]

        prod = [sum((ent(x, i, t) * ent(y, t, j) for t in range(m)), Polynomial.zero(nv))
                for i in range(m) for j in range(m)]
        rawL = [BiPolynomial(nv, p.terms) for p in [y[0]] + prod]
        rawR = [BiPolynomial(nv, p.terms) for p in [x[0]] + prod]
        xp = Polynomial.variable(n1, 0)
        charts = pad_charts([(LEFT, rawL), (RIGHT, rawR)], [(xp, xp), (xp, xp)])
        # conjugate by the coordinate change: T'(x, y) = M T(M^-1 x, M^-1 y)
        images = [sum((x[t].scale(self.Minv[k][t]) for t in range(n1) if self.Minv[k][t]),
                      Polynomial.zero(nv)) for k in range(n1)]
        images += [sum((y[t].scale(self.Minv[k][t]) for t in range(n1) if self.Minv[k][t]),
                       Polynomial.zero(nv)) for k in range(n1)]
        out = []
        for ch in charts:
            sub = [p.substitute(images) for p in ch.polys]
            conj = [sum((sub[t].scale(self.M[k][t]) for t in range(n1) if self.M[k][t]),
                        Polynomial.zero(nv)) for k in range(n1)]
            out.append(Chart(ch.side, tuple(BiPolynomial(nv, p.terms) for p in conj)))
        return [out[0]], [out[1]]

    def action_matrix(self, X) -> list[list]:
        """Linear vector field on coordinates for the left-invariant field of X."""
        n1, m = self.nvars, self.m
        A = [[mpq(0)] * n1 for _ in range(n1)]
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    if X[k][j]:
                        A[1 + i * m + j][1 + i * m + k] += X[k][j]
        return linalg.matmul(linalg.matmul(self.M, A), self.Minv)

    def _build_lie(self, lie_basis, q_override) -> LieAlgebraData:
        mats = [linalg.mat(X) for X in lie_basis]
        d = len(mats)
        flat = [linalg.flatten(X) for X in mats]
        if linalg.rank(flat) != d:
            raise ModelError("Lie algebra basis is not linearly independent")
        for X in mats:
            for i in range(self.m):
                for j in range(self.m):
                    if X[i][j] and (i, j) not in self.free:
                        raise ModelError("Lie algebra basis leaves the group")
        structure = []
        for a in mats:
            row = []
            for b in mats:
                comm = linalg.sub(linalg.matmul(a, b), linalg.matmul(b, a))
                c = linalg.coordinates(flat, linalg.flatten(comm))
                if c is None:
                    raise ModelError("Lie algebra basis is not closed under the bracket")
                row.append(c)
            structure.append(row)
        n1 = self.nvars
        xs = [Polynomial.variable(n1, i) for i in range(n1)]
        tables = {}
        for j, X in enumerate(mats):
            A = self.action_matrix(X)
            ax = [sum((xs[t].scale(A[l][t]) for t in range(n1) if A[l][t]), Polynomial.zero(n1))
                  for l in range(n1)]
            for k in range(n1):
                tables[(j, k)] = tuple(ax[l] * xs[k] - xs[l] * ax[k] for l in range(n1))
        if q_override:
            for key, polys in q_override.items():
                if key not in tables or len(polys) != n1:
                    raise ModelError(f"bad derivation table entry {key}")
                tables[key] = tuple(polys)
        names = [_matrix_name(X, self.m) for X in mats]
        return LieAlgebraData(d, mats, names, tables, structure)

    # ---- derivations ------------------------------------------------
    def apply_table(self, j: int, k: int, P: Polynomial) -> Polynomial:
        """Homogeneous derivation sum_l Q^(l)_{j,k} dP/dx_l."""
        q = self.lie.q_tables[(j, k)]
        out = Polynomial.zero(P.nvars)
        for l in range(self.nvars):
            if q[l]:
                dp = P.diff(l)
                if dp:
                    out = out + q[l].embed(P.nvars) * dp
        return out

    def apply_vector(self, coeffs: Sequence, k: int, P: Polynomial) -> Polynomial:
        out = Polynomial.zero(P.nvars)
        for j, c in enumerate(coeffs):
            if c:
                out = out + self.apply_table(j, k, P).scale(c)
        return out

    # ---- translations -----------------------------------------------
    def _chart_images(self, charts: list[Chart], g: GroupPoint, left: bool) -> list[Polynomial]:
        vals = g.normalized()
        for ch in charts:
            imgs = [p.specialize_x(vals) if left else p.specialize_y(vals) for p in ch.polys]
            if not all(self.iG.contains(p) for p in imgs):
                return imgs
        raise ModelError("no chart covers this translation")

    @cached_property
    def _img_cache(self) -> dict:
        return {}

    def left_images(self, g: GroupPoint) -> list[Polynomial]:
        """Coordinates of x -> g*x as polynomials in x."""
        key = (LEFT, g)
        if key not in self._img_cache:
            self._img_cache[key] = self._chart_images(self.chartsL, g, True)
        return self._img_cache[key]

    def right_images(self, g: GroupPoint) -> list[Polynomial]:
        """Coordinates of x -> x*g as polynomials in x."""
        key = (RIGHT, g)
        if key not in self._img_cache:
            self._img_cache[key] = self._chart_images(self.chartsR, g, False)
        return self._img_cache[key]

    def translate_left(self, P: Polynomial, g: GroupPoint) -> Polynomial:
        return P.substitute(self.left_images(g))

    def translate_right(self, P: Polynomial, g: GroupPoint) -> Polynomial:
        return P.substitute(self.right_images(g))

    # ---- adjoint action ---------------------------------------------
    def adjoint(self, g: GroupPoint) -> list[list]:
        """Matrix of Ad(g) on the Lie algebra basis (columns are images)."""
        G = linalg.mat(g.affine)
        Gi = linalg.inverse(G)
        flat = [linalg.flatten(X) for X in self.lie.matrices]
        cols = []
        for X in self.lie.matrices:
            c = linalg.coordinates(flat, linalg.flatten(linalg.matmul(linalg.matmul(G, X), Gi)))
            if c is None:
                raise ModelError("Lie algebra is not stable under conjugation")
            cols.append(c)
        d = self.lie.d_full
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def make_subalgebra(self, basis, orbit=None, name: str = "custom") -> LieSubalgebra:
        """Validated subalgebra; ``orbit`` is a polynomial parametrization of its group."""
        vecs = [tuple(to_scalar(v) for v in b) for b in basis]
        d = self.lie.d_full
        if any(len(v) != d for v in vecs):
            raise ModelError("subalgebra vector has the wrong length")
        if linalg.rank([list(v) for v in vecs]) != len(vecs):
            raise ModelError("subalgebra basis is not linearly independent")
        structure = []
        for u in vecs:
            row = []
            for v in vecs:
                c = linalg.coordinates(vecs, self.lie.bracket(u, v))
                if c is None:
                    raise ModelError(f"span {name} is not closed under the bracket")
                row.append(c)
            structure.append(row)
        orb, npar = None, 0
        if orbit is not None:
            orb, npar = _parse_orbit(orbit, self.m)
        return LieSubalgebra(name, tuple(vecs), structure, orb, npar)

    def subalgebra(self, name: str) -> LieSubalgebra:
        try:
            return self._subalgebras[name]
        except KeyError:
            raise ModelError(f"unknown subalgebra {name!r} for {self.name}; "
                             f"available: {sorted(self._subalgebras)}") from None

    @property
    def subalgebra_names(self) -> list[str]:
        return sorted(self._subalgebras)

    def ad_stable(self, g: GroupPoint, b: LieSubalgebra) -> bool:
        A = self.adjoint(g)
        return all(linalg.coordinates(b.basis, linalg.matvec(A, list(v))) is not None
                   for v in b.basis)

    def adjoint_apply(self, g: GroupPoint, obj, b: LieSubalgebra | None = None):
        """Ad(g) applied to a subalgebra, a Lie algebra vector, or a word in U(b)."""
        A = self.adjoint(g)
        if isinstance(obj, LieSubalgebra):
            basis = [linalg.matvec(A, list(v)) for v in obj.basis]
            orbit = None
            if obj.orbit is not None:
                G = linalg.mat(g.affine)
                Gi = linalg.inverse(G)
                orbit = _conj_poly_matrix(G, obj.orbit, Gi)
            sub = self.make_subalgebra(basis, None, obj.name)
            sub.orbit, sub.nparams = orbit, obj.nparams
            return sub
        if isinstance(obj, (DerivationWord, dict)):
            if b is None:
                raise ValueError("a subalgebra is needed to transform words")
            if not self.ad_stable(g, b):
                raise StabilityError(f"Ad({g}) does not preserve {b.name}")
            images = [linalg.coordinates(b.basis, linalg.matvec(A, list(v))) for v in b.basis]
            words = {obj.exponents: mpq(1)} if isinstance(obj, DerivationWord) else obj
            out: dict = {}
            for exps, coef in words.items():
                seqs = {(): mpq(coef)}
                for letter in DerivationWord(tuple(exps)).letters():
                    nxt: dict = {}
                    for s, c in seqs.items():
                        for t, a in enumerate(images[letter]):
                            if a:
                                nxt[s + (t,)] = nxt.get(s + (t,), 0) + c * a
                    seqs = nxt
                for s, c in seqs.items():
                    for w, e in normal_order(s, b).items():
                        out[w] = out.get(w, 0) + c * e
            return {w: c for w, c in out.items() if c}
        return linalg.matvec(A, list(obj))


def _matrix_name(X, m: int) -> str:
    parts = []
    for i in range(m):
        for j in range(m):
            v = X[i][j]
            if v:
                tag = f"E{i + 1}{j + 1}"
                parts.append(tag if v == 1 else f"{_num(v)}*{tag}")
    return " + ".join(parts)


def _poly_det(A: list[list[Polynomial]]) -> Polynomial:
    n = len(A)
    if n == 1:
        return A[0][0]
    out = Polynomial.zero(A[0][0].nvars)
    for j in range(n):
        if A[0][j]:
            minor = [row[:j] + row[j + 1:] for row in A[1:]]
            term = A[0][j] * _poly_det(minor)
            out = out + term if j % 2 == 0 else out - term
    return out


def _poly_adjugate(A: list[list[Polynomial]]) -> list[list[Polynomial]]:
    n = len(A)
    nv = A[0][0].nvars
    if n == 1:
        return [[Polynomial.constant(nv, 1)]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(A) if k != i]
            c = _poly_det(minor)
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return adj


def _parse_orbit(orbit, m: int):
    rows = [[e if isinstance(e, Polynomial) else None for e in row] for row in orbit]
    texts = [[str(e) for e in row] for row in orbit]
    names_used = set()
    import re
    for row in texts:
        for t in row:
            names_used.update(int(k) for k in re.findall(r"s(\d+)", t))
    npar = max(names_used) + 1 if names_used else 0
    names = [f"s{i}" for i in range(npar)]
    out = []
    for r, row in enumerate(orbit):
        prow = []
        for c, e in enumerate(row):
            prow.append(rows[r][c] if rows[r][c] is not None
                        else parse_poly(str(e), npar, names) if npar else
                        Polynomial.constant(0, to_scalar(str(e))))
        out.append(prow)
    if len(out) != m or any(len(r) != m for r in out):
        raise ModelError("orbit parametrization has the wrong shape")
    return tuple(tuple(r) for r in out), npar


def _conj_poly_matrix(G, P, Gi):
    nv = P[0][0].nvars
    m = len(G)
    left = [[sum((P[t][j].scale(G[i][t]) for t in range(m) if G[i][t]), Polynomial.zero(nv))
             for j in range(m)] for i in range(m)]
    return tuple(tuple(sum((left[i][t].scale(Gi[t][j]) for t in range(m) if Gi[t][j]),
                           Polynomial.zero(nv)) for j in range(m)) for i in range(m))


def orbit_closure(model: GroupModel, A: Sequence[Sequence[Polynomial]], nparams: int) -> Ideal:
    """Ideal of the closure of {phi(A(s))}: A has entries in a ring laid out as
    x (N+1 variables), parameters, then one scaling variable."""
    n1 = model.nvars
    nv = A[0][0].nvars
    if nv != n1 + nparams + 1:
        raise DimensionError("orbit matrix lives in the wrong ring")
    lam = Polynomial.variable(nv, nv - 1)
    coords = model.embed_matrix(A)
    gens = [Polynomial.variable(nv, k) - lam * coords[k] for k in range(n1)]
    E = eliminate(Ideal(gens, nv), range(n1, nv))
    keep = [Polynomial(n1, {mm[:n1]: c for mm, c in p.terms.items()}) for p in E.gens]
    return Ideal(keep, n1)


def pad_charts(raw: Sequence[tuple[str, Sequence[BiPolynomial]]],
               pads: Sequence[tuple[Polynomial | None, Polynomial | None]]) -> list[Chart]:
    """Multiply raw action tuples by powers of linear forms to a common bidegree (c5, c5).

    ``pads[i]`` holds forms in x and in y that do not vanish on the locus of tuple i."""
    c5 = 0
    for _, polys in raw:
        for p in polys:
            if not p:
                continue
            if not p.is_bihomogeneous():
                raise ModelError("raw chart component is not bihomogeneous")
            c5 = max(c5, *p.bidegree)
    out = []
    for (side, polys), (fw, fv) in zip(raw, pads):
        padded = []
        for p in polys:
            nv = p.nvars
            if not p:
                padded.append(BiPolynomial.zero(nv))
                continue
            dx, dy = p.bidegree
            q = Polynomial(nv, p.terms)
            if dx < c5:
                if fw is None:
                    raise ModelError("no nonvanishing linear form to pad the x block")
                q = q * BiPolynomial.from_x(fw) ** (c5 - dx)
            if dy < c5:
                if fv is None:
                    raise ModelError("no nonvanishing linear form to pad the y block")
                q = q * BiPolynomial.from_y(fv) ** (c5 - dy)
            padded.append(BiPolynomial(nv, q.terms))
        out.append(Chart(side, tuple(padded)))
    return out


def normal_order(seq: tuple[int, ...], b: LieSubalgebra, _cache: dict | None = None) -> dict:
    """Rewrite a product of basis letters of b in PBW order; returns exponents -> coefficient."""
    cache = {} if _cache is None else _cache
    if seq in cache:
        return cache[seq]
    for i in range(len(seq) - 1):
        if seq[i] > seq[i + 1]:
            swapped = seq[:i] + (seq[i + 1], seq[i]) + seq[i + 2:]
            out = dict(normal_order(swapped, b, cache))
            # x_a x_b = x_b x_a + [x_a, x_b]
            for k, c in enumerate(b.structure[seq[i]][seq[i + 1]]):
                if c:
                    for w, e in normal_order(seq[:i] + (k,) + seq[i + 2:], b, cache).items():
                        out[w] = out.get(w, 0) + c * e
            out = {w: c for w, c in out.items() if c}
            cache[seq] = out
            return out
    exps = [0] * b.d
    for s in seq:
        exps[s] += 1
    out = {tuple(exps): mpq(1)}
    cache[seq] = out
    return out


# ---- validation ---------------------------------------------------------

def random_points(model: GroupModel, count: int, seed: int = 0) -> list[GroupPoint]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        params = [rng.randint(-4, 4) for _ in range(model.n)]
        try:
            out.append(model.point(*params))
        except DomainError:
            continue
    return out


def _proportional(a: Sequence, b: Sequence) -> bool:
    n = len(a)
    return all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(n))


def model_validate(model: GroupModel, samples: int = 10, seed: int = 0) -> dict:
    """Run the exact consistency checks; raises ValidationError naming the failing check."""
    report = {}
    n1 = model.nvars
    pts = random_points(model, 2 * samples, seed)
    pairs = list(zip(pts[::2], pts[1::2]))

    # (a) charts reproduce the group law
    for g, h in pairs:
        target = model.point_mul(g, h).projective
        for charts in (model.chartsL, model.chartsR):
            hit = False
            for ch in charts:
                vals = ch.evaluate(g.projective.coords, h.projective.coords)
                if any(vals):
                    if not _proportional(vals, target.coords):
                        raise ValidationError("a", f"chart {ch.side} disagrees at {g}, {h}")
                    hit = True
            if not hit:
                raise ValidationError("a", f"no chart covers the pair {g}, {h}")
    report["a"] = f"charts agree with the group law on {len(pairs)} pairs"

    # (b) derivation tables against the right-translation chart
    one = model.identity.normalized()
    TR = model.chartsR[0].polys
    base = [p.specialize_y(one) for p in TR]
    iG = model.iG
    for j, X in enumerate(model.lie.matrices):
        tangent = linalg.matvec(model.M, [mpq(0)] + linalg.flatten(X))
        V = [sum((p.diff(n1 + b).specialize_y(one).scale(tangent[b])
                  for b in range(n1) if tangent[b]), Polynomial.zero(n1)) for p in TR]
        xs = [Polynomial.variable(n1, i) for i in range(n1)]
        for k in range(n1):
            q = model.lie.q_tables[(j, k)]
            for l in range(n1):
                lhs = q[l] * base[k] ** 2
                rhs = xs[k] ** model.c6 * (V[l] * base[k] - base[l] * V[k])
                if not iG.contains(lhs - rhs):
                    raise ValidationError("b", f"table Q^({l})_({j},{k}) is inconsistent")
    report["b"] = "derivation tables match the infinitesimal right action"

    # (c) left invariance on chart 0
    xs = [Polynomial.variable(n1, i) for i in range(n1)]
    tests = xs + [xs[0] * xs[-1] + xs[1] ** 2]
    for g in pts[:3]:
        T = model.left_images(g)
        for j in range(model.lie.d_full):
            bt0 = model.apply_table(j, 0, T[0])
            for P in tests:
                D = P.degree
                PT = P.substitute(T)
                lhs = xs[0] ** (model.c6 - 1) * model.apply_table(j, 0, P).substitute(T)
                rhs = (model.apply_table(j, 0, PT) * T[0] - PT * bt0.scale(D)) \
                    * T[0] ** (model.c6 - 2)
                if not iG.contains(lhs - rhs):
                    raise ValidationError("c", f"derivation {j} is not left invariant at {g}")
    report["c"] = "derivations commute with left translations"

    # (d) antisymmetry and Jacobi
    lie = model.lie
    d = lie.d_full
    e = [[mpq(1) if i == j else mpq(0) for j in range(d)] for i in range(d)]
    for i in range(d):
        for j in range(d):
            if any(a + b for a, b in zip(lie.structure[i][j], lie.structure[j][i])):
                raise ValidationError("d", "bracket is not antisymmetric")
            for k in range(d):
                s = [mpq(0)] * d
                for u, v, w in ((i, j, k), (j, k, i), (k, i, j)):
                    t = lie.bracket(e[u], lie.bracket(e[v], e[w]))
                    s = [a + b for a, b in zip(s, t)]
                if any(s):
                    raise ValidationError("d", "Jacobi identity fails")
    report["d"] = "bracket is antisymmetric and satisfies Jacobi"

    # (e) Ad is a homomorphism
    for g, h in pairs[:5]:
        lhs = model.adjoint(model.point_mul(g, h))
        rhs = linalg.matmul(model.adjoint(g), model.adjoint(h))
        if lhs != rhs:
            raise ValidationError("e", f"Ad(gh) != Ad(g)Ad(h) at {g}, {h}")
    report["e"] = "adjoint action is multiplicative"

    for g in pts[:3]:
        if not all(not p.evaluate(g.projective.coords) for p in iG.gens):
            raise ValidationError("a", "closure ideal does not vanish on the group")
    return report


# ---- built-in models ----------------------------------------------------

def _E(m, i, j):
    X = [[0] * m for _ in range(m)]
    X[i][j] = 1
    return X


def make_gm() -> GroupModel:
    subs = {"full": {"basis": [[1]], "orbit": [["s0"]]}}
    model = GroupModel("gm", 1, [(0, 0)], [[[1]]], subalgebras=subs)
    model_validate(model)
    return model


def make_borel2() -> GroupModel:
    basis = [_E(2, 0, 0), _E(2, 0, 1), _E(2, 1, 1)]
    subs = {
        "full": {"basis": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "orbit": [["s0", "s1"], ["0", "s2"]]},
        "nilpotent": {"basis": [[0, 1, 0]], "orbit": [["1", "s0"], ["0", "1"]]},
        "torus": {"basis": [[1, 0, 0], [0, 0, 1]], "orbit": [["s0", "0"], ["0", "s1"]]},
        "torus1": {"basis": [[1, 0, 0]], "orbit": [["s0", "0"], ["0", "1"]]},
        "torus2": {"basis": [[0, 0, 1]], "orbit": [["1", "0"], ["0", "s0"]]},
        "scalar": {"basis": [[1, 0, 1]], "orbit": [["s0", "0"], ["0", "s0"]]},
    }
    model = GroupModel("borel2", 2, [(0, 0), (0, 1), (1, 1)], basis, subalgebras=subs)
    model_validate(model)
    return model


def make_gl2() -> GroupModel:
    basis = [_E(2, 0, 0), _E(2, 0, 1), _E(2, 1, 0), _E(2, 1, 1)]
    subs = {
        "full": {"basis": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
                 "orbit": [["s0", "s1"], ["s2", "s3"]]},
        "nilpotent": {"basis": [[0, 1, 0, 0]], "orbit": [["1", "s0"], ["0", "1"]]},
        "lower": {"basis": [[0, 0, 1, 0]], "orbit": [["1", "0"], ["s0", "1"]]},
        "torus": {"basis": [[1, 0, 0, 0], [0, 0, 0, 1]], "orbit": [["s0", "0"], ["0", "s1"]]},
        "torus1": {"basis": [[1, 0, 0, 0]], "orbit": [["s0", "0"], ["0", "1"]]},
        "scalar": {"basis": [[1, 0, 0, 1]], "orbit": [["s0", "0"], ["0", "s0"]]},
        "borel": {"basis": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
                  "orbit": [["s0", "s1"], ["0", "s2"]]},
    }
    model = GroupModel("gl2", 2, [(0, 0), (0, 1), (1, 0), (1, 1)], basis, subalgebras=subs)
    model_validate(model)
    return model


_BUILTIN = {"gm": make_gm, "gl2": make_gl2, "borel2": make_borel2}
_CACHE: dict[str, GroupModel] = {}

_MODEL_FIELDS = {"name", "matrix_size", "free_entries", "lie_basis", "coordinate_change",
                 "subalgebras", "q_tables"}


def load_model(source) -> GroupModel:
    """Build and validate a model from a dict or a JSON file."""
    if isinstance(source, (str, Path)):
        data = json.loads(Path(source).read_text())
    else:
        data = dict(source)
    unknown = set(data) - _MODEL_FIELDS
    if unknown:
        raise ModelError(f"unknown model fields: {sorted(unknown)}")
    for req in ("name", "matrix_size", "free_entries", "lie_basis"):
        if req not in data:
            raise ModelError(f"missing model field {req!r}")
    m = int(data["matrix_size"])
    n1 = m * m + 1
    tables = None
    if "q_tables" in data:
        tables = {}
        for key, polys in data["q_tables"].items():
            j, k = (int(t) for t in key.split(","))
            tables[(j, k)] = [parse_poly(p, n1) for p in polys]
    model = GroupModel(str(data["name"]), m, [tuple(e) for e in data["free_entries"]],
                       data["lie_basis"], data.get("coordinate_change"),
                       data.get("subalgebras"), tables)
    model_validate(model)
    return model


def get_model(name: str) -> GroupModel:
    """Built-in model by name (cached), or a custom model from a JSON path."""
    if name in _CACHE:
        return _CACHE[name]
    if name in _BUILTIN:
        model = _BUILTIN[name]()
    elif Path(name).suffix == ".json" and Path(name).exists():
        model = load_model(name)
    else:
        raise ModelError(f"unknown model {name!r}; choose from {sorted(_BUILTIN)} or a JSON file")
    _CACHE[name] = model
    return model
