"""Sparse exact polynomials over the rationals.

Polynomials are immutable maps from exponent tuples to rational
coefficients.  Variables are named ``x0..xN``; a :class:`BiPolynomial`
carries a second block ``y0..yN`` of the same size.
"""

from __future__ import annotations

import ast
import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

Scalar = type(mpq(0))
Monomial = tuple  # tuple[int, ...]

NEG_INF = -math.inf


class DimensionError(ValueError):
    """Operands live in different ambient rings."""


class DegreeError(ValueError):
    """A requested degree is not admissible."""


class ParseError(ValueError):
    """Polynomial text could not be parsed."""


def to_scalar(c) -> Scalar:
    if isinstance(c, Scalar):
        return c
    if isinstance(c, (int, Fraction)):
        return mpq(c)
    if isinstance(c, str):
        return mpq(c.strip())
    if hasattr(c, "numerator") and hasattr(c, "denominator"):
        return mpq(int(c.numerator), int(c.denominator))
    raise TypeError(f"not an exact rational: {c!r}")


def scalar_str(c: Scalar) -> str:
    return str(c)


def grevlex_key(m: Monomial) -> tuple:
    """Degree-reverse-lexicographic key with x0 the smallest variable."""
    return (sum(m), tuple(-e for e in m))


class Polynomial:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != nvars:
                    raise DimensionError(f"monomial {m} has wrong length for {nvars} variables")
                c = to_scalar(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def _make(cls, nvars, terms):
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    def _like(self, terms):
        return type(self)._make(self.nvars, terms)

    @classmethod
    def zero(cls, nvars: int):
        return cls._make(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c=1):
        c = to_scalar(c)
        return cls._make(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, i: int):
        if not 0 <= i < nvars:
            raise DimensionError(f"variable index {i} outside 0..{nvars - 1}")
        e = [0] * nvars
        e[i] = 1
        return cls._make(nvars, {tuple(e): mpq(1)})

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], c=1):
        return cls(nvars, {tuple(exps): c})

    # basic queries --------------------------------------------------------
    @property
    def terms(self) -> dict:
        return self._terms

    def items(self):
        """Terms in canonical (degrevlex, descending) order."""
        return sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def canonical(self) -> tuple:
        return tuple(self.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    @property
    def degree(self):
        if not self._terms:
            return NEG_INF
        return max(sum(m) for m in self._terms)

    def is_homogeneous(self, d: int | None = None) -> bool:
        if not self._terms:
            return True
        degs = {sum(m) for m in self._terms}
        return len(degs) == 1 and (d is None or d in degs)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_term(self) -> Scalar:
        return self._terms.get((0,) * self.nvars, mpq(0))

    def variables(self) -> set[int]:
        return {i for m in self._terms for i, e in enumerate(m) if e}

    def leading(self, key=grevlex_key):
        """(monomial, coefficient) of the largest term under ``key``."""
        m = max(self._terms, key=key)
        return m, self._terms[m]

    def monic(self, key=grevlex_key):
        if not self._terms:
            return self
        _, c = self.leading(key)
        if c == 1:
            return self
        inv = 1 / c
        return self._like({m: v * inv for m, v in self._terms.items()})

    # arithmetic ------------------------------------------------------------
    def _check(self, other):
        if self.nvars != other.nvars:
            raise DimensionError(f"ambient mismatch: {self.nvars} vs {other.nvars} variables")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return type(self).constant(self.nvars, to_scalar(other))

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self._terms)
        for m, c in other._terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return self._like(t)

    __radd__ = __add__

    def __neg__(self):
        return self._like({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        c = to_scalar(c)
        if not c:
            return self._like({})
        return self._like({m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        t: dict = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(i + j for i, j in zip(ma, mb))
                v = t.get(m, 0) + ca * cb
                if v:
                    t[m] = v
                else:
                    del t[m]
        return self._like(t)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        return self.scale(1 / to_scalar(other))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = type(self).constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, m: Monomial, c=1):
        c = to_scalar(c)
        return self._like({tuple(i + j for i, j in zip(k, m)): v * c for k, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self == type(self).constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # calculus and substitution ---------------------------------------------
    def diff(self, i: int):
        if not 0 <= i < self.nvars:
            raise DimensionError(f"variable index {i} outside 0..{self.nvars - 1}")
        t = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                mm = m[:i] + (e - 1,) + m[i + 1:]
                t[mm] = c * e
        return self._like(t)

    def evaluate(self, point: Sequence) -> Scalar:
        if len(point) != self.nvars:
            raise DimensionError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [to_scalar(v) for v in point]
        total = mpq(0)
        for m, c in self._terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v *= x ** e
            total += v
        return total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Ring homomorphism sending variable i to ``images[i]``."""
        if len(images) != self.nvars:
            raise DimensionError(f"{len(images)} images for {self.nvars} variables")
        if not images:
            return self
        target = images[0]
        for im in images:
            target._check(im)
        cls = type(target)
        out: dict = {}
        powers: dict = {}

        def power(i, e):
            key = (i, e)
            p = powers.get(key)
            if p is None:
                p = images[i] if e == 1 else power(i, e - 1) * images[i]
                powers[key] = p
            return p

        for m, c in self._terms.items():
            prod = cls.constant(target.nvars, c)
            for i, e in enumerate(m):
                if e:
                    prod = prod * power(i, e)
            for mm, v in prod._terms.items():
                w = out.get(mm, 0) + v
                if w:
                    out[mm] = w
                else:
                    del out[mm]
        return cls._make(target.nvars, out)

    def embed(self, nvars: int, positions: Sequence[int] | None = None) -> "Polynomial":
        """Same polynomial viewed in a ring with ``nvars`` variables.

        Variable i is sent to variable ``positions[i]`` (default: i)."""
        pos = list(range(self.nvars)) if positions is None else list(positions)
        t = {}
        for m, c in self._terms.items():
            e = [0] * nvars
            for i, k in zip(pos, m):
                e[i] += k
            t[tuple(e)] = c
        return Polynomial._make(nvars, t)

    def dehomogenize(self, k: int) -> "Polynomial":
        """Set x_k = 1 (the ambient variable count is kept)."""
        t = {}
        for m, c in self._terms.items():
            mm = m[:k] + (0,) + m[k + 1:]
            v = t.get(mm, 0) + c
            if v:
                t[mm] = v
            else:
                del t[mm]
        return self._like(t)

    def homogenize(self, k: int, d: int) -> "Polynomial":
        """Pad every term with powers of x_k up to degree ``d``.

        Inverse of :meth:`dehomogenize` on polynomials free of x_k."""
        if self._terms and self.degree > d:
            raise DegreeError(f"target degree {d} below polynomial degree {self.degree}")
        t = {}
        for m, c in self._terms.items():
            mm = list(m)
            mm[k] += d - sum(m)
            mm = tuple(mm)
            t[mm] = t.get(mm, 0) + c
        return self._like({m: c for m, c in t.items() if c})

    def content_free(self):
        """Scale so the leading coefficient is 1 (canonical associate)."""
        return self.monic()

    # printing ---------------------------------------------------------------
    def var_names(self) -> list[str]:
        return [f"x{i}" for i in range(self.nvars)]

    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names is not None else self.var_names()
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = scalar_str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{scalar_str(a)}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"{type(self).__name__}({self.nvars}, {self.to_str()!r})"


class BiPolynomial(Polynomial):
    """Polynomial in x0..xN, y0..yN (x block first)."""

    __slots__ = ()

    @property
    def half(self) -> int:
        return self.nvars // 2

    def var_names(self):
        h = self.half
        return [f"x{i}" for i in range(h)] + [f"y{i}" for i in range(h)]

    def bidegrees(self) -> set[tuple[int, int]]:
        h = self.half
        return {(sum(m[:h]), sum(m[h:])) for m in self._terms}

    def is_bihomogeneous(self, bideg: tuple[int, int] | None = None) -> bool:
        b = self.bidegrees()
        if not b:
            return True
        return len(b) == 1 and (bideg is None or bideg in b)

    @property
    def bidegree(self):
        b = self.bidegrees()
        if len(b) != 1:
            raise DegreeError("not bihomogeneous")
        return next(iter(b))

    def specialize_y(self, values: Sequence) -> Polynomial:
        """Substitute numbers for y; the result is a polynomial in x."""
        h = self.half
        vals = [to_scalar(v) for v in values]
        if len(vals) != h:
            raise DimensionError("wrong number of y values")
        t: dict = {}
        for m, c in self._terms.items():
            v = c
            for x, e in zip(vals, m[h:]):
                if e:
                    v *= x ** e
            if v:
                mm = m[:h]
                w = t.get(mm, 0) + v
                if w:
                    t[mm] = w
                else:
                    del t[mm]
        return Polynomial._make(h, t)

    def specialize_x(self, values: Sequence) -> Polynomial:
        """Substitute numbers for x; the result is a polynomial in y (named x)."""
        return self.swap().specialize_y(values)

    def swap(self) -> "BiPolynomial":
        h = self.half
        return BiPolynomial._make(self.nvars, {m[h:] + m[:h]: c for m, c in self._terms.items()})

    @classmethod
    def from_x(cls, p: Polynomial) -> "BiPolynomial":
        return cls._make(2 * p.nvars, {m + (0,) * p.nvars: c for m, c in p.terms.items()})

    @classmethod
    def from_y(cls, p: Polynomial) -> "BiPolynomial":
        return cls._make(2 * p.nvars, {(0,) * p.nvars + m: c for m, c in p.terms.items()})


class ProjectivePoint:
    """Point of projective space with exact coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        cs = tuple(to_scalar(c) for c in coords)
        if not any(cs):
            raise ValueError("all coordinates zero")
        self.coords = cs

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    @property
    def first_nonzero(self) -> int:
        return next(i for i, c in enumerate(self.coords) if c)

    def normalized(self, k: int | None = None) -> tuple:
        """Representative with coordinate k equal to 1 (default: first nonzero)."""
        k = self.first_nonzero if k is None else k
        c = self.coords[k]
        if not c:
            raise ZeroDivisionError(f"coordinate {k} vanishes")
        return tuple(v / c for v in self.coords)

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.normalized() == other.normalized()

    def __hash__(self):
        return hash(self.normalized())

    def __str__(self):
        return "[" + ":".join(scalar_str(c) for c in self.normalized()) + "]"

    __repr__ = __str__


# parsing ---------------------------------------------------------------------

def _parse_names(names, nvars):
    return {n: i for i, n in enumerate(names)} if names is not None else None


def parse_poly(text: str, nvars: int | None = None, names: Sequence[str] | None = None,
               bi: bool = False) -> Polynomial:
    """Parse text such as ``2*x1^2 - 1/3*x0*x1`` or ``(x1-x0)^3``.

    Without ``names`` variables are ``x0..`` (and ``y0..`` when ``bi``).
    ``nvars`` defaults to one more than the largest index seen."""
    src = text.replace("^", "**").strip()
    if not src:
        raise ParseError("empty polynomial text")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None

    idx = _parse_names(names, nvars)
    seen = []

    def var_index(name):
        if idx is not None:
            if name not in idx:
                raise ParseError(f"unknown variable {name!r}")
            return idx[name]
        if len(name) > 1 and name[0] in "xy" and name[1:].isdigit():
            return name[0], int(name[1:])
        raise ParseError(f"unknown variable {name!r}")

    def collect(node):
        for n in ast.walk(node):
            if isinstance(n, ast.Name):
                seen.append(var_index(n.id))

    collect(tree)
    if idx is not None:
        n = len(idx) if nvars is None else nvars
        cls = Polynomial
    else:
        xs = [i for b, i in seen if b == "x"]
        ys = [i for b, i in seen if b == "y"]
        if ys and not bi:
            raise ParseError("y variables require a bihomogeneous context")
        top = max(xs + ys, default=-1) + 1
        half = top if nvars is None else (nvars // 2 if bi else nvars)
        if top > half:
            raise ParseError(f"variable index exceeds ambient size {half}")
        n = 2 * half if bi else half
        cls = BiPolynomial if bi else Polynomial

    def var(name):
        k = var_index(name)
        if isinstance(k, tuple):
            b, i = k
            k = i + (n // 2 if b == "y" else 0)
        return cls.variable(n, k)

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return cls.constant(n, node.value)
        if isinstance(node, ast.Name):
            return var(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = node.right
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int) and e.value >= 0):
                    raise ParseError("exponents must be non-negative integer literals")
                return ev(node.left) ** e.value
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if not b.is_constant() or b.is_zero():
                    raise ParseError("division only by nonzero constants")
                return a / b.constant_term()
        raise ParseError(f"unsupported syntax in {text!r}")

    return ev(tree)


def parse_bipoly(text: str, half: int | None = None) -> BiPolynomial:
    return parse_poly(text, None if half is None else 2 * half, bi=True)


def linear_form(coeffs: Sequence) -> Polynomial:
    n = len(coeffs)
    return Polynomial(n, {tuple(1 if j == i else 0 for j in range(n)): c for i, c in enumerate(coeffs)})


def polys_str(polys: Iterable[Polynomial]) -> list[str]:
    return [str(p) for p in polys]
