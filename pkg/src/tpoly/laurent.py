"""Exact Laurent polynomials in two variables x, y.

Exponents are ``(a, b)`` integer pairs standing for ``x^a y^b``; coefficients
are :class:`fractions.Fraction`. Everything here is exact.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .polygon import (
    FanoPolygon,
    Matrix2,
    MutationData,
    NotMutable,
    apply_matrix,
    convex_hull,
    cross,
    is_primitive,
    pair,
    primitive_perp,
    singularity_content,
    validate_fano,
)

Exp = tuple[int, int]


class LaurentSyntaxError(SyntaxError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient {c!r} is not exact")


class LaurentPoly:
    """Immutable finite map from exponents to nonzero rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[Exp, Fraction] = {}
        for e, c in items:
            e = (int(e[0]), int(e[1]))
            c = out.get(e, 0) + _frac(c)
            if c:
                out[e] = c
            else:
                out.pop(e, None)
        self._terms = out
        self._hash = None

    @classmethod
    def monomial(cls, exp: Sequence[int], coef=1) -> "LaurentPoly":
        return cls({tuple(exp): coef})

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({(0, 0): c})

    @classmethod
    def _raw(cls, terms: dict[Exp, Fraction]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @property
    def terms(self) -> dict[Exp, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self) -> list[Exp]:
        return sorted(self._terms)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get((exp[0], exp[1]), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0, 0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly()
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()})
        other = _coerce(other)
        out: dict[Exp, Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                e = (a1 + a2, b1 + b2)
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have negative powers")
            (e, c), = self._terms.items()
            return LaurentPoly({(e[0] * n, e[1] * n): Fraction(1) / c ** (-n)})
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def transform(self, U: Matrix2) -> "LaurentPoly":
        """Monomial change of basis ``x^m -> x^(U m)``."""
        return LaurentPoly._raw({apply_matrix(U, e): c for e, c in self._terms.items()})

    def slices(self, v: Sequence[int]) -> dict[int, "LaurentPoly"]:
        """Decomposition ``f = sum_h f_h`` by height ``h = <m, v>``."""
        out: dict[int, dict[Exp, Fraction]] = {}
        for e, c in self._terms.items():
            out.setdefault(pair(v, e), {})[e] = c
        return {h: LaurentPoly._raw(t) for h, t in out.items()}

    def __str__(self):
        return format_laurent(self)

    def __repr__(self):
        return f"LaurentPoly({format_laurent(self)!r})"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"exp": list(e), "coef": str(c)} for e, c in sorted(self._terms.items())
            ]
        }

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        if isinstance(data, dict):
            data = data["terms"]
        out = {}
        for t in data:
            coef = t["coef"]
            if isinstance(coef, float) or (isinstance(coef, str) and "." in coef):
                raise ValueError(f"coefficient {coef!r} must be an exact rational")
            out[tuple(t["exp"])] = Fraction(coef)
        return cls(out)


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.constant(x)
    raise TypeError(f"cannot use {x!r} as a Laurent polynomial")


# -- printing and parsing ----------------------------------------------------


def _monomial_str(e: Exp) -> str:
    parts = []
    for name, k in zip("xy", e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_laurent(f: LaurentPoly) -> str:
    """Canonical text form; terms ordered by exponent lexicographically."""
    if not f:
        return "0"
    out = []
    for e, c in sorted(f.items()):
        mono = _monomial_str(e)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+)|(\d+)|([xy])|(\^|\*|/|\+|-|\(|\)))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise LaurentSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            raise LaurentSyntaxError("decimal numbers are not allowed", start)
        if m.group(2):
            tokens.append(("int", m.group(2), start))
        elif m.group(3):
            tokens.append(("var", m.group(3), start))
        else:
            tokens.append(("op", m.group(4), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, value=None):
        tok = self.tokens[self.i]
        if value is not None and tok[1] != value:
            raise LaurentSyntaxError(f"expected {value!r}, found {tok[1] or 'end'!r}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> LaurentPoly:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        result = self.term() * sign
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self) -> LaurentPoly:
        result = self.power()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            rhs = self.power()
            if op == "*":
                result = result * rhs
            else:
                if len(rhs) != 1:
                    raise LaurentSyntaxError("can only divide by a monomial", pos)
                result = result * rhs ** -1
        return result

    def power(self) -> LaurentPoly:
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            sign = 1
            if self.peek()[1] in ("-", "+") and self.peek()[0] == "op":
                sign = -1 if self.take()[1] == "-" else 1
            kind, val, pos = self.take()
            if kind != "int":
                raise LaurentSyntaxError("exponent must be an integer", pos)
            n = sign * int(val)
            if n < 0 and len(base) != 1:
                raise LaurentSyntaxError("negative power of a non-monomial", pos)
            return base ** n
        return base

    def atom(self) -> LaurentPoly:
        kind, val, pos = self.take()
        if kind == "int":
            return LaurentPoly.constant(int(val))
        if kind == "var":
            return LaurentPoly.monomial((1, 0) if val == "x" else (0, 1))
        if val == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise LaurentSyntaxError(f"unexpected {val or 'end of input'!r}", pos)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse e.g. ``"2*x*y - 1/3 + x^-1*y^-1"`` or ``"y + (1+x)^2*y^-1"``."""
    p = _Parser(text)
    result = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise LaurentSyntaxError(f"unexpected {val!r}", pos)
    return result


# -- Newton polygon and periods ----------------------------------------------


def newton_polygon(f: LaurentPoly) -> FanoPolygon:
    return validate_fano(convex_hull(f.support()) if len(f) >= 3 else f.support())


@dataclass(frozen=True)
class PeriodFingerprint:
    coefficients: tuple[Fraction, ...]

    @property
    def horizon(self) -> int:
        return len(self.coefficients) - 1

    def as_ints(self) -> list:
        return [int(c) if c.denominator == 1 else c for c in self.coefficients]

    def agrees_with(self, other: Sequence) -> bool:
        n = min(len(self.coefficients), len(other))
        return all(self.coefficients[i] == other[i] for i in range(n))


def _halfplanes(points: list[Exp]) -> list[tuple[Exp, int]] | None:
    hull = convex_hull(points)
    if len(hull) < 3:
        return None
    out = []
    for i in range(len(hull)):
        p, q = hull[i], hull[(i + 1) % len(hull)]
        u = (p[1] - q[1], q[0] - p[0])
        out.append((u, pair(u, p)))
    return out


def period_coefficients(f: LaurentPoly, dmax: int, method: str = "direct") -> PeriodFingerprint:
    """Constant terms of ``f^0 .. f^dmax``.

    ``method="pruned"`` drops, after each multiplication, terms that cannot
    get back to the origin in the remaining steps (``-m`` must lie in
    ``(dmax-d) Newt(f)``). Both methods are exact.
    """
    if dmax < 0:
        raise ValueError("dmax must be nonnegative")
    terms = dict(f.items())
    if all(c.denominator == 1 for c in terms.values()):
        terms = {e: int(c) for e, c in terms.items()}
    planes = _halfplanes(list(terms)) if method == "pruned" and terms else None
    if method not in ("direct", "pruned"):
        raise ValueError(f"unknown method {method!r}")
    coeffs = [Fraction(1)]
    power: dict[Exp, object] = {(0, 0): 1}
    for d in range(1, dmax + 1):
        nxt: dict[Exp, object] = {}
        for (a1, b1), c1 in power.items():
            for (a2, b2), c2 in terms.items():
                e = (a1 + a2, b1 + b2)
                nxt[e] = nxt.get(e, 0) + c1 * c2
        remaining = dmax - d
        if planes is not None:
            nxt = {
                e: c
                for e, c in nxt.items()
                if c and all(-pair(u, e) >= remaining * b for u, b in planes)
            }
        else:
            nxt = {e: c for e, c in nxt.items() if c}
        power = nxt
        coeffs.append(Fraction(power.get((0, 0), 0)))
    return PeriodFingerprint(tuple(coeffs))


# -- algebraic mutation ------------------------------------------------------


def divmod_univariate(num: dict[int, object], den: dict[int, Fraction]):
    """Long division of univariate Laurent polynomials ``num / den``.

    Returns ``(quotient, remainder)`` with the remainder supported on the
    lowest ``deg(den)`` exponents of ``num``. Coefficients of ``num`` may be
    any objects closed under subtraction and scalar multiplication (numbers
    or coefficient vectors).
    """
    if not num:
        return {}, {}
    lo, hi = min(num), max(num)
    dlo, dhi = min(den), max(den)
    span = dhi - dlo
    lead = den[dhi]
    work = dict(num)
    quot = {}
    for deg in range(hi, lo + span - 1, -1):
        c = work.pop(deg, None)
        if c is None:
            continue
        q = c / lead
        qdeg = deg - dhi
        quot[qdeg] = q
        for s, dc in den.items():
            if s == dhi:
                continue
            t = qdeg + s
            work[t] = work[t] - q * dc if t in work else -(q * dc)
    return quot, work


def algebraic_mutation(f: LaurentPoly, v: Sequence[int], F: LaurentPoly) -> LaurentPoly:
    """Pull back along ``x^m -> x^m F^<m, v>``.

    Raises :class:`NotMutable` when some negative-height slice of
    ``f`` is not divisible by the matching power of ``F``.
    """
    v = (int(v[0]), int(v[1]))
    if not is_primitive(v):
        raise ValueError(f"v={v} is not primitive")
    if not F:
        raise ValueError("factor must be nonzero")
    if any(pair(v, e) for e in F.support()):
        raise ValueError("factor must be supported on the orthogonal complement of v")
    w = primitive_perp(v)
    Fu = {_scalar_along(e, w): c for e, c in F.items()}
    out = LaurentPoly()
    for h, fh in sorted(f.slices(v).items()):
        if h >= 0:
            out = out + fh * F ** h
            continue
        base = fh.support()[0]
        coords = {_scalar_along((e[0] - base[0], e[1] - base[1]), w): c for e, c in fh.items()}
        den = _upow(Fu, -h)
        quot, rem = divmod_univariate(coords, den)
        if any(rem.values()):
            raise NotMutable(f"slice at height {h} is not divisible by the factor", height=h)
        out = out + LaurentPoly(
            {(base[0] + s * w[0], base[1] + s * w[1]): c for s, c in quot.items() if c}
        )
    return out


def _scalar_along(e: Sequence[int], w: Exp) -> int:
    return e[0] // w[0] if w[0] else e[1] // w[1]


def _upow(p: dict[int, Fraction], n: int) -> dict[int, Fraction]:
    result = {0: Fraction(1)}
    for _ in range(n):
        nxt: dict[int, Fraction] = {}
        for a, c in result.items():
            for b, d in p.items():
                nxt[a + b] = nxt.get(a + b, 0) + c * d
        result = {k: c for k, c in nxt.items() if c}
    return result


def binomial_factor(w: Sequence[int], k: int = 1) -> LaurentPoly:
    """``(1 + x^w)^k``."""
    return LaurentPoly(
        {(j * w[0], j * w[1]): math.comb(k, j) for j in range(k + 1)}
    )


def mutate_laurent(f: LaurentPoly, m: MutationData) -> LaurentPoly:
    return algebraic_mutation(f, m.v, binomial_factor(m.w, m.k))


# -- mutation equivalence ----------------------------------------------------


def _edge_mutations(f: LaurentPoly) -> list[MutationData]:
    """Candidate (v, w, k) from the edges of the Newton polygon of ``f``.

    The polygon need not contain the origin; an edge qualifies when it sits
    at negative height for its inner normal.
    """
    hull = convex_hull(f.support())
    if len(hull) < 3:
        return []
    out = []
    n = len(hull)
    for i in range(n):
        p, q = hull[i], hull[(i + 1) % n]
        g = math.gcd(q[0] - p[0], q[1] - p[1])
        v = ((p[1] - q[1]) // g, (q[0] - p[0]) // g)
        h = -pair(v, p)
        if h <= 0:
            continue
        w = primitive_perp(v)
        for k in range(1, g // h + 1):
            out.append(MutationData(v, w, k))
    return out


def unimodular_equivalence(f: LaurentPoly, g: LaurentPoly) -> Matrix2 | None:
    """A matrix U in GL(2,Z) with ``f.transform(U) == g``, if any."""
    if len(f) != len(g):
        return None
    fs, gs = f.support(), g.support()
    basis = None
    for a, b in combinations(fs, 2):
        if cross((0, 0), a, b):
            basis = (a, b)
            break
    if basis is None:
        return ((1, 0), (0, 1)) if f == g else None
    a, b = basis
    D = a[0] * b[1] - a[1] * b[0]
    gset = set(gs)
    for a2 in gs:
        for b2 in gs:
            # U [a b] = [a2 b2]  =>  U = [a2 b2] [a b]^-1
            num = (
                (a2[0] * b[1] - b2[0] * a[1], -a2[0] * b[0] + b2[0] * a[0]),
                (a2[1] * b[1] - b2[1] * a[1], -a2[1] * b[0] + b2[1] * a[0]),
            )
            if any(x % D for row in num for x in row):
                continue
            U = tuple(tuple(x // D for x in row) for row in num)
            if U[0][0] * U[1][1] - U[0][1] * U[1][0] not in (1, -1):
                continue
            if f.transform(U) == g:
                return U
    return None


@dataclass(frozen=True)
class LaurentChain:
    steps: tuple[MutationData, ...]
    transform: Matrix2

    def __len__(self):
        return len(self.steps)


def mutation_equivalent_laurent(
    f: LaurentPoly,
    g: LaurentPoly,
    max_depth: int = 3,
    max_nodes: int = 2000,
    horizon: int = 6,
) -> LaurentChain | None:
    """Search for algebraic mutations carrying ``f`` to ``g`` (up to GL(2,Z)).

    Returns the chain, or ``None`` when nothing is found within the bounds
    or an invariant already separates the two.
    """
    try:
        if singularity_content(newton_polygon(f)).key() != singularity_content(
            newton_polygon(g)
        ).key():
            return None
    except ValueError:
        pass  # invariant only defined for Fano Newton polygons
    if period_coefficients(f, horizon, "pruned") != period_coefficients(g, horizon, "pruned"):
        return None
    frontier: list[tuple[LaurentPoly, tuple[MutationData, ...]]] = [(f, ())]
    seen = {f}
    for depth in range(max_depth + 1):
        nxt = []
        for h, path in frontier:
            U = unimodular_equivalence(h, g)
            if U is not None:
                return LaurentChain(path, U)
            if depth == max_depth:
                continue
            for m in _edge_mutations(h):
                try:
                    h2 = mutate_laurent(h, m)
                except NotMutable:
                    continue
                if h2 in seen:
                    continue
                seen.add(h2)
                if len(seen) > max_nodes:
                    return None
                nxt.append((h2, path + (m,)))
        frontier = nxt
    return None


# -- maximally mutable Laurent polynomials -----------------------------------


class NotTPolygon(ValueError):
    pass


class NonUniqueSolution(ValueError):
    def __init__(self, dimension: int):
        super().__init__(f"solution space has dimension {dimension}")
        self.dimension = dimension


@dataclass(frozen=True)
class MMLPResult:
    poly: LaurentPoly
    dimension: int
    unknowns: int
    constraints: int
    nodes: int
    levels: int


def _edge_points(start: Exp, end: Exp, length: int) -> list[Exp]:
    dx, dy = (end[0] - start[0]) // length, (end[1] - start[1]) // length
    return [(start[0] + i * dx, start[1] + i * dy) for i in range(length + 1)]


def _sym_mutate(Q: dict, v: Exp, w: Exp, k: int, remainders_only: bool = False) -> tuple[dict, list]:
    """Mutate a symbolic polynomial by ``(1 + x^w)^k`` along ``v``.

    Returns the mutated polynomial (valid when the constraints hold) and
    the remainder coefficients that must vanish.
    """
    den = {j: Fraction(math.comb(k, j)) for j in range(k + 1)}
    by_h: dict[int, dict[Exp, object]] = {}
    for e, c in Q.items():
        by_h.setdefault(pair(v, e), {})[e] = c
    out: dict[Exp, object] = {}
    constraints = []

    def add(e, c):
        out[e] = out[e] + c if e in out else c

    for h, terms in by_h.items():
        base = next(iter(terms))
        coords = {_scalar_along((e[0] - base[0], e[1] - base[1]), w): c for e, c in terms.items()}
        if h >= 0:
            if remainders_only:
                continue
            fac = _upow(den, h)
            for s, c in coords.items():
                for j, d in fac.items():
                    add((base[0] + (s + j) * w[0], base[1] + (s + j) * w[1]), c * d)
        else:
            quot, rem = divmod_univariate(coords, _upow(den, -h))
            constraints.extend(rem.values())
            for s, c in quot.items():
                add((base[0] + s * w[0], base[1] + s * w[1]), c)
    return out, constraints


def _is_zero(vec) -> bool:
    return not any(vec)


def solve_mmlp(P: FanoPolygon, depth: int = 3) -> MMLPResult:
    """Normalized maximally mutable Laurent polynomial on a T-polygon.

    Boundary coefficients are binomial along each edge, the constant term is
    zero and the remaining interior coefficients are unknowns. Every mutation
    sequence of length at most ``depth`` must be realizable by algebraic
    mutations with factors ``(1 + x^w)^k``; the resulting divisibility
    conditions are linear in the unknowns and solved exactly.
    """
    from ._linalg import affine_solve
    from .polygon import edge_data, mutate_polygon

    if depth < 1:
        raise ValueError("depth must be positive")
    edges = edge_data(P)
    if any(e.residue for e in edges):
        raise NotTPolygon(f"{P} has R-cones")
    unknowns = [p for p in P.interior_points() if p != (0, 0)]
    n = len(unknowns)

    def const(c):
        vec = np.array([Fraction(0)] * (n + 1), dtype=object)
        vec[0] = Fraction(c)
        return vec

    Q: dict[Exp, object] = {}
    for e in edges:
        for i, p in enumerate(_edge_points(e.start, e.end, e.length)):
            Q[p] = const(math.comb(e.length, i))
    for i, p in enumerate(unknowns):
        vec = const(0)
        vec[i + 1] = Fraction(1)
        Q[p] = vec

    dim = n
    levels = 0
    total = 0
    nodes = 0
    frontier = [(P, Q, None)]
    for level in range(depth):
        nodes += len(frontier)
        rows = []
        for poly, sym, _ in frontier:
            for e in edge_data(poly):
                if e.t_count:
                    # divisibility by the largest factor implies it for smaller k
                    rows += _sym_mutate(sym, e.normal, primitive_perp(e.normal), e.t_count, True)[1]
        rows = [r for r in rows if not _is_zero(r)]
        total += len(rows)
        if rows:
            p0, N = affine_solve([list(r) for r in rows], dim)
            # new coefficient vector = [c + a.p0, a.N]
            free = len(N[0]) if N else 0
            T = np.array(
                [[Fraction(1)] + [Fraction(0)] * free] + [[p0[i]] + list(N[i]) for i in range(dim)],
                dtype=object,
            )
            dim = free

            def sub(d):
                out = {}
                for e, c in d.items():
                    c2 = c.dot(T)
                    if not _is_zero(c2):
                        out[e] = c2
                return out

            frontier = [(poly, sub(sym), m) for poly, sym, m in frontier]
            Q = sub(Q)
        levels = level + 1
        if dim == 0 or level + 1 == depth:
            # the solution space cannot shrink further
            break
        children = []
        for poly, sym, parent in frontier:
            for e in edge_data(poly):
                v = e.normal
                w = primitive_perp(v)
                for k in range(1, e.t_count + 1):
                    if parent is not None and parent.v == (-v[0], -v[1]) and parent.k == k:
                        continue  # undoes the previous step
                    m = MutationData(v, w, k)
                    children.append((mutate_polygon(poly, m), _sym_mutate(sym, v, w, k)[0], m))
        frontier = children

    poly = LaurentPoly({e: c[0] for e, c in Q.items()})
    return MMLPResult(poly, dim, n, total, nodes, levels)


def mmlp(P: FanoPolygon, depth: int = 3) -> LaurentPoly:
    res = solve_mmlp(P, depth)
    if res.dimension:
        raise NonUniqueSolution(res.dimension)
    return res.poly
