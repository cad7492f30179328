"""The lattices I_{1,n}, E_n and classification of anticanonical cycles.

Vectors are integer tuples of coordinates in the basis ``e_0 .. e_n``.
The pairing is ``diag(1, -1, ..., -1)``, so roots have square ``-2`` and
adjacent simple roots pair to ``+1``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from ._linalg import Inconsistent, affine_solve, elementary_divisors, rank

Vector = tuple[int, ...]

# coefficients of the highest root of E8 in the canonical basis b_0 .. b_7
HIGHEST_ROOT = (3, 2, 4, 6, 5, 4, 3, 2)


class LatticeError(ValueError):
    pass


class NotOrthonormalBasis(LatticeError):
    pass


class WrongCanonicalClass(LatticeError):
    pass


class NotARoot(LatticeError):
    pass


class NotE8Basis(LatticeError):
    pass


class NotInRootLattice(LatticeError):
    pass


class NotAnticanonical(LatticeError):
    pass


class BadIntersectionPattern(LatticeError):
    pass


class NotNegTwoClass(LatticeError):
    pass


@dataclass(frozen=True)
class GramLattice:
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.gram
        n = len(g)
        if any(len(row) != n for row in g):
            raise LatticeError("gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise LatticeError("gram matrix must be symmetric")
        if self.det() == 0:
            raise LatticeError("gram matrix is degenerate")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def det(self) -> int:
        from sympy import Matrix

        return int(Matrix(self.gram).det())

    def check(self, v: Sequence[int]) -> Vector:
        if len(v) != self.rank:
            raise LatticeError(f"vector of length {len(v)} in a lattice of rank {self.rank}")
        return tuple(int(x) for x in v)

    def pairing(self, a: Sequence[int], b: Sequence[int]) -> int:
        g = self.gram
        return sum(a[i] * g[i][j] * b[j] for i in range(len(a)) for j in range(len(b)) if g[i][j])

    def basis_vector(self, i: int) -> Vector:
        return tuple(int(j == i) for j in range(self.rank))


def make_i1n(n: int) -> GramLattice:
    if n < 1:
        raise ValueError("n must be positive")
    return GramLattice(
        tuple(tuple((1 if i == 0 else -1) if i == j else 0 for j in range(n + 1)) for i in range(n + 1))
    )



def canonical_class(n: int) -> Vector:
    """``k_n = -3 e_0 + e_1 + ... + e_n``."""
    return (-3,) + (1,) * n


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    """Pairing in I_{1,n}."""
    return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))


def add(*vs: Sequence[int]) -> Vector:
    return tuple(sum(c) for c in zip(*vs))


def scale(c: int, v: Sequence[int]) -> Vector:
    return tuple(c * x for x in v)


def combine(coeffs: Sequence[int], basis: Sequence[Sequence[int]]) -> Vector:
    out = [0] * len(basis[0])
    for c, b in zip(coeffs, basis):
        for i, x in enumerate(b):
            out[i] += c * x
    return tuple(out)


@lru_cache(maxsize=None)
def en_roots(n: int) -> tuple[Vector, ...]:
    """All roots of E_n inside I_{1,n}, 3 <= n <= 8.

    A root ``d e_0 + sum k_i e_i`` satisfies ``sum k_i = -3d`` and
    ``sum k_i^2 = d^2 + 2``. Cauchy-Schwarz gives ``9 d^2 <= n (d^2 + 2)``,
    which bounds ``d``; the norm bounds each ``k_i``.
    """
    if not 3 <= n <= 8:
        raise ValueError("en_roots needs 3 <= n <= 8")
    dmax = math.isqrt(2 * n // (9 - n))
    out = []

    def extend(prefix, remaining_sq, remaining_sum, slots):
        if slots == 0:
            if remaining_sq == 0 and remaining_sum == 0:
                out.append(tuple(prefix))
            return
        # the rest must fit: remaining_sum^2 <= slots * remaining_sq
        if remaining_sum * remaining_sum > slots * remaining_sq:
            return
        b = math.isqrt(remaining_sq)
        for k in range(-b, b + 1):
            prefix.append(k)
            extend(prefix, remaining_sq - k * k, remaining_sum - k, slots - 1)
            prefix.pop()

    for d in range(-dmax, dmax + 1):
        extend([d], d * d + 2, -3 * d, n)
    return tuple(sorted(out))


def weyl_reflect(alpha: Sequence[int], beta: Sequence[int]) -> Vector:
    """``s_alpha(beta) = beta + (beta . alpha) alpha``."""
    if dot(alpha, alpha) != -2:
        raise NotARoot(f"{tuple(alpha)} has square {dot(alpha, alpha)}, not -2")
    c = dot(beta, alpha)
    return tuple(b + c * a for a, b in zip(alpha, beta))


def dynkin_en(n: int) -> list[list[int]]:
    """Expected pairings of the canonical basis: chain b_1..b_{n-1}, b_0 on b_3."""
    G = [[0] * n for _ in range(n)]
    for i in range(n):
        G[i][i] = -2
    edges = [(i, i + 1) for i in range(1, n - 1)] + [(0, 3)]
    for i, j in edges:
        if j < n:
            G[i][j] = G[j][i] = 1
    return G


def canonical_root_basis(ortho: Sequence[Sequence[int]]) -> list[Vector]:
    """``b_0 = v_0 - v_1 - v_2 - v_3`` and ``b_i = v_i - v_{i+1}``."""
    v = [tuple(int(x) for x in p) for p in ortho]
    n = len(v) - 1
    if n < 3 or any(len(p) != n + 1 for p in v):
        raise NotOrthonormalBasis("need n+1 vectors of length n+1 with n >= 3")
    for i in range(n + 1):
        for j in range(n + 1):
            want = (1 if i == 0 else -1) if i == j else 0
            if dot(v[i], v[j]) != want:
                raise NotOrthonormalBasis(f"v_{i} . v_{j} = {dot(v[i], v[j])}, expected {want}")
    if add(scale(-3, v[0]), *v[1:]) != canonical_class(n):
        raise WrongCanonicalClass("-3 v_0 + sum v_i is not k_n")
    basis = [add(v[0], scale(-1, v[1]), scale(-1, v[2]), scale(-1, v[3]))]
    basis += [add(v[i], scale(-1, v[i + 1])) for i in range(1, n)]
    G = [[dot(a, b) for b in basis] for a in basis]
    if G != dynkin_en(n):
        raise NotOrthonormalBasis("output does not have the E_n diagram")  # unreachable
    return basis


def standard_root_basis(n: int) -> list[Vector]:
    return canonical_root_basis([tuple(int(i == j) for j in range(n + 1)) for i in range(n + 1)])


def highest_root(basis: Sequence[Sequence[int]]) -> Vector:
    """``3b_0 + 2b_1 + 4b_2 + 6b_3 + 5b_4 + 4b_5 + 3b_6 + 2b_7``.

    Accepts a canonical basis of E_8 or the first eight members of a
    longer canonical basis.
    """
    if len(basis) < 8:
        raise NotE8Basis("need at least 8 basis vectors")
    b = [tuple(x) for x in basis[:8]]
    if [[dot(x, y) for y in b] for x in b] != dynkin_en(8):
        raise NotE8Basis("basis does not have the E_8 diagram")
    top = combine(HIGHEST_ROOT, b)
    if dot(top, top) != -2 or any(dot(top, x) > 0 for x in b):
        raise NotE8Basis("highest root check failed")  # unreachable for a valid diagram
    return top


def root_basis_coords(c: Sequence[int], basis: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Integer coordinates of ``c`` in a canonical root basis."""
    c = tuple(c)
    n = len(basis)
    rows = [[-c[j]] + [b[j] for b in basis] for j in range(len(c))]
    try:
        p0, N = affine_solve(rows, n)
    except Inconsistent:
        raise NotInRootLattice(f"{c} is not in the span of the root basis") from None
    if N and N[0]:
        raise LatticeError("root basis is not linearly independent")
    if any(x.denominator != 1 for x in p0):
        raise NotInRootLattice(f"{c} has fractional root coordinates {p0}")
    return tuple(int(x) for x in p0)


# -- classification of anticanonical cycles ---------------------------------


@dataclass(frozen=True)
class RootSublatticeClass:
    rank: int
    primitive: bool
    label: str

    def to_json(self) -> dict:
        return {"rank": self.rank, "primitive": self.primitive, "label": self.label}


CLASS_LABELS = (
    "r0", "r1", "r2", "r3", "r4", "r5", "r6", "r7-primitive", "r7-imprimitive", "r8",
)


def _label(r: int, primitive: bool) -> str:
    if r == 7:
        return "r7-primitive" if primitive else "r7-imprimitive"
    return f"r{r}"


def kappa_coords() -> tuple[int, ...]:
    """Root coordinates of ``-k_9`` (the null root of the affine E_8)."""
    return HIGHEST_ROOT + (1,)


def _standard_coords(c: Sequence[int]) -> tuple[int, ...]:
    """Root coordinates in the standard basis of I_{1,9}, solved by back substitution."""
    x = [c[0], c[1] + c[0]]
    x.append(c[2] + x[0] + x[1])
    x.append(c[3] + x[0] + x[2])
    for i in range(4, 9):
        x.append(c[i] + x[i - 1])
    if -x[8] != c[9]:
        raise NotInRootLattice(f"{tuple(c)} is not orthogonal to k_9")
    return tuple(x)


def e8_image(c: Sequence[int], basis: Sequence[Sequence[int]] | None = None) -> tuple[int, ...]:
    """Image of a class in ``k_9^perp / Z k_9``, as coordinates in b_0 .. b_7."""
    x = _standard_coords(c) if basis is None else root_basis_coords(c, basis)
    kap = kappa_coords()
    return tuple(x[i] - x[8] * kap[i] for i in range(8))


def check_cycle(components: Sequence[Sequence[int]]) -> None:
    D = [tuple(int(x) for x in c) for c in components]
    if not D or any(len(c) != 10 for c in D):
        raise LatticeError("components must be vectors in I_{1,9}")
    r = len(D) - 1
    if add(*D) != scale(-1, canonical_class(9)):
        raise NotAnticanonical("components do not sum to -k_9")
    if r == 0:
        return
    for i, c in enumerate(D):
        if dot(c, c) != -2:
            raise NotNegTwoClass(f"D_{i} has square {dot(c, c)}")
    for i in range(r + 1):
        for j in range(i + 1, r + 1):
            if r == 1:
                want = 2
            else:
                want = 1 if (j - i) % (r + 1) in (1, r) else 0
            if dot(D[i], D[j]) != want:
                raise BadIntersectionPattern(f"D_{i} . D_{j} = {dot(D[i], D[j])}, expected {want}")


def classify_boundary(
    components: Sequence[Sequence[int]], ambient: GramLattice | None = None
) -> RootSublatticeClass:
    """Rank and primitivity of the root sublattice spanned by a cycle in E_8."""
    if ambient is not None and ambient != make_i1n(9):
        raise LatticeError("ambient lattice must be I_{1,9}")
    check_cycle(components)
    rows = [e8_image(c) for c in components]
    r = rank([list(x) for x in rows])
    divisors = elementary_divisors([list(x) for x in rows])
    primitive = all(d == 1 for d in divisors)
    return RootSublatticeClass(r, primitive, _label(r, primitive))


def lift_e8_root(root: Sequence[int]) -> Vector:
    """A root of I_{1,8} viewed inside I_{1,9}; it stays orthogonal to k_9."""
    return tuple(root) + (0,)


def random_cycle(r: int, rng: random.Random, max_tries: int = 200) -> list[Vector]:
    """A random anticanonical cycle of ``r + 1`` components in I_{1,9}.

    For ``r >= 2`` a chain of E_8 roots with consecutive pairings 1 is
    grown at random and closed up by ``D_0 = -k_9 - sum D_i``.
    """
    anti = scale(-1, canonical_class(9))
    if r == 0:
        return [anti]
    roots = [lift_e8_root(a) for a in en_roots(8)]
    if r == 1:
        a = rng.choice(roots)
        return [a, add(anti, scale(-1, a))]
    for _ in range(max_tries):
        chain = [rng.choice(roots)]
        while len(chain) < r:
            last = chain[-1]
            cands = [
                a for a in roots
                if dot(a, last) == 1 and all(dot(a, b) == 0 for b in chain[:-1])
            ]
            if not cands:
                break
            chain.append(rng.choice(cands))
        if len(chain) == r:
            D0 = add(anti, *(scale(-1, c) for c in chain))
            return [D0] + chain
    raise RuntimeError(f"no chain of length {r} found")


def random_weyl_word(rng: random.Random, length: int) -> list[Vector]:
    """Reflections in random roots of the affine E_8; all fix k_9."""
    basis = standard_root_basis(9)
    return [rng.choice(basis) for _ in range(length)]


def apply_word(word: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    for a in word:
        v = weyl_reflect(a, v)
    return tuple(v)


def r7_classes(samples: int = 200, seed: int = 0) -> dict[str, int]:
    """Sample r = 7 cycles and count the resulting classes."""
    rng = random.Random(seed)
    counts: dict[str, int] = {}
    for _ in range(samples):
        cls = classify_boundary(random_cycle(7, rng))
        counts[cls.label] = counts.get(cls.label, 0) + 1
    return counts
