"""Exact linear algebra helpers backed by sympy's domain matrices."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import ZZ, QQ, Matrix
from sympy.polys.matrices import DomainMatrix
from sympy.matrices.normalforms import invariant_factors


class Inconsistent(ValueError):
    """A linear system has no solution."""


def _qq(x) -> object:
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def affine_solve(rows: Sequence[Sequence], nvars: int):
    """Solve ``c + a . p = 0`` for each row ``[c, a_1 .. a_n]``.

    Returns ``(p0, N)``: a particular solution (list of Fractions) and a
    basis of the homogeneous solutions as columns of ``N`` (a list of
    ``nvars`` rows with one entry per free variable). Raises
    :class:`Inconsistent` if there is no solution.
    """
    rows = [r for r in rows if any(r)]
    if not rows:
        return [Fraction(0)] * nvars, [
            [Fraction(int(i == j)) for j in range(nvars)] for i in range(nvars)
        ]
    # augmented matrix [a | -c]
    data = [[_qq(x) for x in r[1:]] + [_qq(-Fraction(r[0]))] for r in rows]
    M = DomainMatrix(data, (len(data), nvars + 1), QQ)
    R, pivots = M.rref()
    R = R.to_Matrix()
    if nvars in pivots:
        raise Inconsistent("linear constraints have no solution")
    free = [j for j in range(nvars) if j not in pivots]
    p0 = [Fraction(0)] * nvars
    N = [[Fraction(0)] * len(free) for _ in range(nvars)]
    for i, pc in enumerate(pivots):
        p0[pc] = _frac(QQ.convert(R[i, nvars]))
        for t, fc in enumerate(free):
            N[pc][t] = -_frac(QQ.convert(R[i, fc]))
    for t, fc in enumerate(free):
        N[fc][t] = Fraction(1)
    return p0, N


def rank(rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 0
    return Matrix(rows).rank()


def elementary_divisors(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix."""
    if not rows or not any(any(r) for r in rows):
        return []
    M = Matrix(rows)
    return [abs(int(d)) for d in invariant_factors(M, domain=ZZ) if d != 0]
