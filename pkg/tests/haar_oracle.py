"""Independent Haar oracle: right invariance solved in exact Fractions at a fixed rational q.

Unknowns h_j = h((g* g)^j), j = 0..J, with h_0 = 1.  For each x = (g* g)^m
the identity (h (x) id) Delta(x) = h(x) 1 gives one equation per non-unit
monomial of the surviving leg.  The system is solved by plain Gauss-Jordan
elimination over Fraction, with no symbolic q involved.
"""
from __future__ import annotations

from fractions import Fraction

from qglab.core.algebra import Algebra, Element, Monomial
from qglab.core.hopf import coproduct


def _frac(v) -> Fraction:
    if v.im:
        raise ValueError("unexpected imaginary part")
    return Fraction(int(v.re.numerator), int(v.re.denominator))


def _equations(J: int, q: Fraction) -> list:
    unit = Monomial(0, 0, 0, 0)
    rows = []
    for m in range(1, J + 1):
        x = Element(Algebra.SUQ2, {Monomial(0, m, m, 0): 1})
        by_leg: dict = {}
        for (left, right), c in coproduct(x).terms.items():
            if left.a or left.g != left.gs:
                continue
            row = by_leg.setdefault(right, [Fraction(0)] * (J + 1))
            row[left.g] += _frac(c.evaluate_exact(q))
        for right, row in by_leg.items():
            if right == unit:
                row = list(row)
                row[m] -= 1
            rows.append(row)
    return rows


def _solve(rows: list, n: int) -> list:
    # append normalization h_0 = 1 and run Gauss-Jordan on the augmented system
    A = [r[:] + [Fraction(0)] for r in rows]
    A.append([Fraction(1)] + [Fraction(0)] * (n - 1) + [Fraction(1)])
    piv_row = 0
    pivots = []
    for col in range(n):
        p = next((r for r in range(piv_row, len(A)) if A[r][col] != 0), None)
        if p is None:
            continue
        A[piv_row], A[p] = A[p], A[piv_row]
        inv = 1 / A[piv_row][col]
        A[piv_row] = [v * inv for v in A[piv_row]]
        for r in range(len(A)):
            if r != piv_row and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[piv_row])]
        pivots.append(col)
        piv_row += 1
    if pivots != list(range(n)):
        raise ArithmeticError("oracle system is singular")
    if any(all(v == 0 for v in r[:-1]) and r[-1] != 0 for r in A):
        raise ArithmeticError("oracle system is inconsistent")
    return [A[i][-1] for i in range(n)]


def haar_diagonal_oracle(J: int, q: Fraction) -> list:
    """[h(1), h(g* g), ..., h((g* g)^J)] at the rational q."""
    return _solve(_equations(J, Fraction(q)), J + 1)
