"""Exact semipositivity test.

A matrix M is semipositive when some v >> 0 has M v >> 0.  Up to scaling
this is the feasibility of {M v >= 1, v >= 0}, which is decided here by a
phase-one simplex over the rationals with Bland's anticycling rule.  When the
system is infeasible the final simplex multipliers give a Farkas vector
y >= 0, y != 0 with y^T M <= 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from ..errors import NotSemipositiveError
from .matrix import RationalMatrix, rank


@dataclass(frozen=True)
class SemipositivityCertificate:
    """Either a witness v >> 0 with M v >> 0 or a Farkas refutation.

    Exactly one of ``witness`` and ``refutation`` is set, except for
    matrices without rows, which are treated as not semipositive and carry
    an empty refutation.
    """

    witness: tuple[Fraction, ...] | None = None
    refutation: tuple[Fraction, ...] | None = None

    def __bool__(self):
        return self.witness is not None

    @property
    def semipositive(self) -> bool:
        return self.witness is not None

    def verify(self, m: RationalMatrix) -> bool:
        """Re-check the certificate against ``m`` in exact arithmetic."""
        if self.witness is not None:
            if self.refutation is not None or len(self.witness) != m.ncols:
                return False
            return all(v > 0 for v in self.witness) and all(a > 0 for a in m.apply(self.witness))
        if self.refutation is None:
            return False
        if m.nrows == 0:
            return self.refutation == ()
        y = self.refutation
        if len(y) != m.nrows or any(a < 0 for a in y) or not any(y):
            return False
        return all(a <= 0 for a in m.left_apply(y))


def _primitive(vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale a non-negative rational vector to coprime integers."""
    d = lcm(*(v.denominator for v in vec)) if vec else 1
    ints = [int(v * d) for v in vec]
    g = 0
    for a in ints:
        g = gcd(g, a)
    g = g or 1
    return tuple(Fraction(a // g) for a in ints)


def _phase_one(m: RationalMatrix):
    """Minimise the artificial sum for M v - s + a = 1.

    Returns ``(optimum, values, multipliers)``; ``values`` are the v
    components of the final basic solution.
    """
    n, k = m.shape
    width = k + 2 * n
    tab = []
    for i in range(n):
        row = list(m.row(i)) + [Fraction(0)] * (2 * n) + [Fraction(1)]
        row[k + i] = Fraction(-1)
        row[k + n + i] = Fraction(1)
        tab.append(row)
    basis = [k + n + i for i in range(n)]
    cost = [Fraction(0)] * (k + n) + [Fraction(1)] * n
    # reduced costs c_j - c_B B^-1 A_j with B = I on the artificials
    reduced = [cost[j] - sum((tab[i][j] for i in range(n)), Fraction(0)) for j in range(width)]

    while True:
        enter = next((j for j in range(width) if reduced[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(n):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # cannot happen: the phase-one objective is bounded below
            raise ArithmeticError("unbounded phase-one problem")
        piv = tab[leave][enter]
        prow = [v / piv for v in tab[leave]]
        tab[leave] = prow
        for i in range(n):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], prow)]
        f = reduced[enter]
        reduced = [a - f * b for a, b in zip(reduced, prow[:-1])]
        basis[leave] = enter

    optimum = sum((cost[basis[i]] * tab[i][-1] for i in range(n)), Fraction(0))
    values = [Fraction(0)] * k
    for i, b in enumerate(basis):
        if b < k:
            values[b] = tab[i][-1]
    multipliers = [1 - reduced[k + n + i] for i in range(n)]
    return optimum, values, multipliers


def is_semipositive(m: RationalMatrix) -> SemipositivityCertificate:
    """Decide semipositivity exactly and return a checkable certificate."""
    n, k = m.shape
    if n == 0:
        return SemipositivityCertificate(refutation=())
    optimum, values, y = _phase_one(m)
    if optimum > 0:
        cert = SemipositivityCertificate(refutation=_primitive(y))
    else:
        mv = m.apply(values)
        eps = min(mv) / (1 + m.max_abs_row_sum())
        cert = SemipositivityCertificate(witness=_primitive([v + eps for v in values]))
    assert cert.verify(m), "internal error: simplex certificate failed verification"
    return cert


def reduce_columns_semipositive(m: RationalMatrix) -> tuple[RationalMatrix, tuple[int, ...]]:
    """Drop columns of a semipositive matrix until the columns are independent.

    Returns the reduced matrix and the indices of the kept columns.  Every
    intermediate matrix stays semipositive.
    """
    if not is_semipositive(m):
        raise NotSemipositiveError("matrix is not semipositive")
    kept = list(range(m.ncols))
    current = m
    while rank(current) < current.ncols:
        for pos in range(current.ncols):
            candidate = current.drop_column(pos)
            if is_semipositive(candidate):
                current = candidate
                del kept[pos]
                break
        else:  # pragma: no cover - a dependent column can always be dropped
            raise ArithmeticError("no removable column found")
    return current, tuple(kept)
