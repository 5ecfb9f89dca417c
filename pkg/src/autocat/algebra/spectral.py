"""Characteristic polynomials and a floating-point Perron root estimate."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import PreconditionError
from .matrix import RationalMatrix, _require_square, is_irreducible, is_metzler

DEFAULT_TAU = 1e-9
DEAD_ZONE = 1e-6


@dataclass(frozen=True)
class CharPoly:
    """Coefficients of det(lambda I - A), highest degree first (leading 1)."""

    coefficients: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def constant(self) -> Fraction:
        return self.coefficients[-1]

    def __call__(self, lam) -> Fraction:
        acc = Fraction(0)
        for c in self.coefficients:
            acc = acc * lam + c
        return acc

    def sign_changes(self) -> int:
        """Number of sign changes in the coefficient sequence, zeros skipped."""
        signs = [1 if c > 0 else -1 for c in self.coefficients if c != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def char_poly(m: RationalMatrix) -> CharPoly:
    """Exact characteristic polynomial by the Faddeev-LeVerrier recursion."""
    _require_square(m)
    n = m.nrows
    coeffs = [Fraction(1)]
    ident = RationalMatrix.identity(n)
    mk = RationalMatrix.zeros(n, n)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(coeffs[-1])
        amk = m @ mk
        coeffs.append(-sum(amk.diagonal(), Fraction(0)) / k)
    return CharPoly(tuple(coeffs))


def _check_perron_input(m: RationalMatrix) -> None:
    if not is_metzler(m):
        raise PreconditionError("Perron estimate needs a Metzler matrix")
    if not is_irreducible(m):
        raise PreconditionError("Perron estimate needs an irreducible matrix")


def perron_root(m: RationalMatrix, max_iter: int = 10_000, tol: float = 1e-12) -> float:
    """Estimate the Perron root of an irreducible Metzler matrix.

    Power iteration runs on P = A + (c + 1) I where c is the largest
    absolute diagonal entry; the extra unit shift makes P primitive, so the
    iteration converges even for periodic patterns.  Collatz-Wielandt bounds
    are used as the stopping test.
    """
    _check_perron_input(m)
    a = np.array([[float(v) for v in row] for row in m.rows])
    n = a.shape[0]
    shift = float(np.max(np.abs(np.diag(a)))) + 1.0
    p = a + shift * np.eye(n)
    v = np.ones(n)
    lower = upper = 0.0
    for _ in range(max_iter):
        w = p @ v
        ratios = w / v
        lower, upper = float(ratios.min()), float(ratios.max())
        v = w / np.linalg.norm(w)
        if upper - lower <= tol * max(1.0, abs(upper)):
            break
    return 0.5 * (lower + upper) - shift


def perron_unstable(m: RationalMatrix, tau: float = DEFAULT_TAU) -> bool:
    """True iff the estimated Perron root exceeds ``tau``."""
    return perron_root(m) > tau
