"""Coincidence limits of derivatives of the world function.

The world function is half the squared geodesic distance; differentiating
its defining identity (half the squared gradient equals the function itself)
n times and taking coincidence limits yields one linear relation per level,
solved bottom-up.  Level n is stored as the full unsymmetrized tensor with
slot labels 0..n-1 (innermost derivative first); entries carry curvature
weight n/2 - 1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Tuple

from .coincidence import MU, carrier_correction, positional_looker, subsets_of
from .tensor import G, TensorPolynomial, factor, mono, mono_weight, poly


class SigmaTable:
    """Unsymmetrized coincidence limits, levels 0..max_derivs."""

    def __init__(self, max_derivs: int = 8):
        if max_derivs > 8:
            raise ValueError("levels above 8 are never needed at cubic order")
        self.max_derivs = max_derivs
        self._entries: Dict[int, TensorPolynomial] = {
            0: TensorPolynomial.zero(),
            1: TensorPolynomial.zero(),
            2: poly((1, mono(factor(G, (0, 1))))),
        }
        self._looker = positional_looker(self.entry)
        for n in range(3, max_derivs + 1):
            self._entries[n] = self._solve_level(n)

    def entry(self, n: int) -> TensorPolynomial:
        return self._entries[n]

    def lookup(self, string: Tuple[int, ...]) -> TensorPolynomial:
        if len(string) > self.max_derivs:
            raise KeyError(f"sigma table built to {self.max_derivs} derivatives")
        return self._looker(tuple(string))

    def entry_symmetrized(self, n: int, over=None) -> TensorPolynomial:
        e = self._entries[n]
        return e.symmetrize(range(n) if over is None else over)

    def _solve_level(self, n: int) -> TensorPolynomial:
        names = tuple(range(n))
        rhs = TensorPolynomial.zero()
        # products of two lower entries, both factors carrying >= 3 derivatives
        for size in range(2, n - 1):
            for s in subsets_of(names, size):
                comp = tuple(i for i in names if i not in s)
                a = self.lookup((MU,) + s)
                if a.is_zero():
                    continue
                b = self.lookup((MU,) + comp)
                if b.is_zero():
                    continue
                rhs += (a * b).scale(Fraction(1, 2))
        # reordering corrections from the n carrier terms
        for j in range(n):
            rhs += carrier_correction(self._looker, n, j, matrix=False)
        out = rhs.scale(Fraction(-1, n - 1))
        for m in out.terms:
            assert mono_weight(m) == Fraction(n, 2) - 1, f"weight violation at level {n}"
        return out
