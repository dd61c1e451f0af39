"""Recursive solution for coincidence limits of heat-kernel coefficients.

Applying m covariant derivatives to the defining recursion of the expansion
coefficients and taking coincidence limits yields, at each (order n, m
derivatives), a linear relation whose unknown multiplicity is n + m: the
dimension drops out identically because the contracted second derivative of
the world function is the metric trace.  Entries are stored as full
unsymmetrized tensors with slot labels 0..m-1 (innermost derivative first).

Entry (n, m) carries curvature weight n + m/2; the table covers every cell
with weight <= max_weight (3 by default, the cubic truncation).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Tuple

from .coincidence import MU, carrier_correction, positional_looker, subsets_of
from .exact import DimRational
from .sigma import SigmaTable
from .tensor import E, TensorPolynomial, factor, mono_weight

TERM_CAP = 200_000  # loud failure beats silent truncation


class MissingEntryError(KeyError):
    def __init__(self, n, m):
        super().__init__(f"coefficient entry (n={n}, m={m}) not yet computed")


class CoeffDerivTable:
    """Coincidence limits of m derivatives of the order-n coefficient."""

    def __init__(self, sigma: SigmaTable | None = None, max_weight: int = 3):
        self.max_weight = max_weight
        self.sigma = sigma if sigma is not None else SigmaTable(2 * max_weight + 2)
        self._entries: Dict[Tuple[int, int], TensorPolynomial] = {}
        self._lookers: Dict[int, callable] = {}
        for n in range(0, max_weight + 1):
            for m in range(0, 2 * (max_weight - n) + 1):
                self._entries[(n, m)] = self._solve(n, m)
                self._check(n, m)

    def entry(self, n: int, m: int) -> TensorPolynomial:
        try:
            return self._entries[(n, m)]
        except KeyError:
            raise MissingEntryError(n, m) from None

    def entry_symmetrized(self, n: int, m: int) -> TensorPolynomial:
        return self.entry(n, m).symmetrize(range(m))

    def cells(self):
        return sorted(self._entries)

    def _looker(self, n: int):
        fn = self._lookers.get(n)
        if fn is None:
            fn = self._lookers[n] = positional_looker(lambda k, n=n: self.entry(n, k))
        return fn

    def lookup(self, n: int, string) -> TensorPolynomial:
        return self._looker(n)(tuple(string))

    # -- the linear relation at one cell -------------------------------------

    def _solve(self, n: int, m: int) -> TensorPolynomial:
        if n == 0 and m == 0:
            return TensorPolynomial.scalar(1)
        names = tuple(range(m))
        lhs = TensorPolynomial.zero()

        # trace-of-sigma terms: (1/2) sigma_{;aa S} x (entry n, S^c)
        for size in range(1, m + 1):
            for s in subsets_of(names, size):
                sig = self.sigma.lookup((MU, MU) + s)
                if sig.is_zero():
                    continue
                comp = tuple(i for i in names if i not in s)
                lhs += (sig * self.lookup(n, comp)).scale(Fraction(1, 2))

        # gradient-of-sigma terms with >= 3 derivatives on sigma
        for size in range(2, m + 1):
            for s in subsets_of(names, size):
                sig = self.sigma.lookup((MU,) + s)
                if sig.is_zero():
                    continue
                comp = tuple(i for i in names if i not in s)
                lhs += sig * self.lookup(n, (MU,) + comp)

        # carrier reordering corrections
        look_n = self._looker(n)
        for j in range(m):
            lhs += carrier_correction(look_n, m, j, matrix=True)

        if n >= 1:
            # -(previous coefficient)_{;aa S}
            lhs -= self.lookup(n - 1, (MU, MU) + names)
            # + E_{;S} (previous coefficient)_{;S^c}, E multiplying from the left
            for size in range(0, m + 1):
                for s in subsets_of(names, size):
                    comp = tuple(i for i in names if i not in s)
                    prev = self.lookup(n - 1, comp)
                    if prev.is_zero():
                        continue
                    lhs += prev.matrix_mul_left(factor(E, (), s))

        return lhs.scale(Fraction(-1, n + m))

    def _check(self, n: int, m: int) -> None:
        entry = self._entries[(n, m)]
        if len(entry) > TERM_CAP:
            raise RuntimeError(f"entry ({n},{m}) exceeded the term cap")
        w = Fraction(n) + Fraction(m, 2)
        for mm, c in entry.terms.items():
            assert mono_weight(mm) == w, f"weight violation in entry ({n},{m})"
            assert c.is_constant(), f"dimension symbol leaked into entry ({n},{m})"
