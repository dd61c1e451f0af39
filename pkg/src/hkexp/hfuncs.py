"""Heat-kernel matrix elements with covariant derivative insertions.

Applying a derivative string to the covariant Gaussian ansatz and taking
the coincidence limit expresses every insertion trace through products of
world-function coincidence limits and coefficient-table entries.  The
result is graded by the power of the proper time u relative to the overall
(4 pi u)^(-d/2): entry j collects the u^j part.

Strings are innermost first; the expansion keeps curvature weight <= cap.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from .dewitt import CoeffDerivTable
from .tensor import TensorPolynomial

WSeries = Dict[int, TensorPolynomial]


def _phi_terms(k: int):
    """Expand the derivative string symbolically over the Gaussian factor.

    Terms are (q, blocks, omega) with q the count of -1/(2u) prefactors,
    blocks a tuple of world-function derivative strings, and omega the
    string landing on the coefficient series.  Slot labels are 0..k-1,
    innermost first.
    """
    terms: List[Tuple[int, Tuple[Tuple[int, ...], ...], Tuple[int, ...]]] = [(0, (), ())]
    for c in range(k):
        nxt = []
        for q, blocks, omega in terms:
            # derivative lands on the exponential: a fresh block
            nxt.append((q + 1, blocks + ((c,),), omega))
            # on an existing block
            for i, b in enumerate(blocks):
                nxt.append((q, blocks[:i] + (b + (c,),) + blocks[i + 1:], omega))
            # on the coefficient series
            nxt.append((q, blocks, omega + (c,)))
        terms = nxt
    return terms


class WFunctions:
    """Cache of insertion tensors per string length on the generic bundle."""

    def __init__(self, table: CoeffDerivTable, cap: int = 3):
        self.table = table
        self.cap = Fraction(cap)
        self._cache: Dict[int, WSeries] = {}

    def generic(self, k: int) -> WSeries:
        hit = self._cache.get(k)
        if hit is None:
            hit = self._build(k)
            self._cache[k] = hit
        return hit

    def string(self, labels: Tuple[int, ...]) -> WSeries:
        """Insertion tensor for an arbitrary (possibly contracted) string."""
        gen = self.generic(len(labels))
        mapping = dict(enumerate(labels))
        return {j: p.rename_free(mapping) for j, p in gen.items() if not p.is_zero()}

    def _build(self, k: int) -> WSeries:
        sigma = self.table.sigma
        out: WSeries = {}
        for q, blocks, omega in _phi_terms(k):
            if any(len(b) < 2 for b in blocks):
                continue  # coincidence kills bare first derivatives
            wsig = sum(Fraction(len(b), 2) - 1 for b in blocks)
            if wsig + Fraction(len(omega), 2) > self.cap:
                continue
            sig_poly = None
            dead = False
            for b in blocks:
                lb = sigma.lookup(b)
                if lb.is_zero():
                    dead = True
                    break
                sig_poly = lb if sig_poly is None else sig_poly * lb
            if dead:
                continue
            nmax = int(self.cap - wsig - Fraction(len(omega), 2))
            for n in range(0, nmax + 1):
                try:
                    a_entry = self.table.lookup(n, omega)
                except KeyError:
                    continue
                if a_entry.is_zero():
                    continue
                piece = a_entry if sig_poly is None else sig_poly * a_entry
                piece = piece.scale(Fraction(-1, 2) ** q)
                j = n - q
                cur = out.get(j)
                out[j] = piece if cur is None else cur + piece
        return {j: p for j, p in out.items() if not p.is_zero()}
