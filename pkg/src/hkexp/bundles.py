"""Field-space realizations and traced early-time expansions.

The general results carry an abstract endomorphism and connection
curvature.  On the concrete field spaces both are fixed: the endomorphism
vanishes and the connection curvature becomes the commutator of metric
derivatives, i.e. a Riemann expression acting on the fiber.  Internal
traces are explicit index contractions; symmetric-tensor fibers symmetrize
with unit strength.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .basis import CoeffTable, Reducer, reducer
from .dewitt import CoeffDerivTable
from .exact import DR_ONE, D
from .tensor import (E, F, G, IS_MATRIX, RM, TensorPolynomial, factor)

BUNDLES = ("scalar", "vector", "tensor")

FIBER_DIM = {
    "scalar": DR_ONE,
    "vector": D,
    "tensor": D * (D + 1) / 2,
}

_LINK = 78_000  # internal chain labels, instantly contracted away


def realize(p: TensorPolynomial, bundle: str, row: Optional[int] = None,
            col: Optional[int] = None) -> TensorPolynomial:
    """Replace internal-matrix factors by their field-space expressions.

    With row/col the result is the matrix element with those open fiber
    labels (vector bundle only); otherwise the internal trace is taken.
    The endomorphism vanishes on all three field spaces, so terms with E
    drop.
    """
    traced = row is None
    if bundle not in BUNDLES:
        raise ValueError(f"unknown bundle {bundle!r}")
    if not traced and bundle != "vector":
        raise ValueError("open fiber labels are only supported on the vector bundle")
    out = TensorPolynomial.zero()
    for m, c in p.terms.items():
        mf = [f for f in m if IS_MATRIX[f[0]]]
        cf = [f for f in m if not IS_MATRIX[f[0]]]
        if any(h == E for h, _, _ in mf):
            continue
        if bundle == "scalar":
            if not mf:
                out.add_monomial(c, tuple(cf))
            continue
        if bundle == "vector":
            if not mf:
                if traced:
                    out.add_monomial(c * D, tuple(cf))
                else:
                    out.add_monomial(c, tuple(cf) + (factor(G, (row, col)),))
                continue
            n = len(mf)
            links = ([row] if not traced else [_LINK]) \
                + [_LINK + 1 + i for i in range(n - 1)] \
                + ([col] if not traced else [_LINK])
            chain = []
            for i, (h, own, der) in enumerate(mf):
                a, b = own
                chain.append(factor(RM, (a, b, links[i], links[i + 1]), der))
            out.add_monomial(c, tuple(cf) + tuple(chain))
            continue
        # symmetric-tensor bundle, traced
        if not mf:
            out.add_monomial(c * D * (D + 1) / 2, tuple(cf))
            continue
        n = len(mf)
        pairs = [(_LINK + 2 * i, _LINK + 2 * i + 1) for i in range(n)]
        pairs.append(pairs[0])
        pieces = [(c, list(cf))]
        for i, (h, own, der) in enumerate(mf):
            a, b = own
            r1, r2 = pairs[i]
            c1, c2 = pairs[i + 1]
            new_pieces = []
            for (x, y, u, v) in ((r1, c1, r2, c2), (r1, c2, r2, c1),
                                 (r2, c1, r1, c2), (r2, c2, r1, c1)):
                ex = [factor(RM, (a, b, x, y), der), factor(G, (u, v))]
                for cc, acc in pieces:
                    new_pieces.append((cc * Fraction(1, 2), acc + ex))
            pieces = new_pieces
        for cc, acc in pieces:
            out.add_monomial(cc, tuple(acc))
    return out


def internal_trace(p: TensorPolynomial, bundle: str) -> TensorPolynomial:
    return realize(p, bundle)


def traced_expansion(table: CoeffDerivTable, bundle: str,
                     red: Optional[Reducer] = None) -> CoeffTable:
    """Early-time expansion coefficients of the plain heat trace."""
    red = red or reducer(integrated=True)
    out = CoeffTable(bundle)
    for n in range(0, table.max_weight + 1):
        traced = internal_trace(table.entry(n, 0), bundle)
        out += red.reduce_poly(traced, bundle)
    out.bundle = bundle
    return out
