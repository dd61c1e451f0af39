"""Pointwise identity-aware equality of tensor polynomials.

Two representations of the same tensor can differ by derivative
reorderings, cyclic Riemann identities, their contractions, and the
field-strength Bianchi identity.  This module decides equality by building
the relation closure of the difference's monomials and checking that the
difference lies in the span of the relations.  Works for any free-index
structure and for internal-matrix factors (whose derivative reorderings
generate two-sided F commutator terms).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List

from .coincidence import ordered_splits
from .exact import DimRational
from .tensor import (F, IS_MATRIX, RC, RM, RS, HEAD_SYMS, Monomial,
                     TensorPolynomial, canonicalize)


def _fresh(m: Monomial) -> int:
    mx = 1000
    for _, own, der in m:
        for i in list(own) + list(der):
            mx = max(mx, i)
    return mx + 1


def _replace(m, pos, newfacs):
    return m[:pos] + tuple(newfacs) + m[pos + 1:]


def _swap_rows(m: Monomial, pos: int, i: int):
    """X_{;..ab..} - X_{;..ba..} = ([D_b,D_a] X_{;prefix})_{;suffix} rows."""
    head, own, der = m[pos]
    a, b = der[i], der[i + 1]
    swapped = _replace(m, pos, [(head, own, der[:i] + (b, a) + der[i + 2:])])
    rows = [(Fraction(1), m), (Fraction(-1), swapped)]
    e = _fresh(m)
    suffix = tuple(der[i + 2:])
    slots = list(own) + list(der[:i])
    for k, s in enumerate(slots):
        newown, newder = list(own), list(der[:i])
        if k < len(own):
            newown[k] = e
        else:
            newder[k - len(own)] = e
        for sub, comp in ordered_splits(suffix):
            rfac = (RM, (b, a, e, s), tuple(sub))
            xfac = (head, tuple(newown), tuple(newder) + comp)
            rows.append((Fraction(1), _replace(m, pos, [rfac, xfac])))
    if IS_MATRIX[head]:
        for sub, comp in ordered_splits(suffix):
            ffac = (F, (b, a), tuple(sub))
            xfac = (head, own, der[:i] + comp)
            rows.append((Fraction(-1), _replace(m, pos, [ffac, xfac])))
            rows.append((Fraction(1), _replace(m, pos, [xfac, ffac])))
    return rows


def _first_bianchi(m, pos):
    head, own, der = m[pos]
    a, b, c, d = own
    return [(Fraction(1), m),
            (Fraction(1), _replace(m, pos, [(RM, (a, c, d, b), der)])),
            (Fraction(1), _replace(m, pos, [(RM, (a, d, b, c), der)]))]


def _second_bianchi(m, pos, first_pair=False):
    head, own, der = m[pos]
    a, b, c, d = own
    if first_pair:
        a, b, c, d = c, d, a, b
    e, rest = der[0], der[1:]
    return [(Fraction(1), _replace(m, pos, [(RM, (a, b, c, d), der)])),
            (Fraction(1), _replace(m, pos, [(RM, (a, b, d, e), (c,) + rest)])),
            (Fraction(1), _replace(m, pos, [(RM, (a, b, e, c), (d,) + rest)]))]


def _f_bianchi(m, pos):
    """D_{[a} F_{bc]} = 0 for the full connection curvature."""
    head, own, der = m[pos]
    b, c = own
    a, rest = der[0], der[1:]
    return [(Fraction(1), m),
            (Fraction(1), _replace(m, pos, [(F, (c, a), (b,) + rest)])),
            (Fraction(1), _replace(m, pos, [(F, (a, b), (c,) + rest)]))]


def _rm_divergence(m, pos):
    head, own, der = m[pos]
    e = der[0]
    for perm, sgn in HEAD_SYMS[RM]:
        t = tuple(own[p] for p in perm)
        if t[0] == e:
            b, c, d = t[1], t[2], t[3]
            rest = der[1:]
            return [(Fraction(1), m),
                    (Fraction(-sgn), _replace(m, pos, [(RC, (b, d), (c,) + rest)])),
                    (Fraction(sgn), _replace(m, pos, [(RC, (b, c), (d,) + rest)]))]
    raise AssertionError


def _rc_divergence(m, pos):
    head, own, der = m[pos]
    e = der[0]
    other = own[1] if own[0] == e else own[0]
    return [(Fraction(1), m),
            (Fraction(-1, 2), _replace(m, pos, [(RS, (), (other,) + der[1:])]))]


def _canonical_row(rows):
    out: Dict[Monomial, Fraction] = {}
    for coeff, m in rows:
        cm, mult = canonicalize(m)
        if cm is None:
            continue
        c = coeff * mult.as_fraction()
        tot = out.get(cm, Fraction(0)) + c
        if tot:
            out[cm] = tot
        else:
            out.pop(cm, None)
    return out


def _relations_at(m: Monomial):
    rels = []
    for pos, (h, own, der) in enumerate(m):
        if h == RM:
            rels.append(_first_bianchi(m, pos))
            if der:
                rels.append(_second_bianchi(m, pos))
                rels.append(_second_bianchi(m, pos, True))
                if der[0] in own:
                    rels.append(_rm_divergence(m, pos))
        if h == RC and der and der[0] in own:
            rels.append(_rc_divergence(m, pos))
        if h == F and der:
            rels.append(_f_bianchi(m, pos))
        for i in range(len(der) - 1):
            rels.append(_swap_rows(m, pos, i))
    return [r for r in map(_canonical_row, rels) if r]


def normal_form_residual(p: TensorPolynomial) -> TensorPolynomial:
    """Reduce p against the pointwise identity span; zero iff p is an identity."""
    if p.is_zero():
        return p
    target = {m: c for m, c in p.terms.items()}
    known = set()
    work = list(target)
    relations: List[Dict[Monomial, Fraction]] = []
    seen = set()
    while work:
        m = work.pop()
        if m in known:
            continue
        known.add(m)
        for row in _relations_at(m):
            key = tuple(sorted(((mm, c) for mm, c in row.items()), key=str))
            if key in seen:
                continue
            seen.add(key)
            relations.append(row)
            for mm in row:
                if mm not in known:
                    work.append(mm)
    monos = sorted(known, key=str)
    index = {m: k for k, m in enumerate(monos)}
    pivots: Dict[int, Dict[int, Fraction]] = {}
    for rel in relations:
        row = {index[m]: c for m, c in rel.items()}
        while row:
            piv = min(row)
            hit = pivots.get(piv)
            if hit is None:
                pv = row[piv]
                pivots[piv] = {c: v / pv for c, v in row.items()}
                break
            f = row[piv]
            for c2, v2 in hit.items():
                nv = row.get(c2, Fraction(0)) - f * v2
                if nv:
                    row[c2] = nv
                else:
                    row.pop(c2, None)
    # reduce the target against the triangular system
    trow: Dict[int, DimRational] = {index[m]: c for m, c in target.items()}
    for piv in sorted(pivots):
        c = trow.get(piv)
        if c is None or c.is_zero():
            continue
        for c2, v2 in pivots[piv].items():
            nv = trow.get(c2, DimRational.coerce(0)) - c * DimRational.coerce(v2)
            if nv.is_zero():
                trow.pop(c2, None)
            else:
                trow[c2] = nv
    return TensorPolynomial({monos[k]: v for k, v in trow.items()})


def reduces_to_zero(p: TensorPolynomial) -> bool:
    return normal_form_residual(p).is_zero()


def assert_equivalent(p: TensorPolynomial, q: TensorPolynomial, msg: str = "") -> None:
    res = normal_form_residual(p - q)
    if not res.is_zero():
        from .pretty import poly_str
        raise AssertionError(f"{msg} difference not an identity:\n{poly_str(res)}")
