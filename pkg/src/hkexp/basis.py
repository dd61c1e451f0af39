"""Reduction of curvature scalars onto the independent monomial bases.

Scalars built from at most three curvature factors and six derivatives span
a 15-element basis once the cyclic identity of the Riemann tensor, its
differential analogue, derivative reorderings, and (under a volume integral)
total-derivative identities are taken into account.  Instead of an oriented
rewrite list, the reducer generates every applicable relation on the closure
of the monomials it is asked about and solves the resulting linear system
once; the classical printed identities then hold as consequences and are
pinned in the test suite.

Einstein-space and sphere specializations act on reduced tables directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .exact import DR_ONE, DR_ZERO, D, DimRational
from .tensor import (G, RC, RM, RS, Monomial, TensorPolynomial, canonicalize,
                     factor, mono, mono_weight, poly)

A_, B_, C_, D_, E_, F_ = 1000, 1001, 1002, 1003, 1004, 1005


def _basis_monos() -> Dict[str, Monomial]:
    rm, rc, rs = (lambda *a: factor(RM, a[:4], a[4:]),
                  lambda *a: factor(RC, a[:2], a[2:]),
                  lambda *a: factor(RS, (), a))
    box_rs = factor(RS, (), (E_, E_))
    box_rc = factor(RC, (A_, B_), (E_, E_))
    table = {
        "R0": mono(),
        "R1": mono(rs()),
        "R2_1": mono(rs(), rs()),
        "R2_2": mono(rc(A_, B_), rc(A_, B_)),
        "R2_3": mono(rm(A_, B_, C_, D_), rm(A_, B_, C_, D_)),
        "R3_1": mono(rs(), box_rs),
        "R3_2": mono(rc(A_, B_), box_rc),
        "R3_3": mono(rs(), rs(), rs()),
        "R3_4": mono(rs(), rc(A_, B_), rc(A_, B_)),
        "R3_5": mono(rc(A_, B_), rc(B_, C_), rc(C_, A_)),
        "R3_6": mono(rc(A_, B_), rc(C_, D_), rm(A_, C_, B_, D_)),
        "R3_7": mono(rs(), rm(A_, B_, C_, D_), rm(A_, B_, C_, D_)),
        "R3_8": mono(rc(A_, B_), rm(A_, C_, D_, E_), rm(B_, C_, D_, E_)),
        "R3_9": mono(rm(A_, B_, C_, D_), rm(A_, B_, E_, F_), rm(C_, D_, E_, F_)),
        "R3_10": mono(rm(A_, B_, C_, D_), rm(A_, E_, C_, F_), rm(B_, E_, D_, F_)),
    }
    out = {}
    for key, m in table.items():
        cm, c = canonicalize(m)
        assert c == DR_ONE, (key, c)
        out[key] = cm
    return out


GENERAL_BASIS_IDS = ["R0", "R1", "R2_1", "R2_2", "R2_3"] + [f"R3_{i}" for i in range(1, 11)]
EINSTEIN_BASIS_IDS = ["E0", "E1", "E2_1", "E2_2", "E3_1", "E3_2", "E3_3", "E3_4"]
SPHERE_BASIS_IDS = ["R0", "R1", "R2", "R3"]

BASIS_MONOS = _basis_monos()
_MONO_TO_ID = {m: k for k, m in BASIS_MONOS.items()}


class UnknownMonomialError(ValueError):
    def __init__(self, m):
        from .pretty import mono_str
        super().__init__(f"monomial irreducible in this mode: {mono_str(m)}")
        self.monomial = m


@dataclass
class CoeffTable:
    """Basis-indexed exact coefficients; the machine form of a traced table."""

    bundle: str
    entries: Dict[str, DimRational] = field(default_factory=dict)
    basis: Tuple[str, ...] = tuple(GENERAL_BASIS_IDS)

    def get(self, key: str) -> DimRational:
        return self.entries.get(key, DR_ZERO)

    def set(self, key: str, value) -> None:
        value = DimRational.coerce(value)
        if value.is_zero():
            self.entries.pop(key, None)
        else:
            self.entries[key] = value

    def add(self, key: str, value) -> None:
        self.set(key, self.get(key) + DimRational.coerce(value))

    def __iadd__(self, other: "CoeffTable") -> "CoeffTable":
        for k, v in other.entries.items():
            self.add(k, v)
        return self

    def scaled(self, c) -> "CoeffTable":
        out = CoeffTable(self.bundle, basis=self.basis)
        for k, v in self.entries.items():
            out.set(k, v * DimRational.coerce(c))
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, CoeffTable)
                and {k: v for k, v in self.entries.items()}
                == {k: v for k, v in other.entries.items()})


# ---------------------------------------------------------------------------
# relation generation
# ---------------------------------------------------------------------------

def _fresh(m: Monomial) -> int:
    mx = 1000
    for _, own, der in m:
        for i in list(own) + list(der):
            mx = max(mx, i)
    return mx + 1


def _replace_factor(m: Monomial, pos: int, newfacs) -> Monomial:
    return m[:pos] + tuple(newfacs) + m[pos + 1:]


def _first_bianchi_rows(m: Monomial, pos: int):
    """R_{a[bcd]} = 0 instantiated in place on the Riemann factor at pos."""
    head, own, der = m[pos]
    a, b, c, d = own
    v1 = _replace_factor(m, pos, [(RM, (a, c, d, b), der)])
    v2 = _replace_factor(m, pos, [(RM, (a, d, b, c), der)])
    return [(Fraction(1), m), (Fraction(1), v1), (Fraction(1), v2)]


def _second_bianchi_rows(m: Monomial, pos: int, first_pair: bool = False):
    """R_{ab[cd;e]} cyclic identity on the innermost derivative.

    With ``first_pair`` the identity is instantiated on the pair-exchanged
    image, cycling (a, b, e) instead of (c, d, e).
    """
    head, own, der = m[pos]
    a, b, c, d = own
    if first_pair:
        a, b, c, d = c, d, a, b
    e, rest = der[0], der[1:]
    v1 = _replace_factor(m, pos, [(RM, (a, b, d, e), (c,) + rest)])
    v2 = _replace_factor(m, pos, [(RM, (a, b, e, c), (d,) + rest)])
    here = _replace_factor(m, pos, [(RM, (a, b, c, d), der)])
    return [(Fraction(1), here), (Fraction(1), v1), (Fraction(1), v2)]


def _swap_deriv_rows(m: Monomial, pos: int, i: int):
    """Commute derivative slots i, i+1 of the factor at pos.

    X_{;..ab..} - X_{;..ba..} = ([D_b, D_a] X_{;prefix})_{;suffix}, the
    commutator substituting -R_{baes} on every index slot s of the prefixed
    factor and the suffix distributing by Leibniz.  Rows sum to zero.
    """
    from .coincidence import ordered_splits
    head, own, der = m[pos]
    a, b = der[i], der[i + 1]
    swapped = _replace_factor(m, pos, [(head, own, der[:i] + (b, a) + der[i + 2:])])
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
            rows.append((Fraction(1), _replace_factor(m, pos, [rfac, xfac])))
    return rows


def _rm_divergence_rows(m: Monomial, pos: int):
    """Contracted second Bianchi: R_{ebcd;e...} = R_{bd;c...} - R_{bc;d...}."""
    from .tensor import HEAD_SYMS
    head, own, der = m[pos]
    e = der[0]
    for perm, sgn in HEAD_SYMS[RM]:
        t = tuple(own[p] for p in perm)
        if t[0] == e:
            b, c, d = t[1], t[2], t[3]
            rest = der[1:]
            repl1 = _replace_factor(m, pos, [(RC, (b, d), (c,) + rest)])
            repl2 = _replace_factor(m, pos, [(RC, (b, c), (d,) + rest)])
            return [(Fraction(1), m), (Fraction(-sgn), repl1), (Fraction(sgn), repl2)]
    raise AssertionError("contracted slot not found")


def _rc_divergence_rows(m: Monomial, pos: int):
    """Twice-contracted Bianchi: Ric_{ae;e...} = (1/2) R_{;a...}."""
    head, own, der = m[pos]
    e = der[0]
    other = own[1] if own[0] == e else own[0]
    repl = _replace_factor(m, pos, [(RS, (), (other,) + der[1:])])
    return [(Fraction(1), m), (Fraction(-1, 2), repl)]


def _ibp_rows(m: Monomial, pos: int):
    """Total-derivative identity: strip the outermost derivative of the
    factor at pos and redistribute it over all factors; rows sum to zero
    under the volume integral."""
    head, own, der = m[pos]
    e = der[-1]
    base = _replace_factor(m, pos, [(head, own, der[:-1])])
    rows = []
    for k, (h2, own2, der2) in enumerate(base):
        if h2 == G:
            continue
        rows.append((Fraction(1), _replace_factor(base, k, [(h2, own2, der2 + (e,))])))
    return rows


def _canonical_row(rows) -> Dict[Monomial, Fraction]:
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


class Reducer:
    """Reduces weight <= 3 curvature scalars onto the 15-element basis."""

    def __init__(self, integrated: bool):
        self.integrated = integrated
        # expression of every known monomial over the free columns
        self._expr: Dict[Monomial, Dict[Monomial, Fraction]] = {}
        self._known: set = set()
        self._relations: List[Dict[Monomial, Fraction]] = []
        self._rel_keys: set = set()
        self.discard_log: List[str] = []

    # -- public -------------------------------------------------------------

    def reduce_poly(self, p: TensorPolynomial, bundle: str = "") -> CoeffTable:
        out = CoeffTable(bundle)
        for m, c in p.terms.items():
            if m and any(i < 1000 for f in m for grp in (f[1], f[2]) for i in grp):
                raise ValueError("reduce expects scalars (no free indices)")
            for bid, bc in self.reduce_monomial(m).items():
                out.add(bid, c * DimRational.coerce(bc))
        return out

    def normal_form(self, m: Monomial) -> Dict[Monomial, Fraction]:
        """Expression of m over the free columns of the relation system."""
        if not m:
            return {(): Fraction(1)}
        cm, mult = canonicalize(m)
        if cm is None:
            return {}
        mult = mult.as_fraction()
        if cm not in self._expr:
            self._extend_closure([cm])
        return {mm: c * mult for mm, c in self._expr[cm].items()}

    def normal_form_poly(self, p: TensorPolynomial) -> Dict[Monomial, DimRational]:
        out: Dict[Monomial, DimRational] = {}
        for m, c in p.terms.items():
            for mm, f in self.normal_form(m).items():
                tot = out.get(mm, DR_ZERO) + c * DimRational.coerce(f)
                if tot.is_zero():
                    out.pop(mm, None)
                else:
                    out[mm] = tot
        return out

    def reduce_monomial(self, m: Monomial) -> Dict[str, Fraction]:
        out = {}
        for bm, c in self.normal_form(m).items():
            bid = _MONO_TO_ID.get(bm) if bm else "R0"
            if bid is None:
                raise UnknownMonomialError(bm)
            out[bid] = c
        return out

    # -- closure + elimination ----------------------------------------------

    def _relations_at(self, m: Monomial):
        rels = []
        for pos, (h, own, der) in enumerate(m):
            if h == RM:
                rels.append(_first_bianchi_rows(m, pos))
                if der:
                    rels.append(_second_bianchi_rows(m, pos))
                    rels.append(_second_bianchi_rows(m, pos, first_pair=True))
                    if der[0] in own:
                        rels.append(_rm_divergence_rows(m, pos))
            if h == RC and der and der[0] in own:
                rels.append(_rc_divergence_rows(m, pos))
            if len(der) >= 2:
                for i in range(len(der) - 1):
                    rels.append(_swap_deriv_rows(m, pos, i))
            if der and self.integrated:
                rels.append(_ibp_rows(m, pos))
        return [r for r in (_canonical_row(rows) for rows in rels) if r]

    def _extend_closure(self, seeds) -> None:
        work = [m for m in seeds if m not in self._known]
        if not work:
            return
        while work:
            m = work.pop()
            if m in self._known:
                continue
            self._known.add(m)
            for row in self._relations_at(m):
                key = tuple(sorted(((mm, c) for mm, c in row.items()), key=str))
                if key in self._rel_keys:
                    continue
                self._rel_keys.add(key)
                self._relations.append(row)
                for mm in row:
                    if mm not in self._known:
                        work.append(mm)
        self._solve(self._relations)

    def _solve(self, relations) -> None:
        # order: non-basis monomials first (more derivatives = earlier pivot),
        # basis elements last so they end up as the free variables
        monos = sorted(self._known,
                       key=lambda m: (m in _MONO_TO_ID,
                                      -sum(len(der) for _, _, der in m),
                                      str(m)))
        index = {m: k for k, m in enumerate(monos)}
        rows = []
        for rel in relations:
            rows.append({index[m]: c for m, c in rel.items()})
        pivots: Dict[int, Dict[int, Fraction]] = {}
        for row in rows:
            row = {c: v for c, v in row.items() if v}
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
        # back-substitute: express every pivot column over the free columns
        solved: Dict[int, Dict[int, Fraction]] = {}
        for piv in sorted(pivots, reverse=True):
            expr: Dict[int, Fraction] = {}
            for col, v in pivots[piv].items():
                if col == piv:
                    continue
                if col in solved:
                    for c2, v2 in solved[col].items():
                        expr[c2] = expr.get(c2, Fraction(0)) - v * v2
                        if not expr[c2]:
                            del expr[c2]
                else:
                    expr[col] = expr.get(col, Fraction(0)) - v
                    if not expr[col]:
                        del expr[col]
            solved[piv] = expr
        self._expr = {}
        for m in self._known:
            k = index[m]
            if k in solved:
                self._expr[m] = {monos[c]: v for c, v in solved[k].items()}
                if self.integrated and not solved[k] and m not in _MONO_TO_ID:
                    from .pretty import mono_str
                    self.discard_log.append(mono_str(m))
            else:
                self._expr[m] = {m: Fraction(1)}


_REDUCERS: Dict[bool, Reducer] = {}


def reducer(integrated: bool = True) -> Reducer:
    r = _REDUCERS.get(integrated)
    if r is None:
        r = _REDUCERS[integrated] = Reducer(integrated)
    return r


# ---------------------------------------------------------------------------
# Einstein-space and sphere specializations (table level)
# ---------------------------------------------------------------------------

_EINSTEIN_MAP: Dict[str, List[Tuple[str, DimRational]]] = {
    "R0": [("E0", DR_ONE)],
    "R1": [("E1", DR_ONE)],
    "R2_1": [("E2_1", DR_ONE)],
    "R2_2": [("E2_1", DR_ONE / D)],
    "R2_3": [("E2_2", DR_ONE)],
    "R3_1": [],
    "R3_2": [],
    "R3_3": [("E3_1", DR_ONE)],
    "R3_4": [("E3_1", DR_ONE / D)],
    "R3_5": [("E3_1", DR_ONE / (D * D))],
    "R3_6": [("E3_1", DR_ONE / (D * D))],
    "R3_7": [("E3_2", DR_ONE)],
    "R3_8": [("E3_2", DR_ONE / D)],
    "R3_9": [("E3_3", DR_ONE)],
    "R3_10": [("E3_4", DR_ONE)],
}

_SPHERE_MAP: Dict[str, Tuple[str, DimRational]] = {
    "E0": ("R0", DR_ONE),
    "E1": ("R1", DR_ONE),
    "E2_1": ("R2", DR_ONE),
    "E2_2": ("R2", 2 / (D * (D - 1))),
    "E3_1": ("R3", DR_ONE),
    "E3_2": ("R3", 2 / (D * (D - 1))),
    "E3_3": ("R3", 4 / (D * D * (D - 1) * (D - 1))),
    "E3_4": ("R3", (D - 2) / (D * D * (D - 1) * (D - 1))),
}


def specialize_einstein(t: CoeffTable) -> CoeffTable:
    out = CoeffTable(t.bundle, basis=tuple(EINSTEIN_BASIS_IDS))
    for key, val in t.entries.items():
        for ekey, m in _EINSTEIN_MAP[key]:
            out.add(ekey, val * m)
    return out


def specialize_sphere(t: CoeffTable) -> CoeffTable:
    if tuple(t.basis) == tuple(GENERAL_BASIS_IDS):
        t = specialize_einstein(t)
    out = CoeffTable(t.bundle, basis=tuple(SPHERE_BASIS_IDS))
    for key, val in t.entries.items():
        skey, m = _SPHERE_MAP[key]
        out.add(skey, val * m)
    return out
