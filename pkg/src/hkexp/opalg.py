"""Operator algebra for traces of projected Laplacians.

An operator is a sum of normal-ordered terms

    coeff * M(curvature) * D_{c1} D_{c2} ... * InverseLaplacian^p

acting on one-forms or scalars, innermost derivative first.  The open
fiber lines are the reserved labels OUT (output index) and IN (the index
carried by the operand); both live inside the curvature monomial only,
never in the derivative string, so divergences and gradients route through
explicit metric factors.

Every rearrangement - commutators with the Laplacian, moving inverse
Laplacians rightward, Leibniz distribution of derivative strings - derives
from the single tensor commutation rule and is truncated at a fixed
curvature weight.  Adjacent contracted derivative pairs cancel against
inverse Laplacians during normalization, which keeps projector
orthogonality exact at the operator level.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .exact import DR_ONE, DimRational
from .tensor import (G, RC, RM, RS, Monomial, TensorPolynomial, _pair_up,
                     canonicalize, factor, mono, mono_weight)

OUT = 980
IN = 981
_EXT_MAX = 100    # labels below this are external, never renamed
_SLOT_A = 100     # canonical band for stored terms
_SLOT_B = 500     # band for right operands during composition
_LINK = 977
_FRESHA = 921
_FRESHB = 922
_FRESHC = 923

WEIGHT_CAP = Fraction(3)


@dataclass(frozen=True)
class OpTerm:
    coeff: DimRational
    mono: Monomial
    ds: Tuple[int, ...]
    p: int

    def weight(self) -> Fraction:
        return mono_weight(self.mono)


def _has_label(m: Monomial, lab: int) -> bool:
    return any(lab in own or lab in der for _, own, der in m)


def _ds_keys(m: Monomial, ds: Tuple[int, ...]):
    """Stable structural sort keys for derivative-string elements."""
    keys = []
    for c in ds:
        if c < _EXT_MAX:
            keys.append((0, c, 0))
            continue
        hit = None
        for fidx, (h, own, der) in enumerate(m):
            row = own + der
            if c in row:
                hit = (1, fidx, row.index(c))
                break
        keys.append(hit if hit is not None else (2, 0, 0))
    return keys


def _rename_label(m: Monomial, ds, old: int, new: int):
    m = tuple((h, tuple(new if i == old else i for i in own),
               tuple(new if i == old else i for i in der)) for h, own, der in m)
    return m, tuple(new if c == old else c for c in ds)


class Op:
    """Sum of normal-ordered operator terms within one slot-label band."""

    __slots__ = ("terms", "base", "cap", "_inflight")

    def __init__(self, base: int = _SLOT_A, cap: Fraction = WEIGHT_CAP):
        self.terms: Dict[Tuple, OpTerm] = {}
        self.base = base
        self.cap = cap
        self._inflight: set = set()

    def add(self, coeff, m: Monomial, ds: Tuple[int, ...], p: int) -> None:
        coeff = DimRational.coerce(coeff)
        if coeff.is_zero() or mono_weight(m) > self.cap:
            return
        coeff, m, ds, p = self._normalize(coeff, m, tuple(ds), p)
        if coeff.is_zero():
            return
        key = (m, ds, p)
        cur = self.terms.get(key)
        tot = coeff if cur is None else cur.coeff + coeff
        if tot.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = OpTerm(tot, m, ds, p)

    def _normalize(self, coeff: DimRational, m: Monomial, ds: Tuple[int, ...], p: int):
        if p >= 1 and len(ds) >= 2:
            for i in range(len(ds) - 1):
                a, b = ds[i], ds[i + 1]
                linked = a == b and a >= _EXT_MAX
                m2 = m
                if not linked and a != b:
                    for pos, (h, own, der) in enumerate(m):
                        if h == G and set(own) == {a, b}:
                            m2 = m[:pos] + m[pos + 1:]
                            linked = True
                            break
                if not linked:
                    continue
                # the contracted pair is a Laplacian inserted mid-string:
                # commute it to the right through the inner part
                inner, outer = ds[:i], ds[i + 2:]
                self.add(coeff * -1, m2, inner + outer, p - 1)
                sink = Op(self.base, self.cap)
                _delta_through_string(DR_ONE, m2, inner, outer, p, sink)
                for t in sink.terms.values():
                    self.add(coeff * t.coeff * -1, t.mono, t.ds, t.p)
                return DimRational.coerce(0), (), (), 0
        # repeated free labels inside the monomial become contractions
        m = _pair_up(m)
        # labels that no longer touch the derivative string become dummies
        ds_set = set(ds)
        ren: Dict[int, int] = {}
        demote = 90_000
        for _, own, der in m:
            for i in list(own) + list(der):
                if i >= _EXT_MAX and i not in (OUT, IN, _LINK) and i not in ds_set \
                        and i < 90_000 and i not in ren:
                    ren[i] = demote
                    demote += 1
        nxt = self.base
        new_ds = []
        for c in ds:
            if c < _EXT_MAX or c in (OUT, IN):
                new_ds.append(c)
                continue
            r = ren.get(c)
            if r is None:
                r = ren[c] = nxt
                nxt += 1
            new_ds.append(r)
        if ren:
            m = tuple((h, tuple(ren.get(i, i) for i in own),
                       tuple(ren.get(i, i) for i in der)) for h, own, der in m)
        cm, mult = canonicalize(m)
        if cm is None:
            return DimRational.coerce(0), (), (), 0
        coeff = coeff * mult
        ds = tuple(new_ds)
        # fold curvature divergences (contracted differential identity) so
        # the two Laplacian-commutation routes land on one normal form
        from .tensor import HEAD_SYMS
        for pos, (h, own, der) in enumerate(cm):
            if h == RM and der and der[0] in own:
                e = der[0]
                for perm, sgn in HEAD_SYMS[RM]:
                    t = tuple(own[q] for q in perm)
                    if t[0] == e:
                        b, c_, d_ = t[1], t[2], t[3]
                        rest = der[1:]
                        r1 = cm[:pos] + ((RC, (b, d_), (c_,) + rest),) + cm[pos + 1:]
                        r2 = cm[:pos] + ((RC, (b, c_), (d_,) + rest),) + cm[pos + 1:]
                        self.add(coeff * sgn, r1, ds, p)
                        self.add(coeff * -sgn, r2, ds, p)
                        return DimRational.coerce(0), (), (), 0
            if h == RC and der and der[0] in own:
                other = own[1] if own[0] == der[0] else own[0]
                r1 = cm[:pos] + ((RS, (), (other,) + der[1:]),) + cm[pos + 1:]
                self.add(coeff * Fraction(1, 2), r1, ds, p)
                return DimRational.coerce(0), (), (), 0
        # canonical derivative order: commute adjacent inversions, the
        # corrections re-entering recursively; a relabeling cycle guard
        # stores the term as-is rather than loop
        key0 = (cm, ds, p)
        if key0 not in self._inflight:
            keys = _ds_keys(cm, ds)
            for i in range(len(ds) - 1):
                if keys[i] > keys[i + 1]:
                    self._inflight.add(key0)
                    try:
                        self._swap_ds(coeff, cm, ds, i, p)
                    finally:
                        self._inflight.discard(key0)
                    return DimRational.coerce(0), (), (), 0
        return coeff, cm, ds, p

    def _swap_ds(self, coeff, m: Monomial, ds: Tuple[int, ...], i: int, p: int) -> None:
        """Rewrite with ds[i], ds[i+1] exchanged plus commutator corrections.

        D_.. D_y D_x .. = D_.. D_x D_y .. + outer([D_y, D_x] inner), the
        commutator substituting -R_{yxes} on inner slots and the fiber line.
        """
        x, y = ds[i], ds[i + 1]
        self.add(coeff, m, ds[:i] + (y, x) + ds[i + 2:], p)
        inner, outer = ds[:i], ds[i + 2:]
        fiber = _has_label(m, IN)
        cases = []
        for j in range(i):
            nd = list(inner)
            nd[j] = _FRESHB
            cases.append((m, tuple(nd), (y, x, _FRESHB, inner[j])))
        if fiber:
            m2, _ = _rename_label(m, (), IN, _FRESHC)
            cases.append((m2, inner, (y, x, IN, _FRESHC)))
        sink = Op(self.base, self.cap)
        for m2, nd, rown in cases:
            _emit_with_outer(coeff * -1, m2, factor(RM, rown), nd, outer, p, sink)
        for t in sink.terms.values():
            self.add(t.coeff, t.mono, t.ds, t.p)

    def iadd(self, other: "Op") -> "Op":
        for t in other.terms.values():
            self.add(t.coeff, t.mono, t.ds, t.p)
        return self

    def __add__(self, other: "Op") -> "Op":
        out = Op(self.base, self.cap)
        out.iadd(self)
        out.iadd(other)
        return out

    def scale(self, c) -> "Op":
        c = DimRational.coerce(c)
        out = Op(self.base, self.cap)
        if c.is_zero():
            return out
        for t in self.terms.values():
            out.add(t.coeff * c, t.mono, t.ds, t.p)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def has_in(self) -> bool:
        return any(_has_label(t.mono, IN) for t in self.terms.values())

    def __repr__(self) -> str:
        from .pretty import mono_str
        rows = []
        for t in sorted(self.terms.values(), key=lambda t: (t.p, len(t.ds), str(t.mono))):
            rows.append(f"({t.coeff}) {mono_str(t.mono)} D{list(t.ds)} IL^{t.p}")
        return "\n".join(rows) or "0"


# ---------------------------------------------------------------------------
# building blocks
# ---------------------------------------------------------------------------

def op_identity(cap=WEIGHT_CAP) -> Op:
    o = Op(cap=cap)
    o.add(1, mono(factor(G, (OUT, IN))), (), 0)
    return o


def op_div(cap=WEIGHT_CAP) -> Op:
    """One-forms to scalars: the covariant divergence."""
    o = Op(cap=cap)
    o.add(1, mono(factor(G, (900, IN))), (900,), 0)
    return o


def op_grad(cap=WEIGHT_CAP) -> Op:
    """Scalars to one-forms: the covariant gradient."""
    o = Op(cap=cap)
    o.add(1, mono(factor(G, (OUT, 900))), (900,), 0)
    return o


def op_ext_d(label: int, cap=WEIGHT_CAP) -> Op:
    """Scalar derivative with an external open index (for multi-commutators)."""
    o = Op(cap=cap)
    o.add(1, (), (label,), 0)
    return o


def op_ricci_out_in(cap=WEIGHT_CAP) -> Op:
    """Multiplication of a one-form by the Ricci tensor."""
    o = Op(cap=cap)
    o.add(1, mono(factor(RC, (OUT, IN))), (), 0)
    return o


# ---------------------------------------------------------------------------
# the Laplacian commutator
# ---------------------------------------------------------------------------

_COMM_CACHE: Dict[Tuple, List[OpTerm]] = {}
_MOVE_CACHE: Dict[Tuple, List[OpTerm]] = {}


def commutator_delta(op: Op) -> Op:
    """[Laplacian, op], normal ordered in the same band."""
    out = Op(op.base, op.cap)
    for term in op.terms.values():
        key = (term.mono, term.ds, op.base, op.cap)
        hit = _COMM_CACHE.get(key)
        if hit is None:
            unit = Op(op.base, op.cap)
            _commutator_delta_term(OpTerm(DR_ONE, term.mono, term.ds, 0), unit)
            hit = _COMM_CACHE[key] = list(unit.terms.values())
        for t in hit:
            out.add(t.coeff * term.coeff, t.mono, t.ds, t.p + term.p)
    return out


def _emit_with_outer(coeff, base_m: Monomial, rfac, pre_ds: Tuple[int, ...],
                     outer: Tuple[int, ...], p: int, out: Op) -> None:
    """Distribute outer derivatives over the emitted curvature factor and the
    operand; the operator's own monomial ``base_m`` is outside their reach.

    The final merge goes through the polynomial product so dummy labels stay
    disjoint and shared free labels contract."""
    base_poly = TensorPolynomial({base_m: DR_ONE}) if base_m else TensorPolynomial.scalar(1)
    seed = TensorPolynomial()
    seed.add_monomial(1, _pair_up((rfac,)))
    pieces = [(coeff, seed, pre_ds)]
    for c in outer:
        nxt = []
        for c3, fp, ds3 in pieces:
            dfp = fp.differentiate(c)
            if not dfp.is_zero():
                nxt.append((c3, dfp, ds3))
            nxt.append((c3, fp, ds3 + (c,)))
        pieces = nxt
    for c3, fp, ds3 in pieces:
        prod = base_poly * fp
        for m4, c4 in prod.terms.items():
            out.add(c3 * c4, m4, ds3, p)


def _delta_through_string(coeff, m: Monomial, ds: Tuple[int, ...],
                          trailer: Tuple[int, ...], p: int, out: Op) -> None:
    """Emit the terms of M [Laplacian, D_{ds}] Delta^{-p}, with ``trailer``
    derivative indices applied after the commutator.

    [Lap, D_c] Op = sum_s R_{aces;a} Op(s->e) + 2 sum_s R_{aces} (D_a Op)(s->e)
                    - Ric_{ce} (D_e Op),
    the slot sum running over the inner derivative labels and, on one-form
    operands, the fiber line.
    """
    fiber = _has_label(m, IN)
    for i, c in enumerate(ds):
        inner, outer = ds[:i], ds[i + 1:] + trailer
        cases = []
        for j in range(i):
            nd = list(inner)
            nd[j] = _FRESHB
            cases.append((m, tuple(nd), (_FRESHA, c, _FRESHB, inner[j])))
        if fiber:
            m2, _ = _rename_label(m, (), IN, _FRESHC)
            cases.append((m2, inner, (_FRESHA, c, IN, _FRESHC)))
        for m2, nd, rown in cases:
            _emit_with_outer(coeff, m2, factor(RM, rown, (_FRESHA,)),
                             nd, outer, p, out)
            _emit_with_outer(coeff * 2, m2, factor(RM, rown),
                             nd + (_FRESHA,), outer, p, out)
        _emit_with_outer(coeff * -1, m, factor(RC, (c, _FRESHB)),
                         inner + (_FRESHB,), outer, p, out)


def _commutator_delta_term(term: OpTerm, out: Op) -> None:
    mpoly = TensorPolynomial({term.mono: DR_ONE})
    # (Lap M) = -M_{;aa}
    lap_m = mpoly.differentiate(987).differentiate(987).scale(-1)
    for m2, c2 in lap_m.terms.items():
        out.add(term.coeff * c2, m2, term.ds, term.p)
    # -2 M_{;a} D_a, the derivative applied outermost
    grad_m = mpoly.differentiate(988)
    for m2, c2 in grad_m.terms.items():
        out.add(term.coeff * c2 * -2, m2, term.ds + (988,), term.p)
    # M [Laplacian, D-string]
    sink = Op(out.base, out.cap)
    _delta_through_string(term.coeff, term.mono, term.ds, (), term.p, sink)
    out.iadd(sink)


def nfold_commutator(op: Op, n: int) -> Op:
    """[op, Lap]_n, right-nested: [X, Lap] = X Lap - Lap X."""
    cur = op
    for _ in range(n):
        cur = commutator_delta(cur).scale(-1)
    return cur


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------

def compose(a: Op, b: Op) -> Op:
    """Operator product a b (a acts after b)."""
    cap = min(a.cap, b.cap)
    out = Op(a.base, cap)
    bband = Op(_SLOT_B, cap)
    for tb in b.terms.values():
        bband.add(tb.coeff, tb.mono, tb.ds, tb.p)
    for ta in a.terms.values():
        wa = ta.weight()
        a_in = _has_label(ta.mono, IN)
        for tb in bband.terms.values():
            if wa + tb.weight() > cap:
                continue
            am, ads = ta.mono, ta.ds
            bm, bds = tb.mono, tb.ds
            b_out = _has_label(bm, OUT)
            if a_in != b_out:
                raise ValueError("operator ranks do not match in composition")
            if a_in:
                am, ads = _rename_label(am, ads, IN, _LINK)
                bm, bds = _rename_label(bm, bds, OUT, _LINK)
            budget = cap - wa
            heads = [(ta.coeff * tb.coeff, bm, bds, tb.p)]
            for _ in range(ta.p):
                heads = _move_invlap_once(heads, cap, budget)
            amp = TensorPolynomial({am: DR_ONE})
            for cc, m2, ds2, p2 in heads:
                pieces = [(cc, TensorPolynomial({m2: DR_ONE}), ds2)]
                for c in ads:
                    nxt = []
                    for c3, mp, ds3 in pieces:
                        dm = mp.differentiate(c).truncate_weight(budget)
                        if not dm.is_zero():
                            nxt.append((c3, dm, ds3))
                        nxt.append((c3, mp, ds3 + (c,)))
                    pieces = nxt
                for c3, mp, ds3 in pieces:
                    prod = amp * mp
                    for m4, c4 in prod.terms.items():
                        out.add(c3 * c4, m4, ds3, p2)
    return out


def _move_invlap_once(heads, cap: Fraction, budget: Fraction):
    """InvLap . head -> sum_n [head, Lap]_n InvLap^(n+1), per head term."""
    out = []
    for cc, m2, ds2, p2 in heads:
        if mono_weight(m2) > budget:
            continue
        key = (m2, ds2, cap)
        hit = _MOVE_CACHE.get(key)
        if hit is None:
            hit = []
            cur = Op(_SLOT_B, cap)
            cur.add(1, m2, ds2, 0)
            n = 0
            while not cur.is_zero():
                for t in cur.terms.values():
                    hit.append(OpTerm(t.coeff, t.mono, t.ds, t.p + n + 1))
                n += 1
                if n > 12:
                    raise RuntimeError("inverse-Laplacian expansion failed to terminate")
                cur = commutator_delta(cur).scale(-1)
            _MOVE_CACHE[key] = hit
        for t in hit:
            if t.weight() <= budget:
                out.append((t.coeff * cc, t.mono, t.ds, t.p + p2))
    return out


def op_commutator(a: Op, b: Op) -> Op:
    return compose(a, b) + compose(b, a).scale(-1)


def multicommutator_library(n_max: int = 4) -> Dict[str, List[Op]]:
    """Engine-derived multi-commutators with the Laplacian.

    'scalar'[n] is the n-fold commutator of the derivative with open index 0
    acting on scalars; 'vector'[n] the n-fold commutator of the divergence.
    """
    lib: Dict[str, List[Op]] = {}
    for name, seed in (("scalar", op_ext_d(0)), ("vector", op_div())):
        ops = [seed]
        for n in range(1, n_max + 1):
            ops.append(commutator_delta(ops[-1]).scale(-1))
        lib[name] = ops
    return lib
