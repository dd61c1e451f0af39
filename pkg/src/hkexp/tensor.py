"""Abstract-index tensor monomials and their canonical form.

A monomial is an ordered tuple of factors with an exact coefficient.  Each
factor is ``(head, own_indices, deriv_indices)`` where the derivative string
is ordered innermost first (``E_{;ab}`` means apply D_a, then D_b).  Indices
are plain integers: values below ``DUMMY_BASE`` are free labels chosen by the
caller, values at or above it are contracted pairs.  All indices are written
"down"; a repeated label means contraction through the inverse metric.

Commutativity: curvature heads are c-numbers and may be reordered freely,
while F and E are matrices on the internal bundle and keep their relative
order.  A monomial with no matrix factor stands for a multiple of the
identity on the bundle.

Conventions fixed here and relied on by every golden value downstream:
Riemannian signature, Laplacian = -D^a D_a, [D_a, D_b] v_c = -R_{abec} v_e,
Ricci(b, d) = Riemann(a, b, a, d), so spheres have positive scalar curvature.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

from .exact import DR_ONE, DR_ZERO, D, DimRational

# head identifiers
G, RM, RC, RS, F, E = range(6)

HEAD_NAMES = {G: "g", RM: "Rm", RC: "Rc", RS: "R", F: "F", E: "E"}
ARITY = {G: 2, RM: 4, RC: 2, RS: 0, F: 2, E: 0}
IS_MATRIX = {G: False, RM: False, RC: False, RS: False, F: True, E: True}
WEIGHT = {G: Fraction(0), RM: Fraction(1), RC: Fraction(1), RS: Fraction(1),
          F: Fraction(1), E: Fraction(1)}

DUMMY_BASE = 1000
_SHIFT = 10_000

HEAD_SYMS = {
    G: [((0, 1), 1), ((1, 0), 1)],
    RM: [((0, 1, 2, 3), 1), ((1, 0, 2, 3), -1), ((0, 1, 3, 2), -1), ((1, 0, 3, 2), 1),
         ((2, 3, 0, 1), 1), ((3, 2, 0, 1), -1), ((2, 3, 1, 0), -1), ((3, 2, 1, 0), 1)],
    RC: [((0, 1), 1), ((1, 0), 1)],
    RS: [((), 1)],
    F: [((0, 1), 1), ((1, 0), -1)],
    E: [((), 1)],
}

Factor = Tuple[int, Tuple[int, ...], Tuple[int, ...]]
Monomial = Tuple[Factor, ...]


def factor(head: int, own: Sequence[int] = (), derivs: Sequence[int] = ()) -> Factor:
    own = tuple(own)
    if len(own) != ARITY[head]:
        raise ValueError(f"{HEAD_NAMES[head]} expects {ARITY[head]} indices, got {own}")
    if head == G and derivs:
        raise ValueError("the metric is covariantly constant")
    return (head, own, tuple(derivs))


def factor_weight(f: Factor) -> Fraction:
    return WEIGHT[f[0]] + Fraction(len(f[2]), 2)


def mono_weight(m: Monomial) -> Fraction:
    return sum((factor_weight(f) for f in m), Fraction(0))


def mono_indices(m: Monomial) -> Iterator[int]:
    for _, own, der in m:
        yield from own
        yield from der


def index_balanced(m: Monomial) -> bool:
    counts: Dict[int, int] = {}
    for i in mono_indices(m):
        counts[i] = counts.get(i, 0) + 1
    return all(c == 1 or (c == 2 and i >= DUMMY_BASE) for i, c in counts.items())


class UnbalancedIndexError(ValueError):
    pass


# ---------------------------------------------------------------------------
# factor-level normalization: metric contractions and curvature traces
# ---------------------------------------------------------------------------

def _normalize_factors(coeff: DimRational, factors: list):
    """Eat contracted metrics and fold single-factor curvature traces.

    Returns (coefficient, factors), with factors None when the monomial
    vanishes.  A fully self-contracted metric contributes a factor d.
    """
    changed = True
    while changed:
        changed = False
        counts: Dict[int, int] = {}
        for f in factors:
            for i in f[1]:
                counts[i] = counts.get(i, 0) + 1
            for i in f[2]:
                counts[i] = counts.get(i, 0) + 1
        for pos, f in enumerate(factors):
            head, own, der = f
            if head == G:
                a, b = own
                if a == b:
                    coeff = coeff * D
                    factors.pop(pos)
                    changed = True
                    break
                if a >= DUMMY_BASE and counts.get(a, 0) == 2:
                    factors.pop(pos)
                    _subst_index(factors, a, b)
                    changed = True
                    break
                if b >= DUMMY_BASE and counts.get(b, 0) == 2:
                    factors.pop(pos)
                    _subst_index(factors, b, a)
                    changed = True
                    break
            elif head == RM:
                rep = _first_repeat(own)
                if rep is None:
                    continue
                i, j = rep
                if (i, j) in ((0, 1), (2, 3)):
                    return coeff, None
                # Ricci(b, d) = Riemann(a, b, a, d)
                sign = 1 if (i, j) in ((0, 2), (1, 3)) else -1
                keep = [own[k] for k in range(4) if k not in (i, j)]
                factors[pos] = (RC, tuple(keep), der)
                if sign < 0:
                    coeff = coeff * -1
                changed = True
                break
            elif head == RC and own[0] == own[1]:
                factors[pos] = (RS, (), der)
                changed = True
                break
    return coeff, factors


def _first_repeat(idx: Tuple[int, ...]):
    seen: Dict[int, int] = {}
    for pos, i in enumerate(idx):
        if i in seen:
            return (seen[i], pos)
        seen[i] = pos
    return None


def _subst_index(factors: list, old: int, new: int) -> None:
    for pos, (head, own, der) in enumerate(factors):
        if old in own or old in der:
            factors[pos] = (head,
                            tuple(new if i == old else i for i in own),
                            tuple(new if i == old else i for i in der))


# ---------------------------------------------------------------------------
# canonicalization
# ---------------------------------------------------------------------------

_canon_cache: Dict[Tuple, Tuple[Optional[Monomial], int]] = {}


def clear_canon_cache() -> None:
    _canon_cache.clear()


def _prenormalize_dummies(m: Monomial) -> Monomial:
    mapping: Dict[int, int] = {}
    nxt = DUMMY_BASE
    out = []
    for head, own, der in m:
        row = []
        for grp in (own, der):
            g2 = []
            for i in grp:
                if i >= DUMMY_BASE:
                    if i not in mapping:
                        mapping[i] = nxt
                        nxt += 1
                    g2.append(mapping[i])
                else:
                    g2.append(i)
            row.append(tuple(g2))
        out.append((head, row[0], row[1]))
    return tuple(out)


def _factor_sig(f: Factor) -> Tuple[int, int]:
    return (f[0], len(f[2]))


def canonicalize(m: Monomial):
    """Return (canonical monomial, coefficient multiplier) for ``m``.

    Minimal over dummy relabelings, reorderings of commuting factors, and the
    monoterm slot symmetries of each head; antisymmetry signs fold into the
    multiplier.  ``(None, 0)`` means the monomial vanishes identically.
    Derivative indices are never permuted here: reordering them is a
    curvature-generating operation, not a symmetry.
    """
    if not index_balanced(m):
        raise UnbalancedIndexError(f"unbalanced indices in {m}")
    coeff, factors = _normalize_factors(DR_ONE, list(m))
    if factors is None:
        return None, DR_ZERO
    if not factors:
        return (), coeff
    key0 = _prenormalize_dummies(tuple(factors))
    hit = _canon_cache.get(key0)
    if hit is None:
        hit = _canonicalize_core(key0)
        _canon_cache[key0] = hit
    mono_, sign = hit
    return mono_, coeff * sign


def _canonicalize_core(key0: Monomial):
    cfacs = sorted((f for f in key0 if not IS_MATRIX[f[0]]), key=_factor_sig)
    mfacs = [f for f in key0 if IS_MATRIX[f[0]]]

    groups = []
    i = 0
    while i < len(cfacs):
        j = i
        while j < len(cfacs) and _factor_sig(cfacs[j]) == _factor_sig(cfacs[i]):
            j += 1
        if j - i > 1:
            groups.append((i, j))
        i = j
    orderings = [cfacs]
    for lo, hi in groups:
        nxt = []
        for base in orderings:
            seen = set()
            for perm in permutations(base[lo:hi]):
                if perm in seen:
                    continue
                seen.add(perm)
                nxt.append(base[:lo] + list(perm) + base[hi:])
        orderings = nxt

    state = _CanonState()
    for ordering in orderings:
        seq = ordering + mfacs
        rows = []
        for head, own, der in seq:
            variants = []
            seen: Dict[Tuple[int, ...], int] = {}
            for perm, s in HEAD_SYMS[head]:
                t = tuple(own[p] for p in perm)
                prev = seen.get(t)
                if prev is None:
                    seen[t] = s
                    variants.append((t + der, s, t))
                elif prev != s:
                    # an odd symmetry fixes the slots: the factor vanishes
                    return None, 0
            rows.append(variants)
        _canon_dfs(rows, seq, state)
    if state.cancels:
        return None, 0
    seq, combo, ren, sign = state.best_payload
    canon = tuple((seq[k][0],
                   tuple(ren.get(i, i) for i in combo[k][0]),
                   tuple(ren.get(i, i) for i in combo[k][1]))
                  for k in range(len(seq)))
    return canon, sign


class _CanonState:
    __slots__ = ("best_key", "best_payload", "cancels")

    def __init__(self):
        self.best_key = None
        self.best_payload = None
        self.cancels = False


def _canon_dfs(rows, seq, state):
    """Depth-first minimal-image search with prefix pruning.

    ``rows[k]`` lists (flat index row, sign, permuted own tuple) for factor
    k.  Dummies are renamed in first-occurrence order as rows are emitted so
    prefixes compare directly against the incumbent.  ``tight`` tracks
    whether the emitted prefix still coincides with the incumbent's; only a
    strictly larger position prunes.
    """
    nfac = len(rows)
    out: list = []
    ren: Dict[int, int] = {}
    counter = [0]
    combo: list = []

    def rec(pos, sign, tight):
        if pos == nfac:
            key = tuple(out)
            bk = state.best_key
            if bk is None or key < bk:
                state.best_key = key
                state.best_payload = (seq, combo[:], dict(ren), sign)
                state.cancels = False
            elif key == bk and sign != state.best_payload[3]:
                state.cancels = True
            return
        base = len(out)
        for row, s, ownp in rows[pos]:
            added = []
            bk = state.best_key
            t = tight
            pruned = False
            for i in row:
                if i >= DUMMY_BASE:
                    v = ren.get(i)
                    if v is None:
                        v = DUMMY_BASE + counter[0]
                        ren[i] = v
                        counter[0] += 1
                        added.append(i)
                else:
                    v = i
                if t:
                    bv = bk[len(out)]
                    if v > bv:
                        pruned = True
                        break
                    if v < bv:
                        t = False
                out.append(v)
            if not pruned:
                combo.append((ownp, seq[pos][2]))
                rec(pos + 1, sign * s, t and state.best_key is not None)
                combo.pop()
            del out[base:]
            for i in added:
                del ren[i]
            counter[0] -= len(added)

    rec(0, 1, state.best_key is not None)


def _iter_images(opts):
    """Cartesian product over per-factor symmetry variants with running sign."""
    if not opts:
        yield [], 1
        return
    head_variants, der = opts[0]
    for rest, rsign in _iter_images(opts[1:]):
        for own, s in head_variants:
            yield [(own, der)] + rest, s * rsign


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class TensorPolynomial:
    """A canonicalized sum of tensor monomials with DimRational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Monomial, DimRational]] = None):
        self.terms = terms if terms is not None else {}

    @staticmethod
    def zero() -> "TensorPolynomial":
        return TensorPolynomial({})

    @staticmethod
    def scalar(c) -> "TensorPolynomial":
        c = DimRational.coerce(c)
        return TensorPolynomial({(): c} if not c.is_zero() else {})

    @staticmethod
    def from_terms(pairs: Iterable[Tuple]) -> "TensorPolynomial":
        p = TensorPolynomial()
        for c, m in pairs:
            p.add_monomial(c, m)
        return p

    def copy(self) -> "TensorPolynomial":
        return TensorPolynomial(dict(self.terms))

    def add_monomial(self, coeff, mono: Monomial) -> None:
        coeff = DimRational.coerce(coeff)
        if coeff.is_zero():
            return
        canon, mult = canonicalize(mono)
        if canon is None:
            return
        self._iadd_canonical(coeff * mult, canon)

    def _iadd_canonical(self, coeff: DimRational, canon: Monomial) -> None:
        cur = self.terms.get(canon)
        tot = coeff if cur is None else cur + coeff
        if tot.is_zero():
            self.terms.pop(canon, None)
        else:
            self.terms[canon] = tot

    def __add__(self, other: "TensorPolynomial") -> "TensorPolynomial":
        out = self.copy()
        for m, c in other.terms.items():
            out._iadd_canonical(c, m)
        return out

    def __iadd__(self, other: "TensorPolynomial") -> "TensorPolynomial":
        for m, c in other.terms.items():
            self._iadd_canonical(c, m)
        return self

    def __sub__(self, other: "TensorPolynomial") -> "TensorPolynomial":
        out = self.copy()
        for m, c in other.terms.items():
            out._iadd_canonical(-c, m)
        return out

    def scale(self, c) -> "TensorPolynomial":
        c = DimRational.coerce(c)
        if c.is_zero():
            return TensorPolynomial()
        return TensorPolynomial({m: v * c for m, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorPolynomial) and self.terms == other.terms

    def free_indices(self) -> Tuple[int, ...]:
        free = set()
        for m in self.terms:
            for i in mono_indices(m):
                if i < DUMMY_BASE:
                    free.add(i)
        return tuple(sorted(free))

    def max_weight(self) -> Fraction:
        return max((mono_weight(m) for m in self.terms), default=Fraction(0))

    def truncate_weight(self, cap) -> "TensorPolynomial":
        return TensorPolynomial({m: c for m, c in self.terms.items() if mono_weight(m) <= cap})

    # -- structural operations ---------------------------------------------

    def rename_free(self, mapping: Dict[int, int]) -> "TensorPolynomial":
        """Substitute free labels.  Colliding targets contract (via a dummy)."""
        out = TensorPolynomial()
        for m, c in self.terms.items():
            mm = tuple((h, tuple(mapping.get(i, i) if i < DUMMY_BASE else i for i in own),
                        tuple(mapping.get(i, i) if i < DUMMY_BASE else i for i in der))
                       for h, own, der in m)
            out.add_monomial(c, _pair_up(mm))
        return out

    def __mul__(self, other: "TensorPolynomial") -> "TensorPolynomial":
        """Product.  Labels free in both operands contract; matrix order is
        left factors then right factors."""
        out = TensorPolynomial()
        for m1, c1 in self.terms.items():
            c1f = [f for f in m1 if not IS_MATRIX[f[0]]]
            m1f = [f for f in m1 if IS_MATRIX[f[0]]]
            for m2, c2 in other.terms.items():
                m2s = _shift_dummies(m2)
                mono = (tuple(c1f) + tuple(f for f in m2s if not IS_MATRIX[f[0]])
                        + tuple(m1f) + tuple(f for f in m2s if IS_MATRIX[f[0]]))
                out.add_monomial(c1 * c2, _pair_up(mono))
        return out

    def differentiate(self, idx: int) -> "TensorPolynomial":
        """Covariant derivative D_idx via Leibniz.

        A label already present once contracts (repeated application with the
        same label builds a trace)."""
        out = TensorPolynomial()
        for m, c in self.terms.items():
            for pos, (h, own, der) in enumerate(m):
                if h == G:
                    continue
                mm = list(m)
                mm[pos] = (h, own, der + (idx,))
                out.add_monomial(c, _pair_up(tuple(mm)))
        return out

    def symmetrize(self, indices: Sequence[int]) -> "TensorPolynomial":
        """Unit-strength symmetrization over the given free labels."""
        idx = list(indices)
        out = TensorPolynomial()
        count = 0
        for perm in permutations(idx):
            out += self.rename_free(dict(zip(idx, perm)))
            count += 1
        return out.scale(Fraction(1, count))

    def matrix_mul_left(self, fac: Factor) -> "TensorPolynomial":
        out = TensorPolynomial()
        for m, c in self.terms.items():
            cf = tuple(f for f in m if not IS_MATRIX[f[0]])
            mf = tuple(f for f in m if IS_MATRIX[f[0]])
            out.add_monomial(c, _pair_up(cf + (fac,) + mf))
        return out

    def matrix_mul_right(self, fac: Factor) -> "TensorPolynomial":
        out = TensorPolynomial()
        for m, c in self.terms.items():
            cf = tuple(f for f in m if not IS_MATRIX[f[0]])
            mf = tuple(f for f in m if IS_MATRIX[f[0]])
            out.add_monomial(c, _pair_up(cf + mf + (fac,)))
        return out

    def drop_curvature(self) -> "TensorPolynomial":
        """Flat-space limit: terms containing curvature heads vanish."""
        return TensorPolynomial({m: c for m, c in self.terms.items()
                                 if all(h not in (RM, RC, RS) for h, _, _ in m)})

    def map_factors(self, fn) -> "TensorPolynomial":
        """Rebuild each monomial with ``fn(factor) -> factor or None`` (None kills)."""
        out = TensorPolynomial()
        for m, c in self.terms.items():
            mm = []
            dead = False
            for f in m:
                nf = fn(f)
                if nf is None:
                    dead = True
                    break
                mm.append(nf)
            if not dead:
                out.add_monomial(c, tuple(mm))
        return out

    def coefficient_of(self, mono: Monomial) -> DimRational:
        canon, mult = canonicalize(mono)
        if canon is None:
            return DR_ZERO
        c = self.terms.get(canon)
        if c is None:
            return DR_ZERO
        return c / mult

    def __repr__(self) -> str:
        from .pretty import poly_str
        return poly_str(self)


def _pair_up(m: Monomial) -> Monomial:
    """Turn free labels occurring twice into fresh dummies."""
    counts: Dict[int, int] = {}
    for i in mono_indices(m):
        counts[i] = counts.get(i, 0) + 1
    repeats = [i for i, c in counts.items() if i < DUMMY_BASE and c == 2]
    if not repeats:
        return m
    mapping = {i: 7 * _SHIFT + k for k, i in enumerate(repeats)}
    return tuple((h, tuple(mapping.get(i, i) for i in own),
                  tuple(mapping.get(i, i) for i in der)) for h, own, der in m)


def _shift_dummies(m: Monomial, bump: int = 1) -> Monomial:
    off = _SHIFT * bump
    return tuple((h, tuple(i + off if i >= DUMMY_BASE else i for i in own),
                  tuple(i + off if i >= DUMMY_BASE else i for i in der))
                 for h, own, der in m)


def poly(*pairs) -> TensorPolynomial:
    return TensorPolynomial.from_terms(pairs)


def mono(*factors: Factor) -> Monomial:
    return tuple(factors)
