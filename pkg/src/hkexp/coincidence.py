"""Shared machinery for coincidence-limit recursions.

Derivative strings are tuples of index labels, innermost first: the string
(a, b, c) means apply D_a, then D_b, then D_c.  Tables store the full
unsymmetrized coincidence-limit tensor of each level with slot labels
0..k-1, so looking up an arbitrary string is a positional substitution.

The one nontrivial operation is relating a string that starts with an
intruder index to the naturally ordered one: each adjacent transposition
generates curvature (and, on the internal bundle, field-strength) correction
terms built from lower entries.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence, Tuple

from .tensor import E, F, G, RM, TensorPolynomial, factor, mono, poly

# scratch free labels used while assembling recursion right-hand sides;
# they are always contracted away before results are stored
MU = 900
NU = 901
CORR = 940

Looker = Callable[[Tuple[int, ...]], TensorPolynomial]


def ordered_splits(seq: Tuple[int, ...]):
    """All ways to split a string into (sub, complement) keeping order."""
    n = len(seq)
    for r in range(n + 1):
        for picks in combinations(range(n), r):
            pick_set = set(picks)
            sub = tuple(seq[i] for i in picks)
            comp = tuple(seq[i] for i in range(n) if i not in pick_set)
            yield sub, comp


def swap_correction(looker: Looker, prefix: Tuple[int, ...], a: int, b: int,
                    suffix: Tuple[int, ...], matrix: bool) -> TensorPolynomial:
    """Coincidence limit of ([D_b, D_a] T_{;prefix})_{;suffix}.

    This is the difference T_{;prefix a b suffix} - T_{;prefix b a suffix}.
    The commutator hits every derivative slot of the prefix with a Riemann
    substitution.  For entries living on the internal bundle the commutator
    acts on the left fiber line only (the source index of the two-point
    coefficient is blind to x-derivatives), so F multiplies from the left
    with no right-hand counterterm.
    """
    out = TensorPolynomial.zero()
    for k in range(len(prefix)):
        newstring = prefix[:k] + (CORR,) + prefix[k + 1:]
        for sub, comp in ordered_splits(suffix):
            rfac = poly((-1, mono(factor(RM, (b, a, CORR, prefix[k]), sub))))
            out += rfac * looker(newstring + comp)
    if matrix:
        for sub, comp in ordered_splits(suffix):
            ffac = factor(F, (b, a), sub)
            out += looker(prefix + comp).matrix_mul_left(ffac)
    return out


def carrier_correction(looker: Looker, m: int, j: int, matrix: bool) -> TensorPolynomial:
    """Difference between the string (j, 0..m-1 without j) and natural order.

    Moving the intruder j rightward to its home position accumulates one
    swap correction per transposition.
    """
    out = TensorPolynomial.zero()
    rest = [i for i in range(m) if i != j]
    cur = [j] + rest
    for step in range(1, j + 1):
        # positions (step-1, step) hold (j, step-1)
        pfx = tuple(cur[:step - 1])
        sfx = tuple(cur[step + 1:])
        out += swap_correction(looker, pfx, j, step - 1, sfx, matrix)
        cur[step - 1], cur[step] = cur[step], cur[step - 1]
    return out


def positional_looker(entry_fn) -> Looker:
    """Build a memoized looker from ``entry_fn(k)`` with slots 0..k-1."""
    cache: dict = {}

    def look(string: Tuple[int, ...]) -> TensorPolynomial:
        string = tuple(string)
        hit = cache.get(string)
        if hit is None:
            entry = entry_fn(len(string))
            hit = entry if entry.is_zero() else entry.rename_free(dict(enumerate(string)))
            cache[string] = hit
        return hit
    return look


def subsets_of(names: Sequence[int], size: int):
    return combinations(names, size)
