"""One-line deterministic text rendering of tensor polynomials.

Format: ``(coeff) Head[i j ...; k l] Head[...] ...`` with dummy indices shown
as letters a, b, c, ... and free labels as f0, f1, ....  Derivative indices
follow the semicolon, innermost first.  Used by the golden files and the
debug REPL output; parsing is not supported.
"""

from __future__ import annotations

from .exact import DimRational
from .tensor import DUMMY_BASE, HEAD_NAMES, Monomial, TensorPolynomial

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _index_name(i: int, names) -> str:
    if i < DUMMY_BASE:
        return names.get(i, f"f{i}")
    k = i - DUMMY_BASE
    if k < len(_LETTERS):
        return _LETTERS[k]
    return f"a{k}"


def mono_str(m: Monomial, names=None) -> str:
    names = names or {}
    if not m:
        return "1"
    parts = []
    for head, own, der in m:
        body = " ".join(_index_name(i, names) for i in own)
        if der:
            body += ("; " if own else ";") + " ".join(_index_name(i, names) for i in der)
        parts.append(f"{HEAD_NAMES[head]}[{body}]" if (own or der) else HEAD_NAMES[head])
    return " ".join(parts)


def coeff_str(c: DimRational) -> str:
    return str(c)


def poly_str(p: TensorPolynomial, names=None) -> str:
    if p.is_zero():
        return "0"
    rows = sorted(((mono_str(m, names), c) for m, c in p.terms.items()), key=lambda r: r[0])
    return "  +  ".join(f"({coeff_str(c)}) {ms}" for ms, c in rows)


def poly_lines(p: TensorPolynomial, names=None) -> str:
    if p.is_zero():
        return "0\n"
    rows = sorted(((mono_str(m, names), c) for m, c in p.terms.items()), key=lambda r: r[0])
    return "".join(f"({coeff_str(c)}) {ms}\n" for ms, c in rows)
