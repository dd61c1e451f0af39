"""Reference expressions for the classical coincidence limits.

Transcribed with the engine's conventions: derivative strings innermost
first, all indices down, and Lap X = -X_{;aa} (so every printed "(Lap X)"
term flips sign per Laplacian when written as a plain derivative string).
Symmetrization is unit strength over the named slots.
"""

from fractions import Fraction

from hkexp.tensor import E, F, G, RC, RM, RS, TensorPolynomial, factor, mono, poly

# scratch dummies for transcription; any label >= 1000 works
A, B, C, DD, EE, FF, GG = 1000, 1001, 1002, 1003, 1004, 1005, 1006
L1, L2 = 1097, 1098  # contracted Laplacian pairs


def rm(i, j, k, l, der=()):
    return factor(RM, (i, j, k, l), der)


def rc(i, j, der=()):
    return factor(RC, (i, j), der)


def rs(der=()):
    return factor(RS, (), der)


def ff(i, j, der=()):
    return factor(F, (i, j), der)


def ee(der=()):
    return factor(E, (), der)


def g(i, j):
    return factor(G, (i, j))


# --- world function ---------------------------------------------------------

def sigma4_reference() -> TensorPolynomial:
    # -(1/3)(R_{m r n s} + R_{m s n r}), slots (m n r s) = 0 1 2 3
    return poly((Fraction(-1, 3), mono(rm(0, 2, 1, 3))),
                (Fraction(-1, 3), mono(rm(0, 3, 1, 2))))


def sigma5_reference() -> TensorPolynomial:
    # -(1/4)(R_{mnrs;a} + R_{mnra;s} + R_{msrn;a} + R_{msna;r} + R_{manr;s} + R_{mans;r})
    # slots (m, n, r, s, a) = (0, 1, 2, 3, 4)
    terms = [
        rm(0, 1, 2, 3, (4,)),
        rm(0, 1, 2, 4, (3,)),
        rm(0, 3, 2, 1, (4,)),
        rm(0, 3, 1, 4, (2,)),
        rm(0, 4, 1, 2, (3,)),
        rm(0, 4, 1, 3, (2,)),
    ]
    return poly(*((Fraction(-1, 4), mono(t)) for t in terms))


def sigma6_symmetrized_reference() -> TensorPolynomial:
    """Six-derivative entry with slots (a, b, m, n, r, s) = (0..5), the first
    two derivatives unsymmetrized and the last four symmetrized."""
    p = TensorPolynomial.zero()
    p += poly((Fraction(-12, 5), mono(rm(2, 0, 3, 1, (4, 5)))))
    p += poly((Fraction(-4, 5), mono(rm(2, 3, 0, GG), rm(4, 1, 5, GG))))
    p += poly((Fraction(-4, 5), mono(rm(GG, 2, 3, 0), rm(4, 5, 1, GG))))
    p += poly((Fraction(8, 15), mono(rm(GG, 2, 3, 0), rm(4, 1, 5, GG))))
    p += poly((Fraction(16, 45), mono(rm(GG, 2, 3, 4), rm(5, 0, 1, GG))))
    p += poly((Fraction(-8, 15), mono(rm(GG, 2, 3, 4), rm(5, 1, 0, GG))))
    p += poly((Fraction(4, 9), mono(rm(GG, 2, 3, 4), rm(5, GG, 0, 1))))
    return p.symmetrize((2, 3, 4, 5))


# --- coefficient derivatives up to quadratic order --------------------------

def dA0_2_sym() -> TensorPolynomial:
    return poly((Fraction(1, 6), mono(rc(0, 1))))


def dA0_3_sym() -> TensorPolynomial:
    return poly((Fraction(1, 4), mono(rc(0, 1, (2,))))).symmetrize((0, 1, 2))


def dA0_4_sym() -> TensorPolynomial:
    p = TensorPolynomial.zero()
    p += poly((Fraction(3, 10), mono(rc(0, 1, (2, 3)))))
    p += poly((Fraction(1, 12), mono(rc(3, 2), rc(0, 1))))
    p += poly((Fraction(1, 15), mono(rm(A, 3, B, 2), rm(A, 0, B, 1))))
    return p.symmetrize((0, 1, 2, 3))


def a1_reference() -> TensorPolynomial:
    return poly((-1, mono(ee())), (Fraction(1, 6), mono(rs())))


def dA1_1_reference() -> TensorPolynomial:
    # -(1/2) E_{;m} - (1/6) F_{nm;n} + (1/12) R_{;m}, slot m = 0
    return poly((Fraction(-1, 2), mono(ee((0,)))),
                (Fraction(-1, 6), mono(ff(A, 0, (A,)))),
                (Fraction(1, 12), mono(rs((0,)))))


def dA1_2_sym_reference() -> TensorPolynomial:
    # slots (n, m) = (0, 1); build as printed, then symmetrize
    p = TensorPolynomial.zero()
    p += poly((Fraction(-1, 3), mono(ee((1, 0)))))
    p += poly((Fraction(-1, 6), mono(rc(1, 0), ee())))
    p += poly((Fraction(-1, 6), mono(ff(A, 1, (A, 0)))))
    p += poly((Fraction(1, 6), mono(ff(A, 0), ff(A, 1))))
    p += poly((Fraction(1, 20), mono(rs((1, 0)))))
    p += poly((Fraction(1, 60), mono(rc(0, 1, (L1, L1)))))   # -(1/60) Lap Ric
    p += poly((Fraction(1, 36), mono(rs(), rc(0, 1))))
    p += poly((Fraction(-1, 45), mono(rc(0, A), rc(A, 1))))
    p += poly((Fraction(1, 90), mono(rc(A, B), rm(A, 0, B, 1))))
    p += poly((Fraction(1, 90), mono(rm(A, B, C, 0), rm(A, B, C, 1))))
    return p.symmetrize((0, 1))


def a2_reference() -> TensorPolynomial:
    p = TensorPolynomial.zero()
    p += poly((Fraction(-1, 6), mono(ee((L1, L1)))))          # +(1/6) Lap E
    p += poly((Fraction(1, 2), mono(ee(), ee())))
    p += poly((Fraction(-1, 6), mono(rs(), ee())))
    p += poly((Fraction(1, 12), mono(ff(A, B), ff(A, B))))
    p += poly((Fraction(1, 30), mono(rs((L1, L1)))))          # -(1/30) Lap R
    p += poly((Fraction(1, 72), mono(rs(), rs())))
    p += poly((Fraction(-1, 180), mono(rc(A, B), rc(A, B))))
    p += poly((Fraction(1, 180), mono(rm(A, B, C, DD), rm(A, B, C, DD))))
    return p


def a3_reference() -> TensorPolynomial:
    """Cubic coefficient exactly as printed (Lap signs folded in)."""
    t = []
    t.append((Fraction(-1, 6), mono(ee(), ee(), ee())))
    t.append((Fraction(1, 12), mono(ee((L1, L1)), ee())))             # -(1/12)(Lap E)E
    t.append((Fraction(1, 12), mono(ee((A,)), ee((A,)))))
    t.append((Fraction(1, 12), mono(ee(), ee((L1, L1)))))             # -(1/12)E(Lap E)
    t.append((Fraction(-1, 60), mono(ee((L1, L1, L2, L2)))))          # -(1/60)(Lap Lap E)
    t.append((Fraction(1, 60), mono(ee((B,)), ff(A, B, (A,)))))
    t.append((Fraction(-1, 60), mono(ff(A, B, (A,)), ee((B,)))))
    t.append((Fraction(-1, 20), mono(ee(), ff(A, B), ff(A, B))))
    t.append((Fraction(-1, 90), mono(ff(A, B), ee(), ff(A, B))))
    t.append((Fraction(-1, 45), mono(ff(A, B), ff(A, B), ee())))
    t.append((Fraction(1, 90), mono(ff(A, B, (L1, L1)), ff(A, B))))   # -(1/90)(Lap F)F
    t.append((Fraction(1, 45), mono(ff(A, B, (C,)), ff(A, B, (C,)))))
    t.append((Fraction(1, 180), mono(ff(A, B), ff(A, B, (L1, L1))))) # -(1/180)F(Lap F)
    t.append((Fraction(1, 180), mono(ff(A, B, (A,)), ff(C, B, (C,)))))
    t.append((Fraction(1, 45), mono(ff(A, B), ff(A, C, (C, B)))))
    t.append((Fraction(1, 90), mono(ff(A, C, (C, B)), ff(A, B))))
    t.append((Fraction(-1, 90), mono(ff(A, B), ff(B, C), ff(A, C))))
    t.append((Fraction(1, 12), mono(ee(), ee(), rs())))
    t.append((Fraction(-1, 36), mono(ee((L1, L1)), rs())))            # +(1/36)(Lap E)R
    t.append((Fraction(-1, 30), mono(ee((A,)), rs((A,)))))
    t.append((Fraction(-1, 30), mono(ee(), rs((L1, L1)))))            # +(1/30)E(Lap R)
    t.append((Fraction(-1, 90), mono(ee((A, B)), rc(A, B))))
    t.append((Fraction(-1, 72), mono(ee(), rs(), rs())))
    t.append((Fraction(1, 180), mono(ee(), rc(A, B), rc(A, B))))
    t.append((Fraction(-1, 180), mono(ee(), rm(A, B, C, DD), rm(A, B, C, DD))))
    t.append((Fraction(1, 72), mono(ff(A, B), ff(A, B), rs())))
    t.append((Fraction(1, 30), mono(ff(A, B), ff(A, C), rc(B, C))))
    t.append((Fraction(-1, 180), mono(ff(A, B), ff(C, DD), rm(A, B, C, DD))))
    t.append((Fraction(1, 280), mono(rs((L1, L1, L2, L2)))))          # +(1/280)(Lap Lap R)
    t.append((Fraction(1, 280), mono(rs(), rs((L1, L1)))))            # -(1/280)R(Lap R)
    t.append((Fraction(17, 5040), mono(rs((A,)), rs((A,)))))
    t.append((Fraction(1, 420), mono(rs((A, B)), rc(A, B))))
    t.append((Fraction(-1, 630), mono(rc(A, B), rc(A, B, (L1, L1))))) # +(1/630)Ric(Lap Ric)
    t.append((Fraction(-1, 2520), mono(rc(A, B, (C,)), rc(A, B, (C,)))))
    t.append((Fraction(-1, 1260), mono(rc(A, B, (C,)), rc(B, C, (A,)))))
    t.append((Fraction(1, 420), mono(rm(A, B, C, DD), rm(A, B, C, DD, (L1, L1)))))
    t.append((Fraction(1, 560), mono(rm(A, B, C, DD, (EE,)), rm(A, B, C, DD, (EE,)))))
    t.append((Fraction(1, 1296), mono(rs(), rs(), rs())))
    t.append((Fraction(-1, 1080), mono(rs(), rc(A, B), rc(A, B))))
    t.append((Fraction(1, 5670), mono(rc(A, B), rc(B, C), rc(C, A))))
    t.append((Fraction(-1, 1890), mono(rc(A, B), rc(C, DD), rm(A, C, B, DD))))
    t.append((Fraction(1, 1080), mono(rs(), rm(A, B, C, DD), rm(A, B, C, DD))))
    t.append((Fraction(-1, 945), mono(rc(A, B), rm(A, C, DD, EE), rm(B, C, DD, EE))))
    t.append((Fraction(1, 567), mono(rm(A, B, C, DD), rm(A, EE, C, FF), rm(B, EE, DD, FF))))
    t.append((Fraction(11, 11340), mono(rm(A, B, C, DD), rm(A, B, EE, FF), rm(C, DD, EE, FF))))
    return poly(*t)


# --- appendix-level entries --------------------------------------------------

def dA0_5_sym_reference() -> TensorPolynomial:
    # slots (m, n, a, b, c) = (0, 1, 2, 3, 4), fully symmetrized
    p = TensorPolynomial.zero()
    p += poly((Fraction(1, 3), mono(rc(1, 0, (2, 3, 4)))))
    p += poly((Fraction(5, 12), mono(rc(4, 3), rc(1, 0, (2,)))))
    p += poly((Fraction(1, 3), mono(rm(A, 4, B, 3), rm(A, 1, B, 0, (2,)))))
    return p.symmetrize((0, 1, 2, 3, 4))


def dA0_6_sym_reference() -> TensorPolynomial:
    # slots (m, n, a, b, c, e) = (0..5), fully symmetrized
    p = TensorPolynomial.zero()
    p += poly((Fraction(5, 14), mono(rc(1, 0, (2, 3, 4, 5)))))
    p += poly((Fraction(3, 4), mono(rc(5, 4), rc(1, 0, (2, 3)))))
    p += poly((Fraction(4, 7), mono(rm(A, 5, B, 4), rm(A, 1, B, 0, (2, 3)))))
    p += poly((Fraction(15, 28), mono(rm(A, 4, B, 3, (5,)), rm(A, 1, B, 0, (2,)))))
    p += poly((Fraction(5, 8), mono(rc(4, 3, (5,)), rc(1, 0, (2,)))))
    p += poly((Fraction(5, 72), mono(rc(5, 4), rc(3, 2), rc(1, 0))))
    p += poly((Fraction(1, 6), mono(rc(5, 4), rm(A, 3, B, 2), rm(A, 1, B, 0))))
    p += poly((Fraction(8, 63), mono(rm(A, 5, B, 4), rm(B, 3, C, 2), rm(C, 1, A, 0))))
    return p.symmetrize((0, 1, 2, 3, 4, 5))


def dA1_3_sym_reference() -> TensorPolynomial:
    # slots (m, n, a) = (0, 1, 2), fully symmetrized
    t = []
    t.append((Fraction(-1, 4), mono(ee((0, 1, 2)))))
    t.append((Fraction(1, 30), mono(rs((0, 1, 2)))))
    t.append((Fraction(-1, 4), mono(ee(), rc(0, 1, (2,)))))
    t.append((Fraction(-1, 4), mono(ee((2,)), rc(0, 1))))
    t.append((Fraction(-3, 20), mono(ff(A, 0, (A, 1, 2)))))
    t.append((Fraction(1, 5), mono(ff(A, 2), ff(A, 1, (0,)))))
    t.append((Fraction(3, 10), mono(ff(A, 0, (2,)), ff(A, 1))))
    t.append((Fraction(-1, 12), mono(ff(A, 2, (A,)), rc(0, 1))))
    t.append((Fraction(-1, 30), mono(ff(A, 0, (2,)), rc(A, 1))))
    t.append((Fraction(-1, 10), mono(ff(A, 2), rc(0, 1, (A,)))))
    t.append((Fraction(1, 10), mono(ff(A, 2), rc(A, 1, (0,)))))
    t.append((Fraction(-1, 15), mono(ff(A, 2, (B,)), rm(A, 0, B, 1))))
    t.append((Fraction(1, 40), mono(rc(0, 1, (L1, L1, 2)))))   # -(1/40)(Lap Ric)_{;a}
    t.append((Fraction(1, 24), mono(rs(), rc(0, 1, (2,)))))
    t.append((Fraction(1, 24), mono(rs((2,)), rc(0, 1))))
    t.append((Fraction(-1, 15), mono(rc(A, 2), rc(A, 1, (0,)))))
    t.append((Fraction(1, 60), mono(rc(A, B), rm(A, 0, B, 1, (2,)))))
    t.append((Fraction(1, 60), mono(rc(A, B, (2,)), rm(A, 0, B, 1))))
    t.append((Fraction(1, 30), mono(rm(A, B, C, 2), rm(A, B, C, 1, (0,)))))
    return poly(*t).symmetrize((0, 1, 2))


def dA2_1_reference() -> TensorPolynomial:
    # slot m = 0
    t = []
    t.append((Fraction(-1, 12), mono(ee((L1, L1, 0)))))        # +(1/12)(Lap E)_{;m}
    t.append((Fraction(1, 3), mono(ee((0,)), ee())))
    t.append((Fraction(1, 6), mono(ee(), ee((0,)))))
    t.append((Fraction(1, 12), mono(ee((A,)), ff(A, 0))))
    t.append((Fraction(1, 12), mono(ff(A, 0), ee((A,)))))
    t.append((Fraction(1, 12), mono(ee(), ff(A, 0, (A,)))))
    t.append((Fraction(1, 12), mono(ff(A, 0, (A,)), ee())))
    t.append((Fraction(-1, 12), mono(ee((0,)), rs())))
    t.append((Fraction(-1, 12), mono(ee(), rs((0,)))))
    t.append((Fraction(-1, 60), mono(ff(A, 0, (A, L1, L1)))))  # +(1/60)Lap(F_{am;a})
    t.append((Fraction(-1, 60), mono(ff(A, 0), ff(A, B, (B,)))))
    t.append((Fraction(1, 45), mono(ff(A, B), ff(A, 0, (B,)))))
    t.append((Fraction(1, 30), mono(ff(A, B, (0,)), ff(A, B))))
    t.append((Fraction(1, 30), mono(ff(A, 0, (B,)), ff(A, B))))
    t.append((Fraction(1, 45), mono(ff(A, B), ff(A, B, (0,)))))
    t.append((Fraction(-1, 60), mono(ff(A, B, (A,)), ff(B, 0))))
    t.append((Fraction(-1, 36), mono(ff(A, 0, (A,)), rs())))
    t.append((Fraction(-1, 30), mono(ff(A, 0), rs((A,)))))
    t.append((Fraction(1, 30), mono(ff(A, B), rc(A, 0, (B,)))))
    t.append((Fraction(-1, 90), mono(ff(A, 0, (B,)), rc(A, B))))
    t.append((Fraction(1, 180), mono(ff(A, B, (A,)), rc(B, 0))))
    t.append((Fraction(-1, 45), mono(ff(A, B, (C,)), rm(0, A, B, C))))
    t.append((Fraction(1, 60), mono(rs((L1, L1, 0)))))         # -(1/60)(Lap R)_{;m}
    t.append((Fraction(1, 72), mono(rs(), rs((0,)))))
    t.append((Fraction(-1, 180), mono(rc(A, B), rc(A, B, (0,)))))
    t.append((Fraction(1, 180), mono(rm(A, B, C, DD), rm(A, B, C, DD, (0,)))))
    return poly(*t)
