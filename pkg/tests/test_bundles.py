import pytest

from hkexp.basis import CoeffTable
from hkexp.bundles import FIBER_DIM, internal_trace, realize, traced_expansion
from hkexp.exact import D, DR_ONE, dr
from hkexp.tensor import E as EH
from hkexp.tensor import F as FH
from hkexp.tensor import G, RM, TensorPolynomial, factor, mono, poly

from reference_tables import TABLE1


@pytest.fixture(scope="session")
def traced(coeff_table):
    return {b: traced_expansion(coeff_table, b) for b in ("scalar", "vector", "tensor")}


def test_fiber_dimensions():
    one = TensorPolynomial.scalar(1)
    assert internal_trace(one, "scalar") == TensorPolynomial.scalar(1)
    assert internal_trace(one, "vector") == TensorPolynomial.scalar(D)
    assert internal_trace(one, "tensor") == TensorPolynomial.scalar(D * (D + 1) / 2)


def test_field_strength_trace_signs():
    # tr(F_ab F_ab) on the vector bundle is minus the Riemann square
    ffp = poly((1, mono(factor(FH, (1000, 1001)), factor(FH, (1000, 1001)))))
    got = internal_trace(ffp, "vector")
    a, b, c, dd = 1000, 1001, 1002, 1003
    want = poly((-1, mono(factor(RM, (a, b, c, dd)), factor(RM, (a, b, c, dd)))))
    assert got == want


def test_endomorphism_drops():
    p = poly((1, mono(factor(EH),)))
    for bnd in ("scalar", "vector", "tensor"):
        assert internal_trace(p, bnd).is_zero()


def test_table_columns(traced):
    for bundle in ("scalar", "vector", "tensor"):
        got = traced[bundle]
        want = TABLE1[bundle]
        for key, val in want.items():
            assert got.get(key) == val, (bundle, key, str(got.get(key)), str(val))
        assert set(got.entries) <= set(want)


def test_c0_equals_fiber_dim(traced):
    for bundle in ("scalar", "vector", "tensor"):
        assert traced[bundle].get("R0") == FIBER_DIM[bundle]


def test_scalar_column_is_vector_with_f_dropped(coeff_table):
    """Structural check: dropping F and replacing the fiber trace by one
    turns the vector column into the scalar column."""
    from hkexp.basis import reducer
    red = reducer(True)
    out = CoeffTable("check")
    for n in range(0, 4):
        entry = coeff_table.entry(n, 0)
        kept = TensorPolynomial({m: c for m, c in entry.terms.items()
                                 if all(h not in (EH, FH) for h, _, _ in m)})
        out += red.reduce_poly(kept, "check")
    scalar = traced_expansion(coeff_table, "scalar")
    assert out == scalar
