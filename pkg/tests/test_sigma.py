import time
from fractions import Fraction

import pytest

from hkexp.sigma import SigmaTable
from hkexp.tensor import G, TensorPolynomial, factor, mono, mono_weight, poly

import reference_values as ref


@pytest.fixture(scope="module")
def table():
    return SigmaTable(8)


def test_low_levels(table):
    assert table.entry(0).is_zero()
    assert table.entry(1).is_zero()
    assert table.entry(2) == poly((1, mono(factor(G, (0, 1)))))
    assert table.entry(3).is_zero()


def test_level_four(table):
    assert table.entry(4) == ref.sigma4_reference()


def test_level_five(table):
    assert table.entry(5) == ref.sigma5_reference()


def test_level_six_symmetrized(table):
    got = table.entry(6).symmetrize((2, 3, 4, 5))
    assert got == ref.sigma6_symmetrized_reference()


def test_runtime_budget():
    t0 = time.perf_counter()
    SigmaTable(6)
    assert time.perf_counter() - t0 < 1.0


def test_weight_rule(table):
    for n in range(2, 9):
        for m in table.entry(n).terms:
            assert mono_weight(m) == Fraction(n, 2) - 1


def test_flat_space_reduction(table):
    for n in range(3, 9):
        assert table.entry(n).drop_curvature().is_zero()
    assert not table.entry(2).drop_curvature().is_zero()


def test_symmetrization_stable(table):
    s = table.entry(5).symmetrize(range(5))
    assert s.symmetrize(range(5)) == s
