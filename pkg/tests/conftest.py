import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def sigma_table():
    from hkexp.sigma import SigmaTable
    return SigmaTable(8)


@pytest.fixture(scope="session")
def coeff_table(sigma_table):
    from hkexp.dewitt import CoeffDerivTable
    return CoeffDerivTable(sigma_table)
