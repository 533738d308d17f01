import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from rbx.algebra import canonical_bimodule, dual_module
from rbx.fields import F2, F3, F5, QQ
from rbx.instances import (ground_field_algebra, kx2, mult_by_x_instance,
                           null_algebra)


@pytest.fixture
def kx2_q():
    return kx2(QQ)


@pytest.fixture
def kx2_f2():
    return kx2(F2)


@pytest.fixture
def mult_by_x_q():
    return mult_by_x_instance(QQ)


def catalog_algebras():
    """Small algebras the property tests sweep over."""
    return [
        ("kx2/Q", kx2(QQ)),
        ("kx2/F2", kx2(F2)),
        ("kx2/F5", kx2(F5)),
        ("null2/Q", null_algebra(QQ, 2)),
        ("field/F3", ground_field_algebra(F3)),
    ]


def enumeration_pairs():
    """The (algebra, bimodule) pairs for exhaustive F_p enumeration:
    three pairs over F2 (dim <= 2) and one over F3."""
    a2 = kx2(F2)
    n2 = null_algebra(F2, 2)
    a3 = kx2(F3)
    return [
        ("kx2/F2 canonical", a2, canonical_bimodule(a2)),
        ("kx2/F2 dual", a2, dual_module(a2)),
        ("null2/F2 canonical", n2, canonical_bimodule(n2)),
        ("kx2/F3 canonical", a3, canonical_bimodule(a3)),
    ]
