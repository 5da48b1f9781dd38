from fractions import Fraction

import pytest

from iqgt.qcond import ParamValue
from iqgt.repcore import Kind, ModuleSpec


def pv(name, value=None) -> ParamValue:
    return ParamValue(name, None if value is None else Fraction(value))


def spec3(l=None, m0=None, kind=Kind.GENERIC, **kw) -> ModuleSpec:
    return ModuleSpec(3, kind, {"l": pv("l", l), "m0": pv("m0", m0)}, **kw)


def spec4(p=None, r=None, l0=None, m0=None, kind=Kind.GENERIC,
          **kw) -> ModuleSpec:
    return ModuleSpec(4, kind, {"p": pv("p", p), "r": pv("r", r),
                                "l0": pv("l0", l0), "m0": pv("m0", m0)}, **kw)


@pytest.fixture
def sym3():
    return spec3()


@pytest.fixture
def sym4():
    return spec4()
