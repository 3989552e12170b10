import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from tamefields.finfield import QQ, prime_field  # noqa: E402
from tamefields.ogroup import Atom, OrderedGroup  # noqa: E402
from tamefields.upoly import UPoly  # noqa: E402
from tamefields.valfield import HahnField, RatFuncField  # noqa: E402


def group(*kinds):
    atoms = []
    for k in kinds:
        if k == "Z":
            atoms.append(Atom.Z())
        elif k == "Q":
            atoms.append(Atom.Q())
        else:
            atoms.append(Atom.Zinv(*k))
    return OrderedGroup(tuple(atoms))


def hahn(p, *kinds):
    k = QQ if p == 0 else prime_field(p)
    return HahnField(k, group(*(kinds or ("Z",))))


def X(K):
    return UPoly.x(K)


@pytest.fixture
def F3Z():
    return hahn(3, "Z")


@pytest.fixture
def F2Z():
    return hahn(2, "Z")
