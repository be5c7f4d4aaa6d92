import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def spinor_factory(rng):
    from dirac_scs.algebra import Spinor

    def make():
        re, im = rng.normal(size=2), rng.normal(size=2)
        return Spinor(complex(re[0], im[0]), complex(re[1], im[1]))

    return make
