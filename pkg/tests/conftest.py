import math

import numpy as np
import pytest

from noonflow.models import (
    ChannelParams, Dephasing, Depolarization, GeneralizedAmplitudeDamping,
    LorentzianReservoir, SpontaneousEmission,
)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def weak():
    return LorentzianReservoir(gamma0=1.0, lambda_w=3.0)


@pytest.fixture
def strong():
    return LorentzianReservoir(gamma0=1.0, lambda_w=0.1)


@pytest.fixture
def all_models():
    """One CP-valid model per family (both Lorentzian regimes)"""
    return [
        Dephasing(1.0),
        Depolarization(1.0, 1.0),
        SpontaneousEmission(1.0, 1.0),
        LorentzianReservoir(1.0, 3.0),
        LorentzianReservoir(1.0, 0.1),
        GeneralizedAmplitudeDamping(1.0, 10.0),
    ]


@pytest.fixture
def config_text():
    def build(**overrides):
        values = {'channel': 'dephasing', 'n': 8, 'gamma1': 1, 't_max': 5, 'steps': 500}
        values.update(overrides)
        return '\n'.join(f'{key} = {value}' for key, value in values.items() if value is not None)
    return build


@pytest.fixture
def random_cp_params(rng):
    """Draws (f, h, g) inside the CP region |f| <= 1 - h, 4 g^2 <= (1 + h)^2 - f^2"""
    def draw():
        h = rng.uniform(0.0, 1.0)
        f = rng.uniform(-(1.0 - h), 1.0 - h)
        g_max = math.sqrt((1 + h) ** 2 - f * f) / 2.0
        return ChannelParams(f, h, rng.uniform(0.0, min(1.0, g_max)))
    return draw
