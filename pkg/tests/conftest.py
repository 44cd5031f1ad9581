import math

import pytest

from semibell import EntangledState, SeparableState, settings_preset


@pytest.fixture
def fig2_settings():
    return settings_preset("fig2-settings")


@pytest.fixture
def fig4_settings():
    return settings_preset("fig4-settings")


@pytest.fixture
def max_entangled():
    return EntangledState(1.0, 1.0)


@pytest.fixture
def fig3_separable():
    return SeparableState(1.0, math.pi / 2, math.pi / 3)


@pytest.fixture
def fig4_separable():
    return SeparableState(1.0, math.pi / 3, math.pi / 8)
