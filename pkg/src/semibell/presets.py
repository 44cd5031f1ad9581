"""Named measurement settings and the states used in the figure reproductions."""

from __future__ import annotations

import math

from .fields import EntangledState, MeasurementSettings, SeparableState

SETTINGS_PRESETS: dict[str, MeasurementSettings] = {
    # s_x=(1,1)/sqrt2, s_y=(0,1), p_u at pi/3, p_v=(1,-1)/sqrt2
    "fig2-settings": MeasurementSettings.from_angles(
        math.pi / 4, math.pi / 2, math.pi / 3, -math.pi / 4
    ),
    # s_x=(1,0), s_y=(0,1), p_u=(1,1)/sqrt2, p_v=(1,-1)/sqrt2
    "fig4-settings": MeasurementSettings.from_angles(
        0.0, math.pi / 2, math.pi / 4, -math.pi / 4
    ),
    # settings for which the entangled state breaks the nonlinear lower bound
    "nl-entangled": MeasurementSettings.from_angles(1.7, 1.5, 0.0, 6.1),
}


def settings_preset(name: str) -> MeasurementSettings:
    try:
        return SETTINGS_PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(SETTINGS_PRESETS))
        raise KeyError(f"unknown settings preset {name!r} (known: {known})") from None


# states of the figure examples
MAX_ENTANGLED = EntangledState(1.0, 1.0)
FIG3_SEPARABLE = SeparableState(1.0, math.pi / 2, math.pi / 3)
FIG4_SEPARABLE = SeparableState(1.0, math.pi / 3, math.pi / 8)
