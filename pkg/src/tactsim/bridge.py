"""Electrical model of the sensing chain.

Each resistive layer feeds a quarter Wheatstone bridge: a reference
divider (r1 over r2) and a sensing divider (r3 over the sensor rx). The
differential output is the sensing node minus the reference node, so a
resistance rise in the sensor raises the output from an exact zero at
rest. An instrumentation amplifier scales that signal (with about 1%
multiplicative error in the reference build) and clips at its supply
rails, and an 8-bit ADC turns the railed voltage into a code.

The Thevenin resistance seen from the bridge output is computed for
analysis but does not load the divider: instrumentation-amplifier
inputs draw negligible current.
"""

import math
from dataclasses import dataclass

from .errors import ConfigError, UsageError

#: Amplifier gains of the two published board variants.
GAIN_PRESETS = (22.0, 41.36)


@dataclass(frozen=True)
class BridgeConfig:
    """One bridge-plus-amplifier channel.

    The defaults describe the fabric channel: equal 100 kOhm arms
    matched to the fabric's rest resistance, the 41.36x gain variant,
    and 1% amplifier noise. ``rail_low``/``rail_high`` are the amplifier
    supply rails.
    """

    supply_voltage: float = 5.0
    r1: float = 100e3
    r2: float = 100e3
    r3: float = 100e3
    rx_rest: float = 100e3
    amplifier_gain: float = 41.36
    noise_fraction: float = 0.01
    rail_low: float = 0.0
    rail_high: float = 5.0

    def __post_init__(self):
        for name in ("r1", "r2", "r3", "rx_rest"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.amplifier_gain <= 0:
            raise ValueError("amplifier gain must be positive")
        if not 0 <= self.noise_fraction < 1:
            raise ValueError("noise_fraction must be in [0, 1)")
        if self.rail_low >= self.rail_high:
            raise ValueError("rail_low must be below rail_high")


@dataclass(frozen=True)
class AdcConfig:
    """Sampling front end: 8 bits at 9.6 Hz on a 5 V scale by default."""

    bits: int = 8
    sample_rate: float = 9.6
    full_scale: float = 5.0

    def __post_init__(self):
        if self.bits < 1:
            raise ValueError("ADC needs at least 1 bit")
        if self.sample_rate <= 0:
            raise ValueError("sample rate must be positive")
        if self.full_scale <= 0:
            raise ValueError("full scale must be positive")

    @property
    def max_code(self) -> int:
        return (1 << self.bits) - 1

    @property
    def lsb(self) -> float:
        """Voltage step of one code."""
        return self.full_scale / self.max_code


def is_balanced(cfg: BridgeConfig, rel_tol: float = 1e-9) -> bool:
    """True when r1/r2 matches r3/rx at rest, i.e. zero output at no load."""
    return math.isclose(cfg.r1 / cfg.r2, cfg.r3 / cfg.rx_rest, rel_tol=rel_tol)


def thevenin_resistance(rx: float, delta_rx: float) -> float:
    """Equivalent resistance seen from the output of an equal-arm bridge.

    Two dividers in parallel from the output's point of view: rx/2 for
    the fixed side and rx*(rx + delta)/(2rx + delta) for the sensing
    side.
    """
    if rx <= 0:
        raise ValueError("rx must be positive")
    if delta_rx < 0:
        raise ValueError("delta_rx must be non-negative")
    return rx / 2.0 + rx * (rx + delta_rx) / (2.0 * rx + delta_rx)


def thevenin_slope(rx: float, delta_rx: float) -> float:
    """d(thevenin_resistance)/d(delta_rx), closed form.

    Starts at exactly 0.25 at no deformation and decays to about 0.181
    when the sensing arm has risen by the fabric's full 35%.
    """
    if rx <= 0:
        raise ValueError("rx must be positive")
    if delta_rx < 0:
        raise ValueError("delta_rx must be non-negative")
    ratio = rx / (2.0 * rx + delta_rx)
    return ratio * ratio


def bridge_output(cfg: BridgeConfig, delta_rx: float) -> float:
    """Differential bridge voltage for a sensing-arm rise of ``delta_rx``.

    Sensing divider node minus reference divider node:

        supply * ((rx + delta)/(r3 + rx + delta) - r2/(r1 + r2))

    Zero at rest for any balanced bridge and strictly increasing in the
    delta. With equal arms this reduces to supply*delta/(2*(2rx+delta)).
    """
    if delta_rx < 0:
        raise ValueError("delta_rx must be non-negative")
    if not is_balanced(cfg):
        raise ConfigError(
            "bridge is not balanced at rest: r1/r2 = "
            f"{cfg.r1 / cfg.r2:.9g} but r3/rx = {cfg.r3 / cfg.rx_rest:.9g}"
        )
    rx = cfg.rx_rest + delta_rx
    sense = rx / (cfg.r3 + rx)
    reference = cfg.r2 / (cfg.r1 + cfg.r2)
    return cfg.supply_voltage * (sense - reference)


def amplify(cfg: BridgeConfig, v_in: float, noise_sample: float = 0.0) -> float:
    """Instrumentation-amplifier output for a bridge voltage.

    ``noise_sample`` in [-1, 1] scales the multiplicative error term;
    passing an explicit sample keeps simulations reproducible. The
    result is clipped to the amplifier rails.
    """
    if not math.isfinite(v_in):
        raise ValueError("amplifier input must be finite")
    v = cfg.amplifier_gain * v_in * (1.0 + cfg.noise_fraction * noise_sample)
    return min(max(v, cfg.rail_low), cfg.rail_high)


def adc_sample(adc: AdcConfig, v: float) -> int:
    """Quantize a voltage to an ADC code, rounding ties up.

    Out-of-range voltages clamp to the conversion range first.
    """
    if not math.isfinite(v):
        raise ValueError("ADC input must be finite")
    clamped = min(max(v, 0.0), adc.full_scale)
    scaled = clamped * adc.max_code / adc.full_scale
    return int(math.floor(scaled + 0.5))


def dequantize(adc: AdcConfig, code: int) -> float:
    """Voltage at the center of an ADC code."""
    if not 0 <= code <= adc.max_code:
        raise UsageError(f"code {code} outside [0, {adc.max_code}]")
    return code * adc.full_scale / adc.max_code


def sample_chain(bridge: BridgeConfig, adc: AdcConfig, delta_rx: float,
                 noise_sample: float = 0.0) -> int:
    """One full conversion: bridge -> amplifier -> ADC code."""
    return adc_sample(adc, amplify(bridge, bridge_output(bridge, delta_rx), noise_sample))
