"""Runtime pipeline: sampled signals to filtered force and contact state.

Per tick the estimator converts the force-layer signal to newtons with
the calibration model, clamps it to the configured sensing range,
smooths it with an equal-weight moving average, and thresholds the four
element signals into on/off contact states with a count-based pattern
label. The model runs before the filter, matching the firmware order.
"""

import math
from collections import deque
from dataclasses import dataclass

from .calibration import PolynomialModel, evaluate_model
from .errors import ParseError, StreamError, UsageError

PATTERN_NONE = "none"
PATTERN_POINT = "point"
PATTERN_LINE = "line"
PATTERN_AREA = "area"

#: Pattern label by number of active elements. A 2x2 grid cannot tell a
#: diagonal pair from an edge pair, so any two contacts read as a line.
_PATTERNS_BY_COUNT = (PATTERN_NONE, PATTERN_POINT, PATTERN_LINE, PATTERN_AREA, PATTERN_AREA)

#: (sensing range N, resolution N) for the published amplifier gains.
RANGE_TABLE = {22.0: (1.5, 0.1), 41.36: (1.0, 0.05)}


@dataclass(frozen=True)
class EstimatorConfig:
    """Per-deployment estimator settings.

    ``element_thresholds`` are signal levels (same units as the incoming
    samples), not forces; see ``config.element_signal_thresholds`` for
    the conversion through the simulated element chain.
    ``hysteresis_fraction`` keeps an element on until its signal drops
    below threshold*(1-h); the reference firmware uses plain on/off
    (h = 0).
    """

    model: PolynomialModel
    element_thresholds: tuple
    sensing_range: float
    resolution: float
    filter_window: int = 4
    hysteresis_fraction: float = 0.0

    def __post_init__(self):
        if self.filter_window < 1:
            raise ValueError("filter window must be at least 1")
        if self.sensing_range <= 0:
            raise ValueError("sensing range must be positive")
        if self.resolution <= 0:
            raise ValueError("resolution must be positive")
        if len(self.element_thresholds) != 4:
            raise ValueError("need one threshold per element (4)")
        if any(t <= 0 for t in self.element_thresholds):
            raise ValueError("element thresholds must be positive")
        if not 0 <= self.hysteresis_fraction < 1:
            raise ValueError("hysteresis_fraction must be in [0, 1)")


@dataclass(frozen=True)
class EstimateFrame:
    """One output tick of the estimator."""

    time: float
    raw_force: float
    filtered_force: float
    element_state: tuple
    pattern: str


class StreamState:
    """Mutable context owned by one stream consumer.

    Holds the filter window, the sample clock, and the previous contact
    states (needed when hysteresis is enabled).
    """

    def __init__(self, filter_window: int):
        if filter_window < 1:
            raise ValueError("filter window must be at least 1")
        self.window = deque(maxlen=filter_window)
        self.last_time = None
        self.element_states = (False, False, False, False)


def range_for_gain(gain: float):
    """(sensing range, resolution) in newtons for an amplifier gain.

    The published gains return their measured table entries exactly;
    other gains interpolate linearly in 1/gain, which preserves the
    trade-off direction: more gain means finer resolution over a
    shorter range.
    """
    if gain <= 0:
        raise ValueError("gain must be positive")
    for preset, entry in RANGE_TABLE.items():
        if math.isclose(gain, preset, rel_tol=1e-12):
            return entry
    (g_lo, (range_lo, res_lo)), (g_hi, (range_hi, res_hi)) = sorted(RANGE_TABLE.items())
    u = 1.0 / gain
    u_lo, u_hi = 1.0 / g_lo, 1.0 / g_hi
    t = (u - u_hi) / (u_lo - u_hi)
    return (range_hi + t * (range_lo - range_hi), res_hi + t * (res_lo - res_hi))


def moving_average(window) -> float:
    """Equal-weight mean of the samples currently in the window.

    Exact for a window of identical values, so a settled step reads
    back bit-for-bit.
    """
    values = list(window)
    if not values:
        raise UsageError("moving average of an empty window")
    first = values[0]
    if all(v == first for v in values):
        return first
    return math.fsum(values) / len(values)


def estimate_force(cfg: EstimatorConfig, signal: float) -> float:
    """Model force for one force-layer signal, clamped to [0, range]."""
    force = evaluate_model(cfg.model, signal)
    return min(max(force, 0.0), cfg.sensing_range)


def detect_contacts(signals, thresholds):
    """Per-element on/off: on when the signal meets its threshold."""
    if len(signals) != len(thresholds):
        raise ValueError("one signal per threshold required")
    return tuple(s >= t for s, t in zip(signals, thresholds))


def classify_pattern(states) -> str:
    """Contact-pattern label from the number of active elements.

    One contact suggests a point (sphere-like) touch, two a line
    (cylinder-like) touch, more an area.
    """
    if len(states) != 4:
        raise ValueError("pattern classification needs 4 element states")
    return _PATTERNS_BY_COUNT[sum(bool(s) for s in states)]


def process_frame(cfg: EstimatorConfig, state: StreamState, signals, time: float) -> EstimateFrame:
    """Advance the stream by one 5-channel sample.

    Channel 0 is the force layer, channels 1-4 the position elements.
    Timestamps must be strictly increasing.
    """
    if len(signals) != 5:
        raise ValueError(f"expected 5 channels, got {len(signals)}")
    if state.last_time is not None and time <= state.last_time:
        raise StreamError(
            f"timestamp {time} s does not advance past {state.last_time} s"
        )
    raw = estimate_force(cfg, signals[0])
    state.window.append(raw)
    filtered = moving_average(state.window)
    states = detect_contacts(signals[1:], cfg.element_thresholds)
    if cfg.hysteresis_fraction > 0.0:
        release = tuple(t * (1.0 - cfg.hysteresis_fraction) for t in cfg.element_thresholds)
        states = tuple(
            on or (was_on and sig >= rel)
            for on, was_on, sig, rel in zip(states, state.element_states, signals[1:], release)
        )
    state.element_states = states
    state.last_time = time
    return EstimateFrame(
        time=time,
        raw_force=raw,
        filtered_force=filtered,
        element_state=states,
        pattern=classify_pattern(states),
    )


def format_frame(frame: EstimateFrame) -> str:
    """Frame record line: ``t,raw_n,filtered_n,e1,e2,e3,e4,pattern``."""
    states = ",".join("1" if s else "0" for s in frame.element_state)
    return f"{frame.time!r},{frame.raw_force!r},{frame.filtered_force!r},{states},{frame.pattern}"


def parse_frame(line: str, line_number=None) -> EstimateFrame:
    fields = [f.strip() for f in line.strip().split(",")]
    if len(fields) != 8:
        raise ParseError(f"expected 8 fields, got {len(fields)}", line_number)
    try:
        time, raw, filtered = (float(fields[i]) for i in range(3))
        states = tuple(_parse_state(f, line_number) for f in fields[3:7])
    except ValueError as exc:
        raise ParseError(str(exc), line_number) from exc
    pattern = fields[7]
    if pattern not in (PATTERN_NONE, PATTERN_POINT, PATTERN_LINE, PATTERN_AREA):
        raise ParseError(f"unknown pattern {pattern!r}", line_number)
    return EstimateFrame(time, raw, filtered, states, pattern)


def _parse_state(field: str, line_number) -> bool:
    if field not in ("0", "1"):
        raise ValueError(f"element state must be 0 or 1, got {field!r}")
    return field == "1"
