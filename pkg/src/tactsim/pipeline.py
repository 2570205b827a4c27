"""End-to-end runs: scenario simulation, stream estimation, summaries.

Everything here streams: simulation and estimation are generators, so a
replay never holds more than one tick in memory regardless of length.
All randomness comes from one seeded generator that draws exactly five
amplifier-noise samples per tick in channel order, which makes every
run byte-reproducible.
"""

import math

import numpy as np

from .bridge import sample_chain
from .calibration import CalibrationDataset, protocol_weights
from .config import ToolkitConfig, channel_signal
from .errors import DataError, StreamError, UsageError
from .estimator import EstimatorConfig, StreamState, process_frame
from .sensor import LoadScenario, QUADRANTS, element_resistance, fabric_delta_r
from .streams import SampleLine
from .units import gw_to_newtons, rmse

PATTERN_ORDER = ("none", "point", "line", "area")


def sample_times(adc_rate: float, end_time: float):
    """Tick times k/rate from zero through the end of a scenario."""
    last = int(math.floor(end_time * adc_rate + 1e-9))
    return (k / adc_rate for k in range(last + 1))


def simulate_samples(cfg: ToolkitConfig, scenario: LoadScenario, seed=None):
    """Yield the ADC sample stream for a load scenario.

    The sample clock starts at t = 0, so scenarios must start there.
    """
    rng = np.random.default_rng(cfg.seed if seed is None else seed)
    for t in sample_times(cfg.adc.sample_rate, scenario.end_time):
        force, quadrants = scenario.at(t)
        codes = [
            sample_chain(
                cfg.bridge, cfg.adc, fabric_delta_r(cfg.fabric, force),
                rng.uniform(-1.0, 1.0),
            )
        ]
        for index, element in enumerate(cfg.elements):
            element_force = force if QUADRANTS[index] in quadrants else 0.0
            delta = element_resistance(element, element_force) - element.rest_resistance
            codes.append(
                sample_chain(
                    cfg.element_bridge(index), cfg.adc, delta, rng.uniform(-1.0, 1.0)
                )
            )
        yield SampleLine(t, tuple(codes))


def capture_protocol_dataset(cfg: ToolkitConfig, seed=None, weights=None) -> CalibrationDataset:
    """Run the bench weight protocol through the simulated chain.

    Each calibration weight is pressed repeatedly onto the pad and the
    force-layer signal recorded against the known force, yielding the
    dataset a real calibration session would produce.
    """
    rng = np.random.default_rng(cfg.seed if seed is None else seed)
    if weights is None:
        weights = protocol_weights()
    signals, forces, weights_gw = [], [], []
    for weight, count in weights:
        force = gw_to_newtons(weight)
        delta = fabric_delta_r(cfg.fabric, force)
        for _ in range(count):
            code = sample_chain(cfg.bridge, cfg.adc, delta, rng.uniform(-1.0, 1.0))
            signals.append(channel_signal(cfg, code))
            forces.append(force)
            weights_gw.append(float(weight))
    return CalibrationDataset(
        np.array(signals), np.array(forces), weights_gw=np.array(weights_gw)
    )


def _code_to_signal(cfg: ToolkitConfig, value: float, where: str) -> float:
    code = int(round(value))
    if code != value:
        raise DataError(f"{where}: channel value {value!r} is not an ADC code")
    if not 0 <= code <= cfg.adc.max_code:
        raise DataError(f"{where}: code {code} outside [0, {cfg.adc.max_code}]")
    return channel_signal(cfg, code)


def estimate_frames(cfg: ToolkitConfig, est_cfg: EstimatorConfig, samples):
    """Yield one EstimateFrame per sample, lazily."""
    state = StreamState(est_cfg.filter_window)
    for ordinal, sample in enumerate(samples, start=1):
        if sample.line_number is not None:
            where = f"line {sample.line_number}"
        else:
            where = f"sample {ordinal}"
        signals = tuple(_code_to_signal(cfg, c, where) for c in sample.channels)
        try:
            yield process_frame(est_cfg, state, signals, sample.time)
        except StreamError as exc:
            raise StreamError(f"{where}: {exc}") from exc


def summarize_frames(frames, sensing_range: float, truth: LoadScenario = None) -> str:
    """Deterministic plain-text summary of a frame stream.

    Reports frame and saturation counts, per-element duty cycles, and
    pattern counts; with a ground-truth scenario it also reports the
    RMSE of the filtered force against the scenario force.
    """
    count = 0
    t_first = t_last = None
    saturated = 0
    on_counts = [0, 0, 0, 0]
    pattern_counts = {label: 0 for label in PATTERN_ORDER}
    estimates, true_forces = [], []
    for frame in frames:
        if count == 0:
            t_first = frame.time
        t_last = frame.time
        count += 1
        if frame.raw_force >= sensing_range:
            saturated += 1
        for index, on in enumerate(frame.element_state):
            on_counts[index] += bool(on)
        pattern_counts[frame.pattern] += 1
        if truth is not None:
            estimates.append(frame.filtered_force)
            true_forces.append(truth.at(frame.time)[0])
    lines = [f"frames,{count}"]
    if count:
        lines.append(f"t_first,{t_first!r}")
        lines.append(f"t_last,{t_last!r}")
        lines.append(f"saturated_frames,{saturated}")
        for index, on in enumerate(on_counts, start=1):
            lines.append(f"duty_cycle_e{index},{on / count!r}")
        for label in PATTERN_ORDER:
            lines.append(f"pattern_{label},{pattern_counts[label]}")
    if truth is not None:
        if not count:
            raise UsageError("cannot compute RMSE of an empty frame stream")
        lines.append(f"rmse_n,{rmse(estimates, true_forces)!r}")
    return "\n".join(lines)
