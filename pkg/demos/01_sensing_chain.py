"""Walk one force value through every stage of the sensing chain.

Run from the repository root:  python demos/01_sensing_chain.py
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import numpy as np

from tactsim import (
    AdcConfig,
    BridgeConfig,
    FabricModel,
    adc_sample,
    amplify,
    bridge_output,
    dequantize,
    fabric_delta_r,
    stretched_resistance,
    thevenin_resistance,
    thevenin_slope,
)

# 1) The fabric layer: stretching raises resistance quadratically because
#    the conductive path lengthens while its cross-section shrinks.
print("== fabric layer ==")
for ratio in (1.0, 1.05, 1.1, 1.2):
    print(f"  stretch x{ratio:4.2f}: {stretched_resistance(100e3, ratio) / 1e3:7.1f} kOhm")

# 2) Force to resistance rise: linear up to the full-scale force, then flat.
fabric = FabricModel()
print("\n== force -> delta R ==")
for force in (0.0, 0.25, 0.5, 1.0, 3.5, 5.0):
    print(f"  {force:4.2f} N -> {fabric_delta_r(fabric, force) / 1e3:6.2f} kOhm")

# 3) The Wheatstone bridge nulls at rest and rises with the sensing arm.
#    The Thevenin slope starts at exactly 0.25 and sags to ~0.181 at the
#    fabric's full 35% swing, which is why the output is close to linear.
bridge = BridgeConfig(noise_fraction=0.0)
print("\n== bridge ==")
print(f"  output at rest: {bridge_output(bridge, 0.0):.6f} V")
for delta in (1e3, 10e3, 35e3):
    print(f"  delta {delta / 1e3:5.1f} kOhm -> {bridge_output(bridge, delta):.5f} V"
          f"   (Rt = {thevenin_resistance(100e3, delta) / 1e3:.2f} kOhm,"
          f" slope = {thevenin_slope(100e3, delta):.4f})")

# 4) Amplifier and ADC: gain 41.36 spans the 5 V rail near the rated 1 N
#    range; the 8-bit converter rounds ties up.
adc = AdcConfig()
print("\n== amplifier + ADC ==")
for force in (0.196, 0.49, 0.98, 2.0):
    v_bridge = bridge_output(bridge, fabric_delta_r(fabric, force))
    v_amp = amplify(bridge, v_bridge)
    code = adc_sample(adc, v_amp)
    print(f"  {force:5.3f} N -> bridge {v_bridge:.4f} V -> amp {v_amp:.4f} V"
          f" -> code {code:3d} -> {dequantize(adc, code):.4f} V")

# 5) Quantization error never exceeds half an LSB.
grid = np.linspace(0.0, 5.0, 10_001)
errors = [abs(dequantize(adc, adc_sample(adc, v)) - v) for v in grid]
print(f"\nmax quantization error on [0, 5] V: {max(errors):.6f} V"
      f"  (half LSB = {adc.full_scale / (2 * adc.max_code):.6f} V)")
