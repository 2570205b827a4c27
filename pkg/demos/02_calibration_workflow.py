"""Calibrate a force model from simulated bench data.

Reproduces the weight-set workflow: press each calibration weight on the
pad through the simulated chain, cross-validate polynomial orders 1-5,
and keep the order with the lowest testing error.

Run from the repository root:  python demos/02_calibration_workflow.py
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import numpy as np

from tactsim import (
    PRESET_MODELS,
    capture_protocol_dataset,
    cross_validate,
    default_config,
    evaluate_model,
    fit_polynomial,
    protocol_weights,
    synthetic_protocol_dataset,
)

# 1) The weight protocol: 12 weights, 100 measurements.
print("== weight protocol ==")
print("  " + "  ".join(f"{w}gw x{n}" for w, n in protocol_weights()))

# 2) Capture the dataset through the simulated chain (1% amplifier noise,
#    8-bit quantization) and cross-validate.
cfg = default_config()
dataset = capture_protocol_dataset(cfg, seed=7)
report = cross_validate(dataset, seed=7)
print("\n== cross-validation on chain data ==")
print(report.table())

model = fit_polynomial(dataset.signals, dataset.forces, report.selected_order)
print(f"\nfitted coefficients: {model.coefficients}")

# 3) Sanity-check the winner against the known chain behavior.
print("\n== model vs chain ==")
for weight in (20, 50, 100):
    force = weight * 0.0098
    rows = dataset.weights_gw == weight
    mean_signal = float(np.mean(dataset.signals[rows]))
    print(f"  {weight:3d} gw: signal {mean_signal:.3f} V ->"
          f" {evaluate_model(model, mean_signal):.4f} N (true {force:.3f} N)")

# 4) The same machinery recovers the factory presets exactly when fed
#    noise-free data generated from them.
print("\n== preset recovery from noise-free synthetic data ==")
for order, preset in PRESET_MODELS.items():
    signals = np.linspace(0.0, 12.0, 60)
    refit = fit_polynomial(signals, evaluate_model(preset, signals), order)
    worst = max(abs(a - b) for a, b in zip(refit.coefficients, preset.coefficients))
    print(f"  order {order}: max coefficient error {worst:.2e}")

# 5) And with noise at the bench scale (sigma = 0.09 N), the testing error
#    of the selected order lands near the noise floor.
noisy = synthetic_protocol_dataset(PRESET_MODELS[1], noise_sigma=0.09, seed=0)
noisy_report = cross_validate(noisy, repeats=20, seed=0)
print(f"\nnoisy synthetic data: selected order {noisy_report.selected_order},"
      f" testing RMSE {noisy_report.selected_test_rmse():.4f} N")
