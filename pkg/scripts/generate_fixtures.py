"""Regenerate the vendored test fixtures in tests/data.

Tabular fixtures are the classic Iris and Wine measurement tables, written
through the package's own CSV writer so they round trip exactly.  Image
fixtures are synthetic but deliberately different in texture: a smooth
scene-like gradient with blobs, and a high-frequency ridge pattern.  Both
are fully deterministic.

Run from the repository root:  python3 scripts/generate_fixtures.py
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np
from sklearn.datasets import load_iris, load_wine

from histspec.io import GrayscaleImage, TabularDataset, write_csv, write_pgm

DATA_DIR = Path(__file__).resolve().parent.parent / "tests" / "data"


def _clean(name: str) -> str:
    name = re.sub(r"\s*\(cm\)\s*$", "", name)
    return re.sub(r"[^0-9a-z]+", "_", name.lower()).strip("_")


def write_table(bunch, path: Path) -> None:
    names = tuple(_clean(n) for n in bunch.feature_names)
    cols = tuple(np.asarray(bunch.data[:, j], dtype=float) for j in range(len(names)))
    write_csv(TabularDataset(names, cols), path)
    print(f"{path}: {cols[0].size} rows x {len(names)} columns")


def scene_image(size: int = 512) -> GrayscaleImage:
    """Smooth illumination gradient plus soft blobs, mildly noisy."""
    rng = np.random.default_rng(20240817)
    yy, xx = np.meshgrid(np.linspace(0, 1, size), np.linspace(0, 1, size), indexing="ij")
    img = 90.0 + 70.0 * xx + 40.0 * yy
    for _ in range(12):
        cx, cy = rng.uniform(0, 1, 2)
        r = rng.uniform(0.05, 0.25)
        amp = rng.uniform(-55.0, 55.0)
        img += amp * np.exp(-((xx - cx) ** 2 + (yy - cy) ** 2) / (2 * r * r))
    img += rng.normal(0.0, 2.0, img.shape)
    return GrayscaleImage(np.clip(np.rint(img), 0, 255))


def ridge_image(size: int = 512) -> GrayscaleImage:
    """Fingerprint-like ridge pattern: bimodal histogram, high frequency."""
    rng = np.random.default_rng(19680801)
    yy, xx = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
    theta = 0.9 * np.sin(2.0 * np.pi * yy / size) + 0.4 * np.cos(2.0 * np.pi * xx / size)
    phase = 0.35 * (xx * np.cos(theta) + yy * np.sin(theta))
    img = 128.0 + 110.0 * np.tanh(2.5 * np.sin(phase))
    img += rng.normal(0.0, 6.0, img.shape)
    return GrayscaleImage(np.clip(np.rint(img), 0, 255))


def main() -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    write_table(load_iris(), DATA_DIR / "iris.csv")
    write_table(load_wine(), DATA_DIR / "wine.csv")
    for name, img in (("scene.pgm", scene_image()), ("ridges.pgm", ridge_image())):
        write_pgm(img, DATA_DIR / name)
        print(f"{DATA_DIR / name}: {img.width}x{img.height}")


if __name__ == "__main__":
    main()
