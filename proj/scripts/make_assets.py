#!/usr/bin/env python3
"""Regenerate the test assets committed under assets/.

Everything here is deterministic: synthetic images come from seeded
generators, photographic ones are derived from scikit-image's bundled
CC0/public-domain samples.  Outputs are committed to the repository, so
this script only needs to run when an asset is intentionally changed.

  assets/images/terrain_a.pgm     synthetic terrain, generator seed 7
  assets/images/terrain_b.pgm     synthetic terrain, generator seed 11
  assets/images/terrain_c.pgm     synthetic terrain, generator seed 23
  assets/images/coins.pgm         256x256 crop of scikit-image "coins" (CC0-like,
                                  "no known copyright restrictions")
  assets/images/camera.pgm        scikit-image "camera" resized to 256 (CC0)
  assets/images/astronaut_small.ppm  scikit-image "astronaut" at 64x64 RGB
                                     (public domain)
  assets/ssim/pair_*.pgm          five 64x64 pairs for the SSIM cross-check
  assets/ssim/reference.csv       SSIM values computed by scikit-image for
                                  those pairs (the independent reference)

The terrain images are sums of outer products of smooth random profiles
plus white grain: their spectra have a strong low-rank head and an
unstructured tail, which is the regime the completion experiments need.
"""

import os

import numpy as np
from skimage import data
from skimage.transform import resize
from skimage.metrics import structural_similarity

HERE = os.path.dirname(os.path.abspath(__file__))
IMG_DIR = os.path.join(HERE, "..", "assets", "images")
SSIM_DIR = os.path.join(HERE, "..", "assets", "ssim")


def write_pgm(path, a):
    a = np.asarray(a)
    assert a.dtype == np.uint8 and a.ndim == 2
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (a.shape[1], a.shape[0]))
        f.write(a.tobytes())
    print("wrote", path)


def write_ppm(path, a):
    a = np.asarray(a)
    assert a.dtype == np.uint8 and a.ndim == 3 and a.shape[2] == 3
    with open(path, "wb") as f:
        f.write(b"P6\n%d %d\n255\n" % (a.shape[1], a.shape[0]))
        f.write(a.tobytes())
    print("wrote", path)


def quantize(a):
    return np.round(np.clip(a, 0.0, 255.0)).astype(np.uint8)


def smooth_profile(n, modes, decay, rng):
    x = np.arange(n) / n
    u = np.zeros(n)
    for m in range(1, modes + 1):
        u += (rng.standard_normal() * np.cos(2 * np.pi * m * x)
              + rng.standard_normal() * np.sin(2 * np.pi * m * x)) / (1 + m) ** decay
    return u / np.linalg.norm(u)


def terrain(seed, n=256, rank=15, falloff=0.85, grain=8.0, modes=12, decay=1.0):
    rng = np.random.default_rng(seed)
    img = np.zeros((n, n))
    for i in range(rank):
        img += (falloff ** i) * np.outer(smooth_profile(n, modes, decay, rng),
                                         smooth_profile(n, modes, decay, rng))
    img = (img - img.min()) / (img.max() - img.min()) * 255.0
    img += grain * rng.standard_normal((n, n))
    return quantize(img)


def norm255(a):
    a = a.astype(float)
    return (a - a.min()) / (a.max() - a.min()) * 255.0


def main():
    os.makedirs(IMG_DIR, exist_ok=True)
    os.makedirs(SSIM_DIR, exist_ok=True)

    for name, seed in [("terrain_a", 7), ("terrain_b", 11), ("terrain_c", 23)]:
        write_pgm(os.path.join(IMG_DIR, name + ".pgm"), terrain(seed))

    coins = data.coins().astype(float)[20:276, 60:316]
    write_pgm(os.path.join(IMG_DIR, "coins.pgm"), quantize(norm255(coins)))

    camera = resize(data.camera().astype(float), (256, 256), anti_aliasing=True)
    write_pgm(os.path.join(IMG_DIR, "camera.pgm"), quantize(norm255(camera)))

    astro = resize(data.astronaut().astype(float), (64, 64, 3), anti_aliasing=True)
    write_ppm(os.path.join(IMG_DIR, "astronaut_small.ppm"), quantize(norm255(astro)))

    # SSIM fixtures: pairs spanning distinct degradation types and a wide
    # range of SSIM values.  The reference values come from scikit-image's
    # structural_similarity with the canonical single-scale configuration
    # (11x11 Gaussian window, sigma 1.5, population covariance).
    rng = np.random.default_rng(42)
    cam64 = quantize(norm255(resize(data.camera().astype(float), (64, 64),
                                    anti_aliasing=True))).astype(float)
    grad = quantize(np.tile(np.linspace(0, 255, 64), (64, 1))).astype(float)
    terr64 = terrain(5, n=64).astype(float)

    pairs = {
        "noise": (cam64, np.clip(cam64 + 10.0 * rng.standard_normal((64, 64)), 0, 255)),
        "blur": (cam64, np.clip(
            0.25 * (np.roll(cam64, 1, 0) + np.roll(cam64, -1, 0)
                    + np.roll(cam64, 1, 1) + np.roll(cam64, -1, 1)), 0, 255)),
        "masked": (terr64, terr64 * (rng.random((64, 64)) > 0.3)),
        "shift": (grad, np.clip(grad + 40.0, 0, 255)),
        "unrelated": (np.clip(127 + 60 * rng.standard_normal((64, 64)), 0, 255),
                      np.clip(127 + 60 * rng.standard_normal((64, 64)), 0, 255)),
    }

    rows = []
    for name, (a, b) in pairs.items():
        a8, b8 = quantize(a), quantize(b)
        write_pgm(os.path.join(SSIM_DIR, f"pair_{name}_ref.pgm"), a8)
        write_pgm(os.path.join(SSIM_DIR, f"pair_{name}_test.pgm"), b8)
        val = structural_similarity(a8.astype(float), b8.astype(float),
                                    data_range=255.0, gaussian_weights=True,
                                    sigma=1.5, use_sample_covariance=False)
        rows.append(f"pair_{name},{val:.10g}")
        print(f"  ssim[{name}] = {val:.10g}")

    with open(os.path.join(SSIM_DIR, "reference.csv"), "w") as f:
        f.write("pair,ssim\n")
        f.write("\n".join(rows) + "\n")
    print("wrote", os.path.join(SSIM_DIR, "reference.csv"))


if __name__ == "__main__":
    main()
