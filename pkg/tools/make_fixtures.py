#!/usr/bin/env python3
"""Regenerate the vendored dataset fixtures.

The build environment has no network access, so the two benchmark data
sets are deterministic synthetic stand-ins written in the upstream native
file formats.  They are constructed to match the documented traits of the
originals (size, dimensionality, class count, intrinsic-dimensionality
ratio, cluster overlap behaviour under landmark MDS); see README.md for
the full provenance note.  Run from the repository root:

    python tools/make_fixtures.py

and commit the files it writes under src/sharpdr/fixtures/.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

import numpy as np

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "src/sharpdr/fixtures"


def make_wifi(seed: int = 20260101) -> tuple[np.ndarray, list[str]]:
    """Indoor WiFi signal strengths: 2000 x 7 ints, four rooms.

    Signal model: log-distance path loss from 7 routers on a 2D floor
    plan, a 3D per-sample obstruction state that attenuates each router
    differently (this carries most of the within-room variance and is what
    a 2D projection must sacrifice), and 1 dB measurement noise, rounded
    to integer dBm with a -99 receiver floor.
    """
    rng = np.random.default_rng(seed)
    rooms = {"1": (4.0, 4.0), "2": (14.0, 5.0), "3": (9.0, 12.0),
             "4": (17.0, 13.0)}
    routers = np.array([
        [2.0, 2.0], [8.0, 1.5], [15.0, 2.0],
        [1.5, 10.0], [9.0, 8.0], [16.0, 9.0], [11.0, 15.0],
    ])
    pose_loadings = np.abs(rng.normal(size=(3, 7))) * 4.0
    per_room = 500
    blocks, labels = [], []
    for room, (cx, cy) in rooms.items():
        pos = np.column_stack([
            rng.uniform(cx - 1.2, cx + 1.2, per_room),
            rng.uniform(cy - 1.2, cy + 1.2, per_room),
        ])
        dist = np.sqrt(((pos[:, None, :] - routers[None, :, :]) ** 2).sum(-1))
        rssi = -30.0 - 28.0 * np.log10(np.maximum(dist, 1.0))
        rssi -= np.abs(rng.normal(size=(per_room, 3)) @ pose_loadings)
        rssi += rng.normal(0.0, 1.0, rssi.shape)
        blocks.append(np.clip(np.round(rssi), -99, None))
        labels += [room] * per_room
    return np.concatenate(blocks), labels


def make_banknote(seed: int = 20260202) -> tuple[np.ndarray, list[str]]:
    """Banknote wavelet features: 1327 x 4 floats, two classes.

    A two-factor latent (class-separating u, shared v) drives four
    correlated features plus small independent noise, reproducing the
    original's rank-2 spectrum and mild class overlap.  Class 0 plays
    'genuine', class 1 'forged'.
    """
    rng = np.random.default_rng(seed)
    n_genuine, n_forged = 737, 590
    u = np.concatenate([rng.normal(2.2, 1.0, n_genuine),
                        rng.normal(-2.2, 1.3, n_forged)])
    v = rng.normal(0.0, 1.6, n_genuine + n_forged)
    e3 = rng.normal(0.0, 0.9, u.shape)
    e4 = rng.normal(0.0, 0.9, u.shape)
    features = np.column_stack([
        2.0 * u + 0.3 * v,
        1.5 * u + 4.0 * v,
        -1.8 * u + 2.2 * v + e3,
        -1.0 * u - 1.2 * v + e4,
    ]).round(4)
    labels = ["0"] * n_genuine + ["1"] * n_forged
    return features, labels


def write_wifi(path: Path) -> None:
    points, labels = make_wifi()
    lines = [
        "\t".join(str(int(v)) for v in row) + f"\t{label}"
        for row, label in zip(points, labels)
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_banknote(path: Path) -> None:
    points, labels = make_banknote()
    lines = [
        ",".join(format(v, "g") for v in row) + f",{label}"
        for row, label in zip(points, labels)
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def main() -> None:
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    targets = {
        "wifi_localization.txt": write_wifi,
        "banknote_authentication.txt": write_banknote,
    }
    for name, writer in targets.items():
        path = FIXTURE_DIR / name
        writer(path)
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        print(f"{name}: sha256 {digest}")


if __name__ == "__main__":
    main()
