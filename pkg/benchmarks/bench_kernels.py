"""Benchmark: compiled geometry kernels vs. the pure-Python fallback.

Times the primitive kernels on random oriented rectangles and the full
completion pipeline on the three reference rooms.  Run after building the
extension in place:

    python setup.py build_ext --inplace
    python benchmarks/bench_kernels.py [--json]
"""

import argparse
import json
import math
import random
import time

from colayout.geom import _kernels_py
from colayout.geom.shapes import oriented_rect_corners

try:
    from colayout.geom import _kernels_c
except ImportError:
    _kernels_c = None


def random_rects(n, seed=7):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        out.append(
            oriented_rect_corners(
                rng.uniform(-2, 2), rng.uniform(-2, 2),
                rng.uniform(0.3, 2.5), rng.uniform(0.3, 2.5), rng.uniform(0, 360),
            )
        )
    return out


def time_kernel(fn, pairs, repeats=3):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        for a, b in pairs:
            fn(a, b)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_primitives(results):
    rects = random_rects(400)
    pairs = [(rects[i], rects[(i * 7 + 1) % len(rects)]) for i in range(len(rects))] * 10
    room = [(0.0, 0.0), (6.0, 0.0), (6.0, 4.0), (0.0, 4.0)]
    rect_pairs = [(r, room) for r in rects] * 10

    for name, py_fn, c_fn in (
        ("convex_clip_area", _kernels_py.convex_clip_area,
         _kernels_c.convex_clip_area if _kernels_c else None),
        ("poly_min_distance", _kernels_py.poly_min_distance,
         _kernels_c.poly_min_distance if _kernels_c else None),
    ):
        row = {"pure_s": time_kernel(py_fn, pairs)}
        if c_fn:
            row["compiled_s"] = time_kernel(c_fn, pairs)
            row["speedup"] = row["pure_s"] / row["compiled_s"]
        results[name] = row

    row = {"pure_s": time_kernel(_kernels_py.rect_in_polygon, rect_pairs)}
    if _kernels_c:
        row["compiled_s"] = time_kernel(_kernels_c.rect_in_polygon, rect_pairs)
        row["speedup"] = row["pure_s"] / row["compiled_s"]
    results["rect_in_polygon"] = row


def bench_pipeline(results):
    # completion over the reference rooms, end to end, per backend
    import importlib
    import os
    import subprocess
    import sys

    script = (
        "import time\n"
        "from colayout.catalog import load_default_catalog\n"
        "from colayout.generator import GenConfig, complete_scene, load_default_priors\n"
        "from colayout.scene import Opening, Room\n"
        "import colayout.geom as geom\n"
        "catalog = load_default_catalog()\n"
        "priors = load_default_priors()\n"
        "rooms = [\n"
        " Room(id='b', room_type='bedroom', footprint=((0,0),(4,0),(4,3),(0,3)),"
        " ceiling_height=2.8),\n"
        " Room(id='l', room_type='living_room', footprint=((0,0),(6,0),(6,4),(0,4)),"
        " ceiling_height=2.8),\n"
        " Room(id='s', room_type='bedroom',"
        " footprint=((0,0),(5,0),(5,3),(3,3),(3,5),(0,5)), ceiling_height=2.8),\n"
        "]\n"
        "t0 = time.perf_counter()\n"
        "for seed in range(200):\n"
        "    for room in rooms:\n"
        "        complete_scene(room, [], catalog, priors, GenConfig(seed=seed))\n"
        "print(geom.backend_name(), time.perf_counter() - t0)\n"
    )
    for label, env_extra in (("compiled", {}), ("pure", {"COLAYOUT_PURE": "1"})):
        if label == "compiled" and _kernels_c is None:
            continue
        env = dict(os.environ, **env_extra)
        out = subprocess.run(
            [sys.executable, "-c", script], capture_output=True, text=True, env=env, check=True
        )
        backend, elapsed = out.stdout.split()
        results.setdefault("complete_scene_600_runs", {})[f"{label}_s"] = float(elapsed)
        assert backend == label, f"expected {label} backend, got {backend}"
    row = results.get("complete_scene_600_runs", {})
    if "pure_s" in row and "compiled_s" in row:
        row["speedup"] = row["pure_s"] / row["compiled_s"]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    args = parser.parse_args()

    results: dict = {}
    bench_primitives(results)
    bench_pipeline(results)

    if args.json:
        print(json.dumps(results, indent=2))
        return
    if _kernels_c is None:
        print("compiled kernels not built; showing pure-Python timings only")
    width = max(len(k) for k in results)
    print(f"{'benchmark':<{width}}  {'pure':>9}  {'compiled':>9}  {'speedup':>7}")
    for name, row in results.items():
        pure = f"{row.get('pure_s', float('nan')):.4f}s"
        compiled = f"{row['compiled_s']:.4f}s" if "compiled_s" in row else "-"
        speedup = f"{row['speedup']:.1f}x" if "speedup" in row else "-"
        print(f"{name:<{width}}  {pure:>9}  {compiled:>9}  {speedup:>7}")


if __name__ == "__main__":
    main()
