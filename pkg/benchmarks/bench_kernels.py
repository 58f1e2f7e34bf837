"""Compare the compiled and pure-Python kernels.

Micro benchmarks call both kernel modules directly; the end-to-end runs
start a fresh interpreter per backend so the import-time selection applies.

    python3 benchmarks/bench_kernels.py [--repeat N] [--skip-census]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

from grestrict import _pykernels

try:
    from grestrict import _ckernels
except ImportError:
    _ckernels = None


def _sym(n: int) -> list[tuple[int, ...]]:
    return [tuple(list(range(1, n)) + [0]), (1, 0) + tuple(range(2, n))]


def micro(repeat: int) -> list[tuple[str, float, float | None]]:
    gens8 = _sym(8)
    g = tuple(reversed(range(64)))
    h = tuple((7 * i + 3) % 64 for i in range(64))
    elems = _pykernels.closure(_sym(6), 6, 10**6)
    cases = {
        "mul (degree 64)": lambda k: k.mul(g, h),
        "inv (degree 64)": lambda k: k.inv(h),
        "orbits of Sym(8)": lambda k: k.orbits(8, gens8),
        "closure of Sym(7)": lambda k: k.closure(_sym(7), 7, 10**6),
        "class labels of Sym(6)": lambda k: k.class_labels(elems, _sym(6), [_pykernels.inv(x) for x in _sym(6)]),
    }
    rows = []
    for name, fn in cases.items():
        number = 2000 if "mul" in name or "inv" in name else 3
        py = min(timeit.repeat(lambda: fn(_pykernels), number=number, repeat=repeat)) / number
        cy = None
        if _ckernels is not None:
            cy = min(timeit.repeat(lambda: fn(_ckernels), number=number, repeat=repeat)) / number
        rows.append((name, py, cy))
    return rows


END_TO_END = {
    "stabilizer chain, 12T301": (
        "from grestrict.census import ingest\n"
        "g = [r for r in ingest() if r.label == '12T301'][0].group\n"
        "g.order()"
    ),
    "verdicts, degrees 2..8": (
        "from grestrict.census import ingest, run_census, CensusOptions\n"
        "run_census(ingest(), CensusOptions(degrees=(2, 8)))"
    ),
}


def end_to_end(backend: str, code: str) -> float:
    env = dict(os.environ, GRESTRICT_KERNELS=backend)
    timer = f"import time\nt = time.perf_counter()\n{code}\nprint(time.perf_counter() - t)"
    out = subprocess.run([sys.executable, "-c", timer], env=env, check=True, capture_output=True, text=True)
    return float(out.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-census", action="store_true")
    args = ap.parse_args()
    print(f"{'benchmark':<28} {'python':>12} {'cython':>12} {'speedup':>8}")
    for name, py, cy in micro(args.repeat):
        cys = f"{cy * 1e6:10.1f}us" if cy else "n/a"
        sp = f"{py / cy:7.2f}x" if cy else ""
        print(f"{name:<28} {py * 1e6:10.1f}us {cys:>12} {sp:>8}")
    for name, code in END_TO_END.items():
        if args.skip_census and "verdicts" in name:
            continue
        py = end_to_end("python", code)
        cy = end_to_end("cython", code) if _ckernels is not None else None
        cys = f"{cy:11.2f}s" if cy else "n/a"
        sp = f"{py / cy:7.2f}x" if cy else ""
        print(f"{name:<28} {py:11.2f}s {cys:>12} {sp:>8}")


if __name__ == "__main__":
    main()
