"""Compare the compiled and pure-Python monomial kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Kernel timings call both modules directly; the end-to-end rows run a
workload in a subprocess with ``ISINGCC_BACKEND`` set accordingly.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from isingcc import _kernels_py as py

try:
    from isingcc import _kernels as cy
except ImportError:
    cy = None

END_TO_END = {
    "grid search (20 x 20)": "from isingcc.common_cause import search_common_causes as s; "
    "from isingcc.scenario import ScenarioSpec; s(ScenarioSpec(), 20)",
    "dimension suite": "from isingcc.verify import verify_dimensions as v; v()",
}


def random_terms(rng: np.random.Generator, n: int, width: int = 16) -> dict:
    out = {}
    for _ in range(n):
        mask = rng.integers(0, 2, size=width)
        out[tuple(int(k) - width // 2 for k in np.flatnonzero(mask))] = complex(rng.normal(), rng.normal())
    return out


def kernel_cases(rng: np.random.Generator):
    monos = [tuple(sorted(rng.choice(40, size=12, replace=False).tolist())) for _ in range(200)]
    pairs = list(zip(monos, reversed(monos)))
    x, y = random_terms(rng, 150), random_terms(rng, 150)

    def muls(mod):
        return lambda: [mod.mul_monomials(a, b) for a, b in pairs]

    return {
        "mul_monomials x200": muls,
        "multiply_terms 150x150": lambda mod: (lambda: mod.multiply_terms(x, y, 1e-12)),
        "trace_pairing 150x150": lambda mod: (lambda: mod.trace_pairing(x, y)),
    }


def best_of(fn, repeat: int) -> float:
    number = 5
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def end_to_end(code: str, backend: str, repeat: int) -> float:
    env = dict(os.environ, ISINGCC_BACKEND=backend)
    script = f"import timeit; print(min(timeit.repeat({code!r}, number=1, repeat={repeat})))"
    out = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if cy is None:
        print("compiled kernels not built; nothing to compare")
        return
    rng = np.random.default_rng(0)
    print(f"{'case':28s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for name, make in kernel_cases(rng).items():
        tp = best_of(make(py), args.repeat) * 1e3
        tc = best_of(make(cy), args.repeat) * 1e3
        print(f"{name:28s} {tp:12.3f} {tc:12.3f} {tp / tc:8.1f}")
    for name, code in END_TO_END.items():
        tp = end_to_end(code, "python", 1) * 1e3
        tc = end_to_end(code, "auto", 1) * 1e3
        print(f"{name:28s} {tp:12.1f} {tc:12.1f} {tp / tc:8.1f}")


if __name__ == "__main__":
    main()
