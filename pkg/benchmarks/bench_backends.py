"""Time the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_backends.py [--sizes 34 66 130] [--repeat 3]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from mfgs import _pycore
from mfgs.mfgs_pe import QubitParams
from mfgs.rc_map import build_extended_hamiltonian

try:
    from mfgs import _core
except ImportError:  # extension not built
    _core = None


def _best(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 64, 128],
                        help="Fock cutoffs; the matrix dimension is 2 (N + 1)")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = {"python": _pycore}
    if _core is not None:
        backends["compiled"] = _core
    else:
        print("compiled extension not available; timing the Python fallback only")

    q = QubitParams.from_tilt(1.0, 0.5)
    print(f"{'kernel':<22}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for n in args.sizes:
        h = build_extended_hamiltonian(q, 1.5, 10.0, n).matrix
        times = [_best(lambda b=b: b.eigh(h), args.repeat) for b in backends.values()]
        _row(f"eigh dim={h.shape[0]}", times)

    zs = np.random.default_rng(0).uniform(-20, 20, 2000) + 1j * np.random.default_rng(1).uniform(-20, 20, 2000)
    for name in ("digamma", "trigamma"):
        times = [
            _best(lambda b=b: [getattr(b, name)(complex(z)) for z in zs], args.repeat) for b in backends.values()
        ]
        _row(f"{name} x{len(zs)}", times)

    h = build_extended_hamiltonian(q, 1.5, 10.0, args.sizes[-1]).matrix
    print(f"\nnumpy.linalg.eigh reference, dim={h.shape[0]}: {_best(lambda: np.linalg.eigh(h), args.repeat):.4f} s")


def _row(label: str, times: list[float]) -> None:
    speedup = f"{times[0] / times[-1]:>9.1f}x" if len(times) > 1 else ""
    print(f"{label:<22}" + "".join(f"{t:>11.4f}s" for t in times) + speedup)


if __name__ == "__main__":
    main()
