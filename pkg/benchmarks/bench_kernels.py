"""Compiled vs pure-Python kernels on the q=9 examples.

    python benchmarks/bench_kernels.py [--repeat N] [--heavy]
"""

import argparse
import time

from agext import analysis, codes, kernels
from agext.curves import (elliptic_curve, make_support, support_all_affine,
                          support_torsion_free_pairs)
from agext.gf import make_field


def cases(heavy):
    F = make_field(3, 2)
    E = elliptic_curve(F, 1, 0)
    full = codes.build_extended(E, make_support(E, support_all_affine(E)), 9)
    tf = codes.build_extended(E, make_support(E, support_torsion_free_pairs(E)), 9)
    out = [
        ("weights [16,9] (9^7 dual words)", lambda be: analysis.weight_distribution(full, backend=be)),
        ("weights [13,9] (9^4 dual words)", lambda be: analysis.weight_distribution(tf, backend=be)),
        ("rho [13,9] = 3", lambda be: analysis.covering_radius(tf, backend=be)),
        ("rho [16,9] = 5", lambda be: analysis.covering_radius(full, backend=be)),
    ]
    if heavy:
        out.append(("rho [16,7] = 7", lambda be: analysis.dual_covering_radius(full, backend=be)))
    return out


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--heavy", action="store_true", help="add rho of the [16,7] dual")
    args = ap.parse_args()
    backends = ["python"] + (["compiled"] if kernels.compiled_backend is not None else [])
    if len(backends) == 1:
        print("compiled extension not built; timing the Python kernels only")
    print(f"{'case':36s}" + "".join(f"{b:>12s}" for b in backends) + ("   speedup" if len(backends) > 1 else ""))
    for name, fn in cases(args.heavy):
        t = [best_of(lambda: fn(b), args.repeat) for b in backends]
        row = f"{name:36s}" + "".join(f"{x:11.3f}s" for x in t)
        if len(t) > 1:
            row += f"   {t[0] / t[1]:6.1f}x"
        print(row, flush=True)


if __name__ == "__main__":
    main()
