"""Benchmark: compiled extension vs pure-Python kernels on the hot loops.

Run:  python benchmarks/bench_kernels.py
"""

import time

from zcverify import _kernels_py

try:
    from zcverify import _speedups
except ImportError:
    _speedups = None

from zcverify.constructions import cyclic_group, dihedral_group, semidirect, _q8_spec
from zcverify.help_engine import element_chain, run_filter
from zcverify.groups import all_subgroups


def timeit(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_closure(impl):
    G = dihedral_group(256)  # order 512; generators: rotation (2), reflection (1)
    return timeit(lambda: impl.subgroup_closure(G.table, [2, 1], G.identity))


def bench_class_ids(impl):
    G, _ = semidirect(_q8_spec(8, 3, 5))
    return timeit(lambda: impl.class_ids(G.table, G.inverse, G.identity))


def bench_transporter(impl):
    G = dihedral_group(24)
    cent = G.centralizer_sizes()
    subs = all_subgroups(G)[:12]
    def run():
        for K in subs:
            impl.transporter_violations(G.table, G.inverse, K.elements, cent)
    return timeit(run, repeat=2)


def bench_enumerate(impl):
    # the C17 filter box: 16 variables, dense trace rows
    import os

    G = cyclic_group(17)
    chain = element_chain(G, 1)

    from zcverify import kernels

    saved = {}
    names = ["pa_enumerate"]
    for n in names:
        saved[n] = getattr(kernels, n)
        setattr(kernels, n, getattr(impl, n))
    try:
        return timeit(lambda: run_filter(G, 17, chain, bound=5, budget=10**7), repeat=2)
    finally:
        for n in names:
            setattr(kernels, n, saved[n])


BENCHES = [
    ("subgroup_closure (D256, order 512)", bench_closure),
    ("class_ids (C8:Q8, order 64)", bench_class_ids),
    ("transporter_violations (D24, 12 subgroups)", bench_transporter),
    ("HeLP filter (C17, m=17)", bench_enumerate),
]


def main():
    impls = [("pure", _kernels_py)]
    if _speedups is not None:
        impls.append(("compiled", _speedups))
    else:
        print("compiled extension not available; benchmarking pure only")
    width = max(len(n) for n, _ in BENCHES)
    header = f"{'benchmark'.ljust(width)}  " + "  ".join(f"{n:>10}" for n, _ in impls)
    if len(impls) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, bench in BENCHES:
        times = [bench(impl) for _, impl in impls]
        row = f"{name.ljust(width)}  " + "  ".join(f"{t*1000:9.1f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"  {times[0] / times[1]:7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
