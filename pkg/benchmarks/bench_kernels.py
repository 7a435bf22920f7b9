"""Compare the compiled kernels with the pure-Python fallback.

Times full crystal generation and raw root-operator calls under each
backend (switched in-process) and checks both produce identical results.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

from littelmann import _kernels_py, kernels
from littelmann.crystal_graph import generate
from littelmann.root_data import cartan_datum

CASES = [("C2", [3, 1]), ("G2", [1, 1]), ("B3", [1, 0, 1]), ("A3", [2, 1, 1]), ("F4", [0, 0, 0, 1])]


def best(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def run(repeat):
    try:
        from littelmann import _kernels as fast
    except ImportError:
        print("compiled kernels unavailable; nothing to compare")
        return 1
    backends = {"cython": fast, "python": None}
    print(f"{'case':<16}{'nodes':>7}{'cython s':>11}{'python s':>11}{'speedup':>9}")
    for t, lam in CASES:
        d = cartan_datum(t)
        res = {}
        for name, mod in backends.items():
            kernels._fast = mod
            res[name] = best(lambda: generate(d, d.weight(lam)), repeat)
        kernels._fast = fast
        (tc, bc), (tp, bp) = res["cython"], res["python"]
        assert bc == bp, f"backends disagree on {t} {lam}"
        print(f"{t + str(lam):<16}{len(bc):>7}{tc:>11.4f}{tp:>11.4f}{tp / tc:>9.1f}")

    # raw operator calls on every node of one crystal
    d = cartan_datum("G2")
    B = generate(d, d.weight([1, 1]))
    calls = [(p.rows, p.denom, d.position(i), *d.alpha_row(i), 1, low)
             for p in B.nodes for i in d.index_set for low in (False, True)]
    tc, oc = best(lambda: [fast.root_operator(*c) for c in calls], repeat)
    tp, op = best(lambda: [_kernels_py.root_operator(*c) for c in calls], repeat)
    assert oc == op
    print(f"{'root_operator':<16}{len(calls):>7}{tc:>11.4f}{tp:>11.4f}{tp / tc:>9.1f}")
    return 0


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    raise SystemExit(run(parser.parse_args().repeat))


if __name__ == "__main__":
    main()
