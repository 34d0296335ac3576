"""Compare the compiled and pure-Python kernels on the hot paths.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import timeit

from pregroups import _pykernels, constructions as C
from pregroups.pregroup import Pregroup

try:
    from pregroups import _ckernels
except ImportError:
    _ckernels = None


def table_args(p: Pregroup):
    idx = p.index
    n = len(p.carrier)
    prod = [[-1] * n for _ in range(n)]
    for a, b, c in p.mult:
        prod[idx[a]][idx[b]] = idx[c]
    return prod, [idx[p.inverse(x)] for x in p.carrier], idx[p.identity]


def flat_relations(p: Pregroup):
    idx, n = p.index, len(p.carrier)
    mrel, drel = bytearray(n**3), bytearray(n**2)
    for a, b, c in p.mult:
        mrel[(idx[a] * n + idx[b]) * n + idx[c]] = 1
    for a, b in p.domain:
        drel[idx[a] * n + idx[b]] = 1
    return n, bytes(mrel), bytes(drel)


def workloads(p: Pregroup, rng: random.Random):
    args = table_args(p)
    n = len(p.carrier)
    raw = [[rng.randrange(n) for _ in range(12)] for _ in range(500)]
    nrel, mrel, drel = flat_relations(p)

    def make(k):
        t = k.make_tables(*args)
        reduced = [k.reduce_left(t, w)[:8] for w in raw]
        return {
            "reduce_left x500": lambda: [k.reduce_left(t, w) for w in raw],
            "equivalent x500": lambda: [k.equivalent_reduced(t, w, w) for w in reduced],
            "lexmin x500": lambda: [k.lexmin_interleaving(t, w) for w in reduced],
            "axiom_witnesses": lambda: k.axiom_witnesses(nrel, mrel, drel, args[1], args[2]),
        }

    return make


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    z4 = C.cyclic_group(4, ["1", "x", "c", "X"])
    fixtures = {
        "PG_AM (6)": C.pg_am(),
        "HNN Z4, theta=inv (15)": C.hnn_pregroup(C.HnnSpec(z4, {"1": "1", "x": "X", "c": "c", "X": "x"})),
        "Z6 * Z5 (10)": C.free_product_pregroup(
            C.cyclic_group(6, ["1"] + [f"a{i}" for i in range(1, 6)]),
            C.cyclic_group(5, ["1"] + [f"b{i}" for i in range(1, 5)]),
        ),
    }
    backends = [b for b in (_pykernels, _ckernels) if b is not None]
    print(f"{'fixture':26} {'kernel':18} " + " ".join(f"{b.NAME:>10}" for b in backends) + "   speedup")
    for name, p in fixtures.items():
        make = workloads(p, random.Random(0))
        per_backend = [make(b) for b in backends]
        for job in per_backend[0]:
            times = [min(timeit.repeat(jobs[job], number=1, repeat=args.repeat)) for jobs in per_backend]
            speed = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else ""
            print(f"{name:26} {job:18} " + " ".join(f"{t * 1e3:8.2f}ms" for t in times) + f"  {speed}")
    if _ckernels is None:
        print("compiled kernels are not built; only the Python backend was timed")


if __name__ == "__main__":
    main()
