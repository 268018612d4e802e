"""Compare the compiled and pure-Python subword DP kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Workloads: the restriction coefficient behind m(v) for every exceptional
type, and a full localization matrix (every u in W against every w_J) for
B4 and D4.  Inputs are prepared once so only the kernel is timed.
"""

import argparse
import time

from peterson_schubert import kernels
from peterson_schubert.localization import _prefixes, _word_data
from peterson_schubert.rootsystem import all_subsets, build
from peterson_schubert.weyl import weyl_group


def dp_jobs(type_name, full_matrix):
    rs = build(type_name)
    g = weyl_group(rs)
    if full_matrix:
        rows = g.enumerate()
        cols = [g.longest_element(J) for J in all_subsets(rs.rank)]
    else:
        rows = [g.default_coxeter(rs.full)]
        cols = [g.longest_element(rs.full)]
    jobs = []
    for u in rows:
        pre = _prefixes(u)
        for w in cols:
            if u.length <= w.length:
                letters, heights = _word_data(w, w.word)
                jobs.append((pre.trans, rs.rank, letters, heights, pre.nstates, pre.target))
    return jobs


def run(fn, jobs, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = [fn(*job) for job in jobs]
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"compiled backend available: {kernels.BACKEND == 'cython'}")
    workloads = [
        ("E6 m(v)", "E6", False),
        ("E7 m(v)", "E7", False),
        ("E8 m(v)", "E8", False),
        ("B4 full A matrix", "B4", True),
        ("D4 full A matrix", "D4", True),
        ("F4 full A matrix", "F4", True),
    ]
    print(f"{'workload':<20} {'jobs':>6} {'python ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for label, t, full in workloads:
        jobs = dp_jobs(t, full)
        tp, outp = run(kernels.billey_dp_python, jobs, args.repeat)
        if kernels.BACKEND == "cython":
            tc, outc = run(kernels.billey_dp, jobs, args.repeat)
            assert outc == outp, f"backend mismatch on {label}"
            print(f"{label:<20} {len(jobs):>6} {tp * 1e3:>10.2f} {tc * 1e3:>12.2f} {tp / tc:>7.1f}x")
        else:
            print(f"{label:<20} {len(jobs):>6} {tp * 1e3:>10.2f} {'-':>12} {'-':>8}")


if __name__ == "__main__":
    main()
