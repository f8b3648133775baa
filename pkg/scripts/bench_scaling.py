"""Wall time of one local evaluation as p grows.

Times invariant_factors_at for a fixed second-order operator at each
prime of a ladder and prints one CSV row per prime.  Doubling p should
scale the median by roughly sqrt(2) times log factors; the naive
recurrence would double it.
"""

import argparse
import statistics
import time

from pcurvature import diffop, fields, local_eval


def probe(p, runs):
    K = fields.PrimeField(p)
    op = diffop.DiffOperator(K, ((K.one,),
                                 (K.zero, K.one),
                                 (K.one, K.zero, K.one)))
    a = K.from_int(2)
    local_eval.invariant_factors_at(op, K, a, p)  # warm up
    times = []
    for _ in range(runs):
        t0 = time.perf_counter()
        local_eval.invariant_factors_at(op, K, a, p)
        times.append(time.perf_counter() - t0)
    return statistics.median(times), min(times)


def main():
    ap = argparse.ArgumentParser(
        description="time local invariant factors across primes")
    ap.add_argument("--primes",
                    default="2503,5003,10007,20011,40009,80021",
                    help="comma-separated primes to time")
    ap.add_argument("--runs", type=int, default=5,
                    help="timed runs per prime (median reported)")
    args = ap.parse_args()
    plist = [int(t) for t in args.primes.split(",") if t.strip()]
    print("p,median_s,best_s,step_ratio")
    prev = None
    for p in plist:
        median, best = probe(p, args.runs)
        ratio = f"{median / prev:.2f}" if prev else ""
        print(f"{p},{median:.6f},{best:.6f},{ratio}")
        prev = median


if __name__ == "__main__":
    main()
