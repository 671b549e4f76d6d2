#!/usr/bin/env python3
"""Benchmark: compiled vs pure-Python short-vector kernel.

Runs both backends on trace-form lattices of split-prime ideals for a few
primes, checks bit-for-bit agreement, and reports timings.  Usage:

    python3 benchmarks/bench_enum.py [--max-p 19]
"""
import argparse
import time

from flatgenus import cyclotomic as cy
from flatgenus import _enum_py
from flatgenus import kernels
from flatgenus.shortvec import lll_reduce

CASES = [
    # (p, q, radius multiplier) -- multipliers chosen to keep the ball around
    # 10^3..10^5 vectors so the pure backend stays tractable
    (5, 11, 16),
    (7, 29, 16),
    (13, 53, 4),
    (17, 103, 4),
    (19, 191, 4),
    (23, 47, 2),
]


def run(max_p):
    if kernels.BACKEND != "compiled":
        print("note: compiled kernel unavailable; timing the pure kernel against itself")
    compiled = kernels._impl.short_coeff_vectors
    pure = _enum_py.short_coeff_vectors
    print(f"{'case':>16} {'vectors':>9} {'pure':>9} {'compiled':>9} {'speedup':>8}")
    for p, q, mult in CASES:
        if p > max_p:
            continue
        ideal = cy.split_prime_ideal(p, q)
        g0 = cy.ambient_trace_gram(p)
        reduced = lll_reduce(ideal.basis, g0)
        gram = (reduced * g0 * reduced.transpose()).to_lists()
        bound = cy.search_bound(p, q, mult)

        t0 = time.perf_counter()
        got_pure = pure(gram, bound.numerator, bound.denominator)
        t_pure = time.perf_counter() - t0

        t0 = time.perf_counter()
        got_fast = compiled(gram, bound.numerator, bound.denominator)
        t_fast = time.perf_counter() - t0

        assert got_pure == got_fast, f"backend mismatch at p={p}"
        label = f"p={p} q={q} x{mult}"
        print(f"{label:>16} {len(got_pure):>9} {t_pure:>8.3f}s {t_fast:>8.3f}s {t_pure / t_fast:>7.1f}x")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-p", type=int, default=23)
    run(ap.parse_args().max_p)
