"""Compact (signed permutation) vs dense (2^n x 2^n matrix) representation timings."""

from __future__ import annotations

import statistics
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import hyperoctahedral as ho
from .hyperoctahedral import SignedPermutation

DENSE_BENCH_CAP = 10
POOL_SIZE = 16
REPEATS = 5


@dataclass
class BenchReport:
    backend: str
    n: int
    operation: str
    iterations: int
    wall_s: float | None
    ops_per_sec: float | None
    refused: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def dense_memory_bytes(n: int) -> int:
    """float64 storage for one 2^n x 2^n matrix (4^n entries)."""
    return 8 * 4**n


def dense_refusal(n: int) -> str | None:
    if n <= DENSE_BENCH_CAP:
        return None
    return (f"dense backend refused at n={n}: one matrix has 4^{n} = {4**n} entries "
            f"({dense_memory_bytes(n)} bytes as float64); limit is n <= {DENSE_BENCH_CAP}")


def element_pool(n: int, seed: int, size: int = POOL_SIZE) -> list[SignedPermutation]:
    rng = np.random.default_rng(seed)
    return [SignedPermutation.random(n, rng) for _ in range(size)]


def compact_compose(pool: list[SignedPermutation], iterations: int) -> SignedPermutation:
    """Fold ``iterations`` compositions through the pool.

    The accumulator goes on the left so each step gathers through a pool
    element whose perm/flip arrays are already unpacked.
    """
    acc = SignedPermutation.identity(pool[0].n)
    k = len(pool)
    for j in range(iterations):
        acc = ho.compose(acc, pool[j % k])
    return acc


def dense_compose(mats: list[np.ndarray], iterations: int) -> np.ndarray:
    acc = np.eye(mats[0].shape[0])
    k = len(mats)
    for j in range(iterations):
        acc = acc @ mats[j % k]
    return acc


def compact_act(pool, atoms, iterations):
    k, m = len(pool), len(atoms)
    out = None
    for j in range(iterations):
        out = ho.act_signs(pool[j % k], atoms[j % m])
    return out


def dense_act(mats, vecs, iterations):
    k, m = len(mats), len(vecs)
    out = None
    for j in range(iterations):
        out = mats[j % k] @ vecs[j % m]
    return out


def _median_time(fn, repeats: int = REPEATS) -> float:
    fn()  # warm-up
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def cross_check(n: int, seed: int, pairs: int = 1000) -> bool:
    """Compact and dense actions and compositions agree on random inputs."""
    rng = np.random.default_rng(seed)
    for _ in range(pairs):
        g = SignedPermutation.random(n, rng)
        label = int(rng.integers(0, 2**n))
        if int(ho.label_images(g)[label]) != int(np.argmax(ho.dense_matrix_float(g)[:, label])):
            return False
        signs = np.array([-1 if label >> (n - 1 - i) & 1 else 1 for i in range(n)])
        moved = ho.act_signs(g, signs)
        back = sum(1 << (n - 1 - i) for i in range(n) if moved[i] < 0)
        if back != int(ho.label_images(g)[label]):
            return False
    pool = element_pool(n, seed, 8)
    for g in pool:
        for h in pool:
            if not np.array_equal(ho.dense_matrix_float(ho.compose(g, h)),
                                  ho.dense_matrix_float(g) @ ho.dense_matrix_float(h)):
                return False
    return True


def dense_iterations(n: int, iterations: int) -> int:
    """Cap dense matmul work so a run stays at desk scale (about 2^33 flops)."""
    per = max(1, (2**n) ** 3)
    return max(1, min(iterations, 2**33 // per))


def run_bench(n_list, iterations: int = 10_000, seed: int = 0, *, repeats: int = REPEATS,
              operations=("compose", "act_on_atom")) -> list[BenchReport]:
    out: list[BenchReport] = []
    for n in n_list:
        if n <= 8 and not cross_check(n, seed):
            raise AssertionError(f"compact and dense backends disagree at n={n}")
        pool = element_pool(n, seed)
        rng = np.random.default_rng(seed + 1)
        atoms = [1 - 2 * rng.integers(0, 2, size=n) for _ in range(POOL_SIZE)]
        for op in operations:
            if op == "compose":
                t = _median_time(lambda: compact_compose(pool, iterations), repeats)
            else:
                t = _median_time(lambda: compact_act(pool, atoms, iterations), repeats)
            out.append(BenchReport("compact", n, op, iterations, t, iterations / t if t else None))
            refusal = dense_refusal(n)
            if refusal:
                out.append(BenchReport("dense", n, op, 0, None, None, refusal))
                continue
            mats = [ho.dense_matrix_float(g) for g in pool]
            if op == "compose":
                iters = dense_iterations(n, iterations)
                t = _median_time(lambda: dense_compose(mats, iters), repeats)
            else:
                iters = iterations
                vecs = []
                for a in atoms:
                    v = np.zeros(2**n)
                    v[sum(1 << (n - 1 - i) for i in range(n) if a[i] < 0)] = 1.0
                    vecs.append(v)
                t = _median_time(lambda: dense_act(mats, vecs, iters), repeats)
            out.append(BenchReport("dense", n, op, iters, t, iters / t if t else None))
    return out


def speedup(reports: list[BenchReport], n: int, operation: str = "compose") -> float | None:
    """Per-operation time ratio dense / compact at one n."""
    by = {(r.backend, r.n, r.operation): r for r in reports}
    c, d = by.get(("compact", n, operation)), by.get(("dense", n, operation))
    if not c or not d or d.ops_per_sec is None:
        return None
    return c.ops_per_sec / d.ops_per_sec
