"""Named verification suites and the JSON report they produce."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

from . import dual, gates, hilbert_embed, hyperoctahedral, projection_algebra, signed_lattice
from .operators import dense_cap
from .report import Check, Report

SCHEMA = 1

# (task name, max n or None, uses dense operators, builder(n, seed) -> Report)
Task = tuple[str, int | None, bool, Callable[[int, int], Report]]


def _boolean(n, seed):
    report = projection_algebra.verify_boolean_ring(n, seed=seed)
    report.checks += projection_algebra.verify_projection_identities(n, seed=seed).checks
    report.checks += projection_algebra.superposition_check(n).checks
    logic = projection_algebra.is_logic(projection_algebra.boolean_fixture(n))
    report.checks += [Check("boolean_is_logic." + c.name, c.passed, c.anchor, c.witness, c.detail)
                      for c in logic]
    return report


def _embedding(n, seed):
    report = hilbert_embed.verify_embedding(n)
    for i in range(1, n + 1):
        units = hilbert_embed.verify_matrix_units(n, i)
        report.checks += [Check(f"matrix_units_i{i}.{c.name}", c.passed, c.anchor, c.witness) for c in units]
    return report


def _triples(n, seed):
    report = Report(f"Cartesian triples n={n}")
    for i in range(1, n + 1):
        _, rep = hilbert_embed.cartesian_triple(n, i)
        report.checks += [Check(f"i{i}.{c.name}", c.passed, c.anchor, c.witness) for c in rep]
    return report


SUITES: dict[str, list[Task]] = {
    "axioms": [("axioms", 4, False, lambda n, seed: signed_lattice.verify_cubic_axioms(n))],
    "embedding": [
        ("embedding", 6, True, _embedding),
        ("triple", 3, True, _triples),
        ("representation", 8, True, lambda n, seed: hyperoctahedral.verify_representation(n, seed=seed)),
    ],
    "boolean": [("boolean", 3, True, _boolean)],
    "gates": [("gates", 6, True, lambda n, seed: gates.verify_gates(n, seed=seed))],
    "dihedral": [("dihedral", None, False, lambda n, seed: gates.verify_dihedral())],
    "dual": [("dual", dual.VERIFY_CAP, True, lambda n, seed: dual.verify_anti_isomorphism(n))],
    "span": [("span", 2, True, lambda n, seed: hilbert_embed.verify_generation(n))],
}
SUITE_NAMES = tuple(SUITES) + ("all",)


def _run_task(task: Task, n: int, seed: int) -> list[tuple[Check, float]]:
    name, cap, dense, build = task
    if dense and cap is not None:
        cap = min(cap, dense_cap())
    if cap is not None and n > cap:
        skip = Check(name, None, anchor=f"{name} suite", reason=f"n={n} exceeds the cap n <= {cap} for this suite")
        return [(skip, 0.0)]
    start = time.perf_counter()
    report = build(n, seed)
    elapsed = (time.perf_counter() - start) * 1000
    return [(c, elapsed) for c in report]


def run_suite(name: str, n: int, seed: int = 0, *, timings: bool = False, workers: int | None = None) -> dict:
    """Run a named suite; the result is deterministic for fixed (name, n, seed) unless ``timings``."""
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    if n < 1:
        raise ValueError("n must be positive")
    names = list(SUITES) if name == "all" else [name]
    tasks = [(suite, task) for suite in names for task in SUITES[suite]]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [(suite, pool.submit(_run_task, task, n, seed)) for suite, task in tasks]
        rows = []
        for suite, fut in futures:
            for check, ms in fut.result():
                entry = check.to_dict()
                entry["id"] = f"{suite}.{check.name}"
                if timings:
                    entry["runtime_ms"] = round(ms, 3)
                rows.append(entry)
    rows.sort(key=lambda e: e["id"])
    failed = any(e["status"] == "fail" for e in rows)
    return {
        "schema": SCHEMA,
        "suite": name,
        "n": n,
        "seed": seed,
        "status": "fail" if failed else "pass",
        "counts": {s: sum(e["status"] == s for e in rows) for s in ("pass", "fail", "skip")},
        "checks": rows,
    }


def format_text(report: dict) -> str:
    lines = [f"suite={report['suite']} n={report['n']} seed={report['seed']} status={report['status']}"]
    for e in report["checks"]:
        line = f"  [{e['status'].upper():4}] {e['id']}"
        if e.get("detail"):
            line += f"  ({e['detail']})"
        if "witness" in e:
            line += f"  witness={e['witness']}"
        if "reason" in e:
            line += f"  {e['reason']}"
        if "runtime_ms" in e:
            line += f"  {e['runtime_ms']} ms"
        lines.append(line)
    c = report["counts"]
    lines.append(f"{c['pass']} passed, {c['fail']} failed, {c['skip']} skipped")
    return "\n".join(lines)
