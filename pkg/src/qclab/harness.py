"""Experiment harness: seeded trials, ground truth, sweeps, and reports.

A trial runs one algorithm once against one hidden instance, recomputes the
exact answer with the solvers (planted witnesses are never trusted as
optima), and emits a TrialReport. Sweeps run grids of trials with seeds
derived as hash(master_seed, cell, trial), so any cell reruns independently
and a whole sweep is bit-reproducible apart from elapsed times.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import algorithms as alg
from .algorithms import AlgorithmConstants, AlgorithmResult, DEFAULT_CONSTANTS
from .hypergraph import (
    Hypergraph,
    PlantedTruth,
    gen_gnp,
    gen_planted_cut,
    gen_planted_hitting_set,
    gen_planted_packing,
)
from .oracle import EdgeSelectionPolicy, OracleSession, QueryStats
from .rng import derive_seed
from .solvers import (
    BudgetExceeded,
    DEFAULT_LIMITS,
    SolverLimits,
    max_matching,
    max_set_packing,
    max_t_cut,
    min_hitting_set,
    min_vertex_cover,
    representative_family,
)
from .sunflowers import classify_cores

CSV_HEADER = "algo,n,d,k,t,seed,bis,bise,gpis,gpise,answer,truth,success,witness_valid,elapsed_ms"

# k-exponent of each algorithm's nominal query bound (log factors dropped);
# reported next to fitted exponents in sweep summaries, never asserted.
REFERENCE_EXPONENTS: dict[str, Callable[[int], int]] = {
    "packing": lambda d: 2 * d,
    "matching-promised": lambda d: 2,
    "vc-promised": lambda d: 2,
    "vertex-cover": lambda d: 4,
    "vc-decision": lambda d: 8,
    "hs-promised": lambda d: d,
    "hitting-set": lambda d: 2 * d,
    "hs-decision": lambda d: 2 * d * d,
    "cut": lambda d: 4,
    "cut-decision": lambda d: 4,
}

ALGORITHMS = (
    "packing",
    "packing-deterministic",
    "matching-promised",
    "vc-promised",
    "vertex-cover",
    "vc-decision",
    "hs-promised",
    "hitting-set",
    "hs-decision",
    "cut",
    "cut-decision",
    "cut-deterministic",
)

GRAPH_ONLY = {
    "matching-promised",
    "vc-promised",
    "vertex-cover",
    "vc-decision",
    "cut",
    "cut-decision",
    "cut-deterministic",
}


@dataclass(frozen=True)
class TrialReport:
    algo: str
    n: int
    d: int
    k: int
    t: Optional[int]
    seed: int
    bis: int
    bise: int
    gpis: int
    gpise: int
    answer: str
    truth: str
    success: Optional[bool]
    witness_valid: Optional[bool]
    elapsed_ms: int

    def to_csv_row(self) -> str:
        def cell(x: object) -> str:
            if x is None:
                return ""
            if isinstance(x, bool):
                return "true" if x else "false"
            return str(x)

        return ",".join(
            cell(v)
            for v in (
                self.algo,
                self.n,
                self.d,
                self.k,
                self.t,
                self.seed,
                self.bis,
                self.bise,
                self.gpis,
                self.gpise,
                self.answer,
                self.truth,
                self.success,
                self.witness_valid,
                self.elapsed_ms,
            )
        )

    @staticmethod
    def from_csv_row(row: str) -> "TrialReport":
        parts = next(csv.reader(io.StringIO(row)))
        if len(parts) != 15:
            raise ValueError(f"expected 15 columns, got {len(parts)}")

        def opt_int(x: str) -> Optional[int]:
            return int(x) if x else None

        def opt_bool(x: str) -> Optional[bool]:
            return None if not x else x == "true"

        return TrialReport(
            algo=parts[0],
            n=int(parts[1]),
            d=int(parts[2]),
            k=int(parts[3]),
            t=opt_int(parts[4]),
            seed=int(parts[5]),
            bis=int(parts[6]),
            bise=int(parts[7]),
            gpis=int(parts[8]),
            gpise=int(parts[9]),
            answer=parts[10],
            truth=parts[11],
            success=opt_bool(parts[12]),
            witness_valid=opt_bool(parts[13]),
            elapsed_ms=int(parts[14]),
        )


def generate_instance(
    kind: str, n: int, d: int, k: int, seed: int, m: int = 0, extra: int = 0, t: int = 2
) -> tuple[Hypergraph, Optional[PlantedTruth]]:
    if kind == "gnp":
        p = min(1.0, m / max(1, math.comb(n, d)))
        return gen_gnp(n, d, p, seed), None
    if kind == "planted-hs":
        return gen_planted_hitting_set(n, d, k, m, seed)
    if kind == "planted-packing":
        return gen_planted_packing(n, d, k, extra, seed)
    if kind == "planted-cut":
        return gen_planted_cut(n, t, k, seed)
    raise ValueError(f"unknown instance kind {kind!r}")


def default_instance_kind(algo: str) -> str:
    if algo in ("packing", "packing-deterministic", "matching-promised"):
        return "planted-packing"
    if algo in ("cut", "cut-decision", "cut-deterministic"):
        return "planted-cut"
    return "planted-hs"


def _truth_and_success(
    algo: str,
    hidden: Hypergraph,
    k: int,
    t: Optional[int],
    result: AlgorithmResult,
    limits: SolverLimits,
) -> tuple[str, str, Optional[bool], Optional[bool]]:
    """Recompute exact ground truth and judge the result against it."""
    witness = result.witness
    if algo in ("packing", "packing-deterministic"):
        opt = len(max_set_packing(hidden, limits))
        truth = "found" if opt >= k else "not-exists"
        answer = "found" if result.answer else "not-exists"
        valid = None
        if result.answer:
            valid = _packing_valid(witness, hidden)
            success = truth == "found" and valid
        else:
            success = truth == "not-exists"
        return answer, truth, success, valid
    if algo == "matching-promised":
        # promised variants always report a witness; success means it is a
        # valid structure of exactly the hidden optimum's size
        opt = len(max_matching(hidden, limits))
        valid = _packing_valid(witness, hidden)
        success = valid and len(witness) == opt
        return "found", "found", success, valid
    if algo in ("vc-promised", "hs-promised"):
        opt = len(min_hitting_set(hidden, limits))
        valid = _cover_valid(witness, hidden)
        success = valid and len(witness) == opt
        return "found", "found", success, valid
    if algo in ("vertex-cover", "hitting-set"):
        opt = len(min_hitting_set(hidden, limits))
        truth = "found" if opt <= k else "not-exists"
        answer = "found" if result.answer else "not-exists"
        valid = None
        if result.answer:
            valid = _cover_valid(witness, hidden) and len(witness) <= k
            success = truth == "found" and valid and len(witness) == opt
        else:
            success = truth == "not-exists"
        return answer, truth, success, valid
    if algo in ("vc-decision", "hs-decision"):
        opt = len(min_hitting_set(hidden, limits))
        truth = "yes" if opt <= k else "no"
        answer = "yes" if result.answer else "no"
        return answer, truth, answer == truth, None
    if algo in ("cut", "cut-decision", "cut-deterministic"):
        assert t is not None
        _, opt = max_t_cut(hidden, t, limits)
        truth = "found" if opt >= k else "not-exists"
        if algo == "cut-decision":
            answer = "yes" if result.answer else "no"
            return answer, "yes" if opt >= k else "no", result.answer == (opt >= k), None
        answer = "found" if result.answer else "not-exists"
        valid = None
        if result.answer:
            crossing = sum(1 for u, v in hidden.edges if witness[u] != witness[v])
            valid = crossing >= k and len(set(witness)) <= t
            success = truth == "found" and valid
        else:
            success = truth == "not-exists"
        return answer, truth, success, valid
    raise ValueError(f"unknown algorithm {algo!r}")


def _cover_valid(witness: object, hidden: Hypergraph) -> bool:
    s = set(witness)
    return all(s.intersection(e) for e in hidden.edges)


def _packing_valid(witness: object, hidden: Hypergraph) -> bool:
    seen: set[int] = set()
    edge_set = set(hidden.edges)
    for e in witness:
        if tuple(e) not in edge_set or seen.intersection(e):
            return False
        seen.update(e)
    return True


def run_algorithm(
    algo: str,
    session: OracleSession,
    k: int,
    t: Optional[int] = None,
    seed: int = 0,
    constants: AlgorithmConstants = DEFAULT_CONSTANTS,
    limits: SolverLimits = DEFAULT_LIMITS,
) -> AlgorithmResult:
    if algo in GRAPH_ONLY and session.d != 2:
        raise ValueError(f"{algo} needs a graph instance (d=2), got d={session.d}")
    if algo == "packing":
        return alg.packing(session, k, seed=seed, constants=constants, limits=limits)
    if algo == "packing-deterministic":
        return alg.packing_deterministic(session, k, constants=constants, limits=limits)
    if algo == "matching-promised":
        return alg.matching_promised(session, k, seed=seed, constants=constants, limits=limits)
    if algo == "vc-promised":
        return alg.vc_promised(session, k, seed=seed, constants=constants, limits=limits)
    if algo == "vertex-cover":
        return alg.vertex_cover(session, k, seed=seed, constants=constants, limits=limits)
    if algo == "vc-decision":
        return alg.vc_decision(session, k, seed=seed, constants=constants, limits=limits)
    if algo == "hs-promised":
        return alg.hs_promised(session, k, seed=seed, constants=constants, limits=limits)
    if algo == "hitting-set":
        return alg.hitting_set(session, k, seed=seed, constants=constants, limits=limits)
    if algo == "hs-decision":
        return alg.hs_decision(session, k, seed=seed, constants=constants, limits=limits)
    if algo == "cut":
        assert t is not None, "cut needs t"
        return alg.cut(session, t, k, seed=seed, constants=constants, limits=limits)
    if algo == "cut-decision":
        assert t is not None, "cut needs t"
        return alg.cut_decision(session, t, k, seed=seed, constants=constants, limits=limits)
    if algo == "cut-deterministic":
        assert t is not None, "cut needs t"
        return alg.cut_deterministic(session, t, k, constants=constants, limits=limits)
    raise ValueError(f"unknown algorithm {algo!r}; choose from {ALGORITHMS}")


def run_trial(
    algo: str,
    hidden: Hypergraph,
    k: int,
    t: Optional[int] = None,
    seed: int = 0,
    constants: AlgorithmConstants = DEFAULT_CONSTANTS,
    limits: SolverLimits = DEFAULT_LIMITS,
    policy: EdgeSelectionPolicy = EdgeSelectionPolicy.LEXICOGRAPHIC,
    log_path: str | None = None,
) -> tuple[TrialReport, Optional[AlgorithmResult]]:
    """One seeded trial: run the algorithm, recompute truth, fill the report."""
    session = OracleSession(
        hidden, policy=policy, policy_seed=derive_seed(seed, "policy"), log_path=log_path
    )
    start = time.monotonic()
    try:
        result = run_algorithm(
            algo, session, k, t=t, seed=derive_seed(seed, "algo"), constants=constants,
            limits=limits,
        )
    except BudgetExceeded:
        elapsed = int((time.monotonic() - start) * 1000)
        stats = session.stats()
        session.close()
        report = TrialReport(
            algo=algo, n=hidden.n, d=hidden.d, k=k, t=t, seed=seed,
            bis=stats.bis, bise=stats.bise, gpis=stats.gpis, gpise=stats.gpise,
            answer="budget-exceeded", truth="", success=None, witness_valid=None,
            elapsed_ms=elapsed,
        )
        return report, None
    elapsed = int((time.monotonic() - start) * 1000)
    session.close()
    stats = result.stats
    answer, truth, success, witness_valid = _truth_and_success(
        algo, hidden, k, t, result, limits
    )
    report = TrialReport(
        algo=algo, n=hidden.n, d=hidden.d, k=k, t=t, seed=seed,
        bis=stats.bis, bise=stats.bise, gpis=stats.gpis, gpise=stats.gpise,
        answer=answer, truth=truth, success=success, witness_valid=witness_valid,
        elapsed_ms=elapsed,
    )
    return report, result


@dataclass
class SweepConfig:
    algorithms: list[str]
    n: list[int]
    k: list[int]
    d: list[int] = field(default_factory=lambda: [2])
    t: list[int] = field(default_factory=lambda: [2])
    m: list[int] = field(default_factory=lambda: [0])  # 0: pick a default edge count
    extra: list[int] = field(default_factory=lambda: [10])
    trials: int = 10
    master_seed: int = 0
    policy: str = "lex"
    constants: dict = field(default_factory=dict)
    csv_path: Optional[str] = None
    summary_path: Optional[str] = None

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        for name in ("algorithms", "n", "k", "d", "t", "m", "extra"):
            if not getattr(self, name):
                raise ValueError(f"grid {name} must be non-empty")
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}")

    @staticmethod
    def from_json(obj: dict) -> "SweepConfig":
        known = {f for f in SweepConfig.__dataclass_fields__}
        unknown = set(obj) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return SweepConfig(**obj)


def _cells(config: SweepConfig):
    idx = 0
    for algo in config.algorithms:
        ds = [2] if algo in GRAPH_ONLY else config.d
        ts = config.t if algo.startswith("cut") else [None]
        for d in ds:
            for n in config.n:
                for k in config.k:
                    for t in ts:
                        for m in config.m:
                            for extra in config.extra:
                                yield idx, algo, n, d, k, t, m, extra
                                idx += 1


def _default_edge_count(kind: str, n: int, d: int, k: int) -> int:
    if kind == "planted-hs":
        cap = math.comb(n, d) - math.comb(max(n - k, 0), d)
        return min(3 * n, max(1, cap // 2))
    return 0


def run_sweep(config: SweepConfig) -> tuple[list[TrialReport], dict]:
    """Run every cell of the grid; return all reports plus a summary dict."""
    constants = DEFAULT_CONSTANTS.override(**config.constants)
    policy = (
        EdgeSelectionPolicy.LEXICOGRAPHIC
        if config.policy == "lex"
        else EdgeSelectionPolicy.UNIFORM_RANDOM
    )
    reports: list[TrialReport] = []
    cells: dict[str, dict] = {}
    for idx, algo, n, d, k, t, m, extra in _cells(config):
        kind = default_instance_kind(algo)
        m_eff = m if m else _default_edge_count(kind, n, d, k)
        cell_key = f"{algo}|n={n}|d={d}|k={k}|t={t}"
        cell_reports = []
        failures = 0
        for trial in range(config.trials):
            seed = derive_seed(config.master_seed, "cell", idx, "trial", trial)
            try:
                hidden, _ = generate_instance(
                    kind, n=n, d=d, k=k, seed=seed, m=m_eff, extra=extra, t=t or 2
                )
                report, _ = run_trial(
                    algo, hidden, k, t=t, seed=seed, constants=constants, policy=policy
                )
            except (ValueError, BudgetExceeded) as exc:
                failures += 1
                report = TrialReport(
                    algo=algo, n=n, d=d, k=k, t=t, seed=seed,
                    bis=0, bise=0, gpis=0, gpise=0,
                    answer=f"error:{type(exc).__name__}", truth="", success=None,
                    witness_valid=None, elapsed_ms=0,
                )
            cell_reports.append(report)
            reports.append(report)
        ok = [r for r in cell_reports if r.success is not None]
        queries = [r.bis + r.bise + r.gpis + r.gpise for r in ok]
        cells[cell_key] = {
            "algo": algo, "n": n, "d": d, "k": k, "t": t,
            "trials": len(cell_reports),
            "errors": failures + sum(1 for r in cell_reports if r.answer == "budget-exceeded"),
            "success_rate": (
                sum(1 for r in ok if r.success) / len(ok) if ok else None
            ),
            "mean_queries": sum(queries) / len(queries) if queries else None,
            "max_queries": max(queries) if queries else None,
        }
    summary = {"cells": cells, "exponent_fits": _fit_exponents(cells)}
    if config.csv_path:
        write_csv(reports, config.csv_path)
    if config.summary_path:
        with open(config.summary_path, "w", encoding="utf-8") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return reports, summary


def _fit_exponents(cells: dict[str, dict]) -> dict[str, dict]:
    """Least-squares slope of log(mean queries) vs log k per algorithm/d group."""
    groups: dict[tuple[str, int], list[tuple[int, float]]] = {}
    for info in cells.values():
        if info["mean_queries"] and info["k"] >= 1:
            groups.setdefault((info["algo"], info["d"]), []).append(
                (info["k"], info["mean_queries"])
            )
    fits = {}
    for (algo, d), points in sorted(groups.items()):
        ks = sorted({k for k, _ in points})
        ref = REFERENCE_EXPONENTS.get(algo)
        entry: dict[str, object] = {
            "reference_exponent": ref(d) if ref else None,
            "fitted_exponent": None,
        }
        if len(ks) >= 2:
            xs = [math.log(k) for k, _ in points]
            ys = [math.log(q) for _, q in points]
            mean_x = sum(xs) / len(xs)
            mean_y = sum(ys) / len(ys)
            denom = sum((x - mean_x) ** 2 for x in xs)
            if denom > 0:
                entry["fitted_exponent"] = (
                    sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys)) / denom
                )
        fits[f"{algo}|d={d}"] = entry
    return fits


def write_csv(reports: list[TrialReport], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for r in reports:
            fh.write(r.to_csv_row() + "\n")


def read_csv(path: str) -> list[TrialReport]:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("missing or unexpected CSV header")
    return [TrialReport.from_csv_row(ln) for ln in lines[1:]]


def verify_instance(
    hidden: Hypergraph,
    k: int,
    t: int = 2,
    limits: SolverLimits = DEFAULT_LIMITS,
    guard: int = 10**6,
) -> dict:
    """Exact optima and structural checks for one instance, as JSON-able dict."""
    out: dict[str, object] = {"n": hidden.n, "d": hidden.d, "m": hidden.m, "k": k}

    def attempt(name: str, fn: Callable[[], object]) -> None:
        try:
            out[name] = fn()
        except (BudgetExceeded, ValueError) as exc:
            out[name] = f"skipped:{exc}"

    attempt("min_hitting_set", lambda: list(min_hitting_set(hidden, limits)))
    if hidden.d == 2:
        attempt("min_vertex_cover", lambda: list(min_vertex_cover(hidden, limits)))
        attempt("max_matching", lambda: [list(e) for e in max_matching(hidden, limits)])
        attempt("max_t_cut", lambda: max_t_cut(hidden, t, limits)[1])
    attempt("max_set_packing", lambda: [list(e) for e in max_set_packing(hidden, limits)])
    attempt(
        "representative_family_size",
        lambda: len(representative_family(hidden, k, limits, guard=guard)),
    )
    out["representative_family_bound"] = math.comb(k + hidden.d, hidden.d)
    report = classify_cores(hidden, k, limits)
    out["core_report"] = report.to_json()
    hs = out.get("min_hitting_set")
    d = hidden.d
    if isinstance(hs, list) and len(hs) <= k:
        out["bound_edges_without_large_core"] = {
            "value": len(report.edges_without_large_core),
            "limit": math.factorial(d) * (10 * d * k) ** d,
            "ok": len(report.edges_without_large_core)
            <= math.factorial(d) * (10 * d * k) ** d,
        }
        out["bound_minimal_large_cores"] = {
            "value": len(report.minimal_large_cores),
            "limit": math.factorial(d - 1) * k ** (d - 1),
            "ok": len(report.minimal_large_cores) <= math.factorial(d - 1) * k ** (d - 1),
        }
    else:
        out["bound_edges_without_large_core"] = "hypothesis not met (hitting set > k)"
        out["bound_minimal_large_cores"] = "hypothesis not met (hitting set > k)"
    return out
