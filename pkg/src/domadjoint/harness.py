"""Pair evaluation and corpus sweeps for the minimum-domination question.

For a pair of graphs the harness enumerates choices of canonical dominating
sets and surjections, builds the adjoined product for each choice tuple, and
solves it exactly. ``minimal_ok`` must always be true (it restates a proved
fact about the construction; a false value means a bug). ``minimum_ok``
records whether the distinguished set is also a minimum dominating set; a
false value is the interesting research outcome the sweep exists to find,
not a test failure.

Sweeps distribute pairs over a process pool; workers share nothing, results
are re-sequenced to corpus line order, and the record stream is byte-stable
for a fixed configuration and seed regardless of worker count.
"""

from __future__ import annotations

import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

from .domination import enumerate_canonical, enumerate_surjections, gamma_exact
from .errors import DomAdjointError, InternalContradiction, ProductTooLarge
from .graphs import Graph, emit_graph6, parse_graph6
from .product import build_adjoint, cartesian_product, verify_dominates, verify_minimal

__all__ = [
    "PairReport",
    "SweepConfig",
    "SweepSummary",
    "check_pair",
    "sweep",
    "vizing_cross_check",
    "report_record",
    "summary_record",
]

CHOICE_POLICIES = ("first", "all", "sample")


@dataclass(frozen=True)
class SweepConfig:
    """Knobs for pair evaluation and corpus sweeps.

    ``choice_policy`` selects which (D_G, D_H, F_G, F_H) tuples to evaluate:
    ``first`` takes index (0,0,0,0) of the lexicographic enumerations,
    ``all`` takes every tuple within the caps, ``sample`` takes the first
    tuple plus ``sample_size`` distinct alternates drawn with ``seed``.
    """

    max_n_g: int | None = None
    max_n_h: int | None = None
    choice_policy: str = "first"
    sample_size: int = 3
    seed: int = 0
    cross_check_product: bool = False
    jobs: int = 1
    canonical_cap: int = 16
    surjection_cap: int = 16
    oracle_limit: int = 20
    max_product_vertices: int = 4096

    def __post_init__(self) -> None:
        if self.choice_policy not in CHOICE_POLICIES:
            raise ValueError(f"choice_policy must be one of {CHOICE_POLICIES}")
        for name in ("canonical_cap", "surjection_cap", "oracle_limit",
                     "max_product_vertices", "jobs"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.sample_size < 1:
            raise ValueError("sample_size must be positive")
        for name in ("max_n_g", "max_n_h"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"{name} must be positive when set")


@dataclass(frozen=True)
class PairReport:
    """One evaluation of a (G, H, choices) tuple.

    ``choice_id`` is (i_dg, i_dh, i_fg, i_fh): indices into the canonical-set
    enumerations of G and H and into the surjection enumerations of the
    chosen sets. ``seed`` is set when the choice policy sampled.
    """

    g6_g: str
    g6_h: str
    gamma_g: int
    gamma_h: int
    choice_id: tuple[int, int, int, int]
    e_s_count: int
    gamma_adjoint: int
    minimal_ok: bool
    minimum_ok: bool
    gamma_product: int | None
    elapsed: float
    seed: int | None = None


def report_record(report: PairReport, include_timing: bool = False) -> dict:
    """Serialize a report to a plain dict with a fixed key order.

    ``elapsed`` is excluded unless asked for: the data stream must be
    byte-identical across runs and worker counts, and wall-clock timings
    never are.
    """
    record: dict = {
        "g6_g": report.g6_g,
        "g6_h": report.g6_h,
        "gamma_g": report.gamma_g,
        "gamma_h": report.gamma_h,
        "choice_id": list(report.choice_id),
        "e_s_count": report.e_s_count,
        "gamma_adjoint": report.gamma_adjoint,
        "minimal_ok": report.minimal_ok,
        "minimum_ok": report.minimum_ok,
    }
    if report.gamma_product is not None:
        record["gamma_product"] = report.gamma_product
    if report.seed is not None:
        record["seed"] = report.seed
    if include_timing:
        record["elapsed"] = report.elapsed
    return record


def _choice_tuples(
    n_dg: int, n_dh: int, n_fg: list[int], n_fh: list[int], cfg: SweepConfig
) -> list[tuple[int, int, int, int]]:
    first = (0, 0, 0, 0)
    if cfg.choice_policy == "first":
        return [first]
    if cfg.choice_policy == "all":
        return [
            (i, j, k, l)
            for i in range(n_dg)
            for j in range(n_dh)
            for k in range(n_fg[i])
            for l in range(n_fh[j])
        ]
    rng = random.Random(cfg.seed)
    picked = [first]
    seen = {first}
    attempts = 50 + 20 * cfg.sample_size
    for _ in range(attempts):
        if len(picked) > cfg.sample_size:
            break
        i = rng.randrange(n_dg)
        j = rng.randrange(n_dh)
        t = (i, j, rng.randrange(n_fg[i]), rng.randrange(n_fh[j]))
        if t not in seen:
            seen.add(t)
            picked.append(t)
    return picked


def check_pair(g: Graph, h: Graph, cfg: SweepConfig) -> list[PairReport]:
    """Evaluate every selected choice tuple for one pair of graphs.

    Each report carries the exact domination number of the adjoined product;
    ``minimum_ok`` compares it against gamma(G)*gamma(H). Ordering facts that
    hold by subgraph arguments (adjoint gamma never exceeds gamma(G)*gamma(H),
    nor the product's gamma when computed) are asserted and raise
    :class:`InternalContradiction` on violation.
    """
    if g.n * h.n > cfg.max_product_vertices:
        raise ProductTooLarge(
            f"product has {g.n * h.n} vertices, cap is {cfg.max_product_vertices}"
        )
    g6_g, g6_h = _emit(g), _emit(h)
    dgs = enumerate_canonical(g, cfg.canonical_cap, cfg.oracle_limit)
    dhs = enumerate_canonical(h, cfg.canonical_cap, cfg.oracle_limit)
    fgs = [enumerate_surjections(g, d, cfg.surjection_cap) for d in dgs]
    fhs = [enumerate_surjections(h, d, cfg.surjection_cap) for d in dhs]
    gamma_g = dgs[0].size
    gamma_h = dhs[0].size
    gamma_product: int | None = None
    if cfg.cross_check_product:
        gamma_product, _ = gamma_exact(cartesian_product(g, h, cfg.max_product_vertices))
    tuples = _choice_tuples(
        len(dgs), len(dhs), [len(x) for x in fgs], [len(x) for x in fhs], cfg
    )
    seed = cfg.seed if cfg.choice_policy == "sample" else None
    reports = []
    for i, j, k, l in tuples:
        start = time.perf_counter()
        adjoint = build_adjoint(
            g, h, dgs[i], dhs[j], fgs[i][k], fhs[j][l], cfg.max_product_vertices
        )
        minimal_ok = verify_dominates(adjoint) and verify_minimal(adjoint)
        gamma_adjoint, _ = gamma_exact(adjoint.combined)
        if gamma_adjoint > gamma_g * gamma_h:
            raise InternalContradiction(
                "adjoint gamma exceeds the dominating-set product size"
            )
        if gamma_product is not None and gamma_adjoint > gamma_product:
            raise InternalContradiction("adjoint gamma exceeds the product gamma")
        reports.append(
            PairReport(
                g6_g=g6_g,
                g6_h=g6_h,
                gamma_g=gamma_g,
                gamma_h=gamma_h,
                choice_id=(i, j, k, l),
                e_s_count=len(adjoint.adjoined),
                gamma_adjoint=gamma_adjoint,
                minimal_ok=minimal_ok,
                minimum_ok=gamma_adjoint == gamma_g * gamma_h,
                gamma_product=gamma_product,
                elapsed=time.perf_counter() - start,
                seed=seed,
            )
        )
    return reports


def vizing_cross_check(
    g: Graph,
    h: Graph,
    oracle_limit: int = 20,
    max_product_vertices: int = 4096,
) -> tuple[int, bool]:
    """Exact gamma of the plain product and Vizing's inequality for the pair.

    Returns (gamma(G box H), gamma(G)*gamma(H) <= gamma(G box H)). Also
    builds the first-choice adjoint and asserts its gamma never exceeds the
    product's (the adjoint is a supergraph on the same vertices, so any
    dominating set of the product still dominates it).
    """
    product = cartesian_product(g, h, max_product_vertices)
    gamma_product, _ = gamma_exact(product)
    gg, _ = gamma_exact(g)
    gh, _ = gamma_exact(h)
    dg = enumerate_canonical(g, 1, oracle_limit)[0]
    dh = enumerate_canonical(h, 1, oracle_limit)[0]
    fg = enumerate_surjections(g, dg, 1)[0]
    fh = enumerate_surjections(h, dh, 1)[0]
    adjoint = build_adjoint(g, h, dg, dh, fg, fh, max_product_vertices)
    gamma_adjoint, _ = gamma_exact(adjoint.combined)
    if gamma_adjoint > gamma_product:
        raise InternalContradiction("adjoint gamma exceeds the product gamma")
    return gamma_product, gg * gh <= gamma_product


@dataclass
class SweepSummary:
    pairs: int = 0
    choice_tuples: int = 0
    counterexamples: int = 0
    vizing_violations: int = 0
    invariant_violations: int = 0
    parse_errors: int = 0
    skipped_pairs: int = 0


def summary_record(summary: SweepSummary) -> dict:
    return {
        "summary": {
            "pairs": summary.pairs,
            "choice_tuples": summary.choice_tuples,
            "counterexamples": summary.counterexamples,
            "vizing_violations": summary.vizing_violations,
            "invariant_violations": summary.invariant_violations,
            "parse_errors": summary.parse_errors,
            "skipped_pairs": summary.skipped_pairs,
        }
    }


def _emit(g: Graph) -> str:
    return emit_graph6(g)


def _load_corpus(
    lines: Iterable[str],
    label: str,
    max_n: int | None,
    summary: SweepSummary,
    log: IO[str] | None,
) -> list[str]:
    """Parse a graph6 stream, keeping the text of each usable line."""
    kept = []
    for lineno, raw in enumerate(lines, start=1):
        text = raw.rstrip("\r\n")
        if not text:
            continue
        try:
            graph = parse_graph6(text)
        except DomAdjointError as exc:
            summary.parse_errors += 1
            _diag(log, f"{label} line {lineno}: {type(exc).__name__}: {exc}")
            continue
        if max_n is not None and graph.n > max_n:
            _diag(log, f"{label} line {lineno}: skipped, n={graph.n} exceeds limit {max_n}")
            continue
        kept.append(text)
    return kept


def _diag(log: IO[str] | None, message: str) -> None:
    if log is not None:
        print(message, file=log)


def _sweep_task(args: tuple[str, str, SweepConfig]) -> tuple[str, object]:
    """Evaluate one pair in a worker; never raises across the pool boundary."""
    g6_g, g6_h, cfg = args
    try:
        reports = check_pair(parse_graph6(g6_g), parse_graph6(g6_h), cfg)
    except InternalContradiction as exc:
        return "invariant", f"{g6_g} x {g6_h}: {exc}"
    except DomAdjointError as exc:
        return "skip", f"{g6_g} x {g6_h}: {type(exc).__name__}: {exc}"
    return "ok", reports


def sweep(
    corpus_g: Iterable[str],
    corpus_h: Iterable[str],
    cfg: SweepConfig,
    log: IO[str] | None = sys.stderr,
    include_timing: bool = False,
) -> Iterator[dict]:
    """Evaluate all pairs of two graph6 corpora, in corpus line order.

    Yields one record dict per choice tuple and a final summary record
    (``{"summary": {...}}``). Malformed lines are reported to ``log`` with
    their line numbers and skipped; pairs that fail a size cap are skipped
    the same way. The record stream is identical for any worker count.
    """
    summary = SweepSummary()
    left = _load_corpus(corpus_g, "corpus_g", cfg.max_n_g, summary, log)
    right = _load_corpus(corpus_h, "corpus_h", cfg.max_n_h, summary, log)
    tasks = [(a, b, cfg) for a in left for b in right]

    if cfg.jobs == 1:
        results = map(_sweep_task, tasks)
    else:
        pool = ProcessPoolExecutor(max_workers=cfg.jobs)
        chunk = max(1, len(tasks) // (cfg.jobs * 4) or 1)
        results = pool.map(_sweep_task, tasks, chunksize=chunk)

    try:
        for status, payload in results:
            if status == "invariant":
                summary.invariant_violations += 1
                _diag(log, f"INVARIANT VIOLATION: {payload}")
                continue
            if status == "skip":
                summary.skipped_pairs += 1
                _diag(log, f"pair skipped: {payload}")
                continue
            reports: list[PairReport] = payload  # type: ignore[assignment]
            summary.pairs += 1
            vizing_violation = False
            for report in reports:
                summary.choice_tuples += 1
                if not report.minimal_ok:
                    summary.invariant_violations += 1
                    _diag(
                        log,
                        "INVARIANT VIOLATION: minimal_ok false for "
                        f"{report.g6_g} x {report.g6_h} choice {report.choice_id}",
                    )
                if not report.minimum_ok:
                    summary.counterexamples += 1
                    _diag(
                        log,
                        "FINDING: minimum_ok false for "
                        f"{report.g6_g} x {report.g6_h} choice {report.choice_id}",
                    )
                if (
                    report.gamma_product is not None
                    and report.gamma_g * report.gamma_h > report.gamma_product
                ):
                    vizing_violation = True
                yield report_record(report, include_timing)
            if vizing_violation:
                summary.vizing_violations += 1
                _diag(log, f"FINDING: Vizing violation for {reports[0].g6_g} x {reports[0].g6_h}")
    finally:
        if cfg.jobs != 1:
            pool.shutdown()

    yield summary_record(summary)
