"""Deterministic property-test suites over certified random instances.

Four suites:

* identity    - the signed defect equals the weighted derivative integrals
                (an exact identity, checked to identity_tol);
* bounds      - one sub-suite per inequality; each case certifies the
                hypothesis it needs (|f'| or |f'|^q s-convex, concave, or
                f itself convex) before asserting, and cases that fail
                certification are skipped and counted;
* reductions  - the s -> 1 and q -> 1 collapses onto the convex-case
                bounds, checked as relative discrepancies;
* props       - the mean-expressed proposition defects against quadrature
                oracles, dominance of the substitution-derived bounds, and
                the documented sign discrepancy of the printed
                reciprocal-family bound.

Case i draws everything from sub-seed (seed XOR i), so parallel and serial
runs would agree and identical configs produce identical reports.

Margins follow one convention: a case holds when margin >= -tol.  For bound
cases margin is rhs - lhs and values in [-tol, 0) count as warnings
(numerical noise), not violations; for identity, reduction and cross-check
cases margin is the negated (relative) discrepancy.
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, SuiteError
from .funcmodel import (
    FuncHandle,
    GenConfig,
    PowerSum,
    certify_concave,
    certify_s_convex,
    handle_from_power_sum,
    sample_dconvex_instance,
    sample_interval,
)
from .means import OrderedInterval
from .bounds import (
    HolderPair,
    bound_ms,
    bound_prior,
    bound_se2,
    bound_se5,
    bound_se6,
    bullen_classic_rhs,
    bullen_defect_signed,
    bullen_type_defect,
    hadamard_s_triple,
    hadamard_triple,
    lemma_identity_rhs,
    mean_value,
    trapezoid_defect,
)
from .means_bounds import prop_power_lhs, prop_recip_lhs, prop_rhs, se4_discrepancy

BOUND_THEOREMS = ("SE2", "SE5", "SE6", "S1", "S2", "S3", "DA", "PP", "PPC", "ADK", "HH", "HHS", "BULLEN")

_PROP_POWER_S = tuple(round(0.1 * k, 1) for k in range(1, 11))
_PROP_RECIP_S = tuple(round(0.1 * k, 1) for k in range(1, 10))


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 42
    cases: int = 100
    s_grid: tuple[float, ...] = (0.25, 0.5, 0.75, 1.0)
    q_grid: tuple[float, ...] = (1.5, 2.0, 3.0)
    lo_min: float = 0.25
    hi_max: float = 4.0
    identity_tol: float = 1e-8
    bound_tol: float = 1e-9
    reduction_tol: float = 1e-12

    def __post_init__(self):
        if self.cases < 1:
            raise DomainError("suite needs cases >= 1")
        if not self.s_grid or not self.q_grid:
            raise DomainError("suite grids must be nonempty")
        for s in self.s_grid:
            if not 0.0 < s <= 1.0:
                raise DomainError(f"s grid value {s} outside (0, 1]")
        for q in self.q_grid:
            if not q > 1.0:
                raise DomainError(f"q grid value {q} must exceed 1")
        if not 0.0 < self.lo_min < self.hi_max:
            raise DomainError("interval sampler needs 0 < lo_min < hi_max")

    def gen_config(self) -> GenConfig:
        return GenConfig(lo_min=self.lo_min, hi_max=self.hi_max)


@dataclass(frozen=True)
class CaseRow:
    case: int
    theorem: str
    a: Optional[float]
    b: Optional[float]
    s: Optional[float]
    q: Optional[float]
    lhs: Optional[float]
    rhs: Optional[float]
    margin: Optional[float]
    status: str  # ok | warning | violation | skipped


@dataclass(frozen=True)
class SuiteReport:
    suite_id: str
    seed: int
    cases_run: int
    skipped: int
    rows: tuple[CaseRow, ...]
    violations: tuple[CaseRow, ...]
    warnings: int
    worst_margin: float
    notes: tuple[str, ...]
    runtime_ms: float


def _finish(suite_id: str, cfg: SuiteConfig, rows: list[CaseRow], notes: list[str], t0: float) -> SuiteReport:
    evaluated = [r for r in rows if r.status != "skipped"]
    skipped = len(rows) - len(evaluated)
    if not evaluated:
        raise SuiteError(f"suite {suite_id}: every case was skipped; nothing was verified")
    violations = tuple(r for r in evaluated if r.status == "violation")
    warnings = sum(1 for r in evaluated if r.status == "warning")
    worst = min(r.margin for r in evaluated)
    return SuiteReport(
        suite_id=suite_id,
        seed=cfg.seed,
        cases_run=cfg.cases,
        skipped=skipped,
        rows=tuple(rows),
        violations=violations,
        warnings=warnings,
        worst_margin=worst,
        notes=tuple(notes),
        runtime_ms=(time.perf_counter() - t0) * 1000.0,
    )


def _bound_row(case: int, theorem: str, iv, s, q, lhs: float, rhs: float, tol: float) -> CaseRow:
    margin = rhs - lhs
    allowance = max(tol, tol * abs(rhs))
    if margin >= 0.0:
        status = "ok"
    elif margin >= -allowance:
        status = "warning"
    else:
        status = "violation"
    a = iv.a if iv is not None else None
    b = iv.b if iv is not None else None
    return CaseRow(case, theorem, a, b, s, q, lhs, rhs, margin, status)


def _match_row(case: int, theorem: str, iv, s, q, lhs: float, rhs: float, tol: float) -> CaseRow:
    """Row for an equality check: margin is the negated relative discrepancy."""
    margin = -abs(lhs - rhs) / (1.0 + abs(lhs))
    status = "ok" if margin >= -tol else "violation"
    a = iv.a if iv is not None else None
    b = iv.b if iv is not None else None
    return CaseRow(case, theorem, a, b, s, q, lhs, rhs, margin, status)


def _skip_row(case: int, theorem: str, iv, s, q) -> CaseRow:
    a = iv.a if iv is not None else None
    b = iv.b if iv is not None else None
    return CaseRow(case, theorem, a, b, s, q, None, None, None, "skipped")


def run_identity_suite(
    cfg: SuiteConfig,
    instances: Optional[Sequence[tuple[FuncHandle, OrderedInterval]]] = None,
) -> SuiteReport:
    """Signed defect versus the weighted derivative integrals, case by case.

    The optional instances sequence overrides generation; it exists so a
    deliberately inconsistent (f, f') pair can be fed in as a negative
    control.
    """
    t0 = time.perf_counter()
    rows: list[CaseRow] = []
    if instances is not None:
        pairs = list(enumerate(instances))
    else:
        pairs = []
        for i in range(cfg.cases):
            pairs.append((i, sample_dconvex_instance(random.Random(cfg.seed ^ i), cfg.gen_config())))
    for i, (f, iv) in pairs:
        lhs = bullen_defect_signed(f, iv)
        rhs = lemma_identity_rhs(f, iv)
        rows.append(_match_row(i, "identity", iv, None, None, lhs, rhs, cfg.identity_tol))
    return _finish("identity", cfg, rows, [], t0)


def _convex_f_instance(seed: int, cfg: SuiteConfig) -> tuple[FuncHandle, OrderedInterval]:
    """f with nondecreasing f' (exponents 0 or in [1,3]), so f is convex."""
    rng = random.Random(seed)
    terms = []
    for _ in range(rng.randint(1, 3)):
        exponent = 0.0 if rng.random() < 0.3 else rng.uniform(1.0, 3.0)
        terms.append((rng.uniform(0.05, 2.0), exponent))
    dps = PowerSum(terms)
    return handle_from_power_sum(dps.antiderivative()), sample_interval(rng, cfg.gen_config())


def _concave_power_instance(seed: int, q: float, cfg: SuiteConfig) -> tuple[FuncHandle, OrderedInterval]:
    """f' = c x^m with 0 < m q <= 1, so |f'|^q is concave."""
    rng = random.Random(seed)
    m = rng.uniform(0.05, 1.0) / q
    c = rng.uniform(0.1, 2.0)
    f = PowerSum([(c, m)]).antiderivative()
    return handle_from_power_sum(f), sample_interval(rng, cfg.gen_config())


def _s_power_instance(seed: int, s: float, cfg: SuiteConfig) -> tuple[FuncHandle, float, float]:
    """f = c x^sigma with sigma >= s (hence s-convex), on [u, v] with u >= 0."""
    rng = random.Random(seed)
    sigma = rng.uniform(max(s, 0.3), 1.0)
    c = rng.uniform(0.2, 2.0)
    f = handle_from_power_sum(PowerSum([(c, sigma)]))
    gen = cfg.gen_config()
    if rng.random() < 0.25:
        u, v = 0.0, rng.uniform(gen.lo_min, gen.hi_max)
    else:
        iv = sample_interval(rng, gen)
        u, v = iv.a, iv.b
    return f, u, v


def _sconvex_term_instance(seed: int, s: float, cfg: SuiteConfig) -> tuple[FuncHandle, OrderedInterval]:
    """f' = c x^s: s-convex but not convex for s < 1."""
    rng = random.Random(seed)
    c = rng.uniform(0.1, 2.0)
    f = PowerSum([(c, s)]).antiderivative()
    return handle_from_power_sum(f), sample_interval(rng, cfg.gen_config())


def run_bound_suite(cfg: SuiteConfig, theorem: str) -> SuiteReport:
    """Assert one inequality over certified instances; skip failed hypotheses."""
    theorem = theorem.upper()
    if theorem not in BOUND_THEOREMS:
        raise DomainError(f"unknown bound suite {theorem!r}")
    t0 = time.perf_counter()
    rows: list[CaseRow] = []
    grid = cfg.gen_config().grid

    for i in range(cfg.cases):
        sub = cfg.seed ^ i
        rng = random.Random(sub)
        s = rng.choice(cfg.s_grid)
        q = rng.choice(cfg.q_grid)
        inst_seed = rng.getrandbits(32)

        if theorem in ("SE2", "SE5", "SE6"):
            q_eff = 1.0 if theorem == "SE2" else q
            if s * q_eff >= 1.0 and rng.random() < 0.2:
                f, iv = _sconvex_term_instance(inst_seed, s, cfg)
            else:
                f, iv = sample_dconvex_instance(random.Random(inst_seed), cfg.gen_config())
            df = f.derivative
            if theorem == "SE2":
                cert = certify_s_convex(lambda x: np.abs(df(x)), s, iv.a, iv.b, grid)
            else:
                cert = certify_s_convex(lambda x: np.abs(df(x)) ** q, s, iv.a, iv.b, grid)
            if not cert.certified:
                rows.append(_skip_row(i, theorem.lower(), iv, s, q))
                continue
            lhs = bullen_type_defect(f, iv)
            df_a, df_b = abs(df(iv.a)), abs(df(iv.b))
            if theorem == "SE2":
                rhs, q_row = bound_se2(df_a, df_b, iv, s), None
            elif theorem == "SE5":
                rhs, q_row = bound_se5(df_a, df_b, iv, s, HolderPair(q)), q
            else:
                rhs, q_row = bound_se6(df_a, df_b, iv, s, q), q
            rows.append(_bound_row(i, theorem.lower(), iv, s, q_row, lhs, rhs, cfg.bound_tol))

        elif theorem in ("S1", "S2", "S3", "DA", "PP"):
            f, iv = sample_dconvex_instance(random.Random(inst_seed), cfg.gen_config())
            df = f.derivative
            power = 1.0 if theorem in ("S1", "DA") else q
            cert = certify_s_convex(lambda x: np.abs(df(x)) ** power, 1.0, iv.a, iv.b, grid)
            if not cert.certified:
                rows.append(_skip_row(i, theorem.lower(), iv, None, q))
                continue
            df_a, df_b = abs(df(iv.a)), abs(df(iv.b))
            if theorem in ("S1", "S2", "S3"):
                lhs = bullen_type_defect(f, iv)
                rhs = bound_ms(theorem, df_a, df_b, iv, None if theorem == "S1" else q)
            else:
                lhs = trapezoid_defect(f, iv)
                rhs = bound_prior(theorem, f, iv, None if theorem == "DA" else q)
            q_row = None if theorem in ("S1", "DA") else q
            rows.append(_bound_row(i, theorem.lower(), iv, None, q_row, lhs, rhs, cfg.bound_tol))

        elif theorem in ("PPC", "ADK"):
            f, iv = _concave_power_instance(inst_seed, q, cfg)
            df = f.derivative
            cert = certify_concave(lambda x: np.abs(df(x)) ** q, iv.a, iv.b, grid)
            if not cert.certified:
                rows.append(_skip_row(i, theorem.lower(), iv, None, q))
                continue
            lhs = trapezoid_defect(f, iv)
            kind = "PP_CONCAVE" if theorem == "PPC" else "ADK"
            rhs = bound_prior(kind, f, iv, q)
            rows.append(_bound_row(i, theorem.lower(), iv, None, q, lhs, rhs, cfg.bound_tol))

        elif theorem in ("HH", "BULLEN"):
            f, iv = _convex_f_instance(inst_seed, cfg)
            cert = certify_s_convex(f.value, 1.0, iv.a, iv.b, grid)
            if not cert.certified:
                rows.append(_skip_row(i, theorem.lower(), iv, None, None))
                continue
            if theorem == "HH":
                left, mid, right = hadamard_triple(f, iv)
                if mid - left <= right - mid:
                    lhs, rhs = left, mid
                else:
                    lhs, rhs = mid, right
            else:
                lhs, rhs = mean_value(f, iv), bullen_classic_rhs(f, iv)
            rows.append(_bound_row(i, theorem.lower(), iv, None, None, lhs, rhs, cfg.bound_tol))

        else:  # HHS
            if i == 0:
                # Sharp instance: the endpoint-average constant is attained.
                f, u, v, s = handle_from_power_sum(PowerSum([(1.0, 0.5)])), 0.0, 1.0, 0.5
            else:
                f, u, v = _s_power_instance(inst_seed, s, cfg)
            lo = u if u > 0.0 else 1e-3 * v
            cert = certify_s_convex(f.value, s, lo, v, grid)
            if not cert.certified:
                rows.append(_skip_row(i, "hhs", None, s, None))
                continue
            left, mid, right = hadamard_s_triple(f, u, v, s)
            if mid - left <= right - mid:
                lhs, rhs = left, mid
            else:
                lhs, rhs = mid, right
            row = _bound_row(i, "hhs", None, s, None, lhs, rhs, cfg.bound_tol)
            rows.append(CaseRow(row.case, row.theorem, u, v, row.s, row.q, row.lhs, row.rhs, row.margin, row.status))

    return _finish(f"bounds:{theorem.lower()}", cfg, rows, [], t0)


def run_reduction_suite(cfg: SuiteConfig) -> SuiteReport:
    """The four algebraic collapses, as relative discrepancies on random data."""
    t0 = time.perf_counter()
    rows: list[CaseRow] = []
    for i in range(cfg.cases):
        rng = random.Random(cfg.seed ^ i)
        iv = sample_interval(rng, cfg.gen_config())
        df_a = rng.uniform(0.0, 3.0)
        df_b = rng.uniform(0.0, 3.0)
        q = rng.choice(cfg.q_grid)
        s = rng.choice(cfg.s_grid)

        pairs = [
            ("se2_s1_vs_s1", 1.0, None, bound_se2(df_a, df_b, iv, 1.0), bound_ms("S1", df_a, df_b, iv)),
            ("se5_s1_vs_s2", 1.0, q, bound_se5(df_a, df_b, iv, 1.0, HolderPair(q)), bound_ms("S2", df_a, df_b, iv, q)),
            ("se6_s1_vs_s3", 1.0, q, bound_se6(df_a, df_b, iv, 1.0, q), bound_ms("S3", df_a, df_b, iv, q)),
            ("se6_q1_vs_se2", s, 1.0, bound_se6(df_a, df_b, iv, s, 1.0), bound_se2(df_a, df_b, iv, s)),
        ]
        for name, s_row, q_row, lhs, rhs in pairs:
            scale = max(abs(lhs), abs(rhs))
            rel = abs(lhs - rhs) / scale if scale > 0.0 else 0.0
            status = "ok" if rel <= cfg.reduction_tol else "violation"
            rows.append(CaseRow(i, name, iv.a, iv.b, s_row, q_row, lhs, rhs, -rel, status))
    return _finish("reductions", cfg, rows, [], t0)


def run_prop_crosscheck_suite(cfg: SuiteConfig) -> SuiteReport:
    """Mean-expressed defects against quadrature, and proposition dominance."""
    t0 = time.perf_counter()
    rows: list[CaseRow] = []
    negation_hits = 0
    printed_negative = 0
    for i in range(cfg.cases):
        rng = random.Random(cfg.seed ^ i)
        iv = sample_interval(rng, cfg.gen_config())
        q = rng.choice(cfg.q_grid)

        for s in _PROP_POWER_S:
            ps = PowerSum([(1.0, s)])
            oracle = FuncHandle(value=ps, derivative=ps.derivative())
            defect = bullen_type_defect(oracle, iv)
            lhs = prop_power_lhs(iv, s)
            rows.append(_match_row(i, "prop_power_xcheck", iv, s, None, lhs, defect, cfg.bound_tol))
            rows.append(_bound_row(i, "se3", iv, s, None, lhs, prop_rhs("SE3", iv, s), cfg.bound_tol))
            rows.append(_bound_row(i, "se7", iv, s, q, lhs, prop_rhs("SE7", iv, s, q), cfg.bound_tol))
            rows.append(_bound_row(i, "se8", iv, s, q, lhs, prop_rhs("SE8", iv, s, q), cfg.bound_tol))

        for s in _PROP_RECIP_S:
            ps = PowerSum([(1.0 / (1.0 - s), 1.0 - s)])
            oracle = FuncHandle(value=ps, derivative=ps.derivative())
            defect = bullen_type_defect(oracle, iv)
            lhs = prop_recip_lhs(iv, s)
            rows.append(_match_row(i, "prop_recip_xcheck", iv, s, None, lhs, defect, cfg.bound_tol))
            rows.append(_bound_row(i, "se4", iv, s, None, lhs, prop_rhs("SE4", iv, s), cfg.bound_tol))
            rows.append(_bound_row(i, "se9", iv, s, q, lhs, prop_rhs("SE9", iv, s, q), cfg.bound_tol))
            rows.append(_bound_row(i, "se10", iv, s, q, lhs, prop_rhs("SE10", iv, s, q), cfg.bound_tol))

        disc = se4_discrepancy(iv, rng.choice(_PROP_RECIP_S))
        if disc.is_exact_negation:
            negation_hits += 1
        if disc.printed_rhs < disc.substitution_rhs:
            printed_negative += 1

    notes = [
        "se4 as-printed bound: second term is the exact negative of the substitution "
        f"form on {negation_hits}/{cfg.cases} sampled cases "
        f"({printed_negative}/{cfg.cases} printed values fall below the substitution bound); "
        "the printed form is reported for documentation and never asserted."
    ]
    return _finish("props", cfg, rows, notes, t0)


# ---------------------------------------------------------------------------
# Report serialization


def report_to_dict(report: SuiteReport) -> dict:
    return {
        "suite": report.suite_id,
        "seed": report.seed,
        "cases_run": report.cases_run,
        "skipped": report.skipped,
        "violations": [
            {
                "case": r.case,
                "theorem": r.theorem,
                "a": r.a,
                "b": r.b,
                "s": r.s,
                "q": r.q,
                "lhs": r.lhs,
                "rhs": r.rhs,
                "margin": r.margin,
            }
            for r in report.violations
        ],
        "worst_margin": report.worst_margin,
        "warnings": report.warnings,
        "notes": list(report.notes),
        "runtime_ms": report.runtime_ms,
    }


def render_json(reports) -> str:
    if isinstance(reports, SuiteReport):
        payload = report_to_dict(reports)
    else:
        payload = [report_to_dict(r) for r in reports]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


CSV_HEADER = ("suite", "case", "theorem", "a", "b", "s", "q", "lhs", "rhs", "margin", "status")


def render_csv(reports) -> str:
    if isinstance(reports, SuiteReport):
        reports = [reports]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)

    def cell(v):
        return "" if v is None else repr(v) if isinstance(v, float) else v

    for report in reports:
        for r in report.rows:
            writer.writerow(
                [report.suite_id, r.case, r.theorem]
                + [cell(v) for v in (r.a, r.b, r.s, r.q, r.lhs, r.rhs, r.margin)]
                + [r.status]
            )
    return buf.getvalue()


def write_report(reports, path: str, fmt: str = "json"):
    if fmt == "json":
        text = render_json(reports)
    elif fmt == "csv":
        text = render_csv(reports)
    else:
        raise DomainError(f"unknown report format {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
