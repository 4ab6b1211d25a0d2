"""Gap experiment: run every solver and every soundness check on one reduced instance."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .core import INF, StackInstance, format_price
from .labelcover import LabelCoverInstance, brute_force_opt, satisfied_count
from .reduction import (
    completeness_pricing,
    extract_assignment,
    island_diagnostics,
    reduce,
)
from .solvers import Limits, best_single_price, exact_optimal_pricing, uniform_pricing

__all__ = ["Check", "GapReport", "random_pricing", "run_gap_experiment", "render_text"]

MAX_SAMPLE_PRICE = 4
PRICE_DENOMINATOR = 8


def random_pricing(inst: StackInstance, rng: random.Random) -> dict:
    """Random half of the pricable edges priced in [0, 4] with denominator 8; the rest INF."""
    p = {}
    for e in inst.pricable_ids:
        if rng.random() < 0.5:
            p[e] = Fraction(rng.randint(0, MAX_SAMPLE_PRICE * PRICE_DENOMINATOR), PRICE_DENOMINATOR)
        else:
            p[e] = INF
    return p


@dataclass
class Check:
    """A comparison ``lhs <= rhs`` aggregated over several evaluations.

    ``lhs``/``rhs`` are taken from the evaluation with the largest ``lhs - rhs``.
    """

    name: str
    lhs: Fraction | None = None
    rhs: Fraction | None = None
    evaluated: int = 0
    failures: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def add(self, lhs, rhs) -> None:
        lhs, rhs = Fraction(lhs), Fraction(rhs)
        self.evaluated += 1
        if lhs > rhs:
            self.failures += 1
        if self.lhs is None or lhs - rhs > self.lhs - self.rhs:
            self.lhs, self.rhs = lhs, rhs

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "lhs": None if self.lhs is None else format_price(self.lhs),
            "rhs": None if self.rhs is None else format_price(self.rhs),
            "evaluated": self.evaluated,
            "failures": self.failures,
        }


@dataclass
class GapReport:
    m: int
    opt_lc: int
    revenue: dict
    single_price_q: Fraction
    extracted_satisfied: int
    samples: int
    seed: int
    checks: list = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        exact = self.revenue["exact"]
        return {
            "m": self.m,
            "opt_lc": self.opt_lc,
            "revenue": {k: format_price(v) for k, v in self.revenue.items()},
            "c": format_price(exact - self.m),
            "ratio_to_2m": format_price(exact / (2 * self.m)),
            "single_price_q": format_price(self.single_price_q),
            "extracted_satisfied": self.extracted_satisfied,
            "samples": self.samples,
            "seed": self.seed,
            "all_passed": self.all_passed,
            "checks": [c.to_dict() for c in self.checks],
        }


CHECK_NAMES = (
    "ceiling_2m",
    "lower_2opt",
    "upper_m_plus_4opt",
    "single_le_exact",
    "uniform1_le_single",
    "soundness_extract",
    "r_ge_c_half_plus_1",
    "global_bound",
    "fact1",
    "link_total",
    "eq1",
    "eq2",
    "eq3",
    "eq1_once",
    "eq3_once",
)


def _diagnose(checks, lc, inst, rmap, pricing):
    diag = island_diagnostics(inst, rmap, pricing)
    dec = diag.decomposition
    m = rmap.m
    checks["ceiling_2m"].add(diag.revenue, 2 * m)
    extracted = satisfied_count(lc, extract_assignment(lc, rmap, dec))
    checks["soundness_extract"].add(math.ceil(dec.r / 2), extracted)
    if dec.r >= 1:
        checks["r_ge_c_half_plus_1"].add(diag.c / 2 + 1, dec.r)
        checks["global_bound"].add(diag.global_bound.lhs, diag.global_bound.rhs)
    for cmp in diag.fact1:
        checks["fact1"].add(cmp.lhs, cmp.rhs)
    checks["link_total"].add(diag.link_total.lhs, diag.link_total.rhs)
    for g in diag.gadgets:
        for cmp in (g.eq1, g.eq2, g.eq3, g.eq1_once, g.eq3_once):
            checks[cmp.name].add(cmp.lhs, cmp.rhs)
    return extracted


def run_gap_experiment(
    lc: LabelCoverInstance,
    limits: Limits | None = None,
    pricing_samples: int = 200,
    seed: int = 0,
    lc_limit: int = 10**6,
) -> GapReport:
    """Reduce ``lc``, solve it every way and check every bound on the exact and sampled pricings."""
    limits = limits or Limits()
    best_assignment, opt = brute_force_opt(lc, lc_limit)
    inst, rmap = reduce(lc)
    m = rmap.m
    exact = exact_optimal_pricing(inst, limits, hint=completeness_pricing(rmap, best_assignment))
    q, single = best_single_price(inst)
    uniform = uniform_pricing(inst, 1)

    checks = {name: Check(name) for name in CHECK_NAMES}
    checks["lower_2opt"].add(2 * opt, exact.revenue)
    checks["upper_m_plus_4opt"].add(exact.revenue, m + 4 * opt)
    checks["single_le_exact"].add(single.revenue, exact.revenue)
    checks["uniform1_le_single"].add(uniform.revenue, single.revenue)

    extracted = _diagnose(checks, lc, inst, rmap, exact.pricing)
    rng = random.Random(seed)
    for _ in range(pricing_samples):
        _diagnose(checks, lc, inst, rmap, random_pricing(inst, rng))

    return GapReport(
        m=m,
        opt_lc=opt,
        revenue={"exact": exact.revenue, "single_price": single.revenue, "uniform_1": uniform.revenue},
        single_price_q=q,
        extracted_satisfied=extracted,
        samples=pricing_samples,
        seed=seed,
        checks=[checks[name] for name in CHECK_NAMES],
    )


def render_text(report: GapReport) -> str:
    lines = [
        f"m={report.m}  OPT_LC={report.opt_lc}  extracted satisfies {report.extracted_satisfied}",
        "revenue: " + "  ".join(f"{k}={format_price(v)}" for k, v in report.revenue.items())
        + f"  (single price q*={format_price(report.single_price_q)})",
        "",
        f"{'check':<22}{'status':<8}{'lhs':>10}{'rhs':>10}{'fails':>8}{'evals':>8}",
    ]
    for c in report.checks:
        status = "pass" if c.passed else "FAIL"
        lhs = "-" if c.lhs is None else str(format_price(c.lhs))
        rhs = "-" if c.rhs is None else str(format_price(c.rhs))
        lines.append(f"{c.name:<22}{status:<8}{lhs:>10}{rhs:>10}{c.failures:>8}{c.evaluated:>8}")
    return "\n".join(lines) + "\n"
