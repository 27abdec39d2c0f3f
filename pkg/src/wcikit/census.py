"""Bounded enumeration and classification of the WCI parameter space.

Specs are enumerated with ascending weights and degrees (one representative
per permutation class), ambient weights pre-filtered to well-formed tuples,
and records written as deterministic JSONL with a JSON summary sidecar.
"""

from __future__ import annotations

import json
import zlib
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterator, Optional

from .analysis import (
    THEOREM_CONSISTENT,
    THEOREM_IMPLIES_NOT_QUASISMOOTH,
    AnalysisReport,
    WCISpec,
    classify,
    is_linear_cone,
)
from .oracle import DEFAULT_PRIMES, QSVerdict, hygienic_primes, quasi_smooth_probe
from .poly import GF, PolySystem
from .weights import Weights, is_well_formed_space


@dataclass(frozen=True)
class CensusBounds:
    """Search box: ambient dimension, weight size/sum, codimension, degree."""

    max_n: int
    max_weight: int
    max_weight_sum: int
    max_k: int
    max_degree: int
    require_non_linear_cone: bool = False
    min_dim: int = 0

    def __post_init__(self):
        for name in ("max_n", "max_weight", "max_weight_sum", "max_k", "max_degree"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        if not isinstance(self.min_dim, int) or self.min_dim < 0:
            raise ValueError(f"min_dim must be a non-negative integer, got {self.min_dim!r}")

    @classmethod
    def from_json(cls, obj: dict) -> "CensusBounds":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(obj) - known
        if unknown:
            raise ValueError(f"unknown census bound keys: {sorted(unknown)}")
        return cls(**obj)

    def to_json(self) -> dict:
        return {
            "max_n": self.max_n,
            "max_weight": self.max_weight,
            "max_weight_sum": self.max_weight_sum,
            "max_k": self.max_k,
            "max_degree": self.max_degree,
            "require_non_linear_cone": self.require_non_linear_cone,
            "min_dim": self.min_dim,
        }


@dataclass(frozen=True)
class ProbeBudget:
    """Finite-field spot-check budget for theorem-applicable census records."""

    primes: tuple[int, ...] = DEFAULT_PRIMES
    max_points: int = 100_000
    sample_count: int = 20_000
    seed: int = 1

    def to_json(self) -> dict:
        return {
            "primes": list(self.primes),
            "max_points": self.max_points,
            "sample_count": self.sample_count,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class CensusRecord:
    report: AnalysisReport
    oracle_verdict: Optional[QSVerdict] = None

    def to_json(self) -> dict:
        return {
            "report": self.report.to_json(),
            "oracle_verdict": None if self.oracle_verdict is None else self.oracle_verdict.to_json(),
        }


@dataclass(frozen=True)
class CensusSummary:
    total: int
    well_formed: int
    weakly_only: int
    neither: int
    linear_cone_skipped: int
    theorem_implies_not_quasismooth: int
    probed: int
    refuted: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "well_formed": self.well_formed,
            "weakly_only": self.weakly_only,
            "neither": self.neither,
            "linear_cone_skipped": self.linear_cone_skipped,
            "theorem_implies_not_quasismooth": self.theorem_implies_not_quasismooth,
            "probed": self.probed,
            "refuted": list(self.refuted),
        }


def _ascending_tuples(length: int, lo: int, max_value: int, budget: int):
    """Non-decreasing tuples of the given length with entries in [lo, max_value]
    and sum bounded by budget."""
    if length == 0:
        yield ()
        return
    top = min(max_value, budget // length)  # the remaining entries are all >= the current one
    for v in range(lo, top + 1):
        for rest in _ascending_tuples(length - 1, v, max_value, budget - v):
            yield (v,) + rest


def enumerate_specs(bounds: CensusBounds) -> Iterator[WCISpec]:
    """Every spec in the box exactly once, in deterministic order: ambient
    dimension ascending, then weights lexicographically, then codimension,
    then degrees.  Weights ascend and must be well formed; degrees ascend;
    linear cones are skipped when the bounds require it."""
    for n in range(1, bounds.max_n + 1):
        count = n + 1
        if count > bounds.max_weight_sum:
            break
        k_top = min(bounds.max_k, n - bounds.min_dim)
        if k_top < 1:
            continue
        for entries in _ascending_tuples(count, 1, bounds.max_weight, bounds.max_weight_sum):
            w = Weights(entries)
            if not is_well_formed_space(w):
                continue
            for k in range(1, k_top + 1):
                for degs in _ascending_tuples(k, 1, bounds.max_degree, k * bounds.max_degree):
                    spec = WCISpec(w, degs)
                    if bounds.require_non_linear_cone and is_linear_cone(spec):
                        continue
                    yield spec


def _probe_seed(spec: WCISpec, base_seed: int) -> int:
    return zlib.crc32(spec.key().encode()) ^ base_seed


def _spot_probe(spec: WCISpec, budget: ProbeBudget) -> Optional[QSVerdict]:
    usable = hygienic_primes(budget.primes, spec.weights, spec.degrees)
    if not usable:
        return None
    p = usable[0]
    sys = PolySystem.generic(spec.weights, spec.degrees, GF(p), _probe_seed(spec, budget.seed))
    return quasi_smooth_probe(
        sys, [p], budget.max_points, sample_count=budget.sample_count, seed=budget.seed
    )


def run_census(
    bounds: CensusBounds, probe: Optional[ProbeBudget] = None
) -> tuple[list[CensusRecord], CensusSummary]:
    """Classify every spec in the box; optionally spot-probe theorem-applicable
    records.  The summary's ``refuted`` list names every record whose
    implies-not-quasismooth status would be contradicted by a verified
    quasi-smooth member; the oracle can only ever certify non-quasi-smoothness,
    so a nonempty list signals an implementation bug."""
    records: list[CensusRecord] = []
    skipped_cones = 0
    base = replace(bounds, require_non_linear_cone=False)
    for spec in enumerate_specs(base):
        if bounds.require_non_linear_cone and is_linear_cone(spec):
            skipped_cones += 1
            continue
        report = classify(spec)
        verdict = None
        if probe is not None and report.theorem_status in (
            THEOREM_CONSISTENT,
            THEOREM_IMPLIES_NOT_QUASISMOOTH,
        ):
            verdict = _spot_probe(spec, probe)
        records.append(CensusRecord(report, verdict))

    refuted = []
    for rec in records:
        if rec.report.theorem_status != THEOREM_IMPLIES_NOT_QUASISMOOTH:
            continue
        v = rec.oracle_verdict
        # A refutation would need a *verified quasi-smooth* member; no probe
        # outcome can certify that, so this stays empty by construction.
        if v is not None and v.status not in ("no_witness_found", "singular_witness"):
            refuted.append(rec.report.spec.key())
    if refuted:
        raise RuntimeError(f"internal: impossible theorem refutations recorded: {refuted}")

    summary = CensusSummary(
        total=len(records),
        well_formed=sum(1 for r in records if r.report.well_formed),
        weakly_only=sum(
            1 for r in records if r.report.weakly_well_formed and not r.report.well_formed
        ),
        neither=sum(1 for r in records if not r.report.weakly_well_formed),
        linear_cone_skipped=skipped_cones,
        theorem_implies_not_quasismooth=sum(
            1 for r in records if r.report.theorem_status == THEOREM_IMPLIES_NOT_QUASISMOOTH
        ),
        probed=sum(1 for r in records if r.oracle_verdict is not None),
        refuted=tuple(refuted),
    )
    return records, summary


def summary_sidecar_path(path) -> Path:
    return Path(str(path) + ".summary.json")


def write_census(records, summary: CensusSummary, path, summary_path=None) -> None:
    """Write one compact JSON record per line plus the summary sidecar.

    On an I/O failure a partial-output marker is left in the sidecar (best
    effort) before the error propagates.
    """
    path = Path(path)
    summary_path = summary_sidecar_path(path) if summary_path is None else Path(summary_path)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            for rec in records:
                fh.write(json.dumps(rec.to_json(), separators=(",", ":")))
                fh.write("\n")
        with open(summary_path, "w", encoding="utf-8") as fh:
            json.dump(summary.to_json(), fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        try:
            with open(summary_path, "w", encoding="utf-8") as fh:
                json.dump({"status": "aborted_partial_output", "error": str(exc)}, fh)
                fh.write("\n")
        except OSError:
            pass
        raise
