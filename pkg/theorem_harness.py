"""
Theorem harness

Checks gamma_a(T) + n/6 >= gamma_o(T) + 1/3 per tree in exact integers
(scaled by 6: slack6 = 6*gamma_a + n - 6*gamma_o - 2 >= 0), along with the
weaker form without the 1/3, the gamma_o <= n/2 bound from the 2-coloring,
the prior bound 2|gamma_o - gamma_a| <= n, and the certificate and
augmentation on the minimum defensive witness. Sweeps run over corpora and
collect violations and sharp (slack6 = 0) instances.
"""

import csv
import io
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

from config import get_config
from graph_core import AllianceError, Tree
from alliance_predicates import is_global_offensive
from exact_solvers import check_exact_cap, gamma_a, gamma_o
from constructions import (
    DegenerateInstance,
    augment_with_report,
    defensive_certificate,
    proof_case,
    pruned_global_defensive,
    smaller_side_offensive,
)
from tree_corpus import CorpusItem, CorpusSpec, corpus, pruefer_id

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["instance_id", "n", "gamma_a", "gamma_o", "slack6", "sharp", "prior_bound_ok"]


def theorem_slack6(n: int, gamma_a_value: int, gamma_o_value: int) -> int:
    """6*gamma_a + n - 6*gamma_o - 2; the 1/3 constant is the -2 term"""
    return 6 * gamma_a_value + n - 6 * gamma_o_value - 2


def conjecture_slack6(n: int, gamma_a_value: int, gamma_o_value: int) -> int:
    """6*gamma_a + n - 6*gamma_o, the form without the 1/3"""
    return 6 * gamma_a_value + n - 6 * gamma_o_value


@dataclass
class TheoremRecord:
    """Per-tree result; every numeric field is an exact integer or None"""
    instance_id: str
    n: int
    gamma_a: Optional[int] = None
    gamma_a_witness: Optional[List[int]] = None
    gamma_o: Optional[int] = None
    gamma_o_witness: Optional[List[int]] = None
    slack6: Optional[int] = None
    conj_slack6: Optional[int] = None
    prior_bound_ok: bool = True
    sharp: bool = False
    step1_ok: Optional[bool] = None
    case: Optional[int] = None
    certificate_ok: Optional[bool] = None
    augmented_size: Optional[int] = None
    augment_ok: Optional[bool] = None
    gamma_o_upper: Optional[int] = None
    bounds_only: bool = False
    degenerate: bool = False

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def csv_row(self) -> Dict[str, Any]:
        return {column: getattr(self, column) for column in CSV_COLUMNS}

    @property
    def constructions_ok(self) -> bool:
        return self.certificate_ok is not False and self.augment_ok is not False


@dataclass
class SweepReport:
    """Aggregates over a corpus sweep"""
    spec: Dict[str, Any]
    records: List[TheoremRecord] = field(default_factory=list)
    violations: List[str] = field(default_factory=list)
    conjecture_violations: List[str] = field(default_factory=list)
    prior_bound_violations: List[str] = field(default_factory=list)
    step1_violations: List[str] = field(default_factory=list)
    construction_failures: List[str] = field(default_factory=list)
    sharp_instances: List[str] = field(default_factory=list)
    degenerate_instances: List[str] = field(default_factory=list)
    min_slack6: Optional[int] = None
    exact_count: int = 0
    bounds_only_count: int = 0
    wall_time: float = 0.0

    @property
    def count(self) -> int:
        return len(self.records)

    @property
    def all_hold(self) -> bool:
        return not (self.violations or self.conjecture_violations or self.prior_bound_violations
                    or self.step1_violations or self.construction_failures)

    def add(self, record: TheoremRecord) -> None:
        self.records.append(record)
        rid = record.instance_id

        if record.degenerate:
            # only the form without the 1/3 is claimed at n = 1
            self.degenerate_instances.append(rid)
            if record.conj_slack6 is not None and record.conj_slack6 < 0:
                self.conjecture_violations.append(rid)
            return

        if record.bounds_only:
            self.bounds_only_count += 1
        else:
            self.exact_count += 1
            if self.min_slack6 is None or record.slack6 < self.min_slack6:
                self.min_slack6 = record.slack6
            if record.slack6 < 0:
                self.violations.append(rid)
            if record.conj_slack6 < 0:
                self.conjecture_violations.append(rid)
            if record.sharp:
                self.sharp_instances.append(rid)

        if not record.prior_bound_ok:
            self.prior_bound_violations.append(rid)
        if record.step1_ok is False:
            self.step1_violations.append(rid)
        if not record.constructions_ok:
            self.construction_failures.append(rid)

    def summary(self) -> Dict[str, Any]:
        return {
            "spec": self.spec,
            "count": self.count,
            "exact_count": self.exact_count,
            "bounds_only_count": self.bounds_only_count,
            "min_slack6": self.min_slack6,
            "violations": self.violations,
            "conjecture_violations": self.conjecture_violations,
            "prior_bound_violations": self.prior_bound_violations,
            "step1_violations": self.step1_violations,
            "construction_failures": self.construction_failures,
            "sharp_instances": self.sharp_instances,
            "degenerate_instances": self.degenerate_instances,
            "all_hold": self.all_hold,
            "wall_time": round(self.wall_time, 3),
        }

    def as_dict(self, include_records: bool = True) -> Dict[str, Any]:
        data = self.summary()
        if include_records:
            data["records"] = [record.as_dict() for record in self.records]
        return data


def _exact_record(tree: Tree, instance_id: str, max_exact_n: Optional[int]) -> TheoremRecord:
    n = tree.n
    defensive = gamma_a(tree, max_exact_n)
    offensive = gamma_o(tree, max_exact_n)
    a, o = defensive.value, offensive.value

    certificate = defensive_certificate(tree, defensive.witness)
    augmented = augment_with_report(tree, defensive.witness)
    side = smaller_side_offensive(tree)
    slack6 = theorem_slack6(n, a, o)

    return TheoremRecord(
        instance_id=instance_id,
        n=n,
        gamma_a=a,
        gamma_a_witness=defensive.witness.as_list(),
        gamma_o=o,
        gamma_o_witness=offensive.witness.as_list(),
        slack6=slack6,
        conj_slack6=conjecture_slack6(n, a, o),
        prior_bound_ok=2 * abs(o - a) <= n,
        sharp=slack6 == 0,
        step1_ok=2 * o <= n and 2 * len(side) <= n and is_global_offensive(tree, side),
        case=proof_case(n, a),
        certificate_ok=certificate.all_hold and (certificate.case_bound is None or certificate.case_bound.holds),
        augmented_size=len(augmented.result),
        augment_ok=augmented.offensive_ok and augmented.bound_ok and len(augmented.result) >= o,
        gamma_o_upper=min(len(side), len(augmented.result)),
    )


def _bounds_record(tree: Tree, instance_id: str) -> TheoremRecord:
    """Only the bounds that stay sound without exact alliance numbers"""
    n = tree.n
    side = smaller_side_offensive(tree)
    alliance = pruned_global_defensive(tree)
    certificate = defensive_certificate(tree, alliance)
    augmented = augment_with_report(tree, alliance)
    upper = min(len(side), len(augmented.result))

    return TheoremRecord(
        instance_id=instance_id,
        n=n,
        # gamma_a >= 1, so gamma_o - gamma_a <= upper - 1
        prior_bound_ok=2 * (upper - 1) <= n,
        step1_ok=2 * len(side) <= n and is_global_offensive(tree, side),
        certificate_ok=certificate.all_hold,
        augmented_size=len(augmented.result),
        augment_ok=augmented.offensive_ok and augmented.bound_ok,
        gamma_o_upper=upper,
        bounds_only=True,
    )


def _degenerate_record(tree: Tree, instance_id: str, max_exact_n: Optional[int]) -> TheoremRecord:
    a = gamma_a(tree, max_exact_n).value
    o = gamma_o(tree, max_exact_n).value
    logger.warning(f"{instance_id}: one-vertex tree, slack6={theorem_slack6(1, a, o)}; excluded from the 1/3 check")
    return TheoremRecord(
        instance_id=instance_id,
        n=1,
        gamma_a=a,
        gamma_a_witness=[0],
        gamma_o=o,
        gamma_o_witness=[0],
        slack6=theorem_slack6(1, a, o),
        conj_slack6=conjecture_slack6(1, a, o),
        prior_bound_ok=2 * abs(o - a) <= 1,
        step1_ok=False,
        degenerate=True,
    )


def evaluate_tree(tree: Tree, instance_id: Optional[str] = None,
                  max_exact_n: Optional[int] = None) -> TheoremRecord:
    """
    Record for any tree: exact for n within the cap, bounds-only above it,
    and a degenerate record for the one-vertex tree
    """
    instance_id = instance_id or pruefer_id(tree)
    cap = get_config().max_exact_n if max_exact_n is None else max_exact_n
    try:
        if tree.n == 1:
            return _degenerate_record(tree, instance_id, cap)
        if tree.n > cap:
            return _bounds_record(tree, instance_id)
        return _exact_record(tree, instance_id, cap)
    except AllianceError as e:
        e.instance_id = instance_id
        raise


def check_theorem(tree: Tree, instance_id: Optional[str] = None,
                  max_exact_n: Optional[int] = None) -> TheoremRecord:
    """
    Exact theorem record for one tree

    Raises:
        DegenerateInstance: n = 1 (the inequality fails there: slack6 = -1)
        InstanceTooLarge: n above the exact-solver cap
    """
    if tree.n == 1:
        raise DegenerateInstance(
            "check_theorem needs n >= 2; the one-vertex tree gives 6*1 + 1 - 6*1 - 2 = -1",
            instance_id=instance_id,
        )
    check_exact_cap(tree, max_exact_n)
    record = evaluate_tree(tree, instance_id, max_exact_n)
    logger.debug(f"{record.instance_id}: slack6={record.slack6} sharp={record.sharp}")
    return record


def _evaluate_item(job: Tuple[str, Tree, int]) -> TheoremRecord:
    instance_id, tree, cap = job
    return evaluate_tree(tree, instance_id, cap)


class SweepRunner:
    """
    Runs evaluate_tree over a corpus

    Records are merged in corpus order whatever the worker count.
    """

    def __init__(self, workers: Optional[int] = None, max_exact_n: Optional[int] = None):
        cfg = get_config()
        self.workers = workers or cfg.sweep_workers
        self.max_exact_n = cfg.max_exact_n if max_exact_n is None else max_exact_n
        self.sweep_metrics = {
            'sweeps': 0,
            'instances': 0,
            'total_time': 0.0,
        }

    def _records(self, items: Iterable[CorpusItem]) -> Iterable[TheoremRecord]:
        jobs = ((item.instance_id, item.tree, self.max_exact_n) for item in items)
        if self.workers == 1:
            yield from map(_evaluate_item, jobs)
            return
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            yield from pool.map(_evaluate_item, jobs, chunksize=8)

    def run(self, spec: CorpusSpec) -> SweepReport:
        start_time = time.time()
        logger.info(f"Starting sweep {spec.as_dict()} with {self.workers} worker(s), exact cap n={self.max_exact_n}")

        report = SweepReport(spec=spec.as_dict())
        for record in self._records(corpus(spec)):
            report.add(record)

        report.wall_time = time.time() - start_time
        self.sweep_metrics['sweeps'] += 1
        self.sweep_metrics['instances'] += report.count
        self.sweep_metrics['total_time'] += report.wall_time

        logger.info(
            f"Sweep finished: {report.count} trees ({report.exact_count} exact, "
            f"{report.bounds_only_count} bounds-only), min slack6={report.min_slack6}, "
            f"{len(report.violations)} violation(s), {len(report.sharp_instances)} sharp, "
            f"{report.wall_time:.2f}s"
        )
        if report.violations:
            logger.error(f"Theorem violations: {report.violations}")
        return report


def create_sweep_runner(workers: Optional[int] = None, max_exact_n: Optional[int] = None) -> SweepRunner:
    """Factory function for SweepRunner"""
    return SweepRunner(workers=workers, max_exact_n=max_exact_n)


def sweep(spec: CorpusSpec, workers: Optional[int] = None, max_exact_n: Optional[int] = None) -> SweepReport:
    """Evaluate every tree of the corpus"""
    return create_sweep_runner(workers, max_exact_n).run(spec)


def find_sharp(spec: CorpusSpec, workers: Optional[int] = None,
               max_exact_n: Optional[int] = None) -> List[TheoremRecord]:
    """Records with slack6 = 0"""
    report = sweep(spec, workers, max_exact_n)
    return [record for record in report.records if record.sharp]


def records_to_csv(records: Iterable[TheoremRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for record in records:
        writer.writerow(record.csv_row())
    return buffer.getvalue()


def report_to_json(report: SweepReport, include_records: bool = True) -> str:
    return json.dumps(report.as_dict(include_records=include_records), indent=2)
