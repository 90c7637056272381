"""Evaluation harness: run solvers over a corpus and report per-problem results.

Two renderings of a report: an aligned table for reading, and a structured
line format for diffing, one row per line:

    id | solver | predicted | correct | description | method
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

import pandas as pd

from .corpus import ProblemRecord
from .dymvec import NoSolution, solve
from .errors import CorpusFormatError, SequenceError
from .modelvector import ModelVector, apply
from .numeric import Rational, parse_rational, render_decimal, render_rational
from .stable import Stable

logger = logging.getLogger(__name__)

EMV1 = ModelVector.of(-2, 5, -2, -4, 4)
EMV2 = ModelVector.of(-1, 2, 1, -5, 4)
STATIC_SOLVERS = {"emv1": EMV1, "emv2": EMV2}
SOLVERS = ("dymvec", "emv1", "emv2")

NOT_APPLICABLE = "n/a"


@dataclass(frozen=True)
class BenchRow:
    id: int
    solver: str
    predicted: Rational | None
    correct: bool
    description: str = ""
    method: str = ""


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)
    runtime: float = 0.0

    def solvers(self) -> list[str]:
        return list(dict.fromkeys(row.solver for row in self.rows))

    def correct_count(self, solver: str) -> int:
        return sum(row.correct for row in self.rows if row.solver == solver)

    def rows_for(self, solver: str) -> list[BenchRow]:
        return [row for row in self.rows if row.solver == solver]

    def row(self, solver: str, problem_id: int) -> BenchRow:
        for row in self.rows:
            if row.solver == solver and row.id == problem_id:
                return row
        raise KeyError(f"no row for problem {problem_id} under {solver}")


def _is_correct(predicted: Rational | None, record: ProblemRecord) -> bool:
    return predicted is not None and record.expected_answer is not None and predicted == record.expected_answer


def run_static(v: ModelVector, corpus: Iterable[ProblemRecord], solver: str = "static") -> BenchReport:
    """Apply one fixed model vector to every problem."""
    start = time.time()
    rows = []
    for record in sorted(corpus, key=lambda r: r.id):
        if len(record.terms) < len(v):
            rows.append(BenchRow(record.id, solver, None, False, "", NOT_APPLICABLE))
            continue
        predicted = apply(v, record.terms)
        rows.append(BenchRow(record.id, solver, predicted, _is_correct(predicted, record), "", "static"))
    return BenchReport(rows, time.time() - start)


def _dymvec_row(record: ProblemRecord, stable: Stable, max_length: int | None) -> BenchRow:
    try:
        solution = solve(record.terms, stable, max_length)
    except SequenceError as e:
        logger.warning(f"problem {record.id} failed: {e}")
        return BenchRow(record.id, "dymvec", None, False, "", "error")
    if isinstance(solution, NoSolution):
        return BenchRow(record.id, "dymvec", None, False, "", "none")
    description = "{" + ", ".join(solution.description) + "}"
    return BenchRow(
        record.id,
        "dymvec",
        solution.prediction,
        _is_correct(solution.prediction, record),
        description,
        solution.method.value,
    )


def run_dymvec(
    stable: Stable,
    corpus: Iterable[ProblemRecord],
    workers: int = 1,
    max_length: int | None = None,
) -> BenchReport:
    """Solve every problem; rows come back ordered by id however they were scheduled."""
    records = sorted(corpus, key=lambda r: r.id)
    start = time.time()
    logger.info(f"Running DyMVeC over {len(records)} problems with {workers} worker(s)...")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda r: _dymvec_row(r, stable, max_length), records))
    else:
        rows = [_dymvec_row(r, stable, max_length) for r in records]
    rows.sort(key=lambda row: row.id)
    report = BenchReport(rows, time.time() - start)
    logger.info(f"DyMVeC solved {report.correct_count('dymvec')}/{len(rows)} in {report.runtime:.2f}s")
    return report


def run_bench(
    stable: Stable,
    corpus: Iterable[ProblemRecord],
    solver: str = "all",
    workers: int = 1,
    max_length: int | None = None,
) -> BenchReport:
    corpus = list(corpus)
    if solver != "all" and solver not in SOLVERS:
        raise ValueError(f"unknown solver {solver!r}; expected one of {', '.join(SOLVERS)} or all")
    names = SOLVERS if solver == "all" else (solver,)

    start = time.time()
    rows: list[BenchRow] = []
    for name in names:
        if name == "dymvec":
            rows += run_dymvec(stable, corpus, workers, max_length).rows
        else:
            rows += run_static(STATIC_SOLVERS[name], corpus, name).rows
    return BenchReport(rows, time.time() - start)


def golden_mismatches(report: BenchReport, corpus: Iterable[ProblemRecord], solver: str) -> list[int]:
    """Problems where a static solver's computed correctness differs from the published flag."""
    attribute = {"emv1": "emv1_correct", "emv2": "emv2_correct"}.get(solver)
    if attribute is None:
        raise ValueError(f"no published flags for solver {solver!r}")
    flags = {record.id: getattr(record, attribute) for record in corpus}
    return [
        row.id for row in report.rows_for(solver)
        if flags.get(row.id) is not None and flags[row.id] != row.correct
    ]


# --- rendering ---

def report_frame(report: BenchReport) -> pd.DataFrame:
    return pd.DataFrame({
        "id": [row.id for row in report.rows],
        "solver": [row.solver for row in report.rows],
        "predicted": ["-" if row.predicted is None else render_decimal(row.predicted) for row in report.rows],
        "correct": ["Y" if row.correct else "N" for row in report.rows],
        "description": [row.description for row in report.rows],
        "method": [row.method for row in report.rows],
    })


def render_table(report: BenchReport) -> str:
    frame = report_frame(report)
    if frame.empty:
        return "(no rows)\n"
    lines = [frame.to_string(index=False), ""]
    for solver in report.solvers():
        total = len(report.rows_for(solver))
        lines.append(f"{solver}: {report.correct_count(solver)}/{total} correct")
    return "\n".join(lines) + "\n"


def render_structured(report: BenchReport) -> str:
    lines = []
    for row in report.rows:
        predicted = "-" if row.predicted is None else render_rational(row.predicted)
        correct = "Y" if row.correct else "N"
        lines.append(f"{row.id} | {row.solver} | {predicted} | {correct} | {row.description} | {row.method}")
    return "".join(line + "\n" for line in lines)


def parse_structured(text: str) -> list[BenchRow]:
    rows = []
    for line_number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) != 6:
            raise CorpusFormatError(f"expected 6 fields, got {len(fields)}", line_number)
        raw_id, solver, predicted, correct, description, method = fields
        try:
            rows.append(BenchRow(
                id=int(raw_id),
                solver=solver,
                predicted=None if predicted == "-" else parse_rational(predicted),
                correct=correct == "Y",
                description=description,
                method=method,
            ))
        except ValueError as e:
            raise CorpusFormatError(str(e), line_number, raw_id) from e
    return rows
