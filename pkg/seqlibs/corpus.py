"""Problem corpus: records, the line format and the shipped evaluation set.

One record per line, ``#`` starts a comment:

    id | source | t1, t2, ... | answer | explanation | emv1 | emv2

The answer may be empty (absent); the two flags are ``Y``, ``N`` or empty.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache

from .config import DEFAULT_CORPUS_PATH
from .errors import CorpusFormatError, SequenceError
from .numeric import Rational, parse_rational, render_rational
from .sequences import SequenceSegment, parse_segment, render_segment

logger = logging.getLogger(__name__)

_FLAGS = {"Y": True, "N": False, "": None}


@dataclass(frozen=True)
class ProblemRecord:
    id: int
    terms: SequenceSegment
    expected_answer: Rational | None
    source: str = ""
    expected_explanation: str | None = None
    emv1_correct: bool | None = None
    emv2_correct: bool | None = None


def _flag(value: str, line_number: int, record_id: str) -> bool | None:
    try:
        return _FLAGS[value.upper()]
    except KeyError:
        raise CorpusFormatError(f"flag must be Y, N or empty, got {value!r}", line_number, record_id)


def parse_record(line: str, line_number: int | None = None) -> ProblemRecord:
    fields = [f.strip() for f in line.split("|")]
    if not 4 <= len(fields) <= 7:
        raise CorpusFormatError(f"expected 4 to 7 fields, got {len(fields)}", line_number)
    fields += [""] * (7 - len(fields))
    raw_id, source, terms, answer, explanation, emv1, emv2 = fields

    try:
        record_id = int(raw_id)
    except ValueError:
        raise CorpusFormatError(f"record id must be an integer, got {raw_id!r}", line_number)
    try:
        segment = parse_segment(terms)
        expected = parse_rational(answer) if answer else None
    except SequenceError as e:
        raise CorpusFormatError(str(e), line_number, raw_id) from e
    if len(segment) < 2:
        raise CorpusFormatError("a problem needs at least 2 terms", line_number, raw_id)

    return ProblemRecord(
        id=record_id,
        terms=segment,
        expected_answer=expected,
        source=source,
        expected_explanation=explanation or None,
        emv1_correct=_flag(emv1, line_number, raw_id),
        emv2_correct=_flag(emv2, line_number, raw_id),
    )


def parse_corpus(text: str) -> list[ProblemRecord]:
    records = []
    seen: set[int] = set()
    for line_number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        record = parse_record(line, line_number)
        if record.id in seen:
            raise CorpusFormatError("duplicate record id", line_number, str(record.id))
        seen.add(record.id)
        records.append(record)
    return records


def load_corpus(path: str | None = None) -> list[ProblemRecord]:
    path = path or DEFAULT_CORPUS_PATH
    with open(path, encoding="utf-8") as f:
        records = parse_corpus(f.read())
    logger.debug("loaded %d problems from %s", len(records), path)
    return records


@lru_cache(maxsize=1)
def _embedded() -> tuple[ProblemRecord, ...]:
    return tuple(load_corpus(DEFAULT_CORPUS_PATH))


def default_corpus() -> list[ProblemRecord]:
    return list(_embedded())


def _render_flag(flag: bool | None) -> str:
    return "" if flag is None else ("Y" if flag else "N")


def dump_record(record: ProblemRecord) -> str:
    answer = "" if record.expected_answer is None else render_rational(record.expected_answer)
    fields = [
        str(record.id),
        record.source,
        render_segment(record.terms),
        answer,
        record.expected_explanation or "",
        _render_flag(record.emv1_correct),
        _render_flag(record.emv2_correct),
    ]
    return " | ".join(fields).rstrip()


def dump_corpus(records: list[ProblemRecord]) -> str:
    return "".join(dump_record(record) + "\n" for record in records)
