"""The stable: base vectors available to the search, read from a JSON file.

    {"entries": [{"vector": "(1)", "multiplicity": 4,
                  "labels": ["constant", "linear", "quadratic", "cubic"]}, ...],
     "preference": ["(1)", "(-1)", ...],
     "primes_recognizer": true,
     "fallback_vector": null}

Entries missing from ``preference`` rank after the listed ones, in file order.
"""
import json
import logging
from dataclasses import dataclass, replace
from functools import cached_property

from .config import DEFAULT_STABLE_PATH
from .errors import SequenceError, StableConfigError
from .modelvector import ModelVector, parse_vector, render_vector
from .theory import BaseVector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Stable:
    entries: tuple[BaseVector, ...]
    preference: tuple[str, ...] = ()
    primes_recognizer: bool = True
    fallback_vector: ModelVector | None = None

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        keys = [entry.key for entry in self.entries]
        if len(set(keys)) != len(keys):
            raise StableConfigError("duplicate base vectors in stable")
        preference = tuple(render_vector(parse_vector(key)) for key in self.preference)
        unknown = [key for key in preference if key not in keys]
        if unknown:
            raise StableConfigError(f"preference names unknown base vectors: {', '.join(unknown)}")
        object.__setattr__(self, "preference", preference)

    @cached_property
    def ordered(self) -> tuple[BaseVector, ...]:
        """Entries in preference order."""
        by_key = {entry.key: entry for entry in self.entries}
        ordered = [by_key[key] for key in self.preference]
        ordered += [entry for entry in self.entries if entry.key not in self.preference]
        return tuple(ordered)

    def rank(self, base: BaseVector) -> int:
        return self.ordered.index(base)

    def with_options(self, **changes) -> "Stable":
        return replace(self, **changes)


def _parse_entry(raw: dict) -> BaseVector:
    try:
        vector = parse_vector(raw["vector"])
        multiplicity = int(raw.get("multiplicity", 1))
        labels = tuple(raw["labels"])
    except KeyError as e:
        raise StableConfigError(f"stable entry missing field {e}") from e
    except (SequenceError, ValueError, TypeError) as e:
        raise StableConfigError(f"bad stable entry {raw!r}: {e}") from e
    return BaseVector(vector, multiplicity, labels)


def parse_stable(text: str) -> Stable:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise StableConfigError(f"stable file is not valid JSON: {e}") from e
    if not isinstance(data, dict) or "entries" not in data:
        raise StableConfigError("stable file needs an 'entries' list")

    fallback = data.get("fallback_vector")
    try:
        fallback_vector = parse_vector(fallback) if fallback else None
        preference = tuple(data.get("preference", ()))
    except SequenceError as e:
        raise StableConfigError(f"bad vector in stable file: {e}") from e
    return Stable(
        entries=tuple(_parse_entry(raw) for raw in data["entries"]),
        preference=preference,
        primes_recognizer=bool(data.get("primes_recognizer", True)),
        fallback_vector=fallback_vector,
    )


def load_stable(path: str | None = None) -> Stable:
    path = path or DEFAULT_STABLE_PATH
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise StableConfigError(f"cannot read stable file {path}: {e}") from e
    stable = parse_stable(text)
    logger.debug("loaded stable with %d base vectors from %s", len(stable.entries), path)
    return stable


_default = None


def default_stable() -> Stable:
    global _default
    if _default is None:
        _default = load_stable(DEFAULT_STABLE_PATH)
    return _default


def dump_stable(stable: Stable) -> str:
    data = {
        "entries": [
            {"vector": entry.key, "multiplicity": entry.max_multiplicity, "labels": list(entry.labels)}
            for entry in stable.entries
        ],
        "preference": list(stable.preference),
        "primes_recognizer": stable.primes_recognizer,
        "fallback_vector": render_vector(stable.fallback_vector) if stable.fallback_vector else None,
    }
    return json.dumps(data, indent=2) + "\n"
