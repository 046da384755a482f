"""
Append-only search cache: one JSON record per line holding a canonical code, the budget it was
computed under, the invariant fingerprint and the best known simplification.

Every record carries the sha256 of its canonical JSON payload; records failing the check are
skipped with a warning. One process writes, any number read.
"""

import hashlib
import json
import logging
from dataclasses import dataclass
from pathlib import Path

from foam_invariants.fingerprint import fingerprint
from foam_io.diagram_format import parse_diagram, serialize
from gauss_diagram.canonical import canonical_code
from gauss_diagram.classes import GaussDiagram
from gauss_diagram.search import SearchBudget, simplify

logger = logging.getLogger(__name__)


def _payload_bytes(payload: dict) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def checksum(payload: dict) -> str:
    return hashlib.sha256(_payload_bytes(payload)).hexdigest()


@dataclass(frozen=True)
class CacheRecord:
    code: str
    budget: str
    fingerprint: dict
    simplified: str

    def payload(self) -> dict:
        return {"code": self.code, "budget": self.budget, "fingerprint": self.fingerprint, "simplified": self.simplified}


class SearchCache:
    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        self._records: dict[tuple[str, str], CacheRecord] | None = None

    def _load(self) -> dict[tuple[str, str], CacheRecord]:
        if self._records is not None:
            return self._records
        self._records = {}
        if not self.path.exists():
            return self._records
        with self.path.open(encoding="utf-8", errors="replace") as f:
            for number, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    data = json.loads(line)
                    payload, stored = data["payload"], data["sha256"]
                    record = CacheRecord(**payload)
                except (json.JSONDecodeError, KeyError, TypeError):
                    logger.warning("Skipping malformed cache record at %s:%d", self.path, number)
                    continue
                if checksum(payload) != stored:
                    logger.warning("Skipping cache record with bad checksum at %s:%d", self.path, number)
                    continue
                self._records[(record.code, record.budget)] = record
        logger.debug("Loaded %d cache records from %s", len(self._records), self.path)
        return self._records

    def __len__(self) -> int:
        return len(self._load())

    def get(self, code: str, budget: str) -> CacheRecord | None:
        return self._load().get((code, budget))

    def put(self, record: CacheRecord) -> None:
        records = self._load()
        if (record.code, record.budget) in records:
            return
        payload = record.payload()
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as f:
            f.write(json.dumps({"payload": payload, "sha256": checksum(payload)}, sort_keys=True) + "\n")
        records[(record.code, record.budget)] = record


def simplify_key(budget: SearchBudget, max_steps: int | None) -> str:
    return f"simplify;{budget.key};steps={max_steps if max_steps is not None else budget.max_states}"


def cached_simplify(
    diagram: GaussDiagram,
    budget: SearchBudget = SearchBudget(),
    max_steps: int | None = None,
    cache: SearchCache | None = None,
) -> GaussDiagram:
    """`simplify` backed by the cache; a hit returns the stored simplification"""
    if cache is None:
        return simplify(diagram, budget, max_steps)
    code = str(canonical_code(diagram))
    key = simplify_key(budget, max_steps)
    record = cache.get(code, key)
    if record is not None:
        logger.info("Cache hit for %s", code)
        return parse_diagram(record.simplified)
    result = simplify(diagram, budget, max_steps)
    cache.put(CacheRecord(code, key, fingerprint(diagram).as_dict(), serialize(result)))
    return result
