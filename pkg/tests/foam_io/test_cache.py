import json

import pytest

from foam_io.cache import CacheRecord, SearchCache, cached_simplify, checksum, simplify_key
from foam_io.diagram_format import parse_diagram
from gauss_diagram.canonical import canonical_code
from gauss_diagram.search import SearchBudget, simplify


@pytest.fixture
def kinks():
    return parse_diagram("inca v1\ncomponent P path 3\ninteract P[0] by P.0 +\ninteract P[1] by P.2 -\n")


@pytest.fixture
def cache(tmp_path) -> SearchCache:
    return SearchCache(tmp_path / "cache" / "search.jsonl")


def record(code: str = "abc") -> CacheRecord:
    return CacheRecord(code, "simplify;x", {"linking": "P1:[]"}, "inca v1\ncomponent P path 1\n")


class TestSearchCache:
    def test_missing_file_is_empty(self, cache):
        assert len(cache) == 0
        assert cache.get("abc", "simplify;x") is None

    def test_put_then_reload(self, cache):
        cache.put(record())
        reloaded = SearchCache(cache.path)
        assert reloaded.get("abc", "simplify;x") == record()

    def test_put_is_idempotent(self, cache):
        cache.put(record())
        cache.put(record())
        assert len(cache.path.read_text().splitlines()) == 1

    def test_checksum_is_order_independent(self):
        assert checksum({"a": 1, "b": [1, 2]}) == checksum({"b": [1, 2], "a": 1})

    def test_bad_records_are_skipped(self, cache, caplog):
        cache.put(record("good"))
        tampered = {"payload": dict(record("bad").payload(), simplified="inca v1\n"), "sha256": checksum(record("bad").payload())}
        with cache.path.open("a") as f:
            f.write(json.dumps(tampered) + "\n")
            f.write("{not json\n")
        reloaded = SearchCache(cache.path)
        assert len(reloaded) == 1
        assert reloaded.get("bad", "simplify;x") is None
        assert "bad checksum" in caplog.text
        assert "malformed" in caplog.text


class TestCachedSimplify:
    def test_hit_equals_miss(self, cache, kinks):
        budget = SearchBudget()
        miss = cached_simplify(kinks, budget, cache=cache)
        assert len(cache) == 1
        hit = cached_simplify(kinks, budget, cache=SearchCache(cache.path))
        assert canonical_code(hit) == canonical_code(miss) == canonical_code(simplify(kinks, budget))

    def test_budget_is_part_of_the_key(self, cache, kinks):
        cached_simplify(kinks, SearchBudget(), cache=cache)
        cached_simplify(kinks, SearchBudget(stable=True), cache=cache)
        assert len(cache) == 2
        assert simplify_key(SearchBudget(), None) != simplify_key(SearchBudget(), 3)

    def test_record_holds_the_fingerprint(self, cache, kinks):
        cached_simplify(kinks, cache=cache)
        (line,) = cache.path.read_text().splitlines()
        payload = json.loads(line)["payload"]
        assert payload["code"] == str(canonical_code(kinks))
        assert "colorings" in payload["fingerprint"]

    def test_without_a_cache(self, kinks):
        assert not cached_simplify(kinks).interactions
