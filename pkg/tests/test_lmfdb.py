from __future__ import annotations

import json
import threading

import pytest

from supercusp.errors import CacheMiss, FetchError, NotFound, SchemaError
from supercusp.lmfdb import CacheEntry, LmfdbClient, SCHEMA_VERSION
from supercusp.newform import fixture_to_dict, load_fixture

from conftest import fixture_path


def payload_for(label: str) -> dict:
    return json.loads(fixture_path(label).read_text())


class FakeTransport:
    """Scripted (status, body) responses keyed by substring of the URL."""

    def __init__(self, responses):
        self.responses = responses
        self.calls = []
        self.lock = threading.Lock()

    def __call__(self, url: str, timeout: float):
        with self.lock:
            self.calls.append(url)
        for key, (status, body) in self.responses.items():
            if key in url:
                return status, body
        return 404, b""


def seeded_client(tmp_path, label="20.3.f.a", transport=None) -> LmfdbClient:
    client = LmfdbClient(cache_dir=tmp_path, transport=transport or FakeTransport({}), backoff=0.0, min_interval=0.0)
    entry = CacheEntry(label, 0.0, SCHEMA_VERSION, payload_for(label))
    client.cache_write(entry)
    return client


def test_cache_hit_avoids_network(tmp_path):
    transport = FakeTransport({})
    client = seeded_client(tmp_path, transport=transport)
    form = client.fetch_newform("20.3.f.a")
    assert form.level == 20 and not transport.calls


def test_offline_mode_with_cache(tmp_path):
    client = seeded_client(tmp_path)
    client.offline = True
    form = client.fetch_newform("20.3.f.a")
    assert form.coefficient(17) is not None
    coeffs = client.fetch_coefficients("20.3.f.a", 20)
    assert 17 in coeffs
    with pytest.raises(FetchError):
        client.fetch_newform("36.5.c.a")


def test_fetch_from_scripted_row(tmp_path):
    row = {
        "label": "20.3.f.a",
        "level": 20,
        "weight": 3,
        "char_conrey": 13,
        "dim": 2,
        "field_poly": [1, 0, 1],
        "an_normalized": payload_for("20.3.f.a")["an"],
        "coeff_bound": 200,
        "inner_twists_normalized": payload_for("20.3.f.a")["inner_twists"],
        "F_normalized": {"degree": 1, "disc": 0},
        "is_cm": False,
        "is_p_minimal": {"2": True},
    }
    transport = FakeTransport({"mf_newforms": (200, json.dumps({"data": [row]}).encode())})
    client = LmfdbClient(cache_dir=tmp_path, transport=transport, backoff=0.0, min_interval=0.0)
    form = client.fetch_newform("20.3.f.a")
    assert form.level == 20 and form.hecke_disc == -1
    assert len(transport.calls) == 1
    # second call is served from cache with no further network traffic
    client.fetch_newform("20.3.f.a")
    assert len(transport.calls) == 1


def test_not_found_and_schema_errors(tmp_path):
    transport = FakeTransport({"mf_newforms": (200, json.dumps({"data": []}).encode())})
    client = LmfdbClient(cache_dir=tmp_path, transport=transport, backoff=0.0, min_interval=0.0)
    with pytest.raises(NotFound):
        client.fetch_newform("xyz")
    bad = FakeTransport({"mf_newforms": (200, b"not json")})
    client2 = LmfdbClient(cache_dir=tmp_path / "b", transport=bad, backoff=0.0, min_interval=0.0)
    with pytest.raises(SchemaError):
        client2.fetch_newform("20.3.f.a")
    flaky = FakeTransport({"mf_newforms": (500, b"")})
    client3 = LmfdbClient(cache_dir=tmp_path / "c", transport=flaky, backoff=0.0, min_interval=0.0, max_retries=2)
    with pytest.raises(FetchError):
        client3.fetch_newform("20.3.f.a")
    assert len(flaky.calls) == 2  # retried


def test_export_fixture_round_trips(tmp_path):
    client = seeded_client(tmp_path)
    out = tmp_path / "out.json"
    client.export_fixture("20.3.f.a", out)
    form = load_fixture(out)
    assert fixture_to_dict(form) == fixture_to_dict(load_fixture(fixture_path("20.3.f.a")))
    with pytest.raises(CacheMiss):
        client.export_fixture("nope", tmp_path / "x.json")
    # overwrite is an atomic replace
    client.export_fixture("20.3.f.a", out)
    assert load_fixture(out) == form


def test_cache_write_validates_payload(tmp_path):
    client = LmfdbClient(cache_dir=tmp_path, transport=FakeTransport({}), backoff=0.0, min_interval=0.0)
    good = payload_for("36.5.c.a")
    with pytest.raises(SchemaError):
        client.cache_write(CacheEntry("wrong-label", 0.0, SCHEMA_VERSION, good))
    bad = dict(good)
    bad["an"] = []
    with pytest.raises(Exception):
        client.cache_write(CacheEntry("36.5.c.a", 0.0, SCHEMA_VERSION, bad))
    # nothing half-written appears in the cache directory
    assert list(tmp_path.glob("*.json")) == []


def test_single_flight_lock_reused(tmp_path):
    client = seeded_client(tmp_path)
    assert client._lock_for("x") is client._lock_for("x")


def test_fetch_coefficients_merges_upstream_rows(tmp_path):
    label = "20.3.f.a"
    payload = payload_for(label)
    small = dict(payload)
    small["an"] = [e for e in payload["an"] if e["n"] <= 10]
    small["coeff_bound"] = 10
    an_row = {"an": payload["an"]}
    transport = FakeTransport({"mf_hecke_nf": (200, json.dumps({"data": [an_row]}).encode())})
    client = LmfdbClient(cache_dir=tmp_path, transport=transport, backoff=0.0, min_interval=0.0)
    client.cache_write(CacheEntry(label, 0.0, SCHEMA_VERSION, small))
    assert 17 not in client.fetch_coefficients(label, 10)
    coeffs = client.fetch_coefficients(label, 20)
    assert 17 in coeffs and len(transport.calls) == 1
    # the refreshed bound is persisted
    assert client.cache_read(label).payload["coeff_bound"] == 20
    # later requests inside the bound stay offline
    client.offline = True
    assert 17 in client.fetch_coefficients(label, 18)
