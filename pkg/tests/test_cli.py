"""Command-line surface: outputs, exit statuses, cache handling."""
from __future__ import annotations

import json

import pytest

from partdigits.cli import (
    EXIT_FINDINGS,
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_USAGE,
    ENV_CACHE_DIR,
    _parse_bytes,
    run,
)


def _run(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_bytes():
    assert _parse_bytes("1024") == 1024
    assert _parse_bytes("4k") == 4096
    assert _parse_bytes("2M") == 2 * 1024**2
    assert _parse_bytes("1G") == 1024**3
    import argparse

    with pytest.raises(argparse.ArgumentTypeError):
        _parse_bytes("abc")
    with pytest.raises(argparse.ArgumentTypeError):
        _parse_bytes("0")


def test_search_json(capsys):
    code, out, err = _run(capsys, "search", "--kind", "p", "--base", "10", "--digits", "7")
    assert code == EXIT_OK and err == ""
    payload = json.loads(out)
    assert payload["n_min"] == 5
    assert payload["f"] == "7" and payload["kind"] == "p"
    assert payload["within_bound"] is True


def test_search_csv_matches_json(capsys):
    code, out_json, _ = _run(capsys, "search", "--kind", "p", "--base", "10", "--digits", "4")
    assert code == EXIT_OK
    payload = json.loads(out_json)
    code, out_csv, _ = _run(
        capsys, "search", "--kind", "p", "--base", "10", "--digits", "4", "--output", "csv"
    )
    assert code == EXIT_OK
    header, row = out_csv.splitlines()
    cells = dict(zip(header.split(","), row.split(",")))
    assert int(cells["n_min"]) == payload["n_min"]
    assert int(cells["bound"]) == payload["bound"]
    assert cells["method"] == payload["method"]


def test_search_text_output(capsys):
    code, out, _ = _run(
        capsys, "search", "--kind", "p", "--base", "10", "--digits", "7", "--output", "text"
    )
    assert code == EXIT_OK
    assert "p(5) starts with '7'" in out


def test_search_not_found_exit(capsys):
    code, out, err = _run(
        capsys, "search", "--kind", "p", "--base", "10", "--digits", "9", "--limit", "10"
    )
    assert code == EXIT_FINDINGS
    assert out == ""
    assert "not found" in err


def test_search_binary(capsys):
    code, out, _ = _run(capsys, "search", "--kind", "p", "--base", "2", "--digits", "11")
    assert code == EXIT_OK
    assert json.loads(out)["n_min"] == 3


def test_bound_json(capsys):
    code, out, _ = _run(capsys, "bound", "--kind", "p", "--base", "10", "--t", "1")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["theorem_bound"] == 5470
    conventions = payload["conventions"]
    assert set(conventions) == {"nominal_delta", "actual_delta"}
    assert conventions["actual_delta"]["f"] == "9"  # narrowest window by default
    assert conventions["actual_delta"]["bound"] == 25946
    for key in ("delta", "L1", "L2", "L3", "L4", "D", "bound"):
        assert key in conventions["nominal_delta"]


def test_bound_with_digits(capsys):
    code, out, _ = _run(
        capsys, "bound", "--kind", "p", "--base", "10", "--t", "1", "--digits", "2"
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["conventions"]["actual_delta"]["f"] == "2"
    code, _, err = _run(
        capsys, "bound", "--kind", "p", "--base", "10", "--t", "2", "--digits", "2"
    )
    assert code == EXIT_USAGE and "length" in err


def test_bound_csv_and_text(capsys):
    code, out, _ = _run(
        capsys, "bound", "--kind", "pl", "--base", "10", "--t", "1", "--output", "csv"
    )
    assert code == EXIT_OK
    lines = out.splitlines()
    assert len(lines) == 3 and lines[0].startswith("convention,")
    code, out, _ = _run(
        capsys, "bound", "--kind", "p", "--base", "10", "--t", "1", "--output", "text"
    )
    assert code == EXIT_OK and "theorem bound 5470" in out


def test_verify_json(capsys):
    code, out, _ = _run(capsys, "verify", "--kind", "p", "--base", "10", "--t", "1")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["all_within_bound"] is True
    assert payload["max_n_min"] == 60
    assert len(payload["results"]) == 9
    assert "runtime" not in out


def test_verify_text_and_csv(capsys):
    code, out, _ = _run(
        capsys, "verify", "--kind", "p", "--base", "2", "--t", "2", "--output", "text"
    )
    assert code == EXIT_OK and "all_within_bound True" in out
    code, out, _ = _run(
        capsys, "verify", "--kind", "p", "--base", "2", "--t", "2", "--output", "csv"
    )
    assert code == EXIT_OK
    assert len(out.splitlines()) == 3  # header + the two binary strings


def test_verify_resource_exit(capsys):
    code, out, err = _run(
        capsys, "verify", "--kind", "p", "--base", "10", "--t", "2",
        "--memory-budget", "1M",
    )
    assert code == EXIT_RESOURCE
    assert "resource error" in err


def test_census_json(capsys):
    code, out, _ = _run(
        capsys, "census", "--kind", "p", "--base", "10", "--t", "1", "--limit", "10"
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["counts"] == [
        {"f": "1", "count": 3},
        {"f": "2", "count": 2},
        {"f": "3", "count": 2},
        {"f": "4", "count": 1},
        {"f": "5", "count": 1},
        {"f": "7", "count": 1},
    ]
    assert payload["total"] == 10 and payload["skipped"] == 0


def test_census_csv(capsys):
    code, out, _ = _run(
        capsys, "census", "--kind", "p", "--base", "10", "--t", "1", "--limit", "10",
        "--output", "csv",
    )
    assert code == EXIT_OK
    assert out.splitlines()[0] == "f,count"
    assert len(out.splitlines()) == 7


def test_usage_errors(capsys):
    cases = [
        ("search", "--kind", "p", "--base", "1", "--digits", "1"),
        ("search", "--kind", "p", "--base", "10", "--digits", "a"),
        ("search", "--kind", "p", "--base", "10", "--digits", "07"),
        ("search", "--kind", "p", "--base", "2", "--digits", "1"),
        ("bound", "--kind", "p", "--base", "2", "--t", "1"),
        ("search", "--kind", "p", "--base", "10", "--digits", "7", "--precision", "32"),
        ("search", "--kind", "p", "--base", "10", "--digits", "7", "--limit", "-4"),
    ]
    for argv in cases:
        code, _, err = _run(capsys, *argv)
        assert code == EXIT_USAGE, argv
        assert err


def test_argparse_errors_map_to_usage(capsys):
    assert run(["search", "--kind", "p"]) == EXIT_USAGE  # missing required flags
    assert run(["no-such-command"]) == EXIT_USAGE
    capsys.readouterr()


def test_json_determinism(capsys):
    argv = ("verify", "--kind", "p", "--base", "10", "--t", "1")
    _, first, _ = _run(capsys, *argv)
    _, second, _ = _run(capsys, *argv)
    assert first == second


def test_cache_flag_round_trip(tmp_path, capsys):
    cache = tmp_path / "tables"
    argv = (
        "search", "--kind", "p", "--base", "10", "--digits", "7", "--cache", str(cache)
    )
    code, first, _ = _run(capsys, *argv)
    assert code == EXIT_OK
    stored = cache / "p.table"
    assert stored.exists()
    code, second, _ = _run(capsys, *argv)  # now served from the cache
    assert code == EXIT_OK and second == first


def test_cache_env_var_and_flag_priority(tmp_path, capsys, monkeypatch):
    env_dir = tmp_path / "envcache"
    flag_dir = tmp_path / "flagcache"
    monkeypatch.setenv(ENV_CACHE_DIR, str(env_dir))
    code, _, _ = _run(capsys, "search", "--kind", "p", "--base", "10", "--digits", "7")
    assert code == EXIT_OK
    assert (env_dir / "p.table").exists()
    code, _, _ = _run(
        capsys, "search", "--kind", "p", "--base", "10", "--digits", "7",
        "--cache", str(flag_dir),
    )
    assert code == EXIT_OK
    assert (flag_dir / "p.table").exists()


def test_cache_corruption_is_reported(tmp_path, capsys):
    cache = tmp_path / "tables"
    argv = (
        "search", "--kind", "p", "--base", "10", "--digits", "7", "--cache", str(cache)
    )
    assert _run(capsys, *argv)[0] == EXIT_OK
    stored = cache / "p.table"
    stored.write_bytes(b"JUNK" + stored.read_bytes()[4:])
    code, _, err = _run(capsys, *argv)
    assert code == EXIT_USAGE and "bad magic" in err


def test_selftest(capsys):
    code, out, _ = _run(capsys, "selftest", "--output", "text")
    assert code == EXIT_OK
    assert "all_pass True" in out
    assert out.count("PASS") == 8
