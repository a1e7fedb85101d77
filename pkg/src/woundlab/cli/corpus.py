"""Bundled example corpus and the verify-paper runner.

The corpus is a sequence of blank-line separated blocks of ``key: value``
lines.  Recognized keys::

    name      unique entry name
    source    where the expected values come from
    field     field flag passed to the command (optional)
    command   a CLI command line, run in-process with JSON output
    check     a property check: ``<check-name> key=value ...``
    expect.X  expected value at dotted path X of the JSON result

Expected values are read as JSON literals when possible, else as strings.
"""

from __future__ import annotations

import json
import shlex
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .checks import run_check

__all__ = ["CorpusEntry", "EntryResult", "RunReport", "CorpusError", "load_corpus", "parse_corpus",
           "default_corpus_text", "run_corpus"]

_KEYS = {"name", "source", "field", "command", "check"}


class CorpusError(ValueError):
    pass


@dataclass
class CorpusEntry:
    name: str
    source: str
    expected: dict[str, Any]
    command: str | None = None
    check: str | None = None
    field: str | None = None
    line: int = 0


@dataclass
class EntryResult:
    name: str
    passed: bool
    expected: dict[str, Any]
    computed: dict[str, Any]
    source: str
    elapsed_ms: int = 0
    error: str | None = None

    def as_dict(self, timing: bool = False) -> dict:
        d = {"name": self.name, "passed": self.passed, "expected": self.expected,
             "computed": self.computed, "source": self.source}
        if self.error:
            d["error"] = self.error
        if timing:
            d["elapsed_ms"] = self.elapsed_ms
        return d


@dataclass
class RunReport:
    results: list[EntryResult] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.results)

    @property
    def failures(self) -> list[EntryResult]:
        return [r for r in self.results if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self, timing: bool = False) -> dict:
        return {
            "entries": [r.as_dict(timing) for r in self.results],
            "total": self.total,
            "passed": self.total - len(self.failures),
            "failed": len(self.failures),
        }

    def to_text(self, timing: bool = False) -> str:
        lines = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            extra = f"  ({r.elapsed_ms} ms)" if timing else ""
            lines.append(f"{status}  {r.name}{extra}")
            if not r.passed:
                for key, want in r.expected.items():
                    got = r.computed.get(key)
                    if got != want:
                        lines.append(f"      {key}: expected {json.dumps(want)}, got {json.dumps(got)}")
                if r.error:
                    lines.append(f"      error: {r.error}")
        lines.append(f"{self.total - len(self.failures)}/{self.total} entries passed")
        return "\n".join(lines)


def _literal(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_corpus(text: str) -> list[CorpusEntry]:
    entries: list[CorpusEntry] = []
    block: dict[str, Any] = {}
    expected: dict[str, Any] = {}
    start = 0

    def flush():
        nonlocal block, expected
        if not block and not expected:
            return
        if "name" not in block:
            raise CorpusError(f"entry at line {start} has no name")
        if ("command" in block) == ("check" in block):
            raise CorpusError(f"entry {block['name']!r} needs exactly one of command, check")
        if not expected:
            raise CorpusError(f"entry {block['name']!r} has no expected values")
        entries.append(CorpusEntry(block["name"], block.get("source", ""), expected,
                                   block.get("command"), block.get("check"), block.get("field"), start))
        block, expected = {}, {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            flush()
            continue
        if not block and not expected:
            start = lineno
        if ":" not in line:
            raise CorpusError(f"line {lineno}: expected 'key: value'")
        key, value = (s.strip() for s in line.split(":", 1))
        if key.startswith("expect."):
            expected[key[len("expect."):]] = _literal(value)
        elif key in _KEYS:
            if key in block:
                raise CorpusError(f"line {lineno}: duplicate key {key!r}")
            block[key] = value
        else:
            raise CorpusError(f"line {lineno}: unknown key {key!r}")
    flush()
    names = [e.name for e in entries]
    if len(names) != len(set(names)):
        raise CorpusError("duplicate entry names")
    return entries


def default_corpus_text() -> str:
    return resources.files("woundlab.cli").joinpath("data/reference_corpus.txt").read_text(encoding="utf-8")


def load_corpus(path: str | Path | None = None) -> list[CorpusEntry]:
    text = default_corpus_text() if path is None else Path(path).read_text(encoding="utf-8")
    return parse_corpus(text)


def _lookup(payload: Any, path: str) -> Any:
    cur = payload
    for part in path.split("."):
        if isinstance(cur, dict) and part in cur:
            cur = cur[part]
        elif isinstance(cur, list) and part.isdigit() and int(part) < len(cur):
            cur = cur[int(part)]
        else:
            return None
    return cur


def _run_entry(entry: CorpusEntry) -> EntryResult:
    from .main import run

    t0 = time.perf_counter()
    error = None
    payload: Any = {}
    try:
        if entry.command is not None:
            argv = ["--json"]
            if entry.field:
                argv += ["--field", entry.field]
            argv += shlex.split(entry.command)
            code, payload, _ = run(argv)
            if code != 0:
                error = f"exit code {code}: {payload.get('error', '') if isinstance(payload, dict) else ''}"
        else:
            name, *args = shlex.split(entry.check)
            kwargs = {}
            for a in args:
                k, _, v = a.partition("=")
                kwargs[k] = _literal(v)
            payload = run_check(name, **kwargs)
    except Exception as exc:      # a crashing entry is a failed entry, not a crashed run
        error = f"{type(exc).__name__}: {exc}"
    computed = {key: _lookup(payload, key) for key in entry.expected}
    passed = error is None and all(computed[k] == v for k, v in entry.expected.items())
    elapsed = int((time.perf_counter() - t0) * 1000)
    return EntryResult(entry.name, passed, dict(entry.expected), computed, entry.source, elapsed, error)


def run_corpus(entries: list[CorpusEntry]) -> RunReport:
    results = [_run_entry(e) for e in sorted(entries, key=lambda e: e.name)]
    return RunReport(results)
