"""Verification reports shared by the identity suites and the CLI."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any


def frac_json(x: Fraction | int) -> dict[str, int]:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def frac_from_json(d: dict[str, int]) -> Fraction:
    return Fraction(d["num"], d["den"])


def _jsonable(v: Any) -> Any:
    if isinstance(v, (Fraction, int)) and not isinstance(v, bool):
        return frac_json(v) if isinstance(v, Fraction) else v
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if v is None or isinstance(v, (str, bool, float)):
        return v
    return str(v)


@dataclass
class Failure:
    key: str
    expected: Any
    actual: Any


@dataclass
class VerificationReport:
    suite: str
    instances: int = 0
    passed: int = 0
    failures: list[Failure] = field(default_factory=list)
    wall_time: float = 0.0
    config: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, key: str, expected: Any, actual: Any) -> bool:
        self.instances += 1
        if expected == actual:
            self.passed += 1
            return True
        self.failures.append(Failure(key, expected, actual))
        return False

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.instances += other.instances
        self.passed += other.passed
        self.failures.extend(other.failures)
        return self

    @contextmanager
    def timed(self):
        start = time.perf_counter()
        try:
            yield self
        finally:
            self.wall_time += time.perf_counter() - start

    def to_json(self, include_time: bool = True) -> dict[str, Any]:
        d = {
            "suite": self.suite,
            "instances": self.instances,
            "passed": self.passed,
            "ok": self.ok,
            "failures": [_jsonable(asdict(f)) for f in self.failures],
            "config": _jsonable(self.config),
        }
        if include_time:
            d["wall_time"] = round(self.wall_time, 6)
        return d

    @classmethod
    def from_json(cls, d: dict[str, Any]) -> "VerificationReport":
        def back(v):
            if isinstance(v, dict) and set(v) == {"num", "den"}:
                return frac_from_json(v)
            return v

        fails = [Failure(f["key"], back(f["expected"]), back(f["actual"])) for f in d["failures"]]
        return cls(d["suite"], d["instances"], d["passed"], fails,
                   d.get("wall_time", 0.0), d.get("config", {}))

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.suite}: {self.passed}/{self.instances} instances"

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)
