"""Suite configuration, check records and report serialization."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import asdict, dataclass, field
from typing import Any

SCHEMA_VERSION = 1
SUITES = ("kernel", "disc", "polydisc", "hankel", "carleson")
ALL_SUITES = SUITES + ("all",)
FORMATS = ("text", "json", "csv")
VERDICTS = ("pass", "fail", "inconclusive")


@dataclass(frozen=True)
class SuiteConfig:
    suite: str = "all"
    max_n: int = 10_000
    prime_count: int = 500
    max_degree: int = 15
    quad_order: int = 32
    tolerance: float = 1e-8
    seed: int = 20240917
    samples: int = 40
    format: str = "text"
    out: str | None = None

    def __post_init__(self):
        if self.suite not in ALL_SUITES:
            raise ValueError(f"unknown suite {self.suite!r}; choose from {', '.join(ALL_SUITES)}")
        for name in ("max_n", "prime_count", "max_degree", "quad_order", "samples"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be positive")
        if not 0 < self.tolerance <= 1e-2:
            raise ValueError("tolerance must lie in (0, 1e-2]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        if self.max_n < 100:
            raise ValueError("max_n must be >= 100")
        if self.prime_count > 1000:
            raise ValueError("prime_count must be <= 1000")

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("out")
        return d

    def suites(self) -> tuple[str, ...]:
        return SUITES if self.suite == "all" else (self.suite,)


@dataclass
class CheckRecord:
    id: str
    suite: str
    anchor: str
    description: str
    values: dict
    gap: float | None
    tolerance: float
    verdict: str
    exploratory: bool = False
    error: str | None = None
    wall_time: float | None = field(default=None, compare=False)

    def as_dict(self, timing: bool = False) -> dict:
        d = asdict(self)
        if not timing:
            d.pop("wall_time")
        return d


def _plain(x: Any):
    """Convert numpy scalars, complex numbers and tuples to JSON-friendly values."""
    import numpy as np

    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer, int)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [_plain(float(x.real)), _plain(float(x.imag))]
    if isinstance(x, (np.floating, float)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if x is None or isinstance(x, str):
        return x
    return str(x)


@dataclass
class VerificationReport:
    config: SuiteConfig
    checks: list[CheckRecord]
    version: str

    def counts(self) -> dict:
        c = {v: 0 for v in VERDICTS}
        for r in self.checks:
            c[r.verdict] += 1
        return c

    @property
    def failed(self) -> bool:
        return any(r.verdict == "fail" and not r.exploratory for r in self.checks)

    def to_dict(self, timing: bool = False) -> dict:
        counts = self.counts()
        return {
            "schema": SCHEMA_VERSION,
            "config": _plain(self.config.echo()),
            "checks": [_plain(r.as_dict(timing)) for r in self.checks],
            "summary": {
                "total": len(self.checks),
                **counts,
                "status": "fail" if self.failed else "pass",
                "version": self.version,
            },
        }

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"

    def to_csv(self, timing: bool = False) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        head = ["id", "suite", "anchor", "verdict", "exploratory", "gap", "tolerance", "values", "error"]
        if timing:
            head.append("wall_time")
        w.writerow(head)
        for r in self.checks:
            row = [
                r.id,
                r.suite,
                r.anchor,
                r.verdict,
                int(r.exploratory),
                "" if r.gap is None else repr(_plain(r.gap)),
                repr(r.tolerance),
                json.dumps(_plain(r.values), sort_keys=True),
                r.error or "",
            ]
            if timing:
                row.append(f"{r.wall_time:.6f}")
            w.writerow(row)
        return buf.getvalue()

    def to_text(self, timing: bool = False) -> str:
        lines = []
        width = max((len(r.id) for r in self.checks), default=10)
        for r in self.checks:
            gap = "" if r.gap is None else f"gap={_fmt(r.gap)}"
            extra = f" ({r.wall_time:.3f}s)" if timing and r.wall_time is not None else ""
            tag = " [exploratory]" if r.exploratory else ""
            lines.append(f"{r.verdict.upper():12s} {r.suite:9s} {r.id:<{width}s} {gap}{tag}{extra}")
            if r.error:
                lines.append(f"             error: {r.error}")
        c = self.counts()
        lines.append(
            f"{len(self.checks)} checks: {c['pass']} pass, {c['fail']} fail, {c['inconclusive']} inconclusive"
        )
        return "\n".join(lines) + "\n"

    def render(self, timing: bool = False) -> str:
        fmt = self.config.format
        if fmt == "json":
            return self.to_json(timing)
        if fmt == "csv":
            return self.to_csv(timing)
        return self.to_text(timing)


def _fmt(x) -> str:
    try:
        return f"{float(x):.3e}"
    except (TypeError, ValueError):
        return str(x)


def write_atomic(path: str, text: str) -> None:
    """Write through a temporary file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
