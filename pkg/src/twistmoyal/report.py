"""Structured outcome of a verification check."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

__all__ = ["CheckReport", "emit"]


@dataclass
class CheckReport:
    """Result of one check.

    ``residual_zero`` says whether the probed residual vanished.  ``passed``
    is the exit-code view: it is False only when an asserted identity failed,
    so a check made of reported findings can have ``residual_zero=False`` and
    still pass.
    """

    check_id: str
    config_echo: dict
    orders: tuple[int, int]
    trials: int
    seed: int
    residual_zero: bool
    residual_text: str
    findings: list[str] = field(default_factory=list)
    elapsed_ms: float = 0.0
    passed: bool = True

    def to_dict(self) -> dict:
        return {
            "check": self.check_id,
            "config": self.config_echo,
            "orders": {"theta": self.orders[0], "omega": self.orders[1]},
            "trials": self.trials,
            "seed": self.seed,
            "residual_zero": self.residual_zero,
            "residual": self.residual_text,
            "findings": list(self.findings),
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def emit(report: CheckReport, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    status = "PASS" if report.passed else "FAIL"
    lines = [
        f"check {report.check_id}: {status}",
        f"  orders        theta<={report.orders[0]} omega<={report.orders[1]}",
        f"  trials/seed   {report.trials}/{report.seed}",
        f"  residual zero {str(report.residual_zero).lower()}",
        f"  residual      {report.residual_text}",
    ]
    if report.findings:
        lines.append("  findings:")
        lines.extend(f"    - {f}" for f in report.findings)
    lines.append(f"  elapsed       {report.elapsed_ms:.1f} ms")
    return "\n".join(lines)
