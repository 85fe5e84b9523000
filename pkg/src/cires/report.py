"""Machine-readable verification outcomes."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "PASS"
FAIL = "FAIL"


@dataclass
class VerificationReport:
    check_name: str
    status: str
    instance: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (PASS, FAIL):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAIL and not self.witnesses:
            raise ValueError("a FAIL report needs at least one witness")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "status": self.status,
            "instance": self.instance,
            "witnesses": self.witnesses,
            "details": self.details,
        }


def make_report(check_name, witnesses, instance=None, details=None) -> VerificationReport:
    """PASS iff no witnesses were collected."""
    return VerificationReport(check_name, FAIL if witnesses else PASS, instance or {},
                              list(witnesses), details or {})
