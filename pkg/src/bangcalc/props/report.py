"""Suite outcomes and their text serialization."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Failure:
    term: str
    witness: str


@dataclass
class CheckReport:
    suite: str
    corpus: str = ""
    cases_run: int = 0
    failures: list[Failure] = field(default_factory=list)
    inconclusive: int = 0
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def verdict(self) -> str:
        if self.failures:
            return "FAIL"
        return "INCONCLUSIVE" if self.inconclusive else "PASS"

    def merge(self, other: CheckReport) -> CheckReport:
        if other.suite != self.suite:
            raise ValueError(f"cannot merge reports of {self.suite} and {other.suite}")
        return CheckReport(
            self.suite,
            self.corpus or other.corpus,
            self.cases_run + other.cases_run,
            self.failures + other.failures,
            self.inconclusive + other.inconclusive,
            self.wall_time + other.wall_time,
        )

    def summary(self) -> str:
        return (
            f"suite={self.suite} verdict={self.verdict} cases={self.cases_run} "
            f"failures={len(self.failures)} inconclusive={self.inconclusive} "
            f"time={self.wall_time:.2f}s corpus=[{self.corpus}]"
        )

    def to_text(self, *, timing: bool = True, max_failures: int | None = None) -> str:
        """One summary record, then one record per failure with its witness."""
        head = self.summary()
        if not timing:
            head = " ".join(p for p in head.split(" ") if not p.startswith("time="))
        lines = [head]
        shown = self.failures if max_failures is None else self.failures[:max_failures]
        for i, f in enumerate(shown):
            lines.append(f"failure {i}: {f.term}")
            lines.extend("  " + w for w in f.witness.splitlines())
        if len(shown) < len(self.failures):
            lines.append(f"... {len(self.failures) - len(shown)} more failures")
        return "\n".join(lines) + "\n"
