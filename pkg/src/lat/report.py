"""Outcome records for law checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .matcore import Matrix


@dataclass
class Failure:
    label: str
    seed: int | None = None
    matrices: dict[str, Matrix] = field(default_factory=dict)

    def describe(self) -> str:
        where = f" (seed {self.seed})" if self.seed is not None else ""
        lines = [f"{self.label}{where}"]
        for name, m in self.matrices.items():
            lines.append(f"  {name} = {m!r}")
        return "\n".join(lines)


@dataclass
class LawReport:
    """One named law checked over ``trials`` instances.

    Every failure carries the seed of its trial, so it can be replayed.
    """

    name: str
    trials: int = 0
    failures: list[Failure] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else f"FAIL ({len(self.failures)})"
        return f"{status:10} {self.name:40} {self.trials:5d} trials  {self.elapsed:7.3f}s"
