"""Pass/fail certificates with per-law maximal violations."""
from dataclasses import dataclass, field
from types import MappingProxyType


@dataclass(frozen=True)
class Certificate:
    """Outcome of checking a family of laws against one tolerance.

    ``violations`` maps a law name to the largest violation observed for it.
    A law passes when its violation is at most ``tol``.
    """

    tol: float
    violations: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "violations", MappingProxyType({k: float(v) for k, v in self.violations.items()})
        )

    def law_passed(self, name):
        return self.violations[name] <= self.tol

    @property
    def passed(self):
        return all(v <= self.tol for v in self.violations.values())

    @property
    def max_violation(self):
        return max(self.violations.values(), default=0.0)

    def __bool__(self):
        return self.passed

    def to_dict(self):
        return {
            "pass": self.passed,
            "tol": self.tol,
            "max_violation": self.max_violation,
            "checks": {
                name: {"max_violation": v, "pass": v <= self.tol}
                for name, v in self.violations.items()
            },
        }
