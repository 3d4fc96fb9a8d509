# src/interface/reports.py

import hashlib
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from optimization.data_interface import SolveReport

from .instance_file import Instance, serialize_instance


def instance_digest(inst: Instance) -> str:
    return hashlib.sha256(serialize_instance(inst).encode()).hexdigest()


def _rational_text(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else str(value)


@dataclass
class RunReport:
    """One solver run, ready for JSON. Rationals are kept exact as 'a/b' strings."""
    instance_digest: str
    algorithm: str
    cost: Fraction
    guarantee: Fraction
    lower_bound: Optional[Fraction]
    lower_bound_source: Optional[str]
    iterations: int
    elapsed_ms: float
    solution: List[int] = field(default_factory=list)
    stage_costs: List[Fraction] = field(default_factory=list)

    @property
    def ratio(self) -> Optional[Fraction]:
        if not self.lower_bound:
            return None
        return self.cost / self.lower_bound

    @classmethod
    def from_solve(cls, inst: Instance, report: SolveReport, optimum: Optional[Fraction] = None) -> "RunReport":
        """Use the exact optimum as lower bound when given, else the solver's own certificate."""
        if optimum is not None:
            bound, source = optimum, "oracle"
        elif report.lower_bound is not None:
            bound, source = report.lower_bound, "certificate"
        else:
            bound, source = None, None
        return cls(
            instance_digest=instance_digest(inst),
            algorithm=report.algorithm,
            cost=report.cost,
            guarantee=report.guarantee,
            lower_bound=bound,
            lower_bound_source=source,
            iterations=report.iterations,
            elapsed_ms=report.elapsed_ms,
            solution=sorted(report.solution),
            stage_costs=list(report.stage_costs),
        )

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data = asdict(self)
        for key in ("cost", "guarantee", "lower_bound"):
            data[key] = _rational_text(data[key])
        data["stage_costs"] = [str(c) for c in self.stage_costs]
        data["ratio"] = _rational_text(self.ratio)
        data["ratio_float"] = None if self.ratio is None else float(self.ratio)
        if not include_timing:
            data.pop("elapsed_ms")
        return data

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True)
