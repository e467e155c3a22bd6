"""Evaluation reports and their JSON form (schema selberg-report-v1).

Rationals are written as {"num": "...", "den": "..."} with decimal strings,
so arbitrarily large values survive any JSON reader.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exact import ClosedForm, HalfInt, UniPoly

SCHEMA = "selberg-report-v1"


def rational_to_json(x: Fraction) -> dict[str, str]:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rational_from_json(obj: dict[str, str]) -> Fraction:
    if set(obj) != {"num", "den"}:
        raise ValueError(f"not a rational: {obj!r}")
    return Fraction(int(obj["num"]), int(obj["den"]))


def closed_form_to_json(cf: ClosedForm) -> dict[str, Any]:
    return {
        "coefficient": rational_to_json(cf.coefficient),
        "sqrt_pi_power": cf.sqrt_pi_power,
        "numerator_gamma_shifts": [str(HalfInt.of(s)) for s in cf.numerator_gamma_shifts],
        "denominator_gamma": list(cf.denominator_gamma),
        "phi": [rational_to_json(c) for c in cf.phi.coefficients],
    }


def closed_form_from_json(obj: dict[str, Any]) -> ClosedForm:
    return ClosedForm(
        rational_from_json(obj["coefficient"]),
        int(obj["sqrt_pi_power"]),
        tuple(HalfInt.of(s) for s in obj["numerator_gamma_shifts"]),
        tuple(int(x) for x in obj["denominator_gamma"]),
        UniPoly(rational_from_json(c) for c in obj["phi"]),
    )


@dataclass(frozen=True)
class MethodResult:
    method: str
    value: Fraction | None
    elapsed_ms: int = 0
    closed_form: ClosedForm | None = None
    note: str | None = None  # set when the method did not run, e.g. perm for odd d


@dataclass
class EvaluationReport:
    kind: str  # "I" for I_{n,d,p}, "J" for J_{n,kappa}(f)
    n: int
    d: int
    p: int | None = None
    partition: str | None = None
    results: list[MethodResult] = field(default_factory=list)

    @property
    def values(self) -> list[tuple[str, Fraction]]:
        return [(r.method, r.value) for r in self.results if r.value is not None]

    @property
    def agreement(self) -> bool:
        return self.first_disagreement is None

    @property
    def first_disagreement(self) -> tuple[str, str] | None:
        vals = self.values
        for method, v in vals[1:]:
            if v != vals[0][1]:
                return vals[0][0], method
        return None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"schema": SCHEMA, "kind": self.kind, "n": self.n}
        out["kappa" if self.kind == "J" else "d"] = self.d
        if self.p is not None:
            out["p"] = self.p
        if self.partition is not None:
            out["partition"] = self.partition
        out["methods"] = [
            {
                "method": r.method,
                "value": None if r.value is None else rational_to_json(r.value),
                "closed_form": None if r.closed_form is None else closed_form_to_json(r.closed_form),
                "elapsed_ms": r.elapsed_ms,
                "note": r.note,
            }
            for r in self.results
        ]
        out["agreement"] = self.agreement
        dis = self.first_disagreement
        out["first_disagreement"] = None if dis is None else list(dis)
        return out

    def dumps(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_json(), indent=indent)

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "EvaluationReport":
        if obj.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {obj.get('schema')!r}")
        kind = obj["kind"]
        results = []
        for m in obj["methods"]:
            results.append(MethodResult(
                m["method"],
                None if m["value"] is None else rational_from_json(m["value"]),
                int(m["elapsed_ms"]),
                None if m["closed_form"] is None else closed_form_from_json(m["closed_form"]),
                m["note"],
            ))
        report = cls(kind, obj["n"], obj["kappa" if kind == "J" else "d"], obj.get("p"),
                     obj.get("partition"), results)
        if report.agreement != obj["agreement"]:
            raise ValueError("stored agreement flag does not match the values")
        return report

    @classmethod
    def loads(cls, text: str) -> "EvaluationReport":
        return cls.from_json(json.loads(text))

    def render(self) -> str:
        if self.kind == "I":
            head = f"I(n={self.n}, d={self.d}, p={self.p})"
        else:
            head = f"J(n={self.n}, kappa={self.d}, m_[{self.partition}])"
        lines = [head]
        width = max((len(r.method) for r in self.results), default=0)
        for r in self.results:
            shown = r.note if r.value is None else str(r.value)
            lines.append(f"  {r.method:<{width}}  {shown}  ({r.elapsed_ms} ms)")
        if len(self.values) > 1:
            dis = self.first_disagreement
            lines.append("  agreement: yes" if dis is None else f"  agreement: NO ({dis[0]} vs {dis[1]})")
        return "\n".join(lines)
