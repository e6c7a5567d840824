"""Pydantic report models returned by validators, checkers and table builders."""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field


class Violation(BaseModel):
    """One violated axiom with the basis indices that witness it."""

    axiom: str
    witness: List[int] = Field(default_factory=list)
    detail: str = ""


class ValidationReport(BaseModel):
    subject: str
    violations: List[Violation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom: str, witness: List[int], detail: str = "") -> None:
        self.violations.append(Violation(axiom=axiom, witness=list(witness), detail=detail))

    def merge(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)

    def summary(self) -> str:
        if self.ok:
            return f"✅ {self.subject}: valid"
        lines = [f"❌ {self.subject}: {len(self.violations)} violation(s)"]
        for v in self.violations:
            lines.append(f"   • {v.axiom} at {tuple(v.witness)} {v.detail}".rstrip())
        return "\n".join(lines)


class CheckRow(BaseModel):
    degree: Optional[int] = None
    values: Dict[str, Any] = Field(default_factory=dict)
    ok: bool = True


class CheckReport(BaseModel):
    """Outcome of one theorem or property check."""

    name: str
    status: Literal["PASS", "FAIL", "SKIP"] = "PASS"
    rows: List[CheckRow] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status != "FAIL"

    def add_row(self, degree: Optional[int], ok: bool, **values: Any) -> None:
        self.rows.append(CheckRow(degree=degree, values=values, ok=ok))
        if not ok:
            self.status = "FAIL"

    def skip(self, note: str) -> "CheckReport":
        self.status = "SKIP"
        self.notes.append(note)
        return self
