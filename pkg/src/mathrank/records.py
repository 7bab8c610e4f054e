"""Raw corpus records and pre-assembly validation."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

_YEAR_MONTH_RE = re.compile(r"^(\d{4})-(\d{2})$")


class YearMonth(NamedTuple):
    """Calendar year-month; compares chronologically as a tuple."""

    year: int
    month: int

    @classmethod
    def parse(cls, text: str) -> "YearMonth":
        m = _YEAR_MONTH_RE.match(text)
        if m is None:
            raise ValueError(f"expected YYYY-MM, got {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"

    @property
    def is_valid(self) -> bool:
        return self.year >= 1 and 1 <= self.month <= 12


@dataclass(frozen=True)
class PaperRecord:
    paper_id: str
    msc_primary: str
    author_ids: frozenset[str]
    first_version_date: YearMonth

    def __post_init__(self) -> None:
        object.__setattr__(self, "author_ids", frozenset(self.author_ids))


@dataclass(frozen=True)
class TheoremRecord:
    paper_id: str
    theorem_id: str

    @property
    def key(self) -> tuple[str, str]:
        return (self.paper_id, self.theorem_id)


@dataclass(frozen=True)
class TheoremCitation:
    """The proof of (src_paper, src_theorem) cites (dst_paper, dst_theorem)."""

    src_paper: str
    src_theorem: str
    dst_paper: str
    dst_theorem: str

    @property
    def src_key(self) -> tuple[str, str]:
        return (self.src_paper, self.src_theorem)

    @property
    def dst_key(self) -> tuple[str, str]:
        return (self.dst_paper, self.dst_theorem)


@dataclass(frozen=True)
class PaperCitation:
    """Paper ``src`` cites paper ``dst``."""

    src: str
    dst: str


@dataclass(frozen=True)
class GraphRecords:
    """Everything read from a corpus, before graph assembly."""

    papers: tuple[PaperRecord, ...] = ()
    theorems: tuple[TheoremRecord, ...] = ()
    theorem_citations: tuple[TheoremCitation, ...] = ()
    paper_citations: tuple[PaperCitation, ...] = ()

    def __post_init__(self) -> None:
        for name in ("papers", "theorems", "theorem_citations", "paper_citations"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def is_empty(self) -> bool:
        return not (self.papers or self.theorems
                    or self.theorem_citations or self.paper_citations)


# Issue kinds that only invalidate single citation edges; the builder drops
# those edges instead of refusing to assemble the graph.
EDGE_ISSUE_KINDS = frozenset(
    {"dangling_theorem_citation", "dangling_paper_citation", "self_citation"}
)


@dataclass(frozen=True)
class ValidationIssue:
    kind: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "issues", tuple(self.issues))

    @property
    def is_clean(self) -> bool:
        return not self.issues

    @property
    def fatal_issues(self) -> tuple[ValidationIssue, ...]:
        return tuple(i for i in self.issues if i.kind not in EDGE_ISSUE_KINDS)

    @property
    def edge_issues(self) -> tuple[ValidationIssue, ...]:
        return tuple(i for i in self.issues if i.kind in EDGE_ISSUE_KINDS)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for issue in self.issues:
            out[issue.kind] = out.get(issue.kind, 0) + 1
        return out


def validate_records(records: GraphRecords) -> ValidationReport:
    """Check records for duplicates, malformed fields, and dangling references.

    Always returns a report; an empty corpus is clean. Graph assembly requires
    a report with no fatal issues (edge-level issues are dropped with a
    warning during the build).
    """
    issues: list[ValidationIssue] = []

    seen_papers: set[str] = set()
    for p in records.papers:
        if p.paper_id in seen_papers:
            issues.append(ValidationIssue("duplicate_paper", p.paper_id))
        seen_papers.add(p.paper_id)
        if len(p.msc_primary) != 2 or not (p.msc_primary.isascii() and p.msc_primary.isalnum()):
            issues.append(ValidationIssue(
                "malformed_paper", f"{p.paper_id}: bad subject code {p.msc_primary!r}"))
        if not p.first_version_date.is_valid:
            issues.append(ValidationIssue(
                "malformed_paper", f"{p.paper_id}: bad date {p.first_version_date}"))

    seen_theorems: set[tuple[str, str]] = set()
    for t in records.theorems:
        if t.key in seen_theorems:
            issues.append(ValidationIssue("duplicate_theorem", f"{t.paper_id}:{t.theorem_id}"))
        seen_theorems.add(t.key)
        if t.paper_id not in seen_papers:
            issues.append(ValidationIssue(
                "dangling_theorem", f"{t.paper_id}:{t.theorem_id} references unknown paper"))

    for tc in records.theorem_citations:
        if tc.src_key == tc.dst_key:
            issues.append(ValidationIssue(
                "self_citation", f"theorem {tc.src_paper}:{tc.src_theorem} cites itself"))
            continue
        for key, role in ((tc.src_key, "src"), (tc.dst_key, "dst")):
            if key not in seen_theorems:
                issues.append(ValidationIssue(
                    "dangling_theorem_citation",
                    f"{role} theorem {key[0]}:{key[1]} unknown"))

    for pc in records.paper_citations:
        if pc.src == pc.dst:
            issues.append(ValidationIssue("self_citation", f"paper {pc.src} cites itself"))
            continue
        for pid, role in ((pc.src, "src"), (pc.dst, "dst")):
            if pid not in seen_papers:
                issues.append(ValidationIssue(
                    "dangling_paper_citation", f"{role} paper {pid} unknown"))

    return ValidationReport(tuple(issues))
