"""Random corpus generation for tests and the benchmark scaffolding."""

from __future__ import annotations

import numpy as np

from mathrank.records import (
    GraphRecords,
    PaperCitation,
    PaperRecord,
    TheoremCitation,
    TheoremRecord,
    YearMonth,
)

# A spread of subject codes hitting every field plus unlisted ones (Others).
CODE_POOL = [
    "06", "15", "20",        # Algebra
    "11", "14",              # AlgGeom
    "53", "58",              # DiffGeom
    "55", "57",              # Topology
    "42", "46",              # Analysis
    "35", "49",              # PDE
    "37",                    # DynSys
    "81", "82",              # Physics
    "60",                    # Probability
    "90",                    # Optimization
    "65",                    # NumericalAnalysis
    "62",                    # Statistics
    "00", "05", "99",        # Others
]


def make_random_records(
    rng: np.random.Generator,
    n_papers: int = 10,
    n_theorems: int = 30,
    n_paper_citations: int | None = None,
    n_theorem_citations: int | None = None,
    code_pool: list[str] | None = None,
    author_pool_size: int | None = None,
    year_range: tuple[int, int] = (1991, 2023),
) -> GraphRecords:
    """A random but internally consistent corpus (no dangling references).

    Small author pools force shared-author citations; intra-paper theorem
    citations are sampled explicitly so the same-paper weight tier appears.
    """
    codes = code_pool or CODE_POOL
    n_authors = author_pool_size or max(3, n_papers)
    authors = [f"a{i:03d}" for i in range(n_authors)]

    papers = []
    for i in range(n_papers):
        k = int(rng.integers(1, 4))
        papers.append(PaperRecord(
            paper_id=f"p{i:04d}",
            msc_primary=str(rng.choice(codes)),
            author_ids=frozenset(rng.choice(authors, size=k, replace=False)),
            first_version_date=YearMonth(
                int(rng.integers(year_range[0], year_range[1] + 1)),
                int(rng.integers(1, 13))),
        ))

    theorems = []
    owner = rng.integers(0, n_papers, size=n_theorems)
    per_paper_counter = [0] * n_papers
    for t in range(n_theorems):
        p = int(owner[t])
        per_paper_counter[p] += 1
        theorems.append(TheoremRecord(
            paper_id=papers[p].paper_id,
            theorem_id=f"lemma {per_paper_counter[p]}",
        ))

    if n_theorem_citations is None:
        n_theorem_citations = int(rng.integers(0, 2 * n_theorems + 1))
    theorem_citations = []
    if n_theorems >= 2:
        for _ in range(n_theorem_citations):
            i, j = rng.choice(n_theorems, size=2, replace=False)
            src, dst = theorems[int(i)], theorems[int(j)]
            theorem_citations.append(TheoremCitation(
                src.paper_id, src.theorem_id, dst.paper_id, dst.theorem_id))
        # Guarantee some intra-paper citations where a paper holds >= 2 theorems.
        by_paper: dict[str, list[TheoremRecord]] = {}
        for t in theorems:
            by_paper.setdefault(t.paper_id, []).append(t)
        for group in by_paper.values():
            if len(group) >= 2 and rng.random() < 0.8:
                theorem_citations.append(TheoremCitation(
                    group[0].paper_id, group[0].theorem_id,
                    group[1].paper_id, group[1].theorem_id))

    # At least one paper citation by default: a multi-field corpus with no
    # paper citations at all has a structurally zero field update under the
    # uniform start, which the solver treats as degenerate.
    if n_paper_citations is None:
        n_paper_citations = int(rng.integers(1, 3 * n_papers + 1))
    paper_citations = []
    if n_papers >= 2:
        for _ in range(n_paper_citations):
            i, j = rng.choice(n_papers, size=2, replace=False)
            paper_citations.append(PaperCitation(
                papers[int(i)].paper_id, papers[int(j)].paper_id))

    return GraphRecords(papers, theorems, theorem_citations, paper_citations)


def shuffled(records: GraphRecords, rng: np.random.Generator) -> GraphRecords:
    """Same corpus, record lists in a different order."""
    def mix(seq):
        seq = list(seq)
        rng.shuffle(seq)
        return tuple(seq)

    return GraphRecords(
        papers=mix(records.papers),
        theorems=mix(records.theorems),
        theorem_citations=mix(records.theorem_citations),
        paper_citations=mix(records.paper_citations),
    )
