#!/usr/bin/env python3
"""Benchmark the solver's compiled (numba) kernels against the numpy fallback.

Generates one synthetic corpus, assembles the graph once, then times the
iteration under each backend on identical inputs and checks that the results
agree. Example:

    python benchmarks/bench_solver.py --papers 20000 --theorems 100000
"""

import argparse
import time

import numpy as np

from mathrank import kernels
from mathrank.build import build_graph
from mathrank.records import (
    GraphRecords,
    PaperCitation,
    PaperRecord,
    TheoremCitation,
    TheoremRecord,
    YearMonth,
)
from mathrank.solver import (
    Hyperparameters,
    compute_scores,
    init_state,
    iterate_once,
    normalize_matrices,
)

CODES = ["06", "11", "53", "55", "42", "35", "37", "81", "60", "90", "65", "62", "99"]


def synthesize(rng, n_papers, n_theorems, n_paper_cites, n_theorem_cites):
    authors = [f"a{i}" for i in range(max(4, n_papers // 2))]
    code_picks = rng.integers(0, len(CODES), size=n_papers)
    years = rng.integers(1991, 2024, size=n_papers)
    author_counts = rng.integers(1, 4, size=n_papers)
    author_picks = rng.integers(0, len(authors), size=(n_papers, 3))
    papers = [
        PaperRecord(
            paper_id=f"p{i:07d}",
            msc_primary=CODES[code_picks[i]],
            author_ids=frozenset(
                authors[k] for k in author_picks[i, :author_counts[i]]),
            first_version_date=YearMonth(int(years[i]), 6),
        )
        for i in range(n_papers)
    ]
    owner = rng.integers(0, n_papers, size=n_theorems)
    counter = np.zeros(n_papers, dtype=np.int64)
    theorems = []
    for t in range(n_theorems):
        p = int(owner[t])
        counter[p] += 1
        theorems.append(TheoremRecord(papers[p].paper_id, f"thm {counter[p]}"))

    tc_pairs = rng.integers(0, n_theorems, size=(n_theorem_cites, 2))
    theorem_citations = [
        TheoremCitation(theorems[i].paper_id, theorems[i].theorem_id,
                        theorems[j].paper_id, theorems[j].theorem_id)
        for i, j in tc_pairs if i != j
    ]
    pc_pairs = rng.integers(0, n_papers, size=(n_paper_cites, 2))
    paper_citations = [
        PaperCitation(papers[i].paper_id, papers[j].paper_id)
        for i, j in pc_pairs if i != j
    ]
    return GraphRecords(papers, theorems, theorem_citations, paper_citations)


def time_iterations(graph, norm, hp, n_iters, workers):
    state = init_state(graph)
    state = iterate_once(state, graph, norm, hp, workers=workers)  # warmup/JIT
    start = time.perf_counter()
    for _ in range(n_iters):
        state = iterate_once(state, graph, norm, hp, workers=workers)
    elapsed = time.perf_counter() - start
    return elapsed / n_iters, state


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--papers", type=int, default=20_000)
    parser.add_argument("--theorems", type=int, default=100_000)
    parser.add_argument("--paper-cites", type=int, default=80_000)
    parser.add_argument("--theorem-cites", type=int, default=250_000)
    parser.add_argument("--iters", type=int, default=50,
                        help="timed iterations per backend")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"generating corpus: {args.papers} papers, {args.theorems} theorems, "
          f"{args.paper_cites} paper cites, {args.theorem_cites} theorem cites")
    t0 = time.perf_counter()
    records = synthesize(rng, args.papers, args.theorems,
                         args.paper_cites, args.theorem_cites)
    print(f"  generated in {time.perf_counter() - t0:.1f}s")

    t0 = time.perf_counter()
    graph = build_graph(records)
    norm = normalize_matrices(graph)
    print(f"  built graph in {time.perf_counter() - t0:.1f}s "
          f"(t nnz={graph.t_matrix.nnz}, p nnz={graph.p_matrix.nnz}, "
          f"f nnz={graph.f_matrix.nnz})")

    hp = Hyperparameters()
    results = {}
    original = kernels.active_backend()
    try:
        for backend in kernels.available_backends():
            kernels.force_backend(backend)
            per_iter, state = time_iterations(graph, norm, hp, args.iters,
                                              args.workers)
            results[backend] = (per_iter, state)
            print(f"  {backend:>6}: {per_iter * 1e3:8.2f} ms/iteration "
                  f"(workers={args.workers})")

        if {"numba", "numpy"} <= results.keys():
            numpy_t, numpy_state = results["numpy"]
            numba_t, numba_state = results["numba"]
            print(f"  speedup numba vs numpy: {numpy_t / numba_t:.2f}x")
            worst = max(
                float(np.max(np.abs(a - b)))
                for a, b in zip(numpy_state.levels(), numba_state.levels()))
            print(f"  backend agreement after {args.iters} iterations: "
                  f"max |diff| = {worst:.2e}")
            assert worst < 1e-9, "backends diverged"

        kernels.force_backend(original)
        t0 = time.perf_counter()
        state, report = compute_scores(graph, hp, workers=args.workers)
        print(f"  full solve ({original}): {report.iterations} iterations, "
              f"converged={report.converged}, {time.perf_counter() - t0:.1f}s")
    finally:
        kernels.force_backend(original)


if __name__ == "__main__":
    main()
