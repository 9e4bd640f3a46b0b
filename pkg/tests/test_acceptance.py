"""Acceptance suite: one test per criterion, each reported as a PASS/FAIL line."""
import time

import pytest

from cwcolour.annotate import annotate
from cwcolour.extract import extract_colouring, verify_colouring
from cwcolour.labels import mask_of
from cwcolour.oracle import (
    GenParams,
    brute_force_annotations,
    brute_force_chromatic,
    brute_force_colourable,
    clique_term,
    enumerate_descriptions,
    is_overapproximation,
    path_term,
    random_term,
)
from cwcolour.scheme import parse_scheme, relabel
from cwcolour.solver import chromatic_number, entry_bound, scheme_count_bound, solve, step_union
from cwcolour.term import Vertex, evaluate_graph, parse_term

from conftest import ANNOTATION_TERM, EDGE, FIVE_VERTEX_TERM, TRIANGLE

S = parse_scheme
SEED_FAMILIES = (10_000, 20_000, 30_000)
TERMS_PER_FAMILY = 170
COLOURS = (1, 2, 3, 4, 5)


def _params(seed):
    # spread n over 1..8, k over 1..4 and vary the densities
    return GenParams(
        seed=seed,
        n=1 + seed % 8,
        k=1 + (seed // 8) % 4,
        add_density=(0.3, 0.5, 0.7)[seed % 3],
        relab_density=(0.2, 0.4)[seed % 2],
    )


@pytest.fixture(scope="module")
def corpus():
    """Every term of the differential corpus solved at every c in 1..5."""
    start = time.perf_counter()
    rows = []
    for family in SEED_FAMILIES:
        for j in range(TERMS_PER_FAMILY):
            t = random_term(_params(family + j))
            g = evaluate_graph(t)
            for c in COLOURS:
                full = solve(t, c, witnesses=True, short_circuit=False)
                quick = solve(t, c)
                rows.append((t, g, c, full, quick, brute_force_colourable(g, c)))
    return rows, time.perf_counter() - start


def test_c01_worked_union_example():
    args = (
        frozenset({S("{2:{1},{}}")}),  # a = 1, b = 2
        frozenset({S("{{2},2:{}}")}),
        mask_of([1]),
        mask_of([2]),
        [mask_of([1, 2])],
        mask_of([2]),
    )
    assert step_union(*args) == {S("{2:{},{2}}")}
    best = min(_timed(step_union, *args) for _ in range(50))
    assert best < 1e-3


def _timed(f, *args):
    start = time.perf_counter()
    f(*args)
    return time.perf_counter() - start


def test_c02_annotation_example():
    t = parse_term(ANNOTATION_TERM)
    ann = annotate(t)
    used, boundary, pending = ann.at((0, 0, 0, 0))  # 1(x) + 2(y)
    assert pending == {(1, 2)} and boundary == mask_of([1]) and used == mask_of([1, 2])
    for i, pos in enumerate(t.pos):
        node = t.node_at(pos)
        if isinstance(node, Vertex):
            assert ann.boundary[i] == mask_of([node.label]) and ann.pending[i] == frozenset()
    used, boundary, _ = ann.at(())
    assert boundary == 0 and used == mask_of([2, 3])


def test_c03_relabel_example():
    assert relabel(S("{{1},{2}}"), 1, 2) == S("{2:{2}}")


def test_c04_differential_verdicts(corpus):
    rows, elapsed = corpus
    assert len(rows) // len(COLOURS) >= 500
    mismatches = [
        (t.to_text(), c) for t, _, c, full, quick, truth in rows
        if full.colourable != truth or quick.colourable != truth
    ]
    assert mismatches == []
    assert elapsed < 300


def test_c05_completeness():
    checked = violations = 0
    seed = 40_000
    while checked < 100:
        t = random_term(GenParams(seed=seed, n=2 + seed % 6, k=1 + seed % 4))
        seed += 1
        chi = brute_force_chromatic(evaluate_graph(t))
        for c in (chi, chi + 1):
            r = solve(t, c, keep_sets=True, short_circuit=False)
            for i, pos in enumerate(t.pos):
                violations += len(enumerate_descriptions(t, pos, c, True) - r.sets[i])
            checked += 1
    assert violations == 0


def test_c06_soundness():
    checked = violations = 0
    seed = 50_000
    while checked < 100:
        t = random_term(GenParams(seed=seed, n=2 + seed % 5, k=1 + seed % 4))
        seed += 1
        for c in (1, 2, 3):
            r = solve(t, c, keep_sets=True, short_circuit=False)
            for i, pos in enumerate(t.pos):
                exact = enumerate_descriptions(t, pos, c, False)
                for s in r.sets[i]:
                    if not any(is_overapproximation(s, d) for d in exact):
                        violations += 1
            checked += 1
    assert violations == 0


def test_c07_bounds(corpus):
    rows, _ = corpus
    violations = 0
    for t, _, c, full, _, _ in rows:
        boundary = full.annotations.boundary
        for i in range(len(t.nodes)):
            k = bin(boundary[i]).count("1")
            if len(full.sets[i]) > scheme_count_bound(c, k):
                violations += 1
            violations += sum(len(s) > entry_bound(c, k) for s in full.sets[i])
    assert violations == 0


def test_c08_annotation_oracle():
    mismatches = 0
    for seed in range(60_000, 60_200):
        t = random_term(GenParams(seed=seed, n=1 + seed % 8, k=1 + seed % 4, relab_density=0.4))
        ann = annotate(t)
        for i, pos in enumerate(t.pos):
            if (ann.used[i], ann.boundary[i], ann.pending[i]) != brute_force_annotations(t, pos):
                mismatches += 1
    assert mismatches == 0


def test_c09_extraction(corpus):
    rows, _ = corpus
    failures = 0
    colourable = 0
    for t, g, c, full, _, truth in rows:
        if truth:
            colourable += 1
            col = extract_colouring(t, c, full)
            failures += col is None or not verify_colouring(g, col, c)
    assert colourable > 0 and failures == 0


def test_c10_monotonicity_and_known_values(corpus):
    rows, _ = corpus
    verdicts: dict = {}
    for t, _, c, full, _, _ in rows:
        verdicts.setdefault(t.to_text(), {})[c] = full.colourable
    for per_c in verdicts.values():
        assert all(per_c[c] <= per_c[c + 1] for c in COLOURS[:-1])
    known = [
        ("(v 1 x)", 1),
        (EDGE, 2),
        (path_term(4), 2),
        (TRIANGLE, 3),
        (FIVE_VERTEX_TERM, 3),
        (clique_term(4), 4),
    ]
    for term, expected in known:
        t = parse_term(term) if isinstance(term, str) else term
        assert chromatic_number(t) == expected


def test_c11_scaling_path():
    t = path_term(1000)
    start = time.perf_counter()
    assert chromatic_number(t) == 2
    assert time.perf_counter() - start < 10
