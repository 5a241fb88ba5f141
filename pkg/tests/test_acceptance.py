"""Acceptance criteria, run on the full default corpus.

Each test records one PASS/FAIL line (shown in the terminal summary) and
then asserts.  All criteria demand zero discrepancies; criterion 1 also
has a five minute wall-clock limit.
"""

import random
import time
from itertools import product as cartesian
from pathlib import Path

import numpy as np
import pytest

from acceptance_log import record
from fitdef.families import parse_family_spec
from fitdef.group import centralizer, normal_closure, pair_index, whole_group
from fitdef.harness.checks import _identity_sides
from fitdef.harness.corpus import DEFAULT_CORPUS_SPECS
from fitdef.logic import (
    build_phi_defining,
    build_phi_nm,
    build_psi_defining,
    check_phi_nm_lazy,
    check_Tp,
    definable_set,
    parse,
    render,
)
from fitdef.radicals import (
    bound_profile,
    engel_degrees,
    fitting,
    normal_subgroups,
    oracle_fitting,
    oracle_radical,
    soluble_radical,
)
from fitdef.series import (
    commutator_subgroup,
    commutator_subgroup_pairs,
    derived_length,
    derived_series,
    lower_central_series,
    nilpotency_class,
    word_series_term,
)

RUNTIME_LIMIT_SECONDS = 300
LEMMA1_MAX_ORDER = 48
EXHAUSTIVE_MAX_ORDER = 24
SAMPLED_MAX_ORDER = 120
LEMMA3_SAMPLES = 1000
IDENTITY_SAMPLES = 10_000
ORACLE_MAX_ORDER = 60
TP_RANGE = range(0, 6)
SEED = 0
GOLDEN = Path(__file__).parent / "data" / "golden_formulas.txt"


@pytest.fixture(scope="module")
def corpus():
    return [(spec, parse_family_spec(spec)) for spec in DEFAULT_CORPUS_SPECS]


def test_criterion_01_fitting_defined_by_phi():
    # fresh groups so that no cached radical work leaks into the timing
    start = time.perf_counter()
    bad = []
    for spec in DEFAULT_CORPUS_SPECS:
        G = parse_family_spec(spec)
        F = fitting(G).subgroup
        c = nilpotency_class(G, F)
        if definable_set(G, build_phi_defining(max(1, c))) != F.members:
            bad.append(spec)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < RUNTIME_LIMIT_SECONDS
    record(1, "Fitting subgroup = set defined by phi_c", ok, f"{len(bad)} discrepancies, {elapsed:.1f}s")
    assert not bad
    assert elapsed < RUNTIME_LIMIT_SECONDS


def test_criterion_02_radical_defined_by_psi(corpus):
    bad = []
    for spec, G in corpus:
        R = soluble_radical(G).subgroup
        d = derived_length(G, R)
        if definable_set(G, build_psi_defining(max(1, d))) != R.members:
            bad.append(spec)
    record(2, "soluble radical = set defined by psi_d", not bad, f"{len(bad)} discrepancies")
    assert not bad


def test_criterion_03_generator_commutators(corpus):
    bad, pairs = [], 0
    for spec, G in corpus:
        if G.order > LEMMA1_MAX_ORDER:
            continue
        normals = normal_subgroups(G)
        for H in normals:
            for K in normals:
                pairs += 1
                if commutator_subgroup(G, H, K) != commutator_subgroup_pairs(G, H, K):
                    bad.append((spec, H.order, K.order))
    record(3, "[H,K] from class generators = all-pairs closure", not bad, f"{pairs} pairs, {len(bad)} discrepancies")
    assert not bad


def test_criterion_04_word_series(corpus):
    bad, closures = [], 0
    for spec, G in corpus:
        seen = set()
        for g in G.elements:
            N = normal_closure(G, [g])
            if N.members in seen:
                continue
            seen.add(N.members)
            closures += 1
            for series in (lower_central_series, derived_series):
                report = series(G, N, cross_check=False)
                words = [word_series_term(G, N, k, report.kind) for k in range(1, len(report.terms))]
                if words != report.terms[1:]:
                    bad.append((spec, g, report.kind))
    record(4, "word-generated series terms = direct terms", not bad, f"{closures} closures, {len(bad)} discrepancies")
    assert not bad


def _phi_nm_tuples(G, m):
    if G.order <= EXHAUSTIVE_MAX_ORDER:
        return list(cartesian(G.elements, repeat=m))
    rng = random.Random(f"{SEED}:{G.order}:{m}")
    return [tuple(rng.randrange(G.order) for _ in range(m)) for _ in range(LEMMA3_SAMPLES)]


def test_criterion_05_phi_nm_biconditional(corpus):
    bad, checked = [], 0
    for spec, G in corpus:
        if G.order > SAMPLED_MAX_ORDER:
            continue
        classes = {}
        for n, m in cartesian((1, 2, 3), (1, 2)):
            for b in _phi_nm_tuples(G, m):
                key = frozenset(b)
                if key not in classes:
                    classes[key] = nilpotency_class(G, normal_closure(G, sorted(key)))
                c = classes[key]
                expected = c is not None and c <= n
                checked += 1
                if check_phi_nm_lazy(G, n, m, b).truth != expected:
                    bad.append((spec, n, m, b))
    record(5, "phi_nm(b) <=> class of normal closure <= n", not bad, f"{checked} tuples, {len(bad)} discrepancies")
    assert not bad


def test_criterion_06_truncated_Tp(corpus):
    bad = []
    for spec, G in corpus:
        c = nilpotency_class(G, fitting(G).subgroup)
        for p in TP_RANGE:
            if check_Tp(G, p).truth != (c <= p):
                bad.append((spec, p))
    record(6, "truncated T_p holds <=> class(F) <= p", not bad, f"{len(bad)} discrepancies")
    assert not bad


def test_criterion_07_bound_profile(corpus):
    bad = []
    s4 = None
    for spec, G in corpus:
        profile = bound_profile(G, 3, seed=SEED)
        c = nilpotency_class(G, fitting(G).subgroup)
        if not profile.is_nondecreasing or max(profile.d_of_m) > c:
            bad.append(spec)
        if spec == "symmetric:4":
            s4 = profile.d_of_m
    ok = not bad and s4 == [1, 1, 1]
    record(7, "d(m) nondecreasing, d(m) <= class(F), S4 gives d = 1", ok, f"S4 d = {s4}, {len(bad)} discrepancies")
    assert not bad
    assert s4 == [1, 1, 1]


def test_criterion_08_engel(corpus):
    bad = []
    for spec, G in corpus:
        deg = engel_degrees(G, 3)
        closure_classes = {}
        for g in G.elements:
            closure_classes[g] = nilpotency_class(G, normal_closure(G, [g]))
        for n in (2, 3):
            engel = bool(np.all((deg > 0) & (deg <= n)))
            closures = all(c is not None and c <= n - 1 for c in closure_classes.values())
            if engel != closures:
                bad.append((spec, n))
    record(8, "2-Engel <=> closures abelian, 3-Engel <=> closures class <= 2", not bad, f"{len(bad)} discrepancies")
    assert not bad


def test_criterion_09_commutator_identities(corpus):
    failures, triples = [], 0
    for spec, G in corpus:
        n = G.order
        if n <= EXHAUSTIVE_MAX_ORDER:
            x, y, z = (a.ravel() for a in np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij"))
        else:
            x, y, z = np.random.default_rng(SEED).integers(0, n, size=(3, IDENTITY_SAMPLES))
        triples += len(x)
        for name, lhs, rhs in _identity_sides(G, x, y, z):
            if np.any(lhs != rhs):
                failures.append((spec, name))
    record(9, "five commutator identities", not failures, f"{triples} triples, {len(failures)} failures")
    assert not failures


def test_criterion_10_product_example():
    N, S = parse_family_spec("quaternion8"), parse_family_spec("alternating:5")
    K = parse_family_spec("product(quaternion8,alternating:5)")
    factor = {pair_index(S, q, S.identity) for q in N.elements}
    F, R = fitting(K), soluble_radical(K)
    problems = []
    if F.method != "elementwise" or F.subgroup.members != factor:
        problems.append("fitting")
    if R.subgroup.members != factor:
        problems.append("radical")
    literal_claim = []
    for s in S.elements:
        if s == S.identity:
            continue
        C = centralizer(K, pair_index(S, N.identity, s))
        expected = {pair_index(S, q, c) for q in N.elements for c in centralizer(S, s).members}
        if C.members != expected:
            problems.append(("centralizer", s))
        literal_claim.append(C == whole_group(K))
    note = f"C_K((1,s)) = K holds for {sum(literal_claim)} of {len(literal_claim)} nontrivial s; reported as Q8 x C_A5(s)"
    record(10, "F = R = Q8 factor in Q8 x A5; centralizers Q8 x C_A5(s)", not problems, note)
    assert not problems
    assert not any(literal_claim)


def test_criterion_11_oracle_agreement(corpus):
    bad, compared = [], 0
    for spec, G in corpus:
        if G.order > ORACLE_MAX_ORDER:
            continue
        compared += 1
        if fitting(G).subgroup != oracle_fitting(G) or soluble_radical(G).subgroup != oracle_radical(G):
            bad.append(spec)
    record(11, "elementwise F and R = normal-subgroup oracle", not bad, f"{compared} groups, {len(bad)} discrepancies")
    assert not bad


def test_criterion_12_golden_roundtrip():
    lines = GOLDEN.read_text().splitlines()
    required = [build_phi_defining(n) for n in (1, 2, 3)] + [build_psi_defining(n) for n in (1, 2)]
    required += [build_phi_nm(n, m) for n in (1, 2) for m in (1, 2)]
    missing = [render(f) for f in required if render(f) not in lines]
    bad = []
    for line in lines:
        f = parse(line)
        if render(f) != line or parse(render(f)) != f:
            bad.append(line)
    ok = not bad and not missing and len(set(lines)) == 50
    record(12, "render/parse fixpoints on golden formulas", ok, f"{len(set(lines))} formulas, {len(bad)} mismatches")
    assert not missing
    assert not bad
    assert len(set(lines)) == 50
