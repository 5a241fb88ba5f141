from itertools import combinations

import numpy as np
import pytest

from conftest import SMALL_SPECS, group
from fitdef.errors import OracleInfeasibleError
from fitdef.families import parse_family_spec
from fitdef.group import is_normal, normal_closure, whole_group
from fitdef.radicals import (
    bound_profile,
    engel_classify,
    engel_degrees,
    fitting,
    is_engel,
    normal_subgroups,
    oracle_fitting,
    oracle_radical,
    soluble_radical,
)
from fitdef.series import derived_length, nilpotency_class



def test_fitting_examples(S3, S4, A5):
    assert fitting(S3).subgroup.order == 3
    assert fitting(S4).subgroup.order == 4
    assert fitting(A5).subgroup.is_trivial
    Q8xC3 = group("product(quaternion8,cyclic:3)")
    assert fitting(Q8xC3).subgroup == whole_group(Q8xC3)
    assert oracle_fitting(Q8xC3) == whole_group(Q8xC3)


def test_radical_examples(S3, A5):
    assert soluble_radical(S3).subgroup == whole_group(S3)
    assert soluble_radical(A5).subgroup.is_trivial
    assert oracle_radical(S3) == whole_group(S3)


def test_trivial_group():
    G = group("cyclic:1")
    assert fitting(G).subgroup.is_trivial and fitting(G).invariant == 0
    assert oracle_fitting(G).is_trivial
    assert bound_profile(G, 3).d_of_m == [0, 0, 0]


def test_witness_classes(Q8):
    F = fitting(Q8)
    assert F.invariant == 2
    # every single normal closure in Q8 is abelian
    assert F.max_witness == 1


@pytest.mark.parametrize("spec", SMALL_SPECS + ("dihedral:5", "dihedral:8", "cyclic:12"))
def test_elementwise_matches_oracle(spec):
    G = group(spec)
    F, R = fitting(G).subgroup, soluble_radical(G).subgroup
    assert F == oracle_fitting(G)
    assert R == oracle_radical(G)
    assert F <= R
    assert is_normal(G, F) and nilpotency_class(G, F) is not None
    assert is_normal(G, R) and derived_length(G, R) is not None


def test_oracle_budget():
    with pytest.raises(OracleInfeasibleError):
        normal_subgroups(group("symmetric:4"), budget=8)


def _profile_by_subsets(G, m_max):
    """d(m) over every element subset of F(G) of size <= m."""
    F = sorted(fitting(G).subgroup.members)
    out, best = [], 0
    for m in range(1, m_max + 1):
        for A in combinations(F, min(m, len(F))):
            best = max(best, nilpotency_class(G, normal_closure(G, A)))
        out.append(best)
    return out


@pytest.mark.parametrize("spec", ["symmetric:3", "symmetric:4", "quaternion8", "dihedral:4", "alternating:4", "cyclic:6", "klein4"])
def test_bound_profile_matches_subset_enumeration(spec):
    G = group(spec)
    assert bound_profile(G, 3).d_of_m == _profile_by_subsets(G, 3)


def test_bound_profile_examples(S4, Q8):
    assert bound_profile(S4, 3).d_of_m == [1, 1, 1]
    assert bound_profile(Q8, 3).d_of_m == [1, 2, 2]
    assert bound_profile(group("alternating:5"), 2).d_of_m == [0, 0]


def test_bound_profile_sampling_is_flagged():
    G = group("dihedral:8")
    p = bound_profile(G, 3, subset_budget=2, samples=50, seed=1)
    assert p.sampled[-1] and p.is_nondecreasing
    assert p.d_of_m == bound_profile(G, 3, subset_budget=2, samples=50, seed=1).d_of_m


def test_engel_examples(S3, Q8):
    assert engel_classify(group("cyclic:6"), 5) == 1
    assert engel_classify(Q8, 5) == 2
    assert engel_classify(S3, 5) is None
    assert is_engel(Q8, 2) and not is_engel(Q8, 1)


def test_engel_degrees_against_loops(S3):
    deg = engel_degrees(S3, 3)
    for x in S3.elements:
        for y in S3.elements:
            v, n = S3.commutator(x, y), 1
            while v != S3.identity and n < 3:
                v, n = S3.commutator(v, y), n + 1
            assert deg[x, y] == (n if v == S3.identity else 0)


@pytest.mark.parametrize("spec", SMALL_SPECS + ("dihedral:8",))
def test_engel_characterizations(spec):
    G = group(spec)
    w = fitting(G).witness_classes
    deg = engel_degrees(G, 3)
    for n in (2, 3):
        engel = bool(np.all((deg > 0) & (deg <= n)))
        assert engel == all(w[g] is not None and w[g] <= n - 1 for g in G.elements)
    if engel_classify(G, 5) is not None:
        assert fitting(G).subgroup == whole_group(G)


def test_product_with_simple_factor():
    K = parse_family_spec("product(quaternion8,alternating:5)")
    F, R = fitting(K).subgroup, soluble_radical(K).subgroup
    assert F == R and F.order == 8
    # pairs (q, s) are indexed q * 60 + s; the Q8 factor is s = identity
    assert all(g % 60 == 0 for g in F)
