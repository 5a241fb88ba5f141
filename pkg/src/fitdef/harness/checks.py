"""Verification checks, one function per check id.

Every check takes ``(entry, G, config)`` and returns a
:class:`VerificationReport`.  Elements in details are written as
``{"index": i, "label": ...}``.  A failing report always names a concrete
counterexample under ``details["witness"]`` that :func:`replay` can
re-check from scratch.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Optional

import numpy as np

from ..errors import OracleInfeasibleError, SeriesMismatchError
from ..families import parse_family_spec
from ..group import (
    FiniteGroup,
    centralizer,
    normal_closure,
    pair_index,
    subgroup_from_members,
    whole_group,
)
from ..logic import (
    build_phi_defining,
    build_phi_nm,
    build_psi_defining,
    check_phi_nm_lazy,
    check_Tp,
    definable_set,
    evaluate,
    render,
)
from ..radicals import (
    bound_profile,
    engel_classify,
    engel_degrees,
    fitting,
    normal_subgroups,
    oracle_fitting,
    oracle_radical,
    soluble_radical,
)
from ..series import (
    commutator_subgroup,
    commutator_subgroup_pairs,
    derived_series,
    lower_central_series,
    nilpotency_class,
)
from .config import Config

PASS, FAIL, SKIPPED, ERROR = "pass", "fail", "skipped", "error"
STATUSES = (PASS, FAIL, SKIPPED, ERROR)


@dataclass
class VerificationReport:
    group: str
    check: str
    status: str
    reason: Optional[str] = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"group": self.group, "check": self.check, "status": self.status}
        if self.reason is not None:
            out["reason"] = self.reason
        out["details"] = jsonable(self.details)
        return out


def jsonable(value):
    """Convert tuples, sets and int-keyed dicts into plain JSON values."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(v) for v in value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def element(G: FiniteGroup, g) -> dict:
    g = int(g)
    return {"index": g, "label": G.label(g)}


def _elements(G, gs):
    return [element(G, g) for g in gs]


def _report(entry, check, ok, details, witness=None):
    if not ok:
        details["witness"] = witness
    return VerificationReport(entry.name, check, PASS if ok else FAIL, None, details)


def _skip(entry, check, reason, details=None):
    return VerificationReport(entry.name, check, SKIPPED, reason, details or {})


# commutator identities --------------------------------------------------

def _identity_sides(G, x, y, z):
    T, I = G.mul_table, G.inv_table

    def conj(g, h):
        return T[T[I[h], g], h]

    def comm(a, b):
        return T[T[I[a], I[b]], T[a, b]]

    return (
        ("[x,yz] = [x,z][x,y]^z", comm(x, T[y, z]), T[comm(x, z), conj(comm(x, y), z)]),
        ("[xy,z] = [x,z]^y[y,z]", comm(T[x, y], z), T[conj(comm(x, z), y), comm(y, z)]),
        ("[x,y]^z = [x^z,y^z]", conj(comm(x, y), z), comm(conj(x, z), conj(y, z))),
        ("[x^-1,y] = [x,y^(x^-1)]^-1", comm(I[x], y), I[comm(x, conj(y, I[x]))]),
        ("[x,y^-1] = [x^(y^-1),y]^-1", comm(x, I[y]), I[comm(conj(x, I[y]), y)]),
    )


def identity_triples(G: FiniteGroup, config: Config):
    """Arrays ``x, y, z`` of the triples to test and whether that is all of them."""
    n = G.order
    if n <= config.max_order_exhaustive_tuples:
        x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
        return x.ravel(), y.ravel(), z.ravel(), True
    rng = np.random.default_rng(config.seed)
    x, y, z = rng.integers(0, n, size=(3, config.identity_samples))
    return x, y, z, False


def check_identities(entry, G, config):
    x, y, z, exhaustive = identity_triples(G, config)
    details = {"triples": int(len(x)), "exhaustive": exhaustive, "identities": []}
    for name, lhs, rhs in _identity_sides(G, x, y, z):
        bad = np.flatnonzero(lhs != rhs)
        details["identities"].append({"identity": name, "failures": int(len(bad))})
        if len(bad):
            i = int(bad[0])
            witness = {"identity": name, "triple": _elements(G, (x[i], y[i], z[i]))}
            return _report(entry, "identities", False, details, witness)
    return _report(entry, "identities", True, details)


# commutator subgroups and series -----------------------------------------

def check_lemma1(entry, G, config):
    if G.order > config.max_order_normal_pairs:
        return _skip(entry, "lemma1", f"order {G.order} exceeds max_order_normal_pairs = {config.max_order_normal_pairs}")
    try:
        normals = normal_subgroups(G, config.oracle_budget)
    except OracleInfeasibleError as exc:
        return _skip(entry, "lemma1", str(exc))
    pairs = 0
    for H in normals:
        for K in normals:
            pairs += 1
            fast = commutator_subgroup(G, H, K)
            slow = commutator_subgroup_pairs(G, H, K)
            if fast != slow:
                witness = {
                    "H": _elements(G, H.generators),
                    "K": _elements(G, K.generators),
                    "generator_closure_order": fast.order,
                    "all_pairs_order": slow.order,
                }
                return _report(entry, "lemma1", False, {"normal_subgroups": len(normals), "pairs": pairs}, witness)
    return _report(entry, "lemma1", True, {"normal_subgroups": len(normals), "pairs": pairs})


def check_lemma2(entry, G, config):
    closures = 0
    terms = 0
    for g in G.class_representatives:
        N = normal_closure(G, [g])
        closures += 1
        for series in (lower_central_series, derived_series):
            try:
                report = series(G, N, cross_check=True)
            except SeriesMismatchError as exc:
                witness = {
                    "element": element(G, g),
                    "series": series.__name__,
                    "term": exc.index,
                    "direct_order": exc.direct.order,
                    "word_order": exc.words.order,
                }
                return _report(entry, "lemma2", False, {"closures": closures}, witness)
            terms += len(report.word_terms)
    return _report(entry, "lemma2", True, {"closures": closures, "terms_compared": terms})


# bounded formulas -----------------------------------------------------------

PHI_NM_CASES = tuple((n, m) for n in (1, 2, 3) for m in (1, 2))
MATERIALIZE_MAX_ORDER = 12


def phi_nm_tuples(G, m, config):
    if G.order <= config.max_order_exhaustive_tuples:
        return list(cartesian(G.elements, repeat=m)), "exhaustive"
    rng = random.Random(f"{config.seed}:{G.order}:{m}")
    return [tuple(rng.randrange(G.order) for _ in range(m)) for _ in range(config.sample_count)], "sampled"


def closure_class_at_most(G, n, b, cache=None):
    """Whether the normal closure of ``b`` is nilpotent of class ``<= n``."""
    cache = {} if cache is None else cache
    key = frozenset(b)
    if key not in cache:
        cache[key] = nilpotency_class(G, normal_closure(G, sorted(key)))
    value = cache[key]
    return value is not None and value <= n


def check_lemma3(entry, G, config):
    if G.order > config.max_order_sampled_tuples:
        return _skip(entry, "lemma3", f"order {G.order} exceeds max_order_sampled_tuples = {config.max_order_sampled_tuples}")
    cache = {}
    details = {"cases": []}
    for n, m in PHI_NM_CASES:
        tuples, mode = phi_nm_tuples(G, m, config)
        materialize = G.order <= MATERIALIZE_MAX_ORDER and n <= 2 and m <= 2
        formula = build_phi_nm(n, m) if materialize else None
        for b in tuples:
            expected = closure_class_at_most(G, n, b, cache)
            got = check_phi_nm_lazy(G, n, m, b).truth
            full = None
            if formula is not None:
                full = evaluate(G, formula, assignment={i + 1: x for i, x in enumerate(b)}, strategy=config.strategy).truth
            if got != expected or (full is not None and full != expected):
                witness = {"n": n, "m": m, "tuple": _elements(G, b), "lazy": got, "materialized": full, "expected": expected}
                return _report(entry, "lemma3", False, details, witness)
        details["cases"].append({"n": n, "m": m, "mode": mode, "tuples": len(tuples), "materialized": materialize})
    return _report(entry, "lemma3", True, details)


def _definable_check(entry, G, config, kind):
    result = fitting(G) if kind == "fitting" else soluble_radical(G)
    level = max(1, result.invariant)
    build = build_phi_defining if kind == "fitting" else build_psi_defining
    f = build(level)
    defined = definable_set(G, f, strategy=config.strategy)
    target = result.subgroup.members
    check = f"thm1-{kind}"
    details = {"level": level, "formula": render(f), "defined_size": len(defined), "subgroup_order": len(target)}
    if defined == target:
        return _report(entry, check, True, details)
    g = min(defined ^ target)
    witness = {"element": element(G, g), "defined": g in defined, "in_subgroup": g in target}
    return _report(entry, check, False, details, witness)


def check_thm1_fitting(entry, G, config):
    return _definable_check(entry, G, config, "fitting")


def check_thm1_radical(entry, G, config):
    return _definable_check(entry, G, config, "radical")


def check_oracle(entry, G, config):
    if G.order > config.max_order_oracle:
        return _skip(entry, "oracle", f"order {G.order} exceeds max_order_oracle = {config.max_order_oracle}")
    try:
        pairs = (
            ("fitting", fitting(G).subgroup, oracle_fitting(G, config.oracle_budget)),
            ("radical", soluble_radical(G).subgroup, oracle_radical(G, config.oracle_budget)),
        )
    except OracleInfeasibleError as exc:
        return _skip(entry, "oracle", str(exc))
    details = {"fitting_order": pairs[0][1].order, "radical_order": pairs[1][1].order}
    for name, fast, slow in pairs:
        if fast != slow:
            g = min(fast.members ^ slow.members)
            witness = {"subgroup": name, "element": element(G, g), "elementwise": g in fast, "oracle": g in slow}
            return _report(entry, "oracle", False, details, witness)
    return _report(entry, "oracle", True, details)


def check_thm2(entry, G, config):
    fclass = fitting(G).invariant
    rows = []
    for p in range(config.tp_max + 1):
        res = check_Tp(G, p)
        expected = fclass <= p
        row = {"p": p, "truth": res.truth, "tuples_examined": res.tuples_examined, "truncation": res.detail}
        if res.witness is not None:
            row["antecedent_tuple"] = _elements(G, [res.witness[i] for i in sorted(res.witness)])
        rows.append(row)
        if res.truth != expected:
            witness = {"p": p, "truth": res.truth, "fitting_class": fclass}
            return _report(entry, "thm2", False, {"label": "truncated T_p", "rows": rows}, witness)
    return _report(entry, "thm2", True, {"label": "truncated T_p", "fitting_class": fclass, "rows": rows})


def check_thm3_profile(entry, G, config):
    profile = bound_profile(G, config.profile_m_max, seed=config.seed)
    fclass = fitting(G).invariant
    details = {
        "m": profile.m_values,
        "d": profile.d_of_m,
        "sampled": profile.sampled,
        "sets_examined": profile.sets_examined,
        "fitting_class": fclass,
    }
    if not profile.is_nondecreasing:
        m = next(i for i in range(1, len(profile.d_of_m)) if profile.d_of_m[i] < profile.d_of_m[i - 1])
        return _report(entry, "thm3-profile", False, details, {"m": profile.m_values[m], "reason": "decreasing"})
    over = [m for m, d in zip(profile.m_values, profile.d_of_m) if d > fclass]
    if over:
        return _report(entry, "thm3-profile", False, details, {"m": over[0], "reason": "exceeds fitting class"})
    return _report(entry, "thm3-profile", True, details)


def check_engel(entry, G, config):
    witness_classes = fitting(G).witness_classes
    n_max = max(3, config.engel_n_max)
    degrees = engel_degrees(G, n_max)
    details = {"engel_degree": engel_classify(G, n_max), "cases": []}
    for n in (2, 3):
        engel = bool(np.all((degrees > 0) & (degrees <= n)))
        bad = [g for g in G.class_representatives if witness_classes[g] is None or witness_classes[g] > n - 1]
        details["cases"].append({"n": n, "engel": engel, "closures_ok": not bad})
        if engel and bad:
            witness = {"n": n, "element": element(G, bad[0]), "closure_class": witness_classes[bad[0]]}
            return _report(entry, "engel", False, details, witness)
        if not engel and not bad:
            x, y = (int(v[0]) for v in np.nonzero((degrees == 0) | (degrees > n)))
            witness = {"n": n, "pair": _elements(G, (x, y))}
            return _report(entry, "engel", False, details, witness)
    if details["engel_degree"] is not None and fitting(G).subgroup != whole_group(G):
        witness = {"n": details["engel_degree"], "fitting_order": fitting(G).subgroup.order}
        return _report(entry, "engel", False, details, witness)
    return _report(entry, "engel", True, details)


# direct product of a nilpotent group and a simple group ----------------------

def _is_simple_nonabelian(S):
    if S.is_abelian_group or S.order == 1:
        return False
    try:
        return len(normal_subgroups(S)) == 2
    except OracleInfeasibleError:
        return False


def product_factors(entry):
    """``(N, S)`` when ``entry`` is ``product(N, S)`` with N nilpotent and S simple nonabelian."""
    specs = entry.factors
    if specs is None:
        return None
    N, S = (parse_family_spec(s) for s in specs)
    if fitting(N).subgroup != whole_group(N) or not _is_simple_nonabelian(S):
        return None
    return N, S


def check_product_example(entry, G, config):
    factors = product_factors(entry)
    if factors is None:
        return _skip(entry, "product-example", "not a product of a nilpotent group and a nonabelian simple group")
    N, S = factors
    embedded = subgroup_from_members(G, [pair_index(S, g, S.identity) for g in N.elements])
    F, R = fitting(G).subgroup, soluble_radical(G).subgroup
    details = {"fitting_order": F.order, "radical_order": R.order, "nilpotent_factor_order": N.order, "centralizers": []}
    for name, H in (("fitting", F), ("radical", R)):
        if H != embedded:
            g = min(H.members ^ embedded.members)
            witness = {"subgroup": name, "element": element(G, g), "in_factor": g in embedded}
            return _report(entry, "product-example", False, details, witness)
    for s in S.class_representatives:
        if s == S.identity:
            continue
        k = pair_index(S, N.identity, s)
        C = centralizer(G, k)
        expected = {pair_index(S, g, c) for g in N.elements for c in centralizer(S, s).members}
        details["centralizers"].append({
            "element": element(G, k),
            "order": C.order,
            "expected_order": len(expected),
            "equals_whole_group": C.order == G.order,
        })
        if C.members != expected:
            witness = {"element": element(G, k), "centralizer_order": C.order, "expected_order": len(expected)}
            return _report(entry, "product-example", False, details, witness)
    details["literal_centralizer_claim"] = "C_K((1,s)) = K fails for every nontrivial s; C_K((1,s)) = N x C_S(s)"
    return _report(entry, "product-example", True, details)


CHECKS = {
    "engel": check_engel,
    "identities": check_identities,
    "lemma1": check_lemma1,
    "lemma2": check_lemma2,
    "lemma3": check_lemma3,
    "oracle": check_oracle,
    "product-example": check_product_example,
    "thm1-fitting": check_thm1_fitting,
    "thm1-radical": check_thm1_radical,
    "thm2": check_thm2,
    "thm3-profile": check_thm3_profile,
}
CHECK_IDS = tuple(sorted(CHECKS))


def idx(e):
    return e["index"]


# replay --------------------------------------------------------------------

def replay(G: FiniteGroup, report) -> bool:
    """Re-check a failing report's witness; true iff the failure reproduces.

    Only the witness is used, so a replay is independent of whatever code
    path produced the report.
    """
    if isinstance(report, VerificationReport):
        report = report.to_dict()
    w = report.get("details", {}).get("witness")
    if report.get("status") != FAIL or w is None:
        return False
    check = report["check"]
    if check == "identities":
        x, y, z = (np.array([idx(e)]) for e in w["triple"])
        sides = {name: (lhs, rhs) for name, lhs, rhs in _identity_sides(G, x, y, z)}
        lhs, rhs = sides[w["identity"]]
        return bool(lhs[0] != rhs[0])
    if check == "lemma1":
        H = normal_closure(G, [idx(e) for e in w["H"]])
        K = normal_closure(G, [idx(e) for e in w["K"]])
        return commutator_subgroup(G, H, K) != commutator_subgroup_pairs(G, H, K)
    if check == "lemma2":
        series = lower_central_series if w["series"] == "lower_central_series" else derived_series
        try:
            series(G, normal_closure(G, [idx(w["element"])]), cross_check=True)
        except SeriesMismatchError:
            return True
        return False
    if check == "lemma3":
        b = tuple(idx(e) for e in w["tuple"])
        expected = closure_class_at_most(G, w["n"], b)
        if check_phi_nm_lazy(G, w["n"], w["m"], b).truth != expected:
            return True
        f = build_phi_nm(w["n"], w["m"])
        return evaluate(G, f, assignment={i + 1: x for i, x in enumerate(b)}).truth != expected
    if check in ("thm1-fitting", "thm1-radical"):
        kind = check.split("-")[1]
        result = fitting(G) if kind == "fitting" else soluble_radical(G)
        build = build_phi_defining if kind == "fitting" else build_psi_defining
        g = idx(w["element"])
        truth = evaluate(G, build(max(1, result.invariant)), (g,)).truth
        return truth != (g in result.subgroup)
    if check == "oracle":
        g = idx(w["element"])
        fast = fitting(G).subgroup if w["subgroup"] == "fitting" else soluble_radical(G).subgroup
        slow = oracle_fitting(G) if w["subgroup"] == "fitting" else oracle_radical(G)
        return (g in fast) != (g in slow)
    if check == "thm2":
        return check_Tp(G, w["p"]).truth != (fitting(G).invariant <= w["p"])
    if check == "thm3-profile":
        profile = bound_profile(G, w["m"])
        d = profile.d_of_m
        fclass = fitting(G).invariant
        return any(a > b for a, b in zip(d, d[1:])) or d[-1] > fclass
    if check == "engel":
        n = w["n"]
        degrees = engel_degrees(G, n)
        engel = bool(np.all(degrees > 0))
        if "element" in w:
            g = idx(w["element"])
            cls = nilpotency_class(G, normal_closure(G, [g]))
            return engel and (cls is None or cls > n - 1)
        if "pair" in w:
            x, y = (idx(e) for e in w["pair"])
            closures_ok = all(
                (c := nilpotency_class(G, normal_closure(G, [g]))) is not None and c <= n - 1
                for g in G.class_representatives
            )
            return degrees[x, y] == 0 and closures_ok
        return engel_classify(G, n) is not None and fitting(G).subgroup != whole_group(G)
    if check == "product-example":
        k = idx(w["element"])
        if "centralizer_order" in w:
            return centralizer(G, k).order != w["expected_order"]
        H = fitting(G).subgroup if w["subgroup"] == "fitting" else soluble_radical(G).subgroup
        return (k in H) != w["in_factor"]
    raise ValueError(f"unknown check id {check!r}")
