"""Theorem harness: brute force against closed forms, field by field."""
from __future__ import annotations

import concurrent.futures as cf
import csv
import io
import json
import time
from dataclasses import dataclass, field as dc_field

import numpy as np
import sympy

from . import boom, charsum, diff
from .field import FiniteField, make_field
from .funcs import build_binomial, is_permutation, predict_permutation, special_u

__all__ = [
    "THEOREMS",
    "RESIDUES",
    "VerificationReport",
    "ScanConfig",
    "enumerate_prime_powers",
    "applicable",
    "verify_field",
    "scan",
    "to_json",
    "to_csv",
    "to_markdown",
]

RESIDUES = {"3mod4": (4, 3), "3mod8": (8, 3), "7mod8": (8, 7)}

# theorem -> (required residue class, default u policy)
THEOREMS = {
    "DS": ("3mod4", "u1"),
    "BS": ("7mod8", "u1"),
    "BU3": ("3mod8", "pm1"),
    "DU": ("3mod4", "all"),
    "SPECIAL_U": ("3mod8", "special"),
    "PP": ("3mod4", "all"),
    "IDENTITIES": ("3mod4", "u1"),
    "LEMMA5": ("3mod4", "sample"),
    "QUADRANTS": ("3mod4", "all"),
}

Q_MAX_CAP = 1 << 20
DEFAULT_SEED = 20240601


@dataclass
class VerificationReport:
    q: int
    p: int
    n: int
    theorem: str
    match: bool
    computed: dict
    predicted: dict
    gamma: int | None = None
    informational: list[str] = dc_field(default_factory=list)
    elapsed: float = 0.0

    def as_dict(self, with_elapsed: bool = True) -> dict:
        d = {
            "q": self.q,
            "p": self.p,
            "n": self.n,
            "theorem": self.theorem,
            "match": self.match,
            "computed": self.computed,
            "predicted": self.predicted,
            "gamma": self.gamma,
            "informational": list(self.informational),
        }
        if with_elapsed:
            d["elapsed_ms"] = round(self.elapsed * 1000, 3)
        return d


@dataclass
class ScanConfig:
    q_max: int = 200
    theorem: str = "DS"
    residue: str | None = None
    u_policy: str | None = None
    jobs: int = 1
    bct_cap: int = 1024
    seed: int = DEFAULT_SEED
    q_min: int = 3

    def __post_init__(self):
        self.theorem = self.theorem.upper()
        if self.theorem not in THEOREMS:
            raise ValueError(f"unknown theorem {self.theorem!r}")
        if self.residue is not None and self.residue not in RESIDUES:
            raise ValueError(f"unknown residue filter {self.residue!r}")
        if self.q_max > Q_MAX_CAP:
            raise ValueError(f"q_max is capped at {Q_MAX_CAP}")


def _in_class(q: int, residue: str | None) -> bool:
    if residue is None:
        return True
    m, r = RESIDUES[residue]
    return q % m == r


def enumerate_prime_powers(limit: int, residue: str | None = None) -> list[tuple[int, int, int]]:
    """All odd prime powers q <= limit in the residue class, ascending as (p, n, q)."""
    if limit < 3:
        raise ValueError("limit must be at least 3")
    found = []
    for p in sympy.primerange(3, limit + 1):
        q, n = p, 1
        while q <= limit:
            if _in_class(q, residue):
                found.append((p, n, q))
            q *= p
            n += 1
    return sorted(found, key=lambda t: t[2])


def applicable(theorem: str, p: int, q: int) -> bool:
    theorem = theorem.upper()
    if not _in_class(q, THEOREMS[theorem][0]):
        return False
    if theorem == "SPECIAL_U" and p == 3:
        return False
    return True


def _spec_dict(spec) -> dict:
    return {str(i): c for i, c in sorted(spec.counts.items())}


def _u_values(f: FiniteField, policy: str, seed: int) -> list[int]:
    generic = [u for u in range(1, f.q) if u not in (f.one, f.minus_one)]
    if policy == "u1":
        return [f.one]
    if policy == "pm1":
        return [f.one, f.minus_one]
    if policy == "all":
        return generic
    if policy == "special":
        return list(dict.fromkeys(special_u(f)))
    if policy == "sample":
        rng = np.random.default_rng(seed + f.q)
        pick = rng.choice(generic, size=min(8, len(generic)), replace=False) if generic else []
        return [f.one, f.minus_one] + sorted(int(u) for u in pick)
    raise ValueError(f"unknown u policy {policy!r}")


# -- individual theorems ------------------------------------------------------


def _verify_ds(f, us, **_):
    predicted = diff.predict_diff_spectrum_u1(f)
    label = "locally-PN" if f.q % 8 == 3 else "locally-APN"
    computed, ok = {}, True
    for u in us:
        t = build_binomial(f, u)
        spec = diff.diff_spectrum(t)
        loc = diff.classify_locality(t, "punctured")
        computed[str(u)] = {"spectrum": _spec_dict(spec), "locality": loc}
        ok &= spec == predicted and loc == label
    first = computed[str(us[0])]
    out = {"spectrum": first["spectrum"], "locality": first["locality"]}
    if len(us) > 1:
        out["by_u"] = computed
    return ok, out, {"spectrum": _spec_dict(predicted), "locality": label}, None, []


def _verify_bs(f, us, **_):
    g = charsum.gamma(f)
    _, _, g2 = charsum.gamma_decomposition(f)
    bound = charsum.gamma_bound_holds(f, g)
    predicted = boom.predict_boom_spectrum(f, g)
    expected_beta = 1 if f.q in (7, 31) else 2
    ok = g == g2 and bound
    computed = {}
    for u in us:
        spec = boom.boom_spectrum(build_binomial(f, u))
        computed[str(u)] = _spec_dict(spec)
        ok &= spec == predicted and spec.uniformity == expected_beta
        if f.q > 790:
            ok &= spec.counts.get(2, 0) > 0
    out = {"spectrum": computed[str(us[0])], "beta": max(map(int, computed[str(us[0])]))}
    out["gamma_routes_agree"] = g == g2
    out["gamma_bound"] = bound
    if len(us) > 1:
        out["by_u"] = computed
    pred = {"spectrum": _spec_dict(predicted), "beta": expected_beta}
    return ok, out, pred, g, []


def _verify_bu3(f, us, bct_cap=1024, **_):
    notes, ok, worst = [], True, {}
    full = f.q <= bct_cap
    if not full:
        notes.append(f"q > {bct_cap}: only row a = 1 checked (row reduction covers the rest)")
    for u in us:
        t = build_binomial(f, u)
        if full:
            value = boom.boomerang_uniformity(t)
        else:
            value = int(boom.bct_row(t, 1)[1:].max())
        worst[str(u)] = value
        ok &= value == 0
    return ok, {"beta": worst, "full_bct": full}, {"beta": 0}, None, notes


def _branch(f: FiniteField, u: int) -> int:
    """4 if chi(1+u) = (-1)^r chi(1-u), else 5."""
    sign = -1 if f.r % 2 else 1
    return 4 if f.chi(f.add(1, u)) == sign * f.chi(f.sub(1, u)) else 5


def _verify_du(f, us, **_):
    specials = set(special_u(f)) if (f.q % 8 == 3 and f.p > 3) else set()
    tallies: dict[str, dict[str, int]] = {"4": {}, "5": {}, "special": {}}
    violations, notes = [], []
    for u in us:
        t = build_binomial(f, u)
        d = diff.differential_uniformity(t)
        perm = is_permutation(t)
        pred_perm = predict_permutation(f, u)
        branch = _branch(f, u)
        key = "special" if u in specials else str(branch)
        tallies[key][str(d)] = tallies[key].get(str(d), 0) + 1
        if perm != pred_perm:
            violations.append({"u": u, "issue": "permutation criterion disagrees"})
        if branch == 4 and d > 4:
            violations.append({"u": u, "issue": f"delta {d} > 4"})
        if branch == 5 and (d > 5 or not perm):
            violations.append({"u": u, "issue": f"delta {d}, permutation {perm}"})
        if u in specials and (d > 4 or not perm):
            violations.append({"u": u, "issue": f"special u: delta {d}, permutation {perm}"})
        if branch == 4 and f.q > 523 and d != 4:
            notes.append(f"u={u}: delta {d} != 4 above 523")
        if branch == 5 and u not in specials and f.q > 4007 and d != 5:
            notes.append(f"u={u}: delta {d} != 5 above 4007")
    observed = sorted({int(k) for tally in tallies.values() for k in tally})
    if observed and not set(observed) <= {2, 3, 4, 5}:
        notes.append(f"observed delta values {observed}")
    computed = {"delta_by_branch": {k: v for k, v in tallies.items() if v}, "violations": violations}
    predicted = {"4": "delta <= 4", "5": "delta <= 5, permutation"}
    if specials:
        predicted["special"] = "delta <= 4, permutation"
    return not violations, computed, predicted, None, notes


def _verify_special(f, us, **_):
    computed, ok = {}, True
    for u in us:
        t = build_binomial(f, u)
        d = diff.differential_uniformity(t)
        perm = is_permutation(t)
        computed[str(u)] = {"delta": d, "permutation": perm}
        ok &= d <= 4 and perm and predict_permutation(f, u)
    return ok, computed, {"delta": "<= 4", "permutation": True}, None, []


def _verify_pp(f, us, **_):
    agree = disagree = perms = 0
    bad = []
    for u in us:
        actual = is_permutation(build_binomial(f, u))
        perms += actual
        if actual == predict_permutation(f, u):
            agree += 1
        else:
            disagree += 1
            bad.append(u)
    computed = {"agree": agree, "disagree": disagree, "permutations": perms, "bad_u": bad}
    return not bad, computed, {"disagree": 0}, None, []


def _verify_identities(f, us, seed=DEFAULT_SEED, **_):
    results = charsum.identity_suite(f, seed=seed)
    failed = [r.name for r in results if r.applicable and not r.match]
    rng = np.random.default_rng(seed + f.q)
    quad_bad = 0
    x = f.elements()
    for _ in range(100):
        a2, a1, a0 = int(rng.integers(1, f.q)), int(rng.integers(0, f.q)), int(rng.integers(0, f.q))
        direct = charsum.chi_sum(f, f.add(f.mul(f.add(f.mul(a2, x), a1), x), a0))
        quad_bad += direct != charsum.quad_char_sum_closed(f, a2, a1, a0)
    g = None
    extra = {}
    if f.q % 8 == 7:
        g = charsum.gamma(f)
        extra["gamma_bound"] = charsum.gamma_bound_holds(f, g)
        extra["gamma_routes_agree"] = g == charsum.gamma_decomposition(f)[2]
    ok = not failed and quad_bad == 0 and all(extra.values())
    computed = {
        "applicable": sum(r.applicable for r in results),
        "failed": failed,
        "quadratic_mismatches": quad_bad,
        **extra,
    }
    return ok, computed, {"failed": [], "quadratic_mismatches": 0}, g, []


def _verify_lemma5(f, us, **_):
    bad = []
    x = f.elements()
    for u in us:
        t = build_binomial(f, u)
        r = t.params["r"]
        dd = diff.ddt(t)
        bb = boom.bct(t)
        for a in range(1, f.q):
            if not np.array_equal(dd[a], dd[1][diff._reduction_targets(f, r, a, False)]):
                bad.append({"u": u, "a": a, "table": "ddt"})
            if not np.array_equal(bb[a], bb[1][diff._reduction_targets(f, r, a, True)]):
                bad.append({"u": u, "a": a, "table": "bct"})
    computed = {"u_values": list(us), "rows_checked": len(us) * (f.q - 1), "failures": bad}
    return not bad, computed, {"failures": []}, None, []


def _witness_ok(f, out, labels, b, w, code) -> np.ndarray:
    have = w >= 0
    wi = np.where(have, w, 0)
    solves = f.sub(out[f.add(wi, 1)], out[wi]) == b
    return ~have | ((labels[wi] == code) & solves)


def _quadrant_check(f, u, bs, labels):
    counts, b0, bm1 = diff.quadrant_table(f, u)
    arr = diff.predict_quadrant_arrays(f, u, bs)
    pred = np.stack([arr["d00"], arr["d01"], arr["d10"], arr["d11"]], axis=1)
    brute = counts[bs]
    ok = np.array_equal(pred, brute)
    ok &= np.array_equal(arr["sol_at_0"], bs == b0) and np.array_equal(arr["sol_at_neg1"], bs == bm1)
    out = build_binomial(f, u).outputs
    wit = _witness_ok(f, out, labels, bs, arr["x00"], 0) & _witness_ok(f, out, labels, bs, arr["x11"], 3)
    for w in arr["x01"]:
        wit &= _witness_ok(f, out, labels, bs, w, 1)
    for w in arr["x10"]:
        wit &= _witness_ok(f, out, labels, bs, w, 2)
    return bool(ok), bool(wit.all()), brute


def _verify_quadrants(f, us, **_):
    labels = f.quadrant_labels()
    bs = np.arange(1, f.q, dtype=np.int64)
    failures = []
    structural = []
    checked = 0
    sign = -1 if f.r % 2 else 1
    for u in [f.one] + [u for u in us if u != f.one]:
        ok, wit, brute = _quadrant_check(f, u, bs, labels)
        checked += 1
        if not ok:
            failures.append({"u": u, "issue": "prediction != brute force"})
        if not wit:
            failures.append({"u": u, "issue": "witness check failed"})
        d00, d01, d10, d11 = brute.T
        if u == f.one:
            if np.any(d01 + d10 > 1):
                structural.append({"u": u, "issue": "d01 + d10 > 1"})
            continue
        excluded = (bs == f.add(1, u)) | (bs == f.mul(f.sign(sign), f.sub(1, u)))
        stack = (d00 == 1) & (d01 == 2) & (d10 == 2) & ~excluded
        if np.any(stack):
            structural.append({"u": u, "issue": "d00 = 1, d01 = d10 = 2"})
        if _branch(f, u) == 4:
            both = (d00 == 1) & (d11 == 1)
            if np.any(both & ((d01 > 1) | (d10 > 1))):
                structural.append({"u": u, "issue": "d00 = d11 = 1 with a double quadrant"})
    boom_part = {}
    if f.q % 8 == 7:
        counts, boundary = boom.boom_quadrant_table(f, 1)
        row = boom.bct_row(build_binomial(f, 1), 1)
        nz = counts[1:]
        names = boom.QUAD_PAIRS
        allowed = [names.index(k) for k in ("0001", "0010", "0100", "1000")]
        others = np.delete(nz, allowed, axis=1)
        c01, c10 = boom.predict_boom_pair_arrays(f, bs)
        idx = {k: names.index(k) for k in names}
        boom_part = {
            "boundary_zero": bool(np.all(boundary[1:] == 0)),
            "other_entries_zero": bool(np.all(others == 0)),
            "eq23_matches_beta": bool(np.array_equal(nz[:, allowed].sum(axis=1), row[1:])),
            "pair_prediction": bool(
                np.array_equal(c01, nz[:, idx["0001"]] + nz[:, idx["0100"]])
                and np.array_equal(c10, nz[:, idx["0010"]] + nz[:, idx["1000"]])
            ),
        }
        for k, v in boom_part.items():
            if not v:
                failures.append({"u": 1, "issue": f"boomerang quadrants: {k}"})
    computed = {
        "u_checked": checked,
        "failures": failures,
        "structural": structural,
    }
    if boom_part:
        computed["boomerang"] = boom_part
    ok = not failures and not structural
    return ok, computed, {"failures": [], "structural": []}, None, []


_DISPATCH = {
    "DS": _verify_ds,
    "BS": _verify_bs,
    "BU3": _verify_bu3,
    "DU": _verify_du,
    "SPECIAL_U": _verify_special,
    "PP": _verify_pp,
    "IDENTITIES": _verify_identities,
    "LEMMA5": _verify_lemma5,
    "QUADRANTS": _verify_quadrants,
}


def verify_field(
    field: FiniteField,
    theorem: str,
    u_policy: str | None = None,
    seed: int = DEFAULT_SEED,
    bct_cap: int = 1024,
) -> VerificationReport:
    """Run one theorem on one field and compare computed with predicted."""
    theorem = theorem.upper()
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}")
    if not applicable(theorem, field.p, field.q):
        raise ValueError(f"{theorem} does not apply to q = {field.q}")
    policy = u_policy or THEOREMS[theorem][1]
    start = time.perf_counter()
    us = _u_values(field, policy, seed)
    ok, computed, predicted, g, notes = _DISPATCH[theorem](field, us, seed=seed, bct_cap=bct_cap)
    elapsed = time.perf_counter() - start
    return VerificationReport(
        q=field.q,
        p=field.p,
        n=field.n,
        theorem=theorem,
        match=bool(ok),
        computed=computed,
        predicted=predicted,
        gamma=g,
        informational=notes,
        elapsed=elapsed,
    )


def _run_one(args) -> VerificationReport:
    p, n, theorem, policy, seed, cap = args
    return verify_field(make_field(p, n), theorem, policy, seed, cap)


def scan(cfg: ScanConfig) -> list[VerificationReport]:
    """verify_field over every applicable prime power up to cfg.q_max, in q order."""
    if cfg.q_max < 3:
        return []
    fields = [
        (p, n, q)
        for p, n, q in enumerate_prime_powers(cfg.q_max, cfg.residue)
        if q >= cfg.q_min and applicable(cfg.theorem, p, q)
    ]
    jobs = [(p, n, cfg.theorem, cfg.u_policy, cfg.seed, cfg.bct_cap) for p, n, _ in fields]
    if cfg.jobs > 1 and len(jobs) > 1:
        with cf.ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            reports = list(pool.map(_run_one, jobs))
    else:
        reports = [_run_one(j) for j in jobs]
    return sorted(reports, key=lambda r: r.q)


# -- serialisation ------------------------------------------------------------


def to_json(reports, with_elapsed: bool = True) -> str:
    doc = {
        "schema_version": 1,
        "rows": [r.as_dict(with_elapsed) for r in reports],
    }
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _spectrum_pairs(report: VerificationReport) -> str:
    spec = report.computed.get("spectrum")
    if not isinstance(spec, dict):
        return ""
    return ";".join(f"{i}:{c}" for i, c in spec.items())


def to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["q", "p", "n", "theorem", "match", "spectrum", "gamma", "elapsed_ms"])
    for r in reports:
        w.writerow([
            r.q,
            r.p,
            r.n,
            r.theorem,
            str(r.match).lower(),
            _spectrum_pairs(r),
            "" if r.gamma is None else r.gamma,
            round(r.elapsed * 1000, 3),
        ])
    return buf.getvalue()


def format_spectrum(spec: dict, symbol: str) -> str:
    return "{" + ", ".join(f"{symbol}_{i} = {c}" for i, c in spec.items()) + "}"


def to_markdown(reports) -> str:
    if not reports:
        return "_no applicable fields_\n"
    theorem = reports[0].theorem
    lines = []
    if theorem == "DS":
        lines += ["| p^n | DS | match |", "|---|---|---|"]
        for r in reports:
            lines.append(f"| {r.q} | {format_spectrum(r.computed['spectrum'], 'ω')} | {_mark(r)} |")
    elif theorem == "BS":
        lines += ["| p^n | Γ | BS | match |", "|---|---|---|---|"]
        for r in reports:
            lines.append(
                f"| {r.q} | {r.gamma} | {format_spectrum(r.computed['spectrum'], 'ν')} | {_mark(r)} |"
            )
    else:
        lines += ["| p^n | theorem | match | computed |", "|---|---|---|---|"]
        for r in reports:
            summary = json.dumps(r.computed, sort_keys=True, ensure_ascii=False)
            if len(summary) > 120:
                summary = summary[:117] + "..."
            lines.append(f"| {r.q} | {r.theorem} | {_mark(r)} | `{summary}` |")
    return "\n".join(lines) + "\n"


def _mark(r: VerificationReport) -> str:
    return "yes" if r.match else "NO"
