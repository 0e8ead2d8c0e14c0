"""Statement checks (T1..T5, C1, L1..L8, R1, R2) over a corpus of groups.

Each check instantiates a statement's quantifiers on one group and emits one
:class:`CheckReport` per instance.  Quantifiers over normal subgroups and over
maximal subgroups of p-groups are exhaustive; quantifiers over "all
p-subgroups" use :func:`sample_p_subgroups` (every Sylow p-subgroup and every
cyclic p-subgroup, at most ``SAMPLE_LIMIT`` of them).
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from .corpus import CorpusEntry
from .errors import CapExceeded
from .perm import Group
from .pi import factor_detail, satisfies_partial_pi, satisfies_partial_pi_in
from .series import first_chief_series, quotient
from .structure import (
    hypercenter_U,
    hypercenter_Up,
    is_p_nilpotent,
    is_p_soluble,
    is_soluble,
    is_supersoluble,
    is_sylow_tower_supersoluble_type,
)
from .subgroups import (
    Subgroup,
    all_normal_subgroups,
    as_subgroup,
    complement,
    conjugate,
    derived_subgroup,
    fitting_subgroup,
    frattini_of_p_group,
    intersection,
    is_p_power,
    join,
    maximal_subgroups_of_p_group,
    minimal_normal_overgroups,
    normalizer,
    prime_divisors,
    subgroup,
    sylow_subgroup,
    sylow_subgroups,
    trivial,
)

CHECK_IDS = ("T1", "T2", "T3", "T4", "T5", "C1", "L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8", "R1", "R2")
PRIME_CHECKS = {"T1", "T2", "T3", "T4", "L1", "L2", "L3", "L4", "L5", "L7", "L8"}
DROPPABLE = ("gcd-condition", "pprime-subgroup-condition", "pi-in-normalizer")
SEARCHABLE = {"T3", "T4", "T5", "C1"}
SAMPLE_LIMIT = 50
SAMPLING_POLICY = (
    "exhaustive over normal subgroups and over maximal subgroups of p-groups; "
    "'all p-subgroups' quantifiers (L1, L2, L3 case 2, L8) use every Sylow p-subgroup "
    f"then every cyclic p-subgroup, at most {SAMPLE_LIMIT} per (group, prime), marked sampled"
)

VERIFIED = "verified"
VACUOUS = "vacuous"
COUNTEREXAMPLE = "COUNTEREXAMPLE"
SKIPPED = "skipped-cap"


@dataclass
class CheckReport:
    check_id: str
    group: str
    params: dict
    hypothesis_met: bool | None
    conclusion_holds: bool | None
    status: str
    witness: dict | None = None
    elapsed_ms: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)


def _status(hyp: bool, concl: bool | None) -> str:
    if not hyp:
        return VACUOUS
    return VERIFIED if concl else COUNTEREXAMPLE


@dataclass
class _Ctx:
    name: str
    G: Subgroup
    drop: frozenset = frozenset()
    sample_limit: int = SAMPLE_LIMIT
    reports: list = field(default_factory=list)
    t0: float = 0.0

    def emit(self, check_id: str, params: dict, hyp: bool, concl: bool | None, witness: dict | None = None):
        if not hyp:
            concl = None
        elapsed = (time.perf_counter() - self.t0) * 1000.0
        self.reports.append(
            CheckReport(check_id, self.name, params, bool(hyp), concl, _status(hyp, concl), witness, round(elapsed, 3))
        )
        self.t0 = time.perf_counter()

    def normals(self) -> list[Subgroup]:
        return all_normal_subgroups(self.G)

    def describe(self, S: Subgroup) -> str:
        for i, N in enumerate(self.normals()):
            if N == S:
                return f"normal#{i}"
        return "subgroup"


# -- shared hypothesis pieces ------------------------------------------------


def _pi(G: Subgroup, H: Subgroup) -> bool:
    return satisfies_partial_pi(G, H).holds


def maximals_hold_in_normalizer(G: Subgroup, P: Subgroup, p: int) -> list[bool]:
    """Verdict for each maximal subgroup of ``P`` inside ``N_G(P)``."""
    NP = normalizer(G, P)
    return [satisfies_partial_pi_in(G, M, NP).holds for M in maximal_subgroups_of_p_group(P, p)]


def derived_holds(G: Subgroup, P: Subgroup) -> bool:
    return _pi(G, derived_subgroup(P))


def sylow_hypotheses(G: Subgroup, P: Subgroup, p: int, drop: frozenset = frozenset()) -> tuple[bool, dict]:
    """Maximal subgroups of ``P`` in ``N_G(P)`` and ``P'`` in ``G`` (minus dropped parts)."""
    wit: dict = {"P_order": P.order}
    ok = True
    if "pi-in-normalizer" not in drop:
        verdicts = maximals_hold_in_normalizer(G, P, p)
        wit["maximals_in_normalizer"] = verdicts
        ok = ok and all(verdicts)
    if "pprime-subgroup-condition" not in drop:
        D = derived_subgroup(P)
        d_ok = _pi(G, D)
        wit["derived_order"] = D.order
        wit["derived_holds"] = d_ok
        ok = ok and d_ok
    return ok, wit


def gcd_condition(order: int, p: int) -> bool:
    return math.gcd(order, p - 1) == 1


def sample_p_subgroups(G: Subgroup, p: int, limit: int = SAMPLE_LIMIT) -> list[tuple[str, Subgroup]]:
    """Every Sylow ``p``-subgroup, then the distinct cyclic ``p``-subgroups, at most ``limit``."""
    out: list[tuple[str, Subgroup]] = []
    seen: set[int] = set()
    if G.order % p:
        return out
    for i, P in enumerate(sylow_subgroups(G, p)):
        if len(out) >= limit:
            return out
        out.append((f"sylow:{p}#{i}", P))
        seen.add(P.key)
    idx = G.index
    orders = idx.element_orders
    for x in G.elements:
        if len(out) >= limit:
            break
        o = int(orders[x])
        if o == 1 or not is_p_power(o, p):
            continue
        C = subgroup(G, [int(x)])
        if C.key in seen:
            continue
        seen.add(C.key)
        out.append((f"cyclic:{idx.perm(int(x))}", C))
    return out


# -- checks -------------------------------------------------------------------


def _t1(ctx: _Ctx, p: int) -> None:
    G = ctx.G
    ZU = None
    for i, P in enumerate(ctx.normals()):
        if P.order == 1 or not is_p_power(P.order, p):
            continue
        verdicts = [_pi(G, M) for M in maximal_subgroups_of_p_group(P, p)]
        hyp = all(verdicts)
        concl = None
        wit = {"P_order": P.order, "maximal_verdicts": verdicts}
        if hyp:
            ZU = ZU or hypercenter_U(G)
            concl = P.issubset(ZU)
            wit["Z_U_order"] = ZU.order
        ctx.emit("T1", {"p": p, "P": f"normal#{i}"}, hyp, concl, wit)


def _t2(ctx: _Ctx, p: int) -> None:
    G = ctx.G
    for i, E in enumerate(ctx.normals()):
        params = {"p": p, "E": f"normal#{i}"}
        if E.order % p:
            ctx.emit("T2", params, False, None, {"E_order": E.order, "reason": "p does not divide |E|"})
            continue
        P = sylow_subgroup(E, p)
        verdicts = [_pi(G, M) for M in maximal_subgroups_of_p_group(P, p)]
        hyp = all(verdicts)
        wit = {"E_order": E.order, "P_order": P.order, "maximal_verdicts": verdicts}
        concl = None
        if hyp:
            Z = hypercenter_Up(G, p)
            wit["Z_Up_order"] = Z.order
            concl = E.issubset(Z) or P.order == p
        ctx.emit("T2", params, hyp, concl, wit)


def _t3(ctx: _Ctx, p: int) -> None:
    G = ctx.G
    n = G.order
    if n % p:
        ctx.emit("T3", {"p": p}, False, None, {"reason": "p does not divide |G|"})
        return
    gcd_ok = gcd_condition(n, p) or "gcd-condition" in ctx.drop
    if not gcd_ok:
        ctx.emit("T3", {"p": p}, False, None, {"reason": "gcd(|G|, p-1) != 1"})
        return
    P = sylow_subgroup(G, p)
    hyp, wit = sylow_hypotheses(G, P, p, ctx.drop)
    wit["normalizer_order"] = normalizer(G, P).order
    pn = is_p_nilpotent(G, p)
    wit["p_nilpotent"] = pn
    ctx.emit("T3", {"p": p, "direction": "hypotheses=>p-nilpotent"}, hyp, pn, wit)
    if not ctx.drop:
        full, _ = sylow_hypotheses(G, P, p)
        ctx.emit("T3", {"p": p, "direction": "p-nilpotent=>hypotheses"}, pn, full, wit)


def _t4(ctx: _Ctx, p: int) -> None:
    G = ctx.G
    n = G.order
    if n % p:
        ctx.emit("T4", {"p": p}, False, None, {"reason": "p does not divide |G|"})
        return
    if not (gcd_condition(n, p) or "gcd-condition" in ctx.drop):
        ctx.emit("T4", {"p": p}, False, None, {"reason": "gcd(|G|, p-1) != 1"})
        return
    pn = None
    for i, N in enumerate(ctx.normals()):
        params = {"p": p, "N": f"normal#{i}"}
        q = quotient(G, N)
        if not is_p_nilpotent(q.image, p):
            ctx.emit("T4", params, False, None, {"N_order": N.order, "reason": "G/N not p-nilpotent"})
            continue
        P = sylow_subgroup(N, p)
        hyp, wit = sylow_hypotheses(G, P, p, ctx.drop)
        wit["N_order"] = N.order
        concl = None
        if hyp:
            pn = is_p_nilpotent(G, p) if pn is None else pn
            concl = pn
        ctx.emit("T4", params, hyp, concl, wit)


def t5_hypothesis(G: Subgroup, N: Subgroup, drop: frozenset = frozenset(), conjugator: int | None = None) -> tuple[bool, dict]:
    """Sylow hypotheses for every prime of ``|N|``; optionally on a conjugate Sylow."""
    per_prime = {}
    ok = True
    for p in prime_divisors(N.order):
        P = sylow_subgroup(N, p)
        if conjugator is not None:
            P = conjugate(P, conjugator)
        good, _ = sylow_hypotheses(G, P, p, drop)
        per_prime[str(p)] = good
        ok = ok and good
    return ok, per_prime


def _t5(ctx: _Ctx) -> None:
    G = ctx.G
    sup = None
    for i, N in enumerate(ctx.normals()):
        params = {"N": f"normal#{i}", "formation": "supersoluble"}
        if not is_supersoluble(quotient(G, N).image):
            ctx.emit("T5", params, False, None, {"N_order": N.order, "reason": "G/N not supersoluble"})
            continue
        hyp, per_prime = t5_hypothesis(G, N, ctx.drop)
        concl = None
        if hyp:
            sup = is_supersoluble(G) if sup is None else sup
            concl = sup
        ctx.emit("T5", params, hyp, concl, {"N_order": N.order, "per_prime": per_prime})


def _c1(ctx: _Ctx) -> None:
    G = ctx.G
    per_prime = {}
    hyp = True
    for p in prime_divisors(G.order):
        good, _ = sylow_hypotheses(G, sylow_subgroup(G, p), p, ctx.drop)
        per_prime[str(p)] = good
        hyp = hyp and good
    concl = is_sylow_tower_supersoluble_type(G) if hyp else None
    ctx.emit("C1", {"primes": prime_divisors(G.order)}, hyp, concl, {"per_prime": per_prime})


def _l1(ctx: _Ctx, p: int) -> None:
    G = ctx.G
    sample = sample_p_subgroups(G, p, ctx.sample_limit)
    for desc, H in sample:
        holds = _pi(G, H)
        for i, N in enumerate(ctx.normals()):
            params = {"p": p, "H": desc, "N": f"normal#{i}", "sampled": True}
            side = N.issubset(H) or math.gcd(H.order, N.order) == 1
            hyp = side and holds
            concl = None
            if hyp:
                q = quotient(G, N)
                concl = _pi(q.image_whole, q.image_of(H))
            wit = {"H_order": H.order, "N_order": N.order, "side_condition": side, "H_holds": holds}
            ctx.emit("L1", params, hyp, concl, wit)


def _l2(ctx: _Ctx, p: int) -> None:
    G = ctx.G
    for desc, H in sample_p_subgroups(G, p, ctx.sample_limit):
        holds = _pi(G, H)
        for i, N in enumerate(ctx.normals()):
            if not H.issubset(N):
                continue
            params = {"p": p, "H": desc, "N": f"normal#{i}", "sampled": True}
            concl = _pi(N, H) if holds else None
            ctx.emit("L2", params, holds, concl, {"H_order": H.order, "N_order": N.order})


def _l3_instance(ctx: _Ctx, N: Subgroup, P: Subgroup) -> tuple[bool, dict]:
    q = quotient(ctx.G, N)
    lhs = normalizer(q.image_whole, q.image_of(P))
    rhs = q.image_of(normalizer(ctx.G, P))
    return lhs == rhs, {"lhs_order": lhs.order, "rhs_order": rhs.order}


def _l3(ctx: _Ctx, p: int) -> None:
    G = ctx.G
    P = sylow_subgroup(G, p)
    sample = None
    for i, N in enumerate(ctx.normals()):
        ok, wit = _l3_instance(ctx, N, P)
        ctx.emit("L3", {"p": p, "N": f"normal#{i}", "case": "sylow"}, True, ok, wit)
        if N.order % p == 0:
            ctx.emit("L3", {"p": p, "N": f"normal#{i}", "case": "coprime"}, False, None, {"reason": "p divides |N|"})
            continue
        sample = sample if sample is not None else sample_p_subgroups(G, p, ctx.sample_limit)
        for desc, H in sample:
            ok, wit = _l3_instance(ctx, N, H)
            ctx.emit("L3", {"p": p, "N": f"normal#{i}", "case": "coprime", "H": desc, "sampled": True}, True, ok, wit)


def _quotient_maximals_hold(ctx: _Ctx, K: Subgroup, P: Subgroup, p: int) -> tuple[bool, dict]:
    q = quotient(ctx.G, K)
    Pbar = q.image_of(P)
    Nbar = normalizer(q.image_whole, Pbar)
    verdicts = [satisfies_partial_pi_in(q.image, M, Nbar).holds for M in maximal_subgroups_of_p_group(Pbar, p)]
    return all(verdicts), {"PK/K_order": Pbar.order, "quotient_maximal_verdicts": verdicts}


def _l4(ctx: _Ctx, p: int) -> None:
    G = ctx.G
    P = sylow_subgroup(G, p)
    if P.order == 1:
        return
    hyp = all(maximals_hold_in_normalizer(G, P, p))
    for i, K in enumerate(ctx.normals()):
        concl, wit = _quotient_maximals_hold(ctx, K, P, p) if hyp else (None, {})
        ctx.emit("L4", {"p": p, "K": f"normal#{i}"}, hyp, concl, wit)


def _l5(ctx: _Ctx, p: int) -> None:
    G = ctx.G
    normals = ctx.normals()
    for i, H in enumerate(normals):
        if H.order % p:
            continue
        P = sylow_subgroup(H, p)
        hyp = all(maximals_hold_in_normalizer(G, P, p))
        for j, K in enumerate(normals):
            if K.order % p == 0:
                continue
            concl, wit = _quotient_maximals_hold(ctx, K, P, p) if hyp else (None, {})
            ctx.emit("L5", {"p": p, "H": f"normal#{i}", "K": f"normal#{j}"}, hyp, concl, wit)


def _l6(ctx: _Ctx) -> None:
    G = ctx.G
    minimal = minimal_normal_overgroups(G, trivial(G))
    for i, N in enumerate(ctx.normals()):
        if N.order == 1 or not is_soluble(N):
            continue
        params = {"N": f"normal#{i}"}
        inside = [M for M in minimal if M.issubset(N)]
        hyp = all(complement(G, M) is not None for M in inside)
        wit: dict = {"N_order": N.order, "minimal_normal_orders": [M.order for M in inside]}
        concl = None
        if hyp:
            F = fitting_subgroup(N)
            prod = trivial(G)
            factors = []
            for M in inside:
                if not M.issubset(prod):
                    assert intersection(G, prod, M).order == 1
                    prod = join(G, prod, M)
                    factors.append(M.order)
            wit.update({"fitting_order": F.order, "direct_factor_orders": factors})
            concl = F == prod
        ctx.emit("L6", params, hyp, concl, wit)


def _l7(ctx: _Ctx, p: int) -> None:
    G = ctx.G
    P = sylow_subgroup(G, p)
    Phi = frattini_of_p_group(P, p)
    for i, N in enumerate(ctx.normals()):
        PN = intersection(G, P, N)
        hyp = PN.issubset(Phi)
        concl = is_p_nilpotent(N, p) if hyp else None
        ctx.emit("L7", {"p": p, "N": f"normal#{i}"}, hyp, concl, {"PcapN_order": PN.order, "Phi_order": Phi.order})


def _l8(ctx: _Ctx, p: int) -> None:
    G = ctx.G
    if not is_p_nilpotent(G, p):
        ctx.emit("L8", {"p": p}, False, None, {"reason": "G not p-nilpotent"})
        return
    for desc, H in sample_p_subgroups(G, p, ctx.sample_limit):
        ctx.emit("L8", {"p": p, "H": desc, "sampled": True}, True, _pi(G, H), {"H_order": H.order})


def _example_facts(G: Subgroup, p: int) -> dict:
    P = sylow_subgroup(G, p)
    NP = normalizer(G, P)
    D = derived_subgroup(P)
    d_verdict = satisfies_partial_pi(G, D)
    factors = [factor_detail(G, D, s.lower, s.upper) for s in first_chief_series(G).steps]
    return {
        "order": G.order,
        "P_order": P.order,
        "normalizer_order": NP.order,
        "normalizer_is_P": NP == P,
        "maximals_in_normalizer": maximals_hold_in_normalizer(G, P, p),
        "derived_order": D.order,
        "derived_holds": d_verdict.holds,
        "derived_factor_indices": [f.index for f in factors],
        "p_nilpotent": is_p_nilpotent(G, p),
        "p_soluble": is_p_soluble(G, p),
        "gcd_condition": gcd_condition(G.order, p),
    }


def _r1(ctx: _Ctx, p: int = 2) -> None:
    f = _example_facts(ctx.G, p)
    ok = (
        f["order"] == 168
        and f["normalizer_order"] == 8
        and f["normalizer_is_P"]
        and len(f["maximals_in_normalizer"]) == 3
        and all(f["maximals_in_normalizer"])
        and f["derived_order"] == 2
        and not f["derived_holds"]
        and 21 in f["derived_factor_indices"]
        and not f["p_nilpotent"]
        and not f["p_soluble"]
    )
    ctx.emit("R1", {"p": p}, True, ok, f)


def _r2(ctx: _Ctx, p: int = 3) -> None:
    f = _example_facts(ctx.G, p)
    ok = (
        f["order"] == 60
        and f["normalizer_order"] == 6
        and all(f["maximals_in_normalizer"])
        and f["derived_order"] == 1
        and f["derived_holds"]
        and not f["p_nilpotent"]
        and not f["gcd_condition"]
    )
    ctx.emit("R2", {"p": p}, True, ok, f)


_PRIME_RUNNERS: dict[str, Callable[[_Ctx, int], None]] = {
    "T1": _t1, "T2": _t2, "T3": _t3, "T4": _t4,
    "L1": _l1, "L2": _l2, "L3": _l3, "L4": _l4, "L5": _l5, "L7": _l7, "L8": _l8,
}
_GROUP_RUNNERS: dict[str, Callable[[_Ctx], None]] = {"T5": _t5, "C1": _c1, "L6": _l6}


def _example_applies(check_id: str, entry_tags: Iterable[str], name: str) -> bool:
    tag = f"example-{check_id}"
    default = {"R1": "PSL27", "R2": "A5"}[check_id]
    return tag in entry_tags or name == default


def run_check(
    check_id: str,
    G: Group | Subgroup,
    name: str = "G",
    p: int | None = None,
    drop: Iterable[str] = (),
    tags: Iterable[str] = (),
    sample_limit: int = SAMPLE_LIMIT,
) -> list[CheckReport]:
    """Run one check on one group; ``p=None`` means every prime dividing ``|G|``."""
    if check_id not in CHECK_IDS:
        raise ValueError(f"unknown check {check_id!r}")
    drop = frozenset(drop)
    bad = drop - set(DROPPABLE)
    if bad:
        raise ValueError(f"unknown hypotheses to drop: {sorted(bad)}")
    ctx = _Ctx(name=name, G=None, drop=drop, sample_limit=sample_limit)  # type: ignore[arg-type]
    ctx.t0 = time.perf_counter()
    try:
        ctx.G = as_subgroup(G)
        if check_id in ("R1", "R2"):
            if _example_applies(check_id, tags, name):
                runner = _r1 if check_id == "R1" else _r2
                runner(ctx) if p is None else runner(ctx, p)
        elif check_id in _GROUP_RUNNERS:
            _GROUP_RUNNERS[check_id](ctx)
        else:
            primes = prime_divisors(ctx.G.order) if p is None else [p]
            for q in primes:
                _PRIME_RUNNERS[check_id](ctx, q)
    except CapExceeded as exc:
        ctx.reports.append(
            CheckReport(check_id, name, {"p": p} if p else {}, None, None, SKIPPED, {"error": str(exc)},
                        round((time.perf_counter() - ctx.t0) * 1000.0, 3))
        )
    return ctx.reports


def run_entry(entry: CorpusEntry, checks: Iterable[str] = CHECK_IDS, primes: Iterable[int] | None = None,
              drop: Iterable[str] = (), sample_limit: int = SAMPLE_LIMIT) -> list[CheckReport]:
    reports: list[CheckReport] = []
    try:
        G = entry.group()
        order = G.order
    except CapExceeded as exc:
        return [CheckReport(c, entry.name, {}, None, None, SKIPPED, {"error": str(exc)}) for c in checks]
    for check_id in checks:
        if check_id in PRIME_CHECKS and primes is not None:
            for p in primes:
                reports += run_check(check_id, G, entry.name, p, drop, entry.tags, sample_limit)
        else:
            reports += run_check(check_id, G, entry.name, None, drop, entry.tags, sample_limit)
    del order
    return reports


def run_suite(entries: Iterable[CorpusEntry], checks: Iterable[str] = CHECK_IDS,
              primes: Iterable[int] | None = None, jobs: int = 1) -> list[CheckReport]:
    """All checks over all entries; output order is corpus order whatever ``jobs`` is."""
    entries = list(entries)
    checks = list(checks)
    primes = list(primes) if primes is not None else None
    if jobs <= 1:
        out: list[CheckReport] = []
        for e in entries:
            out += run_entry(e, checks, primes)
        return out
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(run_entry, e, checks, primes) for e in entries]
        return [r for f in futures for r in f.result()]


def search_counterexamples(check_id: str, entries: Iterable[CorpusEntry], drop: Iterable[str]) -> list[CheckReport]:
    """Re-run a check with hypotheses removed; returns the COUNTEREXAMPLE reports."""
    if check_id not in SEARCHABLE:
        raise ValueError(f"search supports {sorted(SEARCHABLE)}, not {check_id!r}")
    found = []
    for e in entries:
        for r in run_entry(e, [check_id], None, drop):
            if r.status == COUNTEREXAMPLE:
                found.append(r)
    return found


def summarize(reports: Iterable[CheckReport]) -> dict:
    counts = {"verified": 0, "vacuous": 0, "counterexample": 0, "skipped": 0}
    key = {VERIFIED: "verified", VACUOUS: "vacuous", COUNTEREXAMPLE: "counterexample", SKIPPED: "skipped"}
    for r in reports:
        counts[key[r.status]] += 1
    return counts


def breakdown(reports: Iterable[CheckReport]) -> dict[str, dict]:
    """Per check: status counts and the number of non-vacuous (group, prime) instances."""
    out: dict[str, dict] = {}
    inst: dict[str, set] = {}
    for r in reports:
        row = out.setdefault(r.check_id, {"verified": 0, "vacuous": 0, "counterexample": 0, "skipped": 0})
        row[{VERIFIED: "verified", VACUOUS: "vacuous", COUNTEREXAMPLE: "counterexample", SKIPPED: "skipped"}[r.status]] += 1
        if r.hypothesis_met:
            inst.setdefault(r.check_id, set()).add((r.group, r.params.get("p")))
    for cid, row in out.items():
        row["nonvacuous_instances"] = len(inst.get(cid, ()))
    return out
