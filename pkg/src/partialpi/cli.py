"""Command-line front end: ``partialpi {info,check-pi,verify,search}``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import harness
from .corpus import CorpusEntry, find, load_corpus
from .errors import CapExceeded, GroupError
from .perm import parse_permutation, set_element_cap
from .pi import satisfies_partial_pi_in
from .subgroups import (
    Subgroup,
    as_subgroup,
    derived_subgroup,
    normalizer,
    pi_of,
    subgroup,
    sylow_subgroup,
)
from .structure import structure_profile

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _csv(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _load(path: str) -> list[CorpusEntry]:
    return load_corpus(path)


def _entry(entries: list[CorpusEntry], name: str) -> CorpusEntry:
    try:
        return find(entries, name)
    except KeyError:
        raise GroupError(f"no group named {name!r} in corpus") from None


def _prime_arg(desc: str, prefix: str) -> int:
    try:
        return int(desc[len(prefix):])
    except ValueError:
        raise GroupError(f"bad prime in {desc!r}") from None


def resolve_subgroup(G: Subgroup, desc: str, degree: int) -> Subgroup:
    if desc.startswith("derived-of-sylow:"):
        return derived_subgroup(sylow_subgroup(G, _prime_arg(desc, "derived-of-sylow:")))
    if desc.startswith("sylow:"):
        return sylow_subgroup(G, _prime_arg(desc, "sylow:"))
    if desc.startswith("cyclic:"):
        g = parse_permutation(desc[len("cyclic:"):], degree)
        if g not in G.ambient:
            raise GroupError(f"{g} is not an element of the group")
        return subgroup(G, [g])
    raise GroupError(f"unknown subgroup descriptor {desc!r}")


def resolve_ambient(G: Subgroup, desc: str) -> Subgroup:
    if desc == "group":
        return G
    if desc.startswith("normalizer-of-sylow:"):
        return normalizer(G, sylow_subgroup(G, _prime_arg(desc, "normalizer-of-sylow:")))
    raise GroupError(f"unknown ambient descriptor {desc!r}")


def cmd_info(args) -> int:
    e = _entry(_load(args.corpus), args.name)
    G = e.group()
    prof = structure_profile(G)
    out = {"name": e.name, "degree": e.degree, "order": G.order, "pi": list(pi_of(as_subgroup(G))),
           "tags": list(e.tags), "profile": prof.to_dict()}
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_check_pi(args) -> int:
    e = _entry(_load(args.corpus), args.group)
    G = as_subgroup(e.group())
    H = resolve_subgroup(G, args.subgroup, e.degree)
    M = resolve_ambient(G, args.ambient)
    if not H.issubset(M):
        raise GroupError(f"{args.subgroup} is not contained in {args.ambient}")
    v = satisfies_partial_pi_in(G, H, M)
    out = {
        "group": e.name,
        "subgroup": args.subgroup,
        "subgroup_order": H.order,
        "ambient": args.ambient,
        "ambient_order": M.order,
        "holds": v.holds,
        "explored": v.explored,
        "witness": [[s.lower.order, s.upper.order] for s in v.witness.steps] if v.witness else None,
    }
    print(json.dumps(out))
    return EXIT_OK


def _print_breakdown(reports: list[harness.CheckReport]) -> None:
    print(f"{'check':<6} {'verified':>9} {'vacuous':>8} {'counterex':>9} {'skipped':>8} {'instances':>9}")
    for cid in harness.CHECK_IDS:
        row = harness.breakdown(reports).get(cid)
        if row is None:
            continue
        print(f"{cid:<6} {row['verified']:>9} {row['vacuous']:>8} {row['counterexample']:>9} "
              f"{row['skipped']:>8} {row['nonvacuous_instances']:>9}")


def _write_report(path: str, reports: list[harness.CheckReport], summary: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in reports:
            fh.write(json.dumps(r.to_dict(), sort_keys=True) + "\n")
        fh.write(json.dumps({"summary": summary}, sort_keys=True) + "\n")


def cmd_verify(args) -> int:
    entries = _load(args.corpus)
    checks = _csv(args.checks) if args.checks else list(harness.CHECK_IDS)
    for c in checks:
        if c not in harness.CHECK_IDS:
            raise GroupError(f"unknown check {c!r}")
    primes = [int(p) for p in _csv(args.primes)] if args.primes else None
    if args.cap:
        set_element_cap(args.cap)
    print(f"sampling policy: {harness.SAMPLING_POLICY}")
    reports = harness.run_suite(entries, checks, primes, jobs=args.jobs)
    summary = harness.summarize(reports)
    _print_breakdown(reports)
    print(json.dumps({"summary": summary}))
    if args.report:
        _write_report(args.report, reports, summary)
    for r in reports:
        if r.status == harness.COUNTEREXAMPLE:
            print(f"COUNTEREXAMPLE {r.check_id} {r.group} {json.dumps(r.params)}", file=sys.stderr)
    if summary["counterexample"]:
        return EXIT_COUNTEREXAMPLE
    if summary["skipped"]:
        return EXIT_CAP
    return EXIT_OK


def cmd_search(args) -> int:
    entries = _load(args.corpus)
    drop = [] if args.drop == "none" else [args.drop]
    found = harness.search_counterexamples(args.check, entries, drop)
    for r in found:
        print(json.dumps(r.to_dict(), sort_keys=True))
    print(json.dumps({"check": args.check, "drop": args.drop, "counterexamples": len(found)}))
    if args.report:
        _write_report(args.report, found, harness.summarize(found))
    # dropping a hypothesis is expected to break the statement; dropping nothing is not
    expected = bool(drop)
    return EXIT_OK if bool(found) == expected else EXIT_COUNTEREXAMPLE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="partialpi", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="order, prime set and structure profile of one group")
    p.add_argument("corpus", help="corpus file, or 'builtin'")
    p.add_argument("name")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("check-pi", help="decide the partial Pi-property for one subgroup")
    p.add_argument("--corpus", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--subgroup", required=True, help="derived-of-sylow:p | sylow:p | cyclic:<perm>")
    p.add_argument("--ambient", default="group", help="group | normalizer-of-sylow:p")
    p.set_defaults(func=cmd_check_pi)

    p = sub.add_parser("verify", help="run the statement checks over a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--checks", help="comma list, e.g. T1,T3,R1 (default: all)")
    p.add_argument("--primes", help="comma list of primes (default: every prime of |G|)")
    p.add_argument("--cap", type=int, help="element enumeration cap")
    p.add_argument("--report", help="write JSON lines report here")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="look for counterexamples with a hypothesis removed")
    p.add_argument("--corpus", required=True)
    p.add_argument("--check", required=True, choices=sorted(harness.SEARCHABLE))
    p.add_argument("--drop", required=True, choices=list(harness.DROPPABLE) + ["none"])
    p.add_argument("--report")
    p.set_defaults(func=cmd_search)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GroupError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
