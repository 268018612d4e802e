"""Command-line interface.

Node indices are 1-based on the command line.  Exit codes:
0 success, 2 bad arguments, 3 word is not a Coxeter element of the subset,
4 Weyl group larger than ``--cap``, 5 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Sequence

from . import __version__
from .errors import GroupTooLarge, NonCartan, NotCoxeter, UnknownType, VerificationFailure
from .localization import LocalizationCache, billey_restrict
from .peterson import (
    PetersonBasis,
    Report,
    component_factorization_check,
    conjecture_multiplicity,
    multiplicity,
    multiplicity_via_heights,
    normal_roots,
    schubert_expansion,
    stability_check,
    structure_constants,
    verify_conjecture,
    verify_duality,
    verify_positivity,
)
from .rootsystem import (
    DynkinSpec,
    RootSystem,
    all_subsets,
    build,
    cartan_determinant,
    exponents,
    highest_root,
    highest_root_product,
    members,
)
from .weyl import DEFAULT_CAP, format_word, is_coxeter, weyl_group

EXIT_USAGE = 2
EXIT_NOT_COXETER = 3
EXIT_TOO_LARGE = 4
EXIT_VERIFY = 5

SUITES = ("duality", "positivity", "conjecture", "stability", "factorization")


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        self.flag = flag
        super().__init__(f"{flag}: {message}")


# ---------------------------------------------------------------- parsing helpers

def load_root_system(text: str) -> RootSystem:
    try:
        if text.endswith(".json"):
            return build(DynkinSpec.load_json(text))
        return build(DynkinSpec.parse(text))
    except (UnknownType, NonCartan, OSError, ValueError) as exc:
        raise UsageError("--type", str(exc)) from None


def parse_subset(text: str | None, rs: RootSystem, flag: str = "--subset") -> int:
    if text is None:
        return rs.full
    text = text.strip()
    if text in ("", "-", "{}"):
        return 0
    out = 0
    try:
        for tok in text.split(","):
            i = int(tok) - 1
            if not 0 <= i < rs.rank:
                raise ValueError
            out |= 1 << i
    except ValueError:
        raise UsageError(flag, f"expected comma-separated nodes in 1..{rs.rank}, got {text!r}") from None
    return out


def parse_element(text: str, rs: RootSystem, flag: str):
    text = text.strip()
    if text in ("", "e", "-"):
        return weyl_group(rs).identity
    try:
        word = [int(tok) - 1 for tok in text.split(",")]
    except ValueError:
        raise UsageError(flag, f"expected comma-separated letters, got {text!r}") from None
    if any(not 0 <= i < rs.rank for i in word):
        raise UsageError(flag, f"letters must lie in 1..{rs.rank}")
    return weyl_group(rs).from_word(word)


def fmt_subset(m: int) -> str:
    return ",".join(str(i + 1) for i in members(m)) or "-"


def fmt_word(word) -> str:
    return format_word(word) or "e"


def emit(args, payload: dict, header: Sequence[str], rows: list[Sequence], title: str | None = None):
    """Write a table as aligned text, JSON (``payload``) or CSV."""
    out = sys.stdout
    if args.format == "json":
        json.dump(payload, out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    else:
        if title:
            out.write(title + "\n")
        cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
        widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
        for r in cells:
            out.write("  ".join(c.ljust(widths[k]) for k, c in enumerate(r)).rstrip() + "\n")


def _store(args, rs):
    if not args.cache_dir:
        return None
    return LocalizationCache(args.cache_dir, rs.name)


# ---------------------------------------------------------------- commands

def cmd_roots(args) -> int:
    rs = load_root_system(args.type)
    roots = [(list(r), sum(r)) for r in rs.positive_roots]
    comps = rs.components()
    payload = {
        "type": rs.name,
        "rank": rs.rank,
        "positive_roots": [{"coords": c, "height": h} for c, h in roots],
        "exponents": list(rs.exponent_list),
        "highest_roots": [list(highest_root(rs, c)) for c in comps],
        "highest_root_product": highest_root_product(rs, rs.full),
        "cartan_determinant": cartan_determinant(rs, rs.full),
        "weyl_group_order": rs.group_order,
    }
    title = (
        f"{rs.name}: {len(roots)} positive roots, exponents {', '.join(map(str, rs.exponent_list))}, "
        f"highest root product {payload['highest_root_product']}, det {payload['cartan_determinant']}"
    )
    emit(args, payload, ["root", "height"], [[" ".join(map(str, c)), h] for c, h in roots], title)
    return 0


def cmd_weyl_info(args) -> int:
    rs = load_root_system(args.type)
    g = weyl_group(rs)
    sub = parse_subset(args.subset, rs)
    w0 = g.longest_element(sub)
    cox = g.coxeter_elements(sub)
    payload = {
        "type": rs.name,
        "subset": [i + 1 for i in members(sub)],
        "order": g.rs.group_order if sub == rs.full else len(g.enumerate(args.cap, within=sub)),
        "longest": {"word": [i + 1 for i in w0.word], "length": w0.length},
        "coxeter_elements": [
            {"word": [i + 1 for i in v.word], "reduced_words": g.count_reduced_words(v)} for v in cox
        ],
    }
    rows = [["longest", fmt_word(w0.word), w0.length, g.count_reduced_words(w0)]]
    rows += [["coxeter", fmt_word(v.word), v.length, g.count_reduced_words(v)] for v in cox]
    if args.word is not None:
        w = parse_element(args.word, rs, "--word")
        payload["element"] = {
            "word": [i + 1 for i in w.word],
            "length": w.length,
            "reduced_words": g.count_reduced_words(w),
            "support": [i + 1 for i in members(w.support)],
        }
        rows.append(["element", fmt_word(w.word), w.length, g.count_reduced_words(w)])
    title = f"{rs.name} subset {fmt_subset(sub)}: |W_I| = {payload['order']}"
    emit(args, payload, ["kind", "word", "length", "reduced_words"], rows, title)
    return 0


def cmd_localize(args) -> int:
    rs = load_root_system(args.type)
    v = parse_element(args.v, rs, "--v")
    w = parse_element(args.w, rs, "--w")
    store = _store(args, rs)
    val = store.restrict(v, w) if store else billey_restrict(v, w)
    if store:
        store.save()
    payload = {"type": rs.name, "v": [i + 1 for i in v.word], "w": [i + 1 for i in w.word],
               **val.to_json()}
    emit(args, payload, ["v", "w", "value"], [[fmt_word(v.word), fmt_word(w.word), str(val)]])
    return 0


def cmd_multiplicity(args) -> int:
    rs = load_root_system(args.type)
    g = weyl_group(rs)
    sub = parse_subset(args.subset, rs)
    v = parse_element(args.word, rs, "--word") if args.word is not None else g.default_coxeter(sub)
    if not is_coxeter(v, sub):
        raise NotCoxeter(f"{fmt_word(v.word)} is not a Coxeter element of {{{fmt_subset(sub)}}}")
    m = multiplicity(rs, sub, v)
    exps = exponents(rs, sub)
    b = billey_restrict(v, g.longest_element(sub))
    payload = {
        "type": rs.name,
        "subset": [i + 1 for i in members(sub)],
        "coxeter": [i + 1 for i in v.word],
        "multiplicity": m,
        "restriction": b.to_json(),
        "exponents": exps,
    }
    rows = [["m", m], ["restriction", str(b)], ["exponents", " ".join(map(str, exps)) or "-"]]
    if args.heights:
        roots = normal_roots(rs, sub, v)
        hv = multiplicity_via_heights(rs, sub, v)
        payload["heights"] = {"roots": [list(r) for r in roots],
                              "heights": [sum(r) for r in roots], "value": str(hv)}
        rows += [["normal_root_heights", " ".join(str(sum(r)) for r in roots) or "-"],
                 ["via_heights", str(hv)]]
    if args.conjecture:
        res = conjecture_multiplicity(rs, sub, v, args.cap)
        payload["conjecture"] = _conjecture_json(res)
        rows += [["reduced_words", res.reduced_words],
                 ["via_group_order", "skipped" if res.via_group_order is None else str(res.via_group_order)],
                 ["via_highest_root", res.via_highest_root],
                 ["via_components", res.via_components]]
    emit(args, payload, ["quantity", "value"], rows, f"{rs.name} I={{{fmt_subset(sub)}}} v={fmt_word(v.word)}")
    return 0


def _conjecture_json(res) -> dict:
    return {
        "subset": [i + 1 for i in members(res.I)],
        "coxeter": [i + 1 for i in res.word],
        "connected": res.connected,
        "multiplicity": res.multiplicity,
        "reduced_words": res.reduced_words,
        "group_order": res.group_order,
        "cartan_determinant": res.cartan_determinant,
        "highest_root_product": res.highest_root_product,
        "via_group_order": None if res.via_group_order is None else str(res.via_group_order),
        "via_highest_root": res.via_highest_root,
        "via_components": res.via_components,
        "agree": res.agree,
        "agree_componentwise": res.agree_componentwise,
    }


def _basis(args, rs):
    store = _store(args, rs)
    return PetersonBasis(rs, store=store), store


def cmd_expand(args) -> int:
    rs = load_root_system(args.type)
    sub = parse_subset(args.subset, rs)
    store = _store(args, rs)
    choices = None
    if args.word is not None:
        v = parse_element(args.word, rs, "--word")
        if not is_coxeter(v, sub):
            raise NotCoxeter(f"{fmt_word(v.word)} is not a Coxeter element of {{{fmt_subset(sub)}}}")
        choices = {sub: v}
    basis = PetersonBasis(rs, choices, store=store)
    exp = schubert_expansion(basis, sub, cap=args.cap)
    if store:
        store.save()
    rows = [[fmt_word(u.word), str(c.coeff), c.degree] for u, c in exp.items()]
    title = f"{rs.name} [P_{{{fmt_subset(sub)}}}] with v={fmt_word(basis.coxeter[sub].word)}, m={basis.m(sub)}"
    emit(args, exp.to_json(), ["u", "coeff", "deg"], rows, title)
    return 0


def cmd_multiply(args) -> int:
    rs = load_root_system(args.type)
    I = parse_subset(args.I, rs, "--I")
    J = parse_subset(args.J, rs, "--J")
    basis, store = _basis(args, rs)
    sc = structure_constants(basis, I, J)
    if store:
        store.save()
    rows = [[fmt_subset(K), fmt_word(basis.coxeter[K].word), str(c.coeff), c.degree] for K, c in sc.items()]
    title = f"{rs.name} p_{{{fmt_subset(I)}}} * p_{{{fmt_subset(J)}}}"
    emit(args, sc.to_json(), ["K", "coxeter", "coeff", "deg"], rows, title)
    return 0


def run_suites(rs: RootSystem, suites: Sequence[str], cap: int, store=None) -> list[Report]:
    reports = []
    basis = PetersonBasis(rs, store=store)
    for suite in suites:
        if suite == "duality":
            reports.append(verify_duality(basis, raise_on_failure=False))
        elif suite == "positivity":
            reports.append(verify_positivity(basis, cap=cap, raise_on_failure=False))
        elif suite == "conjecture":
            reports.append(verify_conjecture(rs, cap=cap)[0])
        elif suite == "stability":
            rep = Report(f"stability[{rs.name}]")
            for sub in all_subsets(rs.rank):
                if sub != rs.full:
                    r = stability_check(rs, sub, raise_on_failure=False)
                    rep.checks += r.checks
                    rep.violations += r.violations
            reports.append(rep)
        elif suite == "factorization":
            rep = Report(f"factorization[{rs.name}]")
            for sub in all_subsets(rs.rank):
                r = component_factorization_check(rs, sub, raise_on_failure=False)
                rep.checks += r.checks
                rep.violations += r.violations
            reports.append(rep)
    return reports


def cmd_verify(args) -> int:
    rs = load_root_system(args.type)
    suites = [s.strip() for s in args.suite.split(",") if s.strip()]
    unknown = [s for s in suites if s not in SUITES]
    if unknown or not suites:
        raise UsageError("--suite", f"unknown suite(s) {unknown}; choose from {', '.join(SUITES)}")
    store = _store(args, rs)
    reports = run_suites(rs, suites, args.cap, store)
    if store:
        store.save()
    payload = {
        "type": rs.name,
        "reports": [
            {"name": r.name, "ok": r.ok, "checks": r.checks, "violations": r.violations}
            for r in reports
        ],
    }
    rows = [[r.name, "PASS" if r.ok else "FAIL", r.checks, len(r.violations)] for r in reports]
    emit(args, payload, ["suite", "status", "checks", "violations"], rows)
    failed = [r for r in reports if not r.ok]
    for r in failed:
        for v in r.violations:
            print(f"violation: {r.name}: {v}", file=sys.stderr)
    return EXIT_VERIFY if failed else 0


def cmd_conjecture(args) -> int:
    rs = load_root_system(args.type)
    subsets = None if args.subset is None else [parse_subset(args.subset, rs)]
    rep, results = verify_conjecture(rs, every_coxeter=not args.default_only, cap=args.cap,
                                     subsets=subsets)
    payload = {"type": rs.name, "results": [_conjecture_json(r) for r in results], "ok": rep.ok}
    rows = [
        [fmt_subset(r.I), fmt_word(r.word), r.multiplicity, r.reduced_words,
         "skipped" if r.via_group_order is None else str(r.via_group_order),
         r.via_highest_root, r.via_components,
         "yes" if r.agree else ("componentwise" if r.agree_componentwise else "NO")]
        for r in results
    ]
    emit(args, payload,
         ["I", "v", "m", "|R(v)|", "via_|W_I|", "via_prod_a", "via_components", "agree"], rows)
    return 0


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    env_cap = os.environ.get("PETERSON_SCHUBERT_CAP")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", required=True,
                        help='Dynkin type such as "B2" or "A2xA1", or a JSON Cartan matrix path')
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--cache-dir", default=os.environ.get("PETERSON_SCHUBERT_CACHE_DIR"))
    common.add_argument("--cap", type=_positive_int,
                        default=_positive_int(env_cap) if env_cap else DEFAULT_CAP,
                        help="maximum Weyl group size to enumerate")

    parser = argparse.ArgumentParser(prog="peterson-schubert",
                                     description="Equivariant Peterson Schubert calculus")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", parents=[common], help="positive roots, heights and exponents")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("weyl-info", parents=[common], help="Weyl group data for a subset")
    p.add_argument("--subset")
    p.add_argument("--word")
    p.set_defaults(func=cmd_weyl_info)

    p = sub.add_parser("localize", parents=[common], help="restriction of sigma_v to w")
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("multiplicity", parents=[common], help="intersection multiplicity m(v_I)")
    p.add_argument("--subset")
    p.add_argument("--word")
    p.add_argument("--heights", action="store_true", help="also evaluate the root-height formula")
    p.add_argument("--conjecture", action="store_true", help="also evaluate the closed forms")
    p.set_defaults(func=cmd_multiplicity)

    p = sub.add_parser("expand", parents=[common], help="Schubert expansion of [P_I]")
    p.add_argument("--subset")
    p.add_argument("--word", help="Coxeter element to use for the subset")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("multiply", parents=[common], help="structure constants of p_I * p_J")
    p.add_argument("--I", required=True)
    p.add_argument("--J", required=True)
    p.set_defaults(func=cmd_multiply)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", default="duality,positivity,conjecture,stability",
                   help=f"comma-separated from {', '.join(SUITES)}")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", parents=[common], help="closed-form multiplicity report")
    p.add_argument("--subset")
    p.add_argument("--default-only", action="store_true")
    p.set_defaults(func=cmd_conjecture)
    return parser


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.exit(EXIT_USAGE, f"{parser.prog}: error: {exc}\n")
    except NotCoxeter as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_COXETER
    except GroupTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except VerificationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
