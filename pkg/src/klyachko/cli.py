"""Command-line surface.

Subcommands: count, enumerate, acm, cohom, chern, resolve, stable, split,
validate.  Wherever a bundle file is accepted, a shifting-index string
like "-1,0;-1,0;0,2" may be given instead and is expanded through
:func:`klyachko.bundles.rank2_bundle`.

Exit codes: 0 success, 1 internal cross-check failure, 2 usage error,
3 parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time

from . import census, chern, cohomology, resolution
from .bundles import ShiftingIndices, ToricBundle, rank2_bundle, tangent_bundle
from .bundleio import BundleParseError, load_bundle_file


class CheckFailure(Exception):
    """An internal consistency assertion failed; maps to exit code 1."""


def _parse_delta(text: str) -> ShiftingIndices:
    try:
        return ShiftingIndices.parse(text)
    except ValueError as e:
        raise BundleParseError(f"bad shifting indices {text!r}: {e}") from None


def _load_bundle(args) -> ToricBundle:
    if getattr(args, "bundle", None):
        return load_bundle_file(args.bundle)
    if getattr(args, "delta", None):
        return rank2_bundle(_parse_delta(args.delta))
    raise CommandUsageError("one of --bundle or --delta is required")


class CommandUsageError(Exception):
    """Bad arguments detected after parsing; maps to exit code 2."""


def _parse_twist_range(text: str) -> tuple[int, int]:
    sep = ".."
    if sep not in text:
        raise CommandUsageError(f"twist range must look like a..b, got {text!r}")
    left, _, right = text.partition(sep)
    try:
        lo, hi = int(left), int(right)
    except ValueError:
        raise CommandUsageError(f"twist range must look like a..b, got {text!r}") from None
    if lo > hi:
        raise CommandUsageError(f"empty twist range {text!r}")
    return lo, hi


def _entry_row(entry: census.CensusEntry) -> dict:
    return {"delta": str(entry.delta), "type": entry.type_tag}


def cmd_count(args) -> int:
    d = args.d
    methods = [args.method] if args.method else ["closed", "recurrence", "enumerate"]
    values = {}
    for method in methods:
        if method == "closed":
            values[method] = census.count_closed(d)
        elif method == "recurrence":
            values[method] = census.count_recurrence(d)
        elif method == "enumerate":
            values[method] = len(census.enumerate_si(d))
        else:
            values[method] = len(census.brute_force_census(d, test="oracle"))
    for method in methods:
        print(f"{method:<10} {values[method]}")
    distinct = set(values.values())
    if len(distinct) > 1:
        raise CheckFailure(f"counting methods disagree for d = {d}: {values}")
    print(f"S(P^2, d={d}; rank 2) = {distinct.pop()}")
    return 0


def cmd_enumerate(args) -> int:
    entries = census.enumerate_si(args.d)
    rows = [_entry_row(e) for e in entries]
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    elif args.format == "csv":
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=["delta", "type"])
        writer.writeheader()
        writer.writerows(rows)
        print(out.getvalue(), end="")
    else:
        width = max((len(r["delta"]) for r in rows), default=5)
        print(f"{'delta':<{width}}  type")
        for r in rows:
            print(f"{r['delta']:<{width}}  {r['type']}")
        print(f"total: {len(rows)}")
    return 0


def cmd_acm(args) -> int:
    d = args.d
    delta = None
    if args.delta:
        delta = _parse_delta(args.delta)
        bundle = rank2_bundle(delta)
    else:
        bundle = _load_bundle(args)
        if bundle.fan.dim == 2 and bundle.rank == 2 and not bundle.is_split():
            delta = bundle.shifting_indices()

    parts = []
    verdicts = set()
    if delta is not None:
        fast = census.is_d_acm_fast(delta, d)
        parts.append(f"fast={'yes' if fast else 'no'}")
        verdicts.add(fast)
    run_oracle = args.oracle or delta is None
    if run_oracle:
        oracle = census.is_d_acm_oracle(bundle, d)
        parts.append(f"oracle={'yes' if oracle else 'no'}")
        verdicts.add(oracle)
    if len(verdicts) > 1:
        print(f"d-aCM: ? ({', '.join(parts)})")
        raise CheckFailure(f"fast and oracle tests disagree for d = {d}")
    verdict = verdicts.pop()
    print(f"d-aCM: {'yes' if verdict else 'no'} ({', '.join(parts)})")
    return 0


def cmd_cohom(args) -> int:
    bundle = _load_bundle(args)
    t_min, t_max = _parse_twist_range(args.twists) if args.twists else (0, 0)
    if args.graded:
        print("t p m dim")
        for t in range(t_min, t_max + 1):
            twisted = bundle.twist_by_degree(t)
            graded = cohomology.graded_cohomology(twisted)
            for (p, m), dim in sorted(graded.items()):
                m_text = ",".join(str(x) for x in m)
                print(f"{t} {p} ({m_text}) {dim}")
        return 0
    table = cohomology.cohomology_table(bundle, t_min, t_max)
    ts = list(range(t_min, t_max + 1))
    if args.format == "json":
        doc = {
            "rank": table.rank,
            "t_min": t_min,
            "t_max": t_max,
            "entries": [
                {"p": p, "t": t, "h": table.h(p, t)} for p in range(table.n + 1) for t in ts
            ],
        }
        print(json.dumps(doc, indent=2))
    elif args.format == "csv":
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["p"] + [f"t={t}" for t in ts])
        for p, row in table.rows():
            writer.writerow([p] + row)
        print(out.getvalue(), end="")
    else:
        cells = [["p\\t"] + [str(t) for t in ts]]
        for p, row in table.rows():
            cells.append([f"h^{p}"] + [str(v) for v in row])
        widths = [max(len(r[c]) for r in cells) for c in range(len(cells[0]))]
        for r in cells:
            print("  ".join(x.rjust(w) for x, w in zip(r, widths)))
    return 0


def cmd_chern(args) -> int:
    bundle = _load_bundle(args)
    data = chern.chern_total(bundle)
    print(f"rank {data.rank}, c1 = {data.c1}*H, c2 = {data.c2}*H^2")
    return 0


def cmd_resolve(args) -> int:
    delta = _parse_delta(args.delta)
    report = resolution.verify_resolution(delta)
    print(resolution.format_sequence(report.resolution))
    degrees = ", ".join(str(x) for x in report.resolution.middle_degrees)
    print(f"degrees: left {report.resolution.left_degree}; middle {degrees}")
    print(f"rank check: 3 - 1 = 2          {'ok' if report.rank_ok else 'FAIL'}")
    print(
        f"c1 check: filtration {report.c1_filtration}, resolution {report.c1_resolution}"
        f"   {'ok' if report.c1_ok else 'FAIL'}"
    )
    t_lo, t_hi = report.chi_rows[0][0], report.chi_rows[-1][0]
    print(f"chi check over twists {t_lo}..{t_hi}:   {'ok' if report.chi_ok else 'FAIL'}")
    if not report.ok:
        raise CheckFailure(f"resolution verification failed for {delta}")
    return 0


def cmd_stable(args) -> int:
    bundle = _load_bundle(args)
    delta = bundle.shifting_indices()
    widths = ",".join(str(w) for w in delta.band_widths)
    stable = bundle.is_slope_stable()
    print(f"slope-stable: {'yes' if stable else 'no'} (band widths {widths})")
    return 0


def cmd_split(args) -> int:
    bundle = _load_bundle(args)
    print(f"splits: {'yes' if bundle.is_split() else 'no'}")
    return 0


def _validate_checks(max_d: int, rng: random.Random):
    from .bundles import line_bundle

    def check_counts():
        for d in range(2, max_d + 1):
            a = census.count_closed(d)
            b = census.count_recurrence(d)
            c = len(census.enumerate_si(d))
            if not a == b == c:
                return f"d={d}: closed {a}, recurrence {b}, enumerate {c}"
        return None

    def check_small_lists():
        si2 = [e.delta.flat for e in census.enumerate_si(2)]
        if si2 != [(-1, 0, -1, 0, 0, 1)]:
            return f"SI(2) = {si2}"
        si3 = [e.delta.flat for e in census.enumerate_si(3)]
        expected = [
            (-1, 0, -1, 0, 0, 1),
            (-1, 0, -1, 0, 0, 2),
            (-1, 0, -1, 0, 1, 2),
            (-1, 0, -1, 1, 0, 1),
            (-1, 1, -1, 0, 0, 1),
        ]
        if si3 != expected:
            return f"SI(3) = {si3}"
        four = census.enumerate_si(4)
        n_iii = sum(1 for e in four if e.type_tag == "III")
        if len(four) != 15 or n_iii != 6:
            return f"|SI(4)| = {len(four)}, type III = {n_iii}"
        return None

    def check_fast_oracle():
        for d in (2, 3):
            for delta in census.shifting_index_box(d):
                fast = census.is_d_acm_fast(delta, d)
                oracle = census.is_d_acm_oracle(rank2_bundle(delta), d)
                if fast != oracle:
                    return f"d={d}, delta={delta}: fast={fast}, oracle={oracle}"
        return None

    def check_normalization():
        probe = census.normalize(ShiftingIndices.from_flat((0, 1, 0, 1, 0, 1)), 2)
        if probe is None or probe.delta.flat != (-1, 0, -1, 0, 0, 1):
            return f"normalize(tangent) = {probe}"
        for d in (2, 3):
            brute = [e.delta for e in census.brute_force_census(d)]
            direct = [e.delta for e in census.enumerate_si(d)]
            if brute != direct:
                return f"d={d}: brute census has {len(brute)} entries, direct {len(direct)}"
        return None

    def check_resolutions():
        for d in range(2, min(max_d, 5) + 1):
            for entry in census.enumerate_si(d):
                if not resolution.verify_resolution(entry.delta).ok:
                    return f"resolution check failed at {entry.delta}"
        return None

    def check_known_cohomology():
        t = tangent_bundle(2)
        values = [cohomology.h(t, p) for p in range(3)]
        if values != [8, 0, 0]:
            return f"h(T) = {values}"
        tm3 = t.twist((-1, -1, -1))
        graded = cohomology.graded_cohomology(tm3, degrees=[1])
        if graded != {(1, (0, 0)): 1}:
            return f"graded h^1(T(-3)) = {graded}"
        for tt in range(0, 7):
            if cohomology.h(line_bundle((0, 0, tt)), 0) != (tt + 1) * (tt + 2) // 2:
                return f"h^0(O({tt})) wrong"
        if cohomology.h(line_bundle((0, 0, -3)), 2) != 1:
            return "h^2(O(-3)) wrong"
        return None

    def check_chern():
        data = chern.chern_total(tangent_bundle(2))
        if (data.rank, data.c1, data.c2) != (2, 3, 3):
            return f"chern(T) = {data}"
        data = chern.chern_total(rank2_bundle(ShiftingIndices.from_flat((-1, 0, -1, 0, 0, 2))))
        if (data.rank, data.c1, data.c2) != (2, 0, 1):
            return f"chern(-1,0;-1,0;0,2) = {data}"
        return None

    def check_stability_and_duality():
        if not rank2_bundle(ShiftingIndices.from_flat((-1, 0, -1, 0, 0, 1))).is_slope_stable():
            return "tangent twist should be stable"
        if rank2_bundle(ShiftingIndices.from_flat((-1, 0, -1, 0, 0, 2))).is_slope_stable():
            return "(-1,0;-1,0;0,2) should not be stable"
        for _ in range(10):
            flat = []
            for _ in range(3):
                f = rng.randint(-3, 3)
                flat.extend((f, f + rng.randint(1, 4)))
            bundle = rank2_bundle(ShiftingIndices.from_flat(flat))
            dual = bundle.dual()
            for t in range(-4, 5):
                lhs = cohomology.h(bundle.twist_by_degree(t), 2)
                rhs = cohomology.h(dual.twist_by_degree(-t - 3), 0)
                if lhs != rhs:
                    return f"Serre duality fails for {flat} at t={t}: {lhs} != {rhs}"
        return None

    def check_inclusions():
        sets = {d: {e.delta for e in census.enumerate_si(d)} for d in range(2, max_d + 1)}
        for d in range(2, max_d):
            if not sets[d] <= sets[d + 1]:
                return f"SI({d}) not contained in SI({d + 1})"
            for delta in sets[d]:
                if not census.is_d_acm_fast(delta, d + 1):
                    return f"{delta} in SI({d}) fails the fast test at d = {d + 1}"
        return None

    return [
        ("counting agreement", check_counts),
        ("small census lists", check_small_lists),
        ("fast vs oracle", check_fast_oracle),
        ("normalization", check_normalization),
        ("resolution consistency", check_resolutions),
        ("known cohomology values", check_known_cohomology),
        ("chern values", check_chern),
        ("stability and duality", check_stability_and_duality),
        ("census monotonicity", check_inclusions),
    ]


def cmd_validate(args) -> int:
    rng = random.Random(20240815)
    failures = 0
    for name, check in _validate_checks(args.max_d, rng):
        start = time.perf_counter()
        detail = check()
        elapsed = time.perf_counter() - start
        if detail is None:
            print(f"PASS {name} ({elapsed:.2f}s)")
        else:
            failures += 1
            print(f"FAIL {name}: {detail}")
    if failures:
        raise CheckFailure(f"{failures} validation check(s) failed")
    print("all checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="klyachko",
        description="Toric bundles on P^2: cohomology, Chern data, and the d-aCM census.",
    )
    parser.add_argument(
        "--no-color", action="store_true", help="plain output (output is always plain)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_bundle_args(p, delta_only=False):
        p.add_argument("--delta", help='shifting indices, e.g. "-1,0;-1,0;0,2"')
        if not delta_only:
            p.add_argument("--bundle", help="path to a bundle JSON file")

    p = sub.add_parser("count", help="census size by several methods")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--method", choices=["closed", "recurrence", "enumerate", "oracle"])
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list the canonical census for a given d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--format", choices=["table", "json", "csv"], default="table")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("acm", help="decide the d-aCM condition")
    add_bundle_args(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="also run the cohomological test")
    p.set_defaults(func=cmd_acm)

    p = sub.add_parser("cohom", help="cohomology table over a twist range")
    add_bundle_args(p)
    p.add_argument("--twists", help="twist range a..b (default 0..0)")
    p.add_argument("--format", choices=["table", "json", "csv"], default="table")
    p.add_argument("--graded", action="store_true", help="list (t, p, m, dim) entries")
    p.set_defaults(func=cmd_cohom)

    p = sub.add_parser("chern", help="rank, c1 and c2")
    add_bundle_args(p)
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("resolve", help="two-term resolution and its verification")
    p.add_argument("--delta", required=True, help='shifting indices, e.g. "-1,0;-1,0;0,2"')
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("stable", help="slope stability of a rank-2 bundle")
    add_bundle_args(p)
    p.set_defaults(func=cmd_stable)

    p = sub.add_parser("split", help="does the bundle split into line bundles")
    add_bundle_args(p)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("validate", help="run the built-in cross-validation battery")
    p.add_argument("--max-d", type=int, default=10, dest="max_d")
    p.set_defaults(func=cmd_validate)

    return parser


# options whose values routinely start with a dash ("-1,0;..." or "-3..3")
_DASH_VALUE_OPTIONS = ("--delta", "--twists")


def _absorb_dash_values(argv: list[str]) -> list[str]:
    """Rewrite "--delta -1,..." to "--delta=-1,..." so argparse keeps the value."""
    out = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in _DASH_VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{arg}={argv[i + 1]}")
            i += 2
        else:
            out.append(arg)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_absorb_dash_values(list(argv)))
    try:
        return args.func(args)
    except BundleParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 3
    except CheckFailure as e:
        print(f"check failed: {e}", file=sys.stderr)
        return 1
    except CommandUsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
