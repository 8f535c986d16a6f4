"""Command line entry point: ``atac <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from . import io
from .bounds import bound_report, design_bound_report
from .constructions import FAMILIES, construct
from .errors import AtacError
from .lp import certificate_problems, data_limit
from .rational import format_rational
from .search import exact_limit, stderr_progress
from .structure import almost_plane_screen, classify, plane_existence


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text)


def cmd_limit(args) -> int:
    design = io.load_design(args.design)
    cert = data_limit(design)
    rep = design_bound_report(design)
    data = {
        "points": design.v,
        "blocks": design.b,
        "limit": format_rational(cert.limit),
        "certificate": io.certificate_to_dict(cert),
        "bounds": {
            "min_replication": format_rational(rep.rk_lower),
            "replication_sequence": format_rational(rep.rep_seq),
            "fractional_transversal": format_rational(rep.transversal),
            "max_block_size": format_rational(rep.rk_upper),
        },
    }
    if args.certificate_out:
        io.write_json(args.certificate_out, {"design": design.to_dict(), **io.certificate_to_dict(cert)})
    lines = [f"L(D) = {format_rational(cert.limit)}  ({design.v} points, {design.b} blocks)", "weighting:"]
    lines += [f"  {p}: {format_rational(w)}" for p, w in cert.weighting.items()]
    lines.append("block transversal: " + " ".join(format_rational(t) for t in cert.transversal))
    _emit(args, data, "\n".join(lines))
    return 0


def _bounds_row(m: int) -> dict:
    from .planner import best_known

    row = bound_report(m).to_dict()
    best = best_known(m)
    row["best_known_upper"] = format_rational(best.limit)
    row["best_known_design"] = best.describe()
    return row


def cmd_bounds(args) -> int:
    if args.range:
        lo, hi = args.range
    elif args.m is not None:
        lo = hi = args.m
    else:
        raise AtacError("give m or --range LO HI")
    if lo < 2 or hi < lo:
        raise AtacError("need 2 <= LO <= HI")
    rows = [_bounds_row(m) for m in range(lo, hi + 1)]
    if args.plot:
        from .plotting import plot_bounds

        plot_bounds(lo, hi, args.plot)
    if args.csv:
        cols = ["m", "s", "hkt_bound", "new_bound_decimal", "new_bound", "known_exact", "best_known_upper", "best_known_design"]
        writer = csv.DictWriter(sys.stdout, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return 0
    if args.json:
        print(json.dumps(rows[0] if len(rows) == 1 else rows, indent=2))
        return 0
    for r in rows:
        known = r["known_exact"] or "?"
        print(
            f"m={r['m']}: HKT {r['hkt_bound']}  F(m) {r['new_bound']} ~ {float(r['new_bound_decimal']):.4f}  "
            f"L(m) {known}  best design {r['best_known_upper']} [{r['best_known_design']}]"
        )
    return 0


def cmd_construct(args) -> int:
    design = construct(args.family, *args.params)
    data = design.to_dict()
    if args.out:
        io.write_json(args.out, data)
        if not args.json:
            print(f"wrote {args.family}({', '.join(map(str, args.params))}): {design.v} points, {design.b} blocks -> {args.out}")
            return 0
    print(json.dumps(data, indent=2))
    return 0


def cmd_classify(args) -> int:
    design = io.load_design(args.design)
    found = [str(s) for s in classify(design)]
    _emit(args, {"classes": found}, "\n".join(found) if found else "no recognised structure")
    return 0


def cmd_existence(args) -> int:
    st = almost_plane_screen(args.s, args.bound) if args.almost else plane_existence(args.s)
    kind = "almost projective plane" if args.almost else "projective plane"
    text = f"{kind} of order {st.order}: {st.status} ({st.reason})"
    if st.witness is not None:
        text += f" witness {st.witness}"
    _emit(args, st.to_dict(), text)
    return 0


def cmd_search(args) -> int:
    incumbent = None
    if args.seed_catalog:
        from .planner import best_known_design

        incumbent = best_known_design(args.m).design
    res = exact_limit(args.m, budget=args.budget, workers=args.workers, incumbent=incumbent, progress=stderr_progress)
    stderr_progress(res.stats)
    data = {
        "m": res.m,
        "limit": format_rational(res.limit),
        "seconds": round(res.seconds, 3),
        "stats": vars(res.stats),
        "witness": res.witness.to_dict(),
        "certificate": io.certificate_to_dict(res.certificate),
    }
    if args.witness:
        io.write_json(args.witness, {"design": res.witness.to_dict(), **io.certificate_to_dict(res.certificate)})
    _emit(args, data, f"L({res.m}) = {format_rational(res.limit)}  witness blocks: {res.witness.to_dict()['blocks']}")
    return 0


def _read_items(path) -> list[tuple[str, int]]:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = None
    if isinstance(data, dict):
        return [(str(k), v) for k, v in data.items()]
    if isinstance(data, list):
        out = []
        for entry in data:
            if isinstance(entry, dict):
                out.append((str(entry["id"]), entry["size"]))
            else:
                out.append((str(entry[0]), entry[1]))
        for _, size in out:
            if not isinstance(size, int) or isinstance(size, bool):
                raise AtacError("item sizes must be integers")
        return out
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise AtacError(f"bad item line {line!r}; expected 'id size'")
        try:
            out.append((parts[0], int(parts[1])))
        except ValueError as exc:
            raise AtacError(f"bad item size in {line!r}") from exc
    return out


def cmd_plan(args) -> int:
    from .planner import plan

    if (args.items is None) == (args.items_file is None):
        raise AtacError("give exactly one of --items N or --items-file PATH")
    design = io.load_design(args.design) if args.design else None
    if args.items is not None:
        manifest = plan(args.machines, n=args.items, design=design)
    else:
        manifest = plan(args.machines, items=_read_items(args.items_file), design=design)
    data = manifest.to_dict()
    if args.out:
        io.write_json(args.out, data)
    if args.json:
        print(json.dumps(data, indent=2))
        return 0
    print(f"design {manifest.source}: limit {format_rational(manifest.limit)}, "
          f"achieved max load {format_rational(manifest.achieved_max_load)}")
    for j, (blk, items, load) in enumerate(manifest.machines):
        print(f"  machine {j}: groups {blk}  {len(items)} items  load {format_rational(load)}")
    if manifest.empty_groups:
        print(f"  empty groups: {manifest.empty_groups}")
    if args.out:
        print(f"manifest -> {args.out}")
    return 0


def cmd_verify(args) -> int:
    design = io.load_design(args.design)
    cert = io.certificate_from_dict(io.read_json(args.certificate))
    problems = certificate_problems(design, cert)
    data = {"valid": not problems, "limit": format_rational(cert.limit), "problems": problems}
    if problems:
        _emit(args, data, "INVALID\n" + "\n".join(f"  {p}" for p in problems))
        return 1
    _emit(args, data, f"valid: L(D) = {format_rational(cert.limit)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON on standard output")
    p = argparse.ArgumentParser(prog="atac", description="All-to-all comparison data limits: exact LP, bounds, designs and placement plans.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("limit", parents=[common], help="exact L(D) of a design file with certificate")
    s.add_argument("design")
    s.add_argument("--certificate-out", metavar="PATH")
    s.set_defaults(func=cmd_limit)

    s = sub.add_parser("bounds", parents=[common], help="HKT bound, F(m), known values for m or a range")
    s.add_argument("m", type=int, nargs="?")
    s.add_argument("--range", type=int, nargs=2, metavar=("LO", "HI"))
    s.add_argument("--csv", action="store_true")
    s.add_argument("--plot", metavar="PNG")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("construct", parents=[common], help="build a design: " + ", ".join(FAMILIES))
    s.add_argument("family", choices=sorted(FAMILIES))
    s.add_argument("params", type=int, nargs="+")
    s.add_argument("--out", metavar="PATH")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("classify", parents=[common], help="recognise named structures in a design file")
    s.add_argument("design")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("existence", parents=[common], help="existence screen for planes of order s")
    s.add_argument("s", type=int)
    s.add_argument("--almost", action="store_true", help="screen almost projective planes instead")
    s.add_argument("--bound", type=int, default=10_000, help="search bound for the ternary form")
    s.set_defaults(func=cmd_existence)

    s = sub.add_parser("search", parents=[common], help="exact L(m) by exhaustive search (m <= 7)")
    s.add_argument("m", type=int)
    s.add_argument("--budget", type=float, metavar="SECONDS")
    s.add_argument("--witness", metavar="PATH")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--seed-catalog", action="store_true", help="start the bound from the best catalog design")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("plan", parents=[common], help="placement manifest for m machines")
    s.add_argument("--machines", type=int, required=True)
    s.add_argument("--items", type=int, metavar="N", help="number of equal-size items")
    s.add_argument("--items-file", metavar="PATH", help="items with sizes: JSON or 'id size' lines")
    s.add_argument("--design", metavar="PATH", help="use this design instead of the catalog")
    s.add_argument("--out", metavar="PATH")
    s.set_defaults(func=cmd_plan)

    s = sub.add_parser("verify-certificate", parents=[common], help="re-check a saved certificate")
    s.add_argument("design")
    s.add_argument("certificate")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AtacError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
