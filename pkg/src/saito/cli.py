"""Command-line interface: ``saito {info,euler,zeta,dual,verify,fuzz,batch}``."""

import argparse
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__, abelian, corpus, fuzz
from .abelian import format_element, size_guard
from .errors import InternalInconsistency, ParseError, SaitoError
from .invertible import (THEOREMS, Check, build_dual_pair, enhanced_euler, milnor_number,
                         parse_spec, reduced_enhanced_euler, reduced_orbifold_zeta,
                         resolve_subgroup, symmetry_data, transpose, verify_duality)
from .report import Report, emit

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _location(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return f"{line}:{col}"


def load_spec(path):
    """Parse a spec file; a missing path falls back to the shipped corpus of that name."""
    if not Path(path).exists() and corpus.find(Path(path).name) is not None:
        path = corpus.find(Path(path).name)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return parse_spec(text)
    except ParseError as exc:
        where = f"{path}:{_location(text, exc.position)}" if exc.position is not None else str(path)
        msg = str(exc).split(" (at position")[0]
        raise InputError(f"{where}: {type(exc).__name__}: {msg}") from None


def _subgroups_for(s, selector, spec_subgroup):
    """Resolve ``--subgroup``: trivial, full, all, or a generator list."""
    if selector is None:
        return [resolve_subgroup(s, spec_subgroup)] if spec_subgroup else [resolve_subgroup(s, None)]
    if selector == "all":
        return abelian.subgroups(s.Gf)
    if selector == "trivial":
        return [resolve_subgroup(s, None)]
    if selector == "full":
        return [s.Gf.subgroup_from_elements(s.Gf.elements)]
    return [resolve_subgroup(s, abelian.parse_element_list(selector))]


def _matrix(E):
    return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in E) + "]"


# ---------------------------------------------------------------------------
# verbs

def cmd_info(args):
    spec = load_spec(args.input)
    p = spec.poly
    s = symmetry_data(p)
    ker = s.alphaf.kernel()
    r = Report("info")
    r.section(str(args.input), [
        ("polynomial", p),
        ("E", _matrix(p.E)),
        ("det", p.det),
        ("weights", "(" + ",".join(map(str, s.q)) + ")"),
        ("milnor number", milnor_number(s)),
        ("order of G_f", s.Gf.order),
        ("cyclic type", s.Gf.cyclic_type),
        ("h_f", format_element(s.hf)),
        ("kernel of alpha_f", f"order {ker.order}: {ker}"),
    ])
    r.fields = {
        "polynomial": str(p),
        "E": [list(row) for row in p.E],
        "det": p.det,
        "weights": [str(w) for w in s.q],
        "milnor_number": str(milnor_number(s)),
        "order": s.Gf.order,
        "cyclic_type": s.Gf.cyclic_type,
        "h_f": format_element(s.hf),
        "alpha_f_kernel": [format_element(x) for x in ker],
    }
    return r


def cmd_euler(args):
    spec = load_spec(args.input)
    s = symmetry_data(spec.poly)
    full = enhanced_euler(s)
    red = reduced_enhanced_euler(s)
    r = Report("euler")
    r.section(str(args.input), [
        ("polynomial", spec.poly),
        ("euler", full),
        ("reduced euler", red),
        ("augmentation", full.augmentation()),
    ])
    r.fields = {"polynomial": str(spec.poly), "euler": str(red), "euler_full": str(full),
                "augmentation": full.augmentation()}
    return r


def cmd_zeta(args):
    spec = load_spec(args.input)
    s = symmetry_data(spec.poly)
    groups = _subgroups_for(s, args.subgroup, spec.subgroup)
    rows = [(f"G={G}", reduced_orbifold_zeta(s, G)) for G in groups]
    r = Report("zeta")
    if len(rows) == 1:
        r.section(str(args.input), [("polynomial", spec.poly), ("subgroup", groups[0]),
                                    ("zeta", rows[0][1])])
        r.fields = {"polynomial": str(spec.poly), "subgroup": str(groups[0]),
                    "zeta": str(rows[0][1])}
    else:
        r.section(str(args.input), [("polynomial", spec.poly)] + rows)
        r.fields = {"polynomial": str(spec.poly),
                    "zeta": [{"subgroup": str(G), "zeta": str(z)} for G, (_, z) in zip(groups, rows)]}
    return r


def cmd_dual(args):
    spec = load_spec(args.input)
    dp = build_dual_pair(spec.poly)
    groups = _subgroups_for(dp.f, args.subgroup, spec.subgroup)
    Pf = dp.P.transposed()
    pt = transpose(spec.poly)
    r = Report("dual")
    rows = [("polynomial", spec.poly), ("transpose", pt)]
    duals = []
    for G in groups:
        Gt = abelian.dual_subgroup(G, Pf)
        rows.append((f"dual of {G}", Gt))
        duals.append({"subgroup": str(G), "dual_subgroup": str(Gt)})
    r.section(str(args.input), rows)
    r.section("transpose spec", [(line.split(":")[0], line.split(":", 1)[1].strip())
                                 for line in pt.to_spec().splitlines()])
    r.fields = {"polynomial": str(spec.poly), "transpose": pt.to_spec(), "duals": duals}
    return r


def _theorems(selected):
    return THEOREMS if selected == "all" else (selected,)


def verify_file(path, theorem, subgroup=None):
    spec = load_spec(path)
    G = None
    if subgroup not in (None, "all"):
        s = symmetry_data(spec.poly)
        G = _subgroups_for(s, subgroup, None)[0]
    elif subgroup is None and spec.subgroup:
        G = spec.subgroup
    checks = []
    for which in _theorems(theorem):
        for c in verify_duality(spec.poly, which, G):
            checks.append(Check(f"{which}: {c.name}", c.status, c.lhs, c.rhs))
    r = Report("verify")
    r.section(str(path), [("polynomial", spec.poly), ("transpose", transpose(spec.poly))])
    r.fields = {"polynomial": str(spec.poly)}
    r.checks = checks
    return r


def cmd_verify(args):
    reports = [verify_file(p, args.theorem, args.subgroup) for p in args.inputs]
    if len(reports) == 1:
        return reports[0]
    merged = Report("verify")
    for rep in reports:
        merged.sections.extend(rep.sections)
        merged.checks.extend(Check(f"{rep.fields['polynomial']}: {c.name}", c.status, c.lhs, c.rhs)
                             for c in rep.checks)
    merged.fields = {"polynomials": [rep.fields["polynomial"] for rep in reports]}
    return merged


def cmd_fuzz(args):
    laws = fuzz.LAWS if args.law == "all" else (args.law,)
    results = fuzz.run_fuzz(args.seed, args.iterations, laws, args.group_order)
    r = Report("fuzz")
    r.section("fuzz", [("seed", args.seed), ("iterations", args.iterations),
                       ("max group order", args.group_order)])
    for res in results:
        detail = "; ".join(res.failures[:3])
        r.checks.append(Check(f"{res.law} ({res.cases} cases, {len(res.failures)} failures)",
                              "PASS" if res.passed else "FAIL", detail, ""))
    r.fields = {"seed": args.seed, "iterations": args.iterations}
    return r


def _batch_one(path, theorem, fmt, out_dir, limit):
    with size_guard(limit):
        try:
            rep = verify_file(path, theorem)
        except (InputError, SaitoError) as exc:
            rep = Report("verify")
            rep.checks = [Check("input", "FAIL", str(exc), "")]
    out = Path(out_dir) / (Path(path).stem + (".json" if fmt == "json" else ".txt"))
    out.write_bytes(emit(rep, fmt))
    passed = sum(c.passed for c in rep.checks)
    return Path(path).name, rep.status, passed, len(rep.checks)


def cmd_batch(args):
    files = sorted(Path(args.directory).glob("*.poly"))
    if not files:
        raise InputError(f"{args.directory}: no *.poly files")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    limit = abelian.max_order()
    jobs = [(str(f), args.theorem, args.format, str(out_dir), limit) for f in files]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_batch_one, *zip(*jobs)))
    else:
        rows = [_batch_one(*j) for j in jobs]
    rows.sort()
    width = max(len(name) for name, *_ in rows)
    summary = [f"{'input'.ljust(width)}  status  checks"]
    summary += [f"{name.ljust(width)}  {status:<6}  {p}/{n}" for name, status, p, n in rows]
    (out_dir / "summary.txt").write_text("\n".join(summary) + "\n", encoding="utf-8")
    r = Report("batch")
    r.section("batch", [(name, f"{status} {p}/{n}") for name, status, p, n in rows])
    r.checks = [Check(name, status) for name, status, _, _ in rows]
    r.fields = {"results": [{"input": name, "status": status, "passed": p, "checks": n}
                            for name, status, p, n in rows]}
    return r


# ---------------------------------------------------------------------------
# entry point

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-order", type=int, default=None,
                        help="size guard for enumerated groups (default $SAITO_MAX_ORDER or 5000)")

    parser = argparse.ArgumentParser(prog="saito", description=__doc__)
    parser.add_argument("--version", action="version", version=f"saito {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    for verb, helptext in (("info", "exponent matrix, weights and symmetry group"),
                           ("euler", "enhanced Euler characteristic of the Milnor fibre")):
        p = sub.add_parser(verb, parents=[common], help=helptext)
        p.add_argument("input")

    p = sub.add_parser("zeta", parents=[common], help="reduced orbifold zeta function")
    p.add_argument("input")
    p.add_argument("--subgroup", help="trivial (default), full, all, or generators '(1/2,0) (0,1/3)'")

    p = sub.add_parser("dual", parents=[common], help="transpose polynomial and dual subgroup")
    p.add_argument("input")
    p.add_argument("--subgroup")

    p = sub.add_parser("verify", parents=[common], help="check the duality theorems")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--theorem", choices=("all",) + THEOREMS, default="all")
    p.add_argument("--subgroup", help="restrict thm1/corollary to one subgroup (default: all)")

    p = sub.add_parser("fuzz", parents=[common], help="randomized structural-law checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iterations", type=int, default=500)
    p.add_argument("--group-order", type=int, default=24)
    p.add_argument("--law", choices=("all",) + fuzz.LAWS, default="all")

    p = sub.add_parser("batch", parents=[common], help="verify every *.poly file in a directory")
    p.add_argument("directory")
    p.add_argument("--out", required=True)
    p.add_argument("--theorem", choices=("all",) + THEOREMS, default="all")
    p.add_argument("--jobs", type=int, default=1)
    return parser


COMMANDS = {"info": cmd_info, "euler": cmd_euler, "zeta": cmd_zeta, "dual": cmd_dual,
            "verify": cmd_verify, "fuzz": cmd_fuzz, "batch": cmd_batch}


def run(argv=None, stdout=None):
    """Run one command; returns ``(report, exit_status)``."""
    args = build_parser().parse_args(argv)
    limit = args.max_order
    if limit is None:
        limit = abelian.max_order()
    with size_guard(limit):
        try:
            report = COMMANDS[args.verb](args)
        except InputError as exc:
            print(f"saito: {exc}", file=sys.stderr)
            return None, EXIT_INPUT
        except InternalInconsistency as exc:
            print(f"saito: internal inconsistency: {exc}", file=sys.stderr)
            return None, EXIT_FAIL
        except SaitoError as exc:
            print(f"saito: {type(exc).__name__}: {exc}", file=sys.stderr)
            return None, EXIT_INPUT
    out = stdout or sys.stdout.buffer
    out.write(emit(report, args.format))
    out.flush()
    return report, EXIT_FAIL if report.status == "FAIL" else EXIT_OK


def main(argv=None):
    warnings.formatwarning = lambda msg, cat, *a, **k: f"saito: warning: {msg}\n"
    _, status = run(argv)
    return status


if __name__ == "__main__":
    sys.exit(main())
