"""Command-line front end.  Every command is a thin adapter over the library."""

import argparse
import json
import random
import sys

from . import io as dio
from .graded import ContractError, DimensionError
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _doc(args):
    if not args.input:
        raise UsageError("--input is required for this command")
    return dio.load(args.input)


def _pick(table, name, what):
    if name is not None:
        if name not in table:
            raise UsageError("no %s named %r" % (what, name))
        return [(name, table[name])]
    if not table:
        raise UsageError("document has no %s" % what)
    return sorted(table.items())


def _combine(title, parts, **extra):
    r = Report(title, **extra)
    for name, rep in parts:
        r.extend(rep, "%s: " % name if len(parts) > 1 else "")
    return r


# ------------------------------------------------------------ check

def cmd_check(args):
    from .ainfty import check_ainfty, check_ainfty_coalgebra, check_comodule, \
        check_homotopy_counital
    from .dgcat import validate_dgcat
    doc = _doc(args)
    kind = args.kind
    parts = []
    if kind == "complex":
        for name, C in _pick(doc.complexes, args.name, "complexes"):
            r = Report("complex %s" % name)
            dd = C.d @ C.d
            r.add("d^2 = 0", dd.is_zero(), None if dd.is_zero() else dd.entries()[:4])
            parts.append((name, r))
    elif kind == "dgcat":
        for name, cat in _pick(doc.dgcats, args.name, "dgcats"):
            r = cat.check_d_squared()
            lo, hi = cat.window if cat.window else (-2, 2)
            r.extend(validate_dgcat(cat, cat.objects, range(lo, hi + 1)))
            parts.append((name, r))
    elif kind == "ainfty":
        for name, A in _pick(doc.ainfty, args.name, "ainfty"):
            parts.append((name, check_ainfty(A, args.max_arity)))
    elif kind == "coalgebra":
        for name, C in _pick(doc.coalgebras, args.name, "coalgebras"):
            parts.append((name, check_ainfty_coalgebra(C, args.max_arity)))
    elif kind == "comodule":
        for name, M in _pick(doc.comodules, args.name, "comodules"):
            r = check_comodule(M, args.max_arity)
            if M.co.counit is not None:
                h, rep = check_homotopy_counital(M)
                r.add("homotopy counital", rep.ok and h is not None)
            parts.append((name, r))
    return _combine("check %s" % kind, parts)


def cmd_bar(args):
    from .ainfty import bar_construct
    doc = _doc(args)
    parts = []
    data = {}
    for name, A in _pick(doc.ainfty, args.name, "ainfty"):
        bar = bar_construct(A, args.length)
        parts.append((name, bar.check_d_squared()))
        data[name] = {"words": len(bar.words)}
    r = _combine("bar", parts)
    r.data = data
    return r


def cmd_cobar(args):
    from .ainfty import cobar_construct
    doc = _doc(args)
    parts = []
    data = {}
    for name, C in _pick(doc.coalgebras, args.name, "coalgebras"):
        cob = cobar_construct(C, max_len=args.length)
        parts.append((name, cob.check_d_squared()))
        data[name] = {"words": len(cob.words)}
    r = _combine("cobar", parts)
    r.data = data
    return r


def cmd_simplex_cat(args):
    from .simplex import simplex_category
    n = args.levels
    cat = simplex_category(n, max_len=n + 1)
    r = Report("simplex category k[%d]" % n, truncation={"n": n})
    r.extend(cat.check_d_squared())
    if args.emit:
        r.data = {"generators": [{"index": list(I), "src": s, "dst": t, "deg": d}
                                 for I, (s, t, d) in sorted(cat.generators.items())]}
    return r


# ------------------------------------------------------------ afun

def cmd_afun(args):
    from .simplex import demo_target, constant_functor, strict_functor, bent_functor, \
        validate_afun_object, random_afun_morphism, afun_laws
    n = args.levels
    rng = random.Random(args.seed)
    cat, L, C = demo_target()
    incl = cat.hom_basis(L, C, 0)[0]
    objs = [constant_functor(cat, L, n, "const(L)"), constant_functor(cat, C, n, "const(Cone)"),
            strict_functor(cat, [L] + [C] * n, [None, incl] + [cat.identity(C)] * (n - 1),
                           "L->Cone")]
    if n == 2:
        objs.append(bent_functor(cat, C, cat.hom_basis(C, C, -1)[0]))
    r = Report("afun %s" % args.op, truncation={"n": n}, seed=args.seed)
    if args.op == "validate":
        for F in objs:
            r.extend(validate_afun_object(F), F.name + ": ")
        return r
    pairs = {}
    for _ in range(args.iters):
        a, b = rng.randrange(len(objs)), rng.randrange(len(objs))
        pairs.setdefault((a, b), []).append(
            random_afun_morphism(rng, objs[a], objs[b], rng.choice((-1, 0, 1))))
    which = ("unit", "assoc") if args.op == "compose" else ("d2", "leibniz")
    return afun_laws(pairs, r, which=which)


# ------------------------------------------------------------ cech

def _parse_cover(points, cover):
    pts = list(range(1, points + 1))
    try:
        opens = [[int(x) for x in part.split(",") if x.strip()] for part in cover.split(";")]
    except ValueError:
        raise UsageError("cover must look like '1,2;2,3'")
    return pts, opens


def cmd_cech(args):
    from .cosimplicial import FiniteCover, cech_system, validate_cosimplicial
    pts, opens = _parse_cover(args.points, args.cover)
    try:
        cover = FiniteCover(pts, opens)
    except ContractError as exc:
        raise UsageError(str(exc))
    sysm = cech_system(cover, args.levels)
    r = Report("cech", truncation={"levels": args.levels})
    r.extend(validate_cosimplicial(sysm))
    dims = [L.dim for L in sysm.levels]
    expected = [cover.intersection_count(n) for n in range(args.levels + 1)]
    r.add("level dimensions match intersection counts", dims == expected,
          None if dims == expected else {"dims": dims, "expected": expected})
    r.data = {"dims": dims}
    if args.emit:
        r.data["document"] = {
            "field": {"kind": "QQ"},
            "covers": {"cover": {"points": [str(p) for p in pts],
                                 "opens": [[str(p) for p in U] for U in opens]}},
            "systems": {"cech": {"cover": "cover", "levels": args.levels}}}
    return r


# ------------------------------------------------------------ holim

def _holim_objects(args):
    from .holim import canonical_object
    from .harness import test_systems, holim_seeds
    if args.input:
        doc = _doc(args)
        out = []
        for name, h in _pick(doc.holim, args.name, "holim objects"):
            out.append(canonical_object(h["system"], h["base"], name))
        return out
    sysm = test_systems(args.levels)[1 if args.nilpotent else 0]
    return holim_seeds(sysm, random.Random(args.seed))


def cmd_holim(args):
    from .holim import validate_holim_object, crosscheck_equalizer
    from .harness import holim_laws, comodule_translation
    objs = _holim_objects(args)
    rng = random.Random(args.seed)
    sysm = objs[0].system
    r = Report("holim %s" % args.op, truncation={"N": sysm.N}, seed=args.seed)
    if args.op == "validate":
        for o in objs:
            r.extend(validate_holim_object(o, sysm.N), o.name + ": ")
    elif args.op in ("compose", "diff"):
        which = ("assoc", "unit") if args.op == "compose" else ("d2", "leibniz")
        r.extend(holim_laws(objs, rng, args.iters, which=which))
    elif args.op == "to-comodule":
        r.extend(comodule_translation(objs, rng, args.iters, args.max_arity or 5))
    elif args.op == "crosscheck":
        rep = crosscheck_equalizer(objs, N=min(2, sysm.N))
        r.extend(rep)
        r.data = {"counts": rep.counts}
    return r


# ------------------------------------------------------------ descent

def _descent_data(args):
    """(datum, base module) pairs: canonical data on A ⊗_B X."""
    from .descent import canonical_datum
    if args.input:
        doc = _doc(args)
        return [(canonical_datum(d["system"], d["base"]), d["base"])
                for _, d in _pick(doc.descent, args.name, "descent data")]
    from .harness import test_systems
    from .algebra import free_module
    sysm = test_systems(min(args.levels, 2))[0]
    X = free_module(sysm.base, 1, name="B")
    return [(canonical_datum(sysm, X), X)]


def cmd_descent(args):
    from .descent import validate_descent, descent_to_comodule, validate_strict_comodule, \
        holim_matches_descent, barr_beck_roundtrip, iso_iff_unit, f2_sweep
    r = Report("descent %s" % args.op, seed=args.seed)
    if args.op == "iso-unit" and not args.input:
        rep = f2_sweep()
        r.extend(rep)
        r.data = {"stats": rep.stats}
        return r
    dims = {}
    for d, X in _descent_data(args):
        if args.op == "check":
            r.extend(validate_descent(d), d.name + ": ")
        elif args.op == "to-comodule":
            c = descent_to_comodule(d)
            r.extend(validate_strict_comodule(c), d.name + ": ")
            r.extend(holim_matches_descent(d), d.name + ": ")
        elif args.op == "descend":
            rep = barr_beck_roundtrip(d.system, X)
            r.extend(rep, d.name + ": ")
            dims[d.name] = rep.descended.dim
        elif args.op == "iso-unit":
            iso, unit = iso_iff_unit(d)
            r.add(d.name + ": invertible iff unital", iso == unit, {"iso": iso, "unit": unit})
    if dims:
        r.data = {"descended_dim": dims}
    return r


# ------------------------------------------------------------ selftest

def cmd_selftest(args):
    from .harness import selftest
    return selftest(args.seed, args.iters)


# ------------------------------------------------------------ parser

def build_parser():
    p = argparse.ArgumentParser(prog="dgdescent",
                                description="Exact checks for dg, A-infinity and descent data.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON document")
    common.add_argument("--name", help="entry of the document to use (default: all)")
    common.add_argument("--emit", action="store_true", help="include constructed data")
    common.add_argument("--max-arity", type=int, default=None)
    common.add_argument("--length", type=int, default=4)
    common.add_argument("--levels", type=int, default=2)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--iters", type=int, default=20)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="human", action="store_false", default=False)
    fmt.add_argument("--human", dest="human", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common])
    c.add_argument("kind", choices=["complex", "dgcat", "ainfty", "coalgebra", "comodule"])
    c.set_defaults(fn=cmd_check)
    sub.add_parser("bar", parents=[common]).set_defaults(fn=cmd_bar)
    sub.add_parser("cobar", parents=[common]).set_defaults(fn=cmd_cobar)
    sub.add_parser("simplex-cat", parents=[common]).set_defaults(fn=cmd_simplex_cat)
    a = sub.add_parser("afun", parents=[common])
    a.add_argument("op", choices=["validate", "compose", "diff"])
    a.set_defaults(fn=cmd_afun)
    ce = sub.add_parser("cech", parents=[common])
    ce.add_argument("--points", type=int, required=True)
    ce.add_argument("--cover", required=True, help="opens separated by ';', e.g. '1,2;2,3'")
    ce.set_defaults(fn=cmd_cech)
    h = sub.add_parser("holim", parents=[common])
    h.add_argument("op", choices=["validate", "compose", "diff", "to-comodule", "crosscheck"])
    h.add_argument("--nilpotent", action="store_true",
                   help="without --input, use k[x]/(x^2) coefficients")
    h.set_defaults(fn=cmd_holim)
    d = sub.add_parser("descent", parents=[common])
    d.add_argument("op", choices=["check", "to-comodule", "descend", "iso-unit"])
    d.set_defaults(fn=cmd_descent)
    s = sub.add_parser("selftest", parents=[common])
    s.set_defaults(fn=cmd_selftest, iters=50)
    return p


def report_json(r):
    out = r.to_json()
    data = getattr(r, "data", None)
    if data is not None:
        out["data"] = data
    return json.dumps(out, sort_keys=True, indent=2, ensure_ascii=False)


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.levels < 1:
        print("error: --levels must be at least 1", file=stderr)
        return EXIT_USAGE
    try:
        r = args.fn(args)
    except UsageError as exc:
        parser.print_usage(stderr)
        print("error: %s" % exc, file=stderr)
        return EXIT_USAGE
    except dio.SchemaError as exc:
        print("schema error: %s" % exc, file=stderr)
        return EXIT_IO
    except OSError as exc:
        print("I/O error: %s" % exc, file=stderr)
        return EXIT_IO
    except (ContractError, DimensionError) as exc:
        print("contract error: %s" % exc, file=stderr)
        return EXIT_FAIL
    if args.human:
        print(r.summary(), file=stdout)
    else:
        print(report_json(r), file=stdout)
    print(r.summary(), file=stderr)
    return EXIT_OK if r.ok else EXIT_FAIL
