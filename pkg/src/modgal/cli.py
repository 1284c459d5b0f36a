"""Command line driver.

Subcommands pair a noun with a verb (`a4 analyze`, `gl2 verify`, ...)
and print stable machine-readable lines: identical inputs give byte
identical output.  Exit codes: 0 success, 1 mismatch, 2 validation,
3 undetermined, 4 unsupported, 5 data gap.
"""

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor

from .a4pipeline import QuarticInvalid, decide_real_or_complex, \
    load_quartic, validate_quartic
from .finitefield import finite_field, is_prime
from .galrep import DirichletChar, frob_charpoly, load_rep, rep_field
from .gl2 import build_space, eigensystems, verify_prop27
from .hecke import AttachmentReport, check_attachment, hecke_polynomial, \
    load_eigensystem, save_eigensystem
from .quadforms import ClassGroup, reduce_cycle
from .serre import choose_exponents, predicted_level, predicted_nebentype, \
    predictions, strict_parity
from .twoadic import UndeterminedAtTwo

OK, MISMATCH, INVALID, UNDETERMINED, UNSUPPORTED, DATA_GAP = 0, 1, 2, 3, 4, 5


def _fail(code, msg):
    print("error: %s" % msg, file=sys.stderr)
    return code


def _classify(e):
    s = str(e)
    if "ramified prime" in s or "bad prime" in s or "missing" in s:
        return DATA_GAP
    if "niveau" in s or "unsupported" in s or "out of scope" in s:
        return UNSUPPORTED
    return INVALID


def _pmap(fn, items, jobs):
    """Map preserving input order; jobs > 1 fans out to threads."""
    if jobs > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def _fmt_elem(x):
    return ",".join(str(d) for d in x.rep)


# ---------------------------------------------------------------------------
# a4

def cmd_a4_analyze(args):
    try:
        datasets = [load_quartic(path) for path in args.data]
    except (OSError, ValueError) as e:
        return _fail(INVALID, e)

    def run(ds):
        chk = validate_quartic(ds)
        if not chk.ok:
            return chk, None, None
        try:
            return chk, decide_real_or_complex(ds), None
        except (QuarticInvalid, ValueError, UndeterminedAtTwo) as e:
            return chk, None, e

    code = OK
    for ds, (chk, rpt, err) in zip(datasets,
                                   _pmap(run, datasets, args.jobs)):
        for line in chk.format_lines():
            print(line)
        if rpt is not None:
            for line in rpt.format_lines():
                print(line)
        elif not chk.ok:
            code = code or INVALID
        elif isinstance(err, UndeterminedAtTwo):
            print("p %d verdict undetermined" % ds.p)
            code = code or UNDETERMINED
        else:
            print("error: %s" % err, file=sys.stderr)
            code = code or INVALID
    return code


# ---------------------------------------------------------------------------
# dihedral

def cmd_dihedral_analyze(args):
    p = args.p
    if not is_prime(p) or p % 4 != 1:
        return _fail(INVALID, "p must be a prime congruent to 1 mod 4")
    group = ClassGroup(p)
    print("p %d h %d" % (p, group.h))
    if group.h > 1:
        print("generator %s" % (group.generator().tuple(),))
    for i, form in enumerate(group.reps):
        print("class %d form %s cycle %d"
              % (i, form.tuple(), len(reduce_cycle(form))))
    return OK


# ---------------------------------------------------------------------------
# predict

def _fmt_arr(arr):
    return "".join("(%s)" % ",".join(str(q) for q in ps) for ps in arr)


def cmd_predict(args):
    try:
        rep = load_rep(args.rep)
    except (OSError, ValueError) as e:
        return _fail(INVALID, e)
    if rep.dim == 2:
        # a bare block is not a conjecture input; list its small twists
        try:
            rows = choose_exponents(rep)
        except ValueError as e:
            return _fail(_classify(e), e)
        print("p %d dim 2" % rep.p)
        for j, k, a, b, c, g in rows:
            print("j %d k %d a %d b %d c %d g %d" % (j, k, a, b, c, g))
        return OK
    try:
        lev = predicted_level(rep)
        eps = predicted_nebentype(rep)
        par = strict_parity(rep)
        ws = predictions(rep)
    except ValueError as e:
        return _fail(_classify(e), e)
    print("p %d dim %d" % (rep.p, rep.dim))
    print("level %d" % lev)
    if eps.is_trivial():
        print("nebentype trivial")
    else:
        print("nebentype modulus %d values %s"
              % (eps.modulus, " ".join(_fmt_elem(v) for v in eps.gen_values)))
    print("parity global %s" % ("ok" if par.global_ok else "fail"))
    for arr, signs, reason in par.items:
        if signs:
            print("arrangement %s accepted signs %s"
                  % (_fmt_arr(arr), ",".join("%+d" % s for s in signs)))
        else:
            print("arrangement %s rejected (%s)" % (_fmt_arr(arr), reason))
    for w in ws:
        print("weight F(%s) g %d exponents (%s)%s"
              % (",".join(str(b) for b in w.tuple.b), w.g,
                 ",".join(str(a) for a in w.exponents),
                 " raised" if w.raised else ""))
    return OK


# ---------------------------------------------------------------------------
# rep

def cmd_rep_frobpoly(args):
    try:
        rep = load_rep(args.rep)
    except (OSError, ValueError) as e:
        return _fail(INVALID, e)
    ls = sorted(set(args.l))
    if not ls:
        return _fail(INVALID, "at least one --l required")
    field = rep_field(rep)

    def one(l):
        return frob_charpoly(rep, l, field=field)

    try:
        rows = _pmap(one, ls, args.jobs)
    except ValueError as e:
        return _fail(_classify(e), e)
    for l, cs in zip(ls, rows):
        print("l %d charpoly %s" % (l, " ".join(_fmt_elem(c) for c in cs)))
    return OK


# ---------------------------------------------------------------------------
# attach

def cmd_attach_check(args):
    try:
        rep = load_rep(args.rep)
        es = load_eigensystem(args.eigen)
    except (OSError, ValueError) as e:
        return _fail(INVALID, e)
    ls = sorted(set(args.l)) if args.l else sorted(es.primes())
    if not ls:
        return _fail(DATA_GAP, "eigensystem file lists no primes")
    gaps = [l for l in ls if es.n > 1 and l not in es.table]
    if gaps:
        return _fail(DATA_GAP, "missing eigenvalue rows at l = %s"
                     % ",".join(str(l) for l in gaps))

    def one(l):
        return check_attachment(rep, es, [l]).rows[0]

    try:
        rows = _pmap(one, ls, args.jobs)
    except (KeyError, ValueError) as e:
        return _fail(_classify(e), e)
    rpt = AttachmentReport(rows)
    print(rpt.format_table())
    print("VERIFIED" if rpt.verdict else "FAILED")
    return OK if rpt.verdict else MISMATCH


# ---------------------------------------------------------------------------
# gl2

def _parse_char(spec, field):
    """modulus[:v1,v2,...] with one value per generator, in F_p."""
    head, _, tail = spec.partition(":")
    modulus = int(head)
    vals = [field.elem(int(t)) for t in tail.split(",")] if tail else []
    return DirichletChar(modulus, field, vals)


def cmd_gl2_eigen(args):
    field = finite_field(args.p)
    try:
        eps = _parse_char(args.eps, field) if args.eps else None
        basis = build_space(args.p, args.level, args.g, eps=eps)
        systems = eigensystems(basis, args.lmax)
    except ValueError as e:
        return _fail(_classify(e), e)
    print("# dimension %d, %d eigensystems" % (basis.dimension, len(systems)))
    code = OK
    for i, sysm in enumerate(systems):
        print("# system %d multiplicity %d field F_%d^%d"
              % (i, sysm.multiplicity, sysm.p, sysm.field.k))
        try:
            es = sysm.to_eigensystem()
        except ValueError as e:
            print("# not expressible: %s" % e)
            code = code or UNSUPPORTED
            continue
        if args.out:
            path = "%s-%d.dat" % (args.out, i)
            save_eigensystem(es, path)
            print("# wrote %s" % path)
        else:
            print("%d %d %d %d" % (es.p, es.N, es.n, es.g))
            if not es.eps.is_trivial():
                print("eps %d %s" % (es.eps.modulus, " ".join(
                    _fmt_elem(v) for v in es.eps.gen_values)))
            for l in es.primes():
                for k in range(1, es.n):
                    print("%d %d %s" % (l, k, _fmt_elem(es.a(l, k))))
    return code


def cmd_gl2_verify(args):
    field = finite_field(args.p)
    try:
        x = _parse_char(args.x, field)
        y = _parse_char(args.y, field)
        rpt = verify_prop27(x, y, args.a, args.p, lmax=args.lmax)
    except ValueError as e:
        return _fail(_classify(e), e)
    for line in rpt.format_lines():
        print(line)
    if rpt.ok:
        return OK
    return UNSUPPORTED if rpt.reason and "not covered" in rpt.reason \
        else MISMATCH


# ---------------------------------------------------------------------------

def _build_parser():
    ap = argparse.ArgumentParser(
        prog="modgal",
        description="Eigensystem and Galois representation calculations")
    ap.add_argument("--jobs", type=int, default=1,
                    help="worker threads for per-item fanout")
    sub = ap.add_subparsers(dest="noun", required=True)

    a4 = sub.add_parser("a4", help="quartic double cover pipeline")
    a4s = a4.add_subparsers(dest="verb", required=True)
    an = a4s.add_parser("analyze")
    an.add_argument("--data", nargs="+", required=True)
    an.set_defaults(fn=cmd_a4_analyze)

    dh = sub.add_parser("dihedral", help="real quadratic class data")
    dhs = dh.add_subparsers(dest="verb", required=True)
    da = dhs.add_parser("analyze")
    da.add_argument("--p", type=int, required=True)
    da.set_defaults(fn=cmd_dihedral_analyze)

    pr = sub.add_parser("predict", help="level, nebentype, parity, weights")
    pr.add_argument("--rep", required=True)
    pr.set_defaults(fn=cmd_predict)

    rp = sub.add_parser("rep", help="representation queries")
    rps = rp.add_subparsers(dest="verb", required=True)
    fp = rps.add_parser("frobpoly")
    fp.add_argument("--rep", required=True)
    fp.add_argument("--l", type=int, action="append", default=[])
    fp.set_defaults(fn=cmd_rep_frobpoly)

    at = sub.add_parser("attach", help="eigensystem vs representation")
    ats = at.add_subparsers(dest="verb", required=True)
    ac = ats.add_parser("check")
    ac.add_argument("--rep", required=True)
    ac.add_argument("--eigen", required=True)
    ac.add_argument("--l", type=int, action="append", default=[])
    ac.set_defaults(fn=cmd_attach_check)

    g2 = sub.add_parser("gl2", help="weight two symbols side")
    g2s = g2.add_subparsers(dest="verb", required=True)
    ge = g2s.add_parser("eigen")
    ge.add_argument("--p", type=int, required=True)
    ge.add_argument("--level", type=int, required=True)
    ge.add_argument("--g", type=int, required=True)
    ge.add_argument("--lmax", type=int, default=13)
    ge.add_argument("--eps", default=None,
                    help="character as modulus:v1,v2,...")
    ge.add_argument("--out", default=None, help="datafile path prefix")
    ge.set_defaults(fn=cmd_gl2_eigen)
    gv = g2s.add_parser("verify")
    gv.add_argument("--p", type=int, required=True)
    gv.add_argument("--a", type=int, required=True)
    gv.add_argument("--x", default="1", help="character as modulus:v1,...")
    gv.add_argument("--y", default="1")
    gv.add_argument("--lmax", type=int, default=13)
    gv.set_defaults(fn=cmd_gl2_verify)

    return ap


def main(argv=None):
    args = _build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
