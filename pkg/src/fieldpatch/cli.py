"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 Newton guard failure,
3 precondition error, 64 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .config import SessionConfig
from .errors import FieldPatchError
from .scalars import Field
from .series import Tag
from .textio import fmt, format_cert, parse

EXIT_OK, EXIT_VERIFY, EXIT_GUARD, EXIT_PRECONDITION, EXIT_USAGE = 0, 1, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common(p):
    p.add_argument("--field", default="q", help="q or fp:P")
    p.add_argument("--tprec", type=int, default=12)
    p.add_argument("--uprec", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degx", type=int, default=3)
    p.add_argument("--degt", type=int, default=3)
    p.add_argument("--scap", type=int, default=32)
    p.add_argument("--out", help="write the main result here instead of stdout")


def build_parser():
    ap = _Parser(prog="fieldpatch", description="Exact patching over the line over k[[t]].")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("split", help="split a branch-ring element as v + w")
    _common(p)
    p.add_argument("--in", dest="inp", required=True)

    p = sub.add_parser("reconstruct", help="rational function from its two expansions")
    _common(p)
    p.add_argument("--in", dest="inp", required=True, help="vector(2) [ a1 ; a2 ]")

    p = sub.add_parser("expand", help="expand a rational function into a patch ring or field")
    _common(p)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--target", default="F0", choices=[t.value for t in Tag])

    p = sub.add_parser("factor-gl", help="factor g0 in GL_n over the branch field")
    _common(p)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--cert", help="certificate output path")

    p = sub.add_parser("factor-group", help="factor chart coordinates near the identity")
    _common(p)
    p.add_argument("--chart", required=True)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--cert", help="certificate output path")

    p = sub.add_parser("patch-object", help="glue a tensor patching problem")
    _common(p)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--cert", help="certificate output path")

    p = sub.add_parser("isotropy-demo", help="local-global isotropy round trip")
    _common(p)
    p.add_argument("--gram", required=True)
    p.add_argument("--witness", required=True)
    p.add_argument("--perturb", required=True)
    p.add_argument("--cert", help="certificate output path")

    p = sub.add_parser("verify", help="re-check a certificate independently")
    _common(p)
    p.add_argument("--cert", required=True)

    p = sub.add_parser("selftest", help="run the seeded property suites")
    _common(p)
    p.add_argument("--count", type=int, default=10, help="cases per suite")
    return ap


def _config(args) -> SessionConfig:
    try:
        field = Field.from_spec(args.field)
        return SessionConfig(field=field, tprec=args.tprec, uprec=args.uprec, seed=args.seed,
                             degx=args.degx, degt=args.degt, scap=args.scap)
    except ValueError as e:
        raise UsageError(str(e)) from e


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


class _Out:
    def __init__(self, args):
        self.path = getattr(args, "out", None)
        self.lines = []

    def emit(self, line):
        self.lines.append(line)

    def close(self):
        text = "\n".join(self.lines) + ("\n" if self.lines else "")
        if self.path:
            _write(self.path, text)
        else:
            sys.stdout.write(text)


def _cert_out(args, cert, out):
    text = format_cert(cert)
    if getattr(args, "cert", None):
        _write(args.cert, text)
    else:
        out.emit(text.rstrip("\n"))


def cmd_split(args, cfg, out):
    from .splitting import additive_factor

    a = parse(_read(args.inp), cfg.field)
    sp = additive_factor(a, min(cfg.tprec, a.tprec))
    out.emit(f"v {sp.v.to_text()}")
    out.emit(f"w {sp.w.to_text()}")
    return EXIT_OK


def cmd_reconstruct(args, cfg, out):
    from .splitting import intersect_reconstruct

    a1, a2 = parse(_read(args.inp), cfg.field)
    out.emit(intersect_reconstruct(a1, a2, cfg.degbounds).to_text())
    return EXIT_OK


def cmd_expand(args, cfg, out):
    from .rational import expand_rational

    f = parse(_read(args.inp), cfg.field)
    out.emit(expand_rational(f, Tag(args.target), cfg.tprec, cfg.uprec).to_text())
    return EXIT_OK


def cmd_factor_gl(args, cfg, out):
    from .factorization import gl_factor

    g0 = parse(_read(args.inp), cfg.field)
    g1, g2, cert = gl_factor(g0, cfg.tprec, cfg.uprec)
    out.emit(f"g1 {fmt(g1)}")
    out.emit(f"g2 {fmt(g2)}")
    _cert_out(args, cert, out)
    return EXIT_OK


def cmd_factor_group(args, cfg, out):
    from .factorization import group_factor

    ch = parse(_read(args.chart), cfg.field)
    if ch.kind == "so":
        cfg.require_odd_char()
    z0 = parse(_read(args.inp), cfg.field)
    z1, z2, cert = group_factor(ch, z0, cfg.tprec, cfg.uprec)
    out.emit(f"z1 {fmt(z1)}")
    out.emit(f"z2 {fmt(z2)}")
    _cert_out(args, cert, out)
    return EXIT_OK


def cmd_patch_object(args, cfg, out):
    from .patching import patch_tensor_object

    pp = parse(_read(args.inp), cfg.field)
    res = patch_tensor_object(pp, cfg.degbounds, cfg.tprec, cfg.uprec)
    out.emit("object " + " ".join(fmt(t) for t in res.obj.tensors))
    out.emit(f"basis1 {fmt(res.g1)}")
    out.emit(f"basis2 {fmt(res.g2)}")
    _cert_out(args, res.cert, out)
    return EXIT_OK


def cmd_isotropy(args, cfg, out):
    from .patching import isotropy_local_global_demo

    cfg.require_odd_char()
    Q = parse(_read(args.gram), cfg.field)
    y0 = parse(_read(args.witness), cfg.field)
    z = parse(_read(args.perturb), cfg.field)
    rep = isotropy_local_global_demo(Q, y0, z, cfg.tprec, cfg.degbounds, cfg.uprec)
    for line in rep.lines():
        out.emit(line)
    _cert_out(args, rep.cert, out)
    return EXIT_OK


def cmd_verify(args, cfg, out):
    from .verify import verify_text

    rep = verify_text(_read(args.cert))
    for line in rep.lines():
        out.emit(line)
    out.emit("verified" if rep.ok else "NOT verified")
    return EXIT_OK if rep.ok else EXIT_VERIFY


def cmd_selftest(args, cfg, out):
    from .selftest import run_selftest

    results = run_selftest(cfg, args.count)
    for r in results:
        out.emit(r.line())
    passed = sum(r.passed for r in results)
    total = sum(r.total for r in results)
    out.emit(f"total: {passed}/{total} in {len(results)} suites")
    return EXIT_OK if passed == total else EXIT_VERIFY


COMMANDS = {
    "split": cmd_split, "reconstruct": cmd_reconstruct, "expand": cmd_expand,
    "factor-gl": cmd_factor_gl, "factor-group": cmd_factor_group, "patch-object": cmd_patch_object,
    "isotropy-demo": cmd_isotropy, "verify": cmd_verify, "selftest": cmd_selftest,
}


def run(argv) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return EXIT_OK if not e.code else EXIT_USAGE
    out = _Out(args)
    try:
        code = COMMANDS[args.cmd](args, cfg, out)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FieldPatchError as e:
        print(f"error: {e.code}: {e}", file=sys.stderr)
        return e.exit_code
    out.close()
    return code


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
