"""Command line interface.

Usage::

    nilcohom <command> <file-or-catalog:name> [options] [--json] [--output FILE]

Exit codes: 0 success, 1 domain error, 2 parse/input error, 3 internal
oracle mismatch (a sign-convention bug, never a mathematical result).
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import catalog
from .complex import build_differential, cohomology
from .errors import NilcohomError, OracleMismatch, ParseError
from .exterior import format_form
from .lie import parse_form, validate
from .massey import scan_triple_massey, triple_massey
from .profile import compute_profile
from .report import class_json, dumps, envelope, form_json, fraction_str, matrix_json
from .symplectic import (check_symplectic, evenness_skew_form, flex_scan,
                         harmonic_cohomology, hard_lefschetz, lefschetz_images,
                         lefschetz_rank)

NOMIZU_WARNING = (
    "algebra is not nilpotent: results are Lie algebra cohomology only and carry "
    "no nilmanifold interpretation"
)
HARMONIC_CAVEAT = (
    "h_k is computed on invariant forms; agreement with the manifold is guaranteed "
    "only in degrees 2m, 2m-1, 2m-2"
)
CONVENTION_BANNER = """\
************************************************************
* INTERNAL ORACLE MISMATCH: two independent computations   *
* of the same invariant disagree. This is a sign-convention *
* or implementation bug, not a mathematical result.         *
************************************************************"""


class Context:
    def __init__(self, args):
        self.args = args
        self.entry = catalog.resolve(args.input)
        self.sc = self.entry.algebra
        self.names = self.sc.generator_names()
        self.warnings = []
        self.report = validate(self.sc)
        if self.report.jacobi_ok and not self.report.nilpotent:
            self.warnings.append(NOMIZU_WARNING)
        self._d = None

    @property
    def d(self):
        if self._d is None:
            self._d = build_differential(self.sc)
        return self._d

    @property
    def coh(self):
        return cohomology(self.d)

    def form(self, text, what="--form"):
        if text is None:
            w = self.entry.default_form
            if w is None:
                raise ParseError(f"{what} is required: {self.entry.name} has no named forms")
            return w
        return parse_form(text, self.sc, named=self.entry.forms, degree=2)

    def fmt(self, w):
        return format_form(w, self.names)


def _cmd_validate(ctx):
    r = ctx.report
    results = {"dimension": ctx.sc.n, **r.to_dict()}
    lines = [
        f"dimension: {ctx.sc.n}",
        f"jacobi: {'ok' if r.jacobi_ok else 'VIOLATED at ' + str(r.violations)}",
        f"nilpotent: {'yes' if r.nilpotent else 'no'}"
        + (f" (class {r.nilpotency_class})" if r.nilpotent else ""),
        f"lower central series dimensions: {r.lower_central_series}",
    ]
    if r.nilpotent:
        lines.append("rational structure constants: yes (a lattice exists)")
    return results, lines, 0 if r.jacobi_ok and r.nilpotent else 1


def _cmd_betti(ctx):
    coh = ctx.coh
    b = coh.betti()
    results = {"betti": b, "euler_characteristic": coh.euler_characteristic(),
               "H1_basis": [form_json(w) for w in coh.representatives(1)]}
    lines = [f"betti: {tuple(b)}", f"euler characteristic: {coh.euler_characteristic()}",
             "H^1 basis: " + ", ".join(f"[{ctx.fmt(w)}]" for w in coh.representatives(1))]
    return results, lines, 0


def _cmd_symplectic(ctx):
    w = ctx.form(ctx.args.form)
    s = check_symplectic(ctx.d, w)
    results = {"omega": form_json(w), "closed": True, "nondegenerate": True,
               "half_dimension": s.m, "omega_matrix": matrix_json(s.Omega),
               "poisson_matrix": matrix_json(s.Pi), "volume": form_json(s.vol)}
    lines = [f"omega = {ctx.fmt(w)}", "closed: yes", "non-degenerate: yes",
             f"volume form omega^{s.m}/{s.m}! = {ctx.fmt(s.vol)}"]
    return results, lines, 0


def _cmd_lefschetz(ctx):
    w = ctx.form(ctx.args.form)
    coh = ctx.coh
    s = check_symplectic(ctx.d, w)
    ranks = []
    lines = [f"omega = {ctx.fmt(w)}"]
    for k in range(s.m + 1):
        images = lefschetz_images(s, k, coh)
        rank = lefschetz_rank(s, k, coh)
        ranks.append({"k": k, "power": s.m - k, "rank": rank,
                      "images": [class_json(c) for c in images]})
        lines.append(f"rank [omega]^{s.m - k}: H^{k} -> H^{s.n - k} = {rank}")
    hl = hard_lefschetz(s, coh)
    skew = {}
    for k in range((s.m + 1) // 2):
        mat, ok = evenness_skew_form(s, k, coh)
        skew[str(2 * k + 1)] = {"matrix": matrix_json(mat), "nondegenerate": ok}
    lines.append(f"hard lefschetz: {'yes' if hl.passes else 'no'}")
    for v in hl.verdicts:
        lines.append(f"  L^{v['k']}: H^{v['source_degree']} -> H^{v['target_degree']} "
                     f"rank {v['rank']} / b={v['b_target']}"
                     f" {'surjective' if v['surjective'] else 'not surjective'}")
    results = {"omega": form_json(w), "ranks": ranks, **hl.to_dict(), "odd_skew_forms": skew}
    return results, lines, 0


def _cmd_harmonic(ctx):
    w = ctx.form(ctx.args.form)
    s = check_symplectic(ctx.d, w)
    summary = harmonic_cohomology(s, ctx.coh)
    ctx.warnings.append(HARMONIC_CAVEAT)
    lines = [f"omega = {ctx.fmt(w)}", f"betti: {tuple(summary.betti)}", f"h:     {tuple(summary.h)}"]
    for c in summary.oracle:
        lines.append(f"  h_{c['degree']} = {c['harmonic']} = rank L^{s.m - c['k']} on H^{c['k']}")
    return {"omega": form_json(w), **summary.to_dict()}, lines, 0


def _massey_json(r):
    return {
        "labels": list(r.labels) if r.labels else None,
        "classes": [class_json(c) for c in r.classes],
        "defined": r.defined,
        "failing": r.failing,
        "x": form_json(r.x),
        "y": form_json(r.y),
        "representative": form_json(r.representative),
        "representative_class": class_json(r.representative_class),
        "indeterminacy": [class_json(c) for c in r.indeterminacy],
        "trivial": r.trivial,
    }


def _split_classes(text):
    items = re.findall(r"\[([^\]]*)\]", text)
    if len(items) != 3:
        raise ParseError(f"--classes needs exactly three bracketed forms, got {len(items)}")
    return items


def _cmd_massey(ctx):
    coh = ctx.coh
    args = ctx.args
    if args.classes:
        classes = []
        for expr in _split_classes(args.classes):
            w = parse_form(expr, ctx.sc, named=ctx.entry.forms)
            if w.degree is None:
                raise NilcohomError(f"[{expr}] is zero or not homogeneous")
            if ctx.d(w):
                raise NilcohomError(f"[{expr}] is not closed")
            classes.append(coh.reduce(w))
        r = triple_massey(coh, *classes, labels=tuple(_split_classes(args.classes)))
        label = ", ".join(f"[{x}]" for x in r.labels)
        if not r.defined:
            return _massey_json(r), [f"<{label}> not defined: {r.failing}"], 1
        lines = [f"<{label}>: {'trivial' if r.trivial else 'NON-TRIVIAL'}",
                 f"  x = {ctx.fmt(r.x)}", f"  y = {ctx.fmt(r.y)}",
                 f"  representative = {ctx.fmt(r.representative)}",
                 f"  indeterminacy dimension = {len(r.indeterminacy)}"]
        return _massey_json(r), lines, 0
    extra = {}
    w = ctx.entry.default_form if args.form is None else ctx.form(args.form)
    if w is not None and not ctx.d(w):
        extra["omega"] = coh.reduce(w, 2)
    hits = scan_triple_massey(coh, args.massey_bound, extra)
    lines = [f"non-trivial triple products up to total degree {args.massey_bound}: {len(hits)}"]
    for h in hits:
        shown = ", ".join(f"[{ctx.fmt(coh.representative(c))}]" for c in h.classes)
        lines.append(f"  <{shown}> ({', '.join(h.labels)}) representative {ctx.fmt(h.representative)}")
    return {"bound": args.massey_bound, "nontrivial": [_massey_json(h) for h in hits]}, lines, 0


def _cmd_flex(ctx):
    a = ctx.form(ctx.args.form_a, "--form-a")
    b = ctx.form(ctx.args.form_b, "--form-b")
    rep = flex_scan(ctx.d, a, b, ctx.args.steps, ctx.coh)
    lines = [f"pencil (1-t)*[{ctx.fmt(a)}] + t*[{ctx.fmt(b)}]"]
    for p in rep.points:
        status = f"h = {tuple(p.h)}" if p.symplectic else f"skipped ({p.reason})"
        lines.append(f"  t = {fraction_str(p.t)}: {status}")
    lines.append(f"verdict: {rep.verdict}")
    if rep.differing_degrees:
        lines.append(f"h_k differs in degrees {rep.differing_degrees}")
    return rep.to_dict(), lines, 0


def _cmd_profile(ctx):
    w = ctx.form(ctx.args.form)
    prof = compute_profile(ctx.d, w, ctx.args.massey_bound, ctx.coh)
    yn = lambda x: "yes" if x else "no"  # noqa: E731
    lines = [
        f"omega = {ctx.fmt(w)}",
        f"betti: {tuple(prof.betti)}",
        f"triviality of Massey products (triple, bound {prof.massey_bound}): "
        f"{yn(prof.massey_triple_trivial)}",
        f"hard lefschetz: {yn(prof.hard_lefschetz)}",
        f"evenness of odd betti numbers: {yn(prof.odd_betti_even)}",
        f"table line {prof.matched_table_line}: {prof.annotation}",
    ]
    if prof.massey_witness is not None:
        shown = ", ".join(f"[{ctx.fmt(ctx.coh.representative(c))}]"
                          for c in prof.massey_witness.classes)
        lines.append(f"  non-trivial witness <{shown}>")
    ctx.warnings.extend(prof.caveats)
    return prof.to_dict(), lines, 0


COMMANDS = {
    "validate": _cmd_validate,
    "betti": _cmd_betti,
    "symplectic": _cmd_symplectic,
    "lefschetz": _cmd_lefschetz,
    "harmonic": _cmd_harmonic,
    "massey": _cmd_massey,
    "flex": _cmd_flex,
    "profile": _cmd_profile,
}


def build_parser():
    ap = argparse.ArgumentParser(
        prog="nilcohom",
        description="Exact cohomology and symplectic invariants of nilmanifolds.",
    )
    ap.add_argument("command", choices=list(COMMANDS))
    ap.add_argument("input", help="algebra file, catalog:NAME or a catalog name "
                                  f"({', '.join(catalog.BUILTIN)})")
    ap.add_argument("--form", help="symplectic 2-form, e.g. 'a1^a6 + a2^a5 - a3^a4' or a named form")
    ap.add_argument("--form-a", help="first end of the pencil (flex)")
    ap.add_argument("--form-b", help="second end of the pencil (flex)")
    ap.add_argument("--steps", type=int, default=4, help="pencil subdivisions (flex)")
    ap.add_argument("--classes", help="three classes for massey, e.g. '[e1],[e1],[omega]'")
    ap.add_argument("--massey-bound", type=int, default=4,
                    help="maximal total degree of scanned triple products")
    ap.add_argument("--json", action="store_true", help="print the JSON report")
    ap.add_argument("--output", type=Path, help="also write the JSON report to this file")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ctx = Context(args)
        results, lines, code = COMMANDS[args.command](ctx)
    except OracleMismatch as exc:
        print(CONVENTION_BANNER, file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except NilcohomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    report = envelope(args.command, args.input, results, ctx.warnings)
    text = dumps(report)
    if args.output is not None:
        args.output.parent.mkdir(parents=True, exist_ok=True)
        args.output.write_text(text, encoding="utf-8")
    if args.json:
        sys.stdout.write(text)
    else:
        for line in lines:
            print(line)
        for wmsg in ctx.warnings:
            print(f"warning: {wmsg}")
    return code


if __name__ == "__main__":
    sys.exit(main())
