"""Command-line front end.

Exit status: 0 on success/pass, 1 on a mathematical failure (invalid fan,
cocycle failure, oracle mismatch), 2 on usage or I/O errors.  Machine
format output is canonical JSON and byte-reproducible for fixed inputs
and seed.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import charts, deform, endo, fanio, gallery
from .fan import classify, validate

EXIT_PASS = 0
EXIT_MATH_FAIL = 1
EXIT_USAGE = 2


def _load_input(spec):
    if spec.startswith("gallery:"):
        return gallery.fan_by_name(spec[len("gallery:"):])
    return fanio.load_fan(spec)


def _emit(text, output):
    if output:
        fanio.save(output, text)
    else:
        sys.stdout.write(text)


def _parse_simplex(text):
    try:
        return tuple(sorted(int(x) for x in text.split(",")))
    except ValueError:
        raise SystemExit(EXIT_USAGE)


def _validity_text(report):
    lines = []
    comb = report.combinatorics
    lines.append(f"purity: {'pass' if comb.purity_ok else 'fail ' + str(comb.purity_witness)}")
    lines.append(
        f"ray coverage: {'pass' if comb.coverage_ok else 'fail, missing ' + str(comb.missing_rays)}"
    )
    lines.append(
        f"no duplicate simplices: {'pass' if comb.no_duplicates_ok else 'fail ' + str(comb.duplicates)}"
    )
    lines.append(
        f"ridge condition: {'pass' if comb.ridge_ok else 'fail ' + str(comb.ridge_witness)}"
        + " (necessary for completeness, not gating)"
    )
    if report.nonsingular is None:
        lines.append("non-singularity: skipped")
    else:
        for rec in report.nonsingular.records:
            lines.append(
                f"non-singularity {list(rec.simplex)}: det_V={rec.det_v} det_B={rec.det_b} "
                + ("pass" if rec.ok else "fail")
            )
    if report.properness is None:
        lines.append("cone properness: skipped")
    elif report.properness.ok:
        lines.append(f"cone properness: pass ({report.properness.mode})")
    else:
        i, j, w = report.properness.failures[0]
        lines.append(
            f"cone properness: fail ({report.properness.mode}), cones {list(i)} and {list(j)}"
            f" overlap beyond their shared face, witness direction {[str(x) for x in w]}"
        )
    if report.completeness is None:
        lines.append("completeness: skipped")
    elif report.completeness.ok:
        suffix = "" if report.completeness.mode == "exact" else (
            f", {report.completeness.samples} samples, seed {report.completeness.seed}"
        )
        lines.append(f"completeness: pass ({report.completeness.mode}{suffix})")
    else:
        w = [str(x) for x in report.completeness.witness]
        lines.append(
            f"completeness: fail ({report.completeness.mode}), uncovered direction {w}"
        )
    lines.append(f"overall: {'valid' if report.valid else 'INVALID'}")
    return "\n".join(lines) + "\n"


def cmd_validate(args):
    fan = _load_input(args.input)
    report = validate(fan, samples=args.samples, seed=args.seed)
    if args.format == "machine":
        _emit(fanio.dumps(fanio.validity_to_dict(report)), args.output)
    else:
        _emit(_validity_text(report), args.output)
    return EXIT_PASS if report.valid else EXIT_MATH_FAIL


def cmd_classify(args):
    fan = _load_input(args.input)
    cls = classify(fan)
    if args.format == "machine":
        _emit(fanio.dumps(fanio.classification_to_dict(cls)), args.output)
    else:
        lines = [f"toric: {'yes' if cls.toric else 'no'}", f"nice: {'yes' if cls.nice else 'no'}"]
        for i, flags in enumerate(cls.ray_flags, start=1):
            if flags:
                lines.append(f"ray {i}: {', '.join(flags)}")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_PASS


def cmd_charts(args):
    fan = _load_input(args.input)
    if not validate(fan, samples=args.samples, seed=args.seed).valid:
        sys.stderr.write("fan failed validation\n")
        return EXIT_MATH_FAIL
    records = charts.atlas(fan)
    if args.format == "machine":
        doc = {
            "version": fanio.REPORT_FORMAT_VERSION,
            "kind": "atlas",
            "charts": [
                {
                    "simplex": list(rec.simplex),
                    "removed": list(rec.removed),
                    "smooth": rec.smooth,
                    "real_algebraic": rec.real_algebraic,
                    "algebraic": rec.algebraic,
                    "alpha": [
                        {
                            "x": [str(v) for v in rec.dual.x[pos]],
                            "y": [str(v) for v in rec.dual.y[pos]],
                            "u": list(rec.dual.u[pos]),
                        }
                        for pos in range(len(rec.simplex))
                    ],
                }
                for rec in records
            ],
        }
        _emit(fanio.dumps(doc), args.output)
    else:
        lines = []
        for rec in records:
            flags = ["smooth"]
            if rec.real_algebraic:
                flags.append("real-algebraic")
            if rec.algebraic:
                flags.append("algebraic")
            lines.append(
                f"chart {list(rec.simplex)}: removes {list(rec.removed)}; {', '.join(flags)}"
            )
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_PASS


def _transition_text(tmap):
    varnames = [f"z_{i}" for i in tmap.source]
    lines = []
    for pos, j in enumerate(tmap.target):
        lines.append(f"w_{j} = " + endo.render_row(tmap.matrix.entries[pos], varnames))
    return "\n".join(lines) + "\n"


def cmd_transition(args):
    fan = _load_input(args.input)
    source = _parse_simplex(args.source)
    target = _parse_simplex(args.target)
    simplices = {tuple(sorted(s)) for s in fan.maximal_simplices}
    if source not in simplices or target not in simplices:
        sys.stderr.write("--from/--to must name maximal simplices of the fan\n")
        return EXIT_USAGE
    tmap = charts.transition(fan, source, target)
    if args.format == "machine":
        doc = {
            "version": fanio.REPORT_FORMAT_VERSION,
            "kind": "transition",
            "source": list(tmap.source),
            "target": list(tmap.target),
            "entries": [
                [{"re": str(e.re), "im": str(e.im), "w": e.w} for e in row]
                for row in tmap.matrix.entries
            ],
            "laurent": None
            if tmap.laurent_form is None
            else [[[e.p, e.q] for e in row] for row in tmap.laurent_form],
        }
        _emit(fanio.dumps(doc), args.output)
    else:
        _emit(_transition_text(tmap), args.output)
    return EXIT_PASS


def cmd_cocycle(args):
    fan = _load_input(args.input)
    try:
        report = charts.cocycle_check(
            fan, mode=args.mode, points=args.points, tol=args.tol, seed=args.seed
        )
    except charts.InvalidFan as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_MATH_FAIL
    if args.format == "machine":
        doc = {
            "version": fanio.REPORT_FORMAT_VERSION,
            "kind": "cocycle",
            "ok": report.ok,
            "mode": report.mode,
            "triples_checked": report.triples_checked,
            "failures": [
                {"chain": [list(i), list(j), list(k)], "witness": str(w)}
                for i, j, k, w in report.failures
            ],
        }
        _emit(fanio.dumps(doc), args.output)
    else:
        if report.ok:
            _emit(
                f"cocycle identity holds ({report.mode}) over {report.triples_checked} triples\n",
                args.output,
            )
        else:
            i, j, k, w = report.failures[0]
            _emit(
                f"cocycle FAILED at triple {list(i)} -> {list(j)} -> {list(k)}: {w}\n",
                args.output,
            )
    return EXIT_PASS if report.ok else EXIT_MATH_FAIL


def cmd_niceify(args):
    fan = _load_input(args.input)
    try:
        nice_fan, path, cert = deform.niceify(
            fan,
            samples=args.samples,
            seed=args.seed,
            n_min=args.n_min,
            max_doublings=args.max_doublings,
        )
    except (ValueError, deform.RegularityFailedAtMaxN) as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_MATH_FAIL
    fan_text = fanio.emit_fan(nice_fan)
    path_text = fanio.dumps(fanio.path_to_dict(path))
    cert_text = fanio.dumps(fanio.certificate_to_dict(cert))
    if args.output:
        base = args.output
        fanio.save(base, fan_text)
        fanio.save(base + ".path.json", path_text)
        fanio.save(base + ".cert.json", cert_text)
    elif args.format == "machine":
        bundle = {
            "version": fanio.REPORT_FORMAT_VERSION,
            "kind": "niceify",
            "fan": fanio.fan_to_dict(nice_fan),
            "path": fanio.path_to_dict(path),
            "certificate": fanio.certificate_to_dict(cert),
        }
        sys.stdout.write(fanio.dumps(bundle))
    else:
        labels = [seg.label for seg in path.segments]
        sys.stdout.write(
            f"niceified via segments {labels}; certificate "
            + ("pass" if cert.ok else "FAIL")
            + "\n"
        )
        sys.stdout.write(fan_text)
    return EXIT_PASS


def cmd_gallery(args):
    if args.list:
        sys.stdout.write("\n".join(gallery.GALLERY_NAMES) + "\n")
        return EXIT_PASS
    if not args.name:
        sys.stderr.write("gallery: name required (or --list)\n")
        return EXIT_USAGE
    fan = gallery.fan_by_name(args.name)
    _emit(fanio.emit_fan(fan), args.output)
    return EXIT_PASS


def cmd_oracle(args):
    """Chart-image consistency: transitions reproduce chart images pointwise."""
    fan = _load_input(args.input)
    if not validate(fan, samples=args.samples, seed=args.seed).valid:
        sys.stderr.write("fan failed validation\n")
        return EXIT_MATH_FAIL
    rng = random.Random(args.seed)
    simplices = [tuple(sorted(s)) for s in fan.sorted_simplices()]
    worst = 0.0
    failures = []
    for source in simplices:
        for target in simplices:
            tmap = charts.transition(fan, source, target)
            for _ in range(args.points):
                z = charts.random_torus_point(rng, fan.ray_count)
                image_source = charts.chart_image(fan, source, z)
                expected = charts.chart_image(fan, target, z)
                got = endo.matrix_eval(tmap.matrix, image_source)
                err = max(
                    abs(a - b) / max(abs(b), 1e-300) for a, b in zip(got, expected)
                )
                worst = max(worst, err)
                if err > args.tol:
                    failures.append((source, target, err))
                    break
    if args.format == "machine":
        doc = {
            "version": fanio.REPORT_FORMAT_VERSION,
            "kind": "oracle",
            "ok": not failures,
            "points": args.points,
            "seed": args.seed,
            "tol": args.tol,
            "failures": [
                {"source": list(s), "target": list(t), "error": e} for s, t, e in failures
            ],
        }
        _emit(fanio.dumps(doc), args.output)
    else:
        if failures:
            s, t, e = failures[0]
            _emit(f"oracle FAILED for {list(s)} -> {list(t)}: error {e:.3e}\n", args.output)
        else:
            _emit(
                f"oracle pass: {args.points} points per chart pair, worst error {worst:.3e}\n",
                args.output,
            )
    return EXIT_PASS if not failures else EXIT_MATH_FAIL


def build_parser():
    parser = argparse.ArgumentParser(
        prog="topfan",
        description="Topological fans: validation, charts, transitions, deformation.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input", help="fan file path or gallery:<name>")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=1000)
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--format", choices=["text", "machine"], default="text")
        p.add_argument("--output", default=None)

    p = sub.add_parser("validate", help="run all validity checks")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="toric / nice classification")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("charts", help="normal-chart atlas with representation flags")
    common(p)
    p.set_defaults(func=cmd_charts)

    p = sub.add_parser("transition", help="transition map between two charts")
    common(p)
    p.add_argument("--from", dest="source", required=True, metavar="I", help="e.g. 1,2")
    p.add_argument("--to", dest="target", required=True, metavar="J", help="e.g. 2,3")
    p.set_defaults(func=cmd_transition)

    p = sub.add_parser("cocycle", help="cocycle identity over all chart triples")
    common(p)
    p.add_argument("--mode", choices=["exact", "numeric"], default="exact")
    p.add_argument("--points", type=int, default=100)
    p.set_defaults(func=cmd_cocycle)

    p = sub.add_parser("niceify", help="regular deformation to a nice fan")
    common(p)
    p.set_defaults(samples=32)
    p.add_argument("--n-min", type=int, default=None)
    p.add_argument("--max-doublings", type=int, default=20)
    p.set_defaults(func=cmd_niceify)

    p = sub.add_parser("gallery", help="emit a built-in fan document")
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("--list", action="store_true")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_gallery)

    p = sub.add_parser("oracle", help="numeric chart-image consistency check")
    common(p)
    p.set_defaults(samples=1000)
    p.add_argument("--points", type=int, default=100)
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (fanio.FanFormatError, gallery.UnknownGallery, gallery.InvalidParam, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
