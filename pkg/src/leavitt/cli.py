"""Command-line interface.

Exit codes: 0 everything verified, 1 verification failed, 2 parse error,
3 construction precondition violated.
"""
from __future__ import annotations

import argparse
import json
import sys

from .algebra import ExpressionError, LeavittAlgebra
from .cylinder import l2, parse_word
from .embedding import (DEFAULT_DEGREE, EFamily, FamilyCheckError,
                        PreconditionError, build_family,
                        build_family_from_paths, builtin_example,
                        certify_injective)
from .graph import Graph, GraphParseError, parse_graph, two_loop
from .rings import RingSpec

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3
FORMAT_TAG = "leavitt-embedding/1"


class ParseFailure(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise ParseFailure(f"cannot read {path}: {exc.strerror}") from None


def _graph(path: str) -> Graph:
    try:
        return parse_graph(_read(path))
    except GraphParseError as exc:
        raise ParseFailure(f"{path}: {exc}") from None


def parse_paths(text: str) -> tuple[dict[str, str], dict[str, str]]:
    alpha, beta = {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] not in ("alpha", "beta"):
            raise ParseFailure(f"line {lineno}: expected 'alpha <vertex> <word>' or 'beta <edge> <word>'")
        try:
            word = parse_word(parts[2])
        except ValueError as exc:
            raise ParseFailure(f"line {lineno}: {exc}") from None
        target = alpha if parts[0] == "alpha" else beta
        if parts[1] in target:
            raise ParseFailure(f"line {lineno}: {parts[0]} for {parts[1]} given twice")
        target[parts[1]] = word
    return alpha, beta


def _ring(text: str | None, default: str = "z") -> RingSpec:
    try:
        return RingSpec.parse(text or default)
    except ValueError as exc:
        raise ParseFailure(str(exc)) from None


def machine_record(fam: EFamily, cert, ring: RingSpec, degree: int) -> dict:
    rec = {
        "format": FORMAT_TAG,
        "ring": str(ring),
        "degree": degree,
        "source_graph": fam.graph.to_text(),
        "target_graph": "l2" if fam.target.graph == two_loop() else fam.target.graph.to_text(),
        "unital": fam.is_unital(),
    }
    for gen in fam.generators():
        rec[f"image.{gen}"] = fam.shown(gen)
        rec[f"normal_form.{gen}"] = str(fam.image(gen))
    rec["relations"] = "pass" if cert.relations.passed else "fail"
    rec["g1"] = "pass" if cert.g1_ok else "fail"
    rec["g2"] = "pass" if cert.g2_ok else "fail"
    rec["certificate"] = "valid" if cert.valid else "invalid"
    return rec


def _emit(fam: EFamily, ring: RingSpec, degree: int, fmt: str, out) -> int:
    try:
        cert = certify_injective(fam, degree)
    except FamilyCheckError as exc:
        if fmt == "json":
            json.dump({"format": FORMAT_TAG, "relations": "fail",
                       "failures": [f"{r} {i}" for r, i in exc.report.failures]}, out, indent=2)
            out.write("\n")
        else:
            for line in fam.table_lines() + exc.report.lines() + ["certificate: INVALID"]:
                print(line, file=out)
        return EXIT_FAIL
    if fmt == "json":
        json.dump(machine_record(fam, cert, ring, degree), out, indent=2)
        out.write("\n")
    else:
        target = "L_2" if fam.target.graph == two_loop() else "L(F)"
        print(f"# L(E) -> {target} over {ring}: {len(fam.graph.vertices)} vertices, "
              f"{len(fam.graph.edges)} edges, unital: {'yes' if fam.is_unital() else 'no'}", file=out)
        for line in fam.table_lines() + cert.lines():
            print(line, file=out)
    return EXIT_OK if cert.valid else EXIT_FAIL


def cmd_embed(args, out) -> int:
    ring = _ring(args.ring)
    E = _graph(args.graph)
    if args.paths:
        alpha, beta = parse_paths(_read(args.paths))
        fam = build_family_from_paths(E, alpha, beta, ring)
    else:
        fam = build_family(E, ring, unital=not args.non_unital)
    return _emit(fam, ring, args.degree, args.format, out)


def cmd_example(args, out) -> int:
    ring = _ring(args.ring)
    try:
        ex = builtin_example(args.name, args.n)
    except (KeyError, ValueError) as exc:
        raise ParseFailure(str(exc).strip("'\"")) from None
    fam = ex.build(ring)
    for gen, text in ex.expected.items():
        if fam.target.parse(text) != fam.image(gen):
            print(f"image of {gen} differs from {text}", file=out)
            return EXIT_FAIL
    return _emit(fam, ring, args.degree, args.format, out)


def cmd_normal_form(args, out) -> int:
    ring = _ring(args.ring)
    A = LeavittAlgebra(_graph(args.graph), ring) if args.graph else l2(ring)
    try:
        x = A.parse(args.expression)
    except ExpressionError as exc:
        raise ParseFailure(f"expression: {exc}") from None
    if args.format == "json":
        json.dump({"ring": str(ring), "expression": args.expression, "normal_form": str(x)}, out, indent=2)
        out.write("\n")
    else:
        print(x, file=out)
    return EXIT_OK


def _family_from_record(text: str, E: Graph, ring_arg, target_path):
    """Returns (ring, target algebra, {gen: expression})."""
    if text.lstrip().startswith("{"):
        try:
            rec = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseFailure(f"family file: {exc}") from None
        if not isinstance(rec, dict):
            raise ParseFailure("family file: expected a JSON object")
        ring = _ring(ring_arg, rec.get("ring", "z"))
        images = {}
        for gen in list(E.vertices) + [e for e, _, _ in E.edges]:
            key = f"normal_form.{gen}" if f"normal_form.{gen}" in rec else f"image.{gen}"
            if key not in rec:
                raise ParseFailure(f"family file has no image for {gen}")
            images[gen] = rec[key]
        tg = rec.get("target_graph", "l2")
        if target_path:
            target = _graph(target_path)
        elif tg == "l2":
            target = two_loop()
        else:
            try:
                target = parse_graph(tg)
            except GraphParseError as exc:
                raise ParseFailure(f"target_graph: {exc}") from None
        return ring, target, images
    ring = _ring(ring_arg)
    images = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise ParseFailure(f"family line {lineno}: expected '<generator> -> <expression>'")
        gen, expr = (s.strip() for s in line.split("->", 1))
        images[gen] = expr
    target = _graph(target_path) if target_path else two_loop()
    return ring, target, images


def cmd_verify(args, out) -> int:
    E = _graph(args.graph)
    ring, target_graph, texts = _family_from_record(_read(args.family), E, args.ring, args.target)
    A = LeavittAlgebra(target_graph, ring)
    gens = list(E.vertices) + [e for e, _, _ in E.edges]
    missing = [g for g in gens if g not in texts]
    if missing:
        raise ParseFailure(f"family has no image for {', '.join(missing)}")
    unknown = [g for g in texts if g not in gens]
    if unknown:
        raise ParseFailure(f"family maps unknown generators {', '.join(unknown)}")
    imgs = {}
    for g in gens:
        try:
            imgs[g] = A.parse(texts[g])
        except ExpressionError as exc:
            raise ParseFailure(f"image of {g}: {exc}") from None
    fam = EFamily(E, A, {v: imgs[v] for v in E.vertices},
                  {e: imgs[e] for e, _, _ in E.edges}, {g: texts[g] for g in gens})
    return _emit(fam, ring, args.degree, args.format, out)


def _degree(text: str) -> int:
    d = int(text)
    if d < 1:
        raise argparse.ArgumentTypeError("degree bound must be >= 1")
    return d


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", default=None, help="z (default), q or zmod:<n>")
    common.add_argument("--degree", type=_degree, default=DEFAULT_DEGREE,
                        help="degree bound for full-spectrum evidence (default 6)")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="leavitt", description="Leavitt path algebra embeddings into L_2")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("embed", parents=[common], help="embed L_R(E) into L_2 and certify it")
    e.add_argument("graph")
    e.add_argument("--paths", help="alpha/beta word assignment file")
    e.add_argument("--non-unital", action="store_true",
                   help="use the a^i b projection family instead of one summing to 1")
    e.set_defaults(func=cmd_embed)

    x = sub.add_parser("example", parents=[common], help="run a built-in example")
    x.add_argument("name", help="laurent, l_n, a_n, toeplitz or l2_into_LF")
    x.add_argument("n", nargs="?", type=int)
    x.set_defaults(func=cmd_example)

    n = sub.add_parser("normal-form", parents=[common], help="print the normal form of an expression")
    n.add_argument("expression")
    n.add_argument("--graph", help="graph file (default: the two-loop graph of L_2)")
    n.set_defaults(func=cmd_normal_form)

    v = sub.add_parser("verify", parents=[common], help="check a family file against a graph")
    v.add_argument("graph")
    v.add_argument("family")
    v.add_argument("--target", help="target graph file (default: L_2)")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ParseFailure as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
