"""Command-line surface: build, check, survey, and export finite lattices.

Exit codes: 0 all checks pass, 1 some check fails, 2 usage or input error,
3 resource cap or construction failure, 4 inconclusive verdict. Reports are
deterministic: identical inputs produce byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from .congruence import (
    check_properties_PQ,
    classify,
    con_lattice,
    is_algebraically_isoform,
    is_congruence_permutable,
    is_cpe,
    principal,
)
from .constructions import (
    PrunedProductSpec,
    cubic_extension,
    default_separator,
    n_construction,
    pruned_product,
    represent_isoform,
)
from .core import Embedding, FiniteLattice, direct_product, standard, structure_report
from .enumeration import ENUMERATION_CAP, enumerate_lattices
from .errors import (
    BudgetExhausted,
    CapExceeded,
    FunctionSpaceCapExceeded,
    InternalVerificationFailed,
    LatticeError,
    NotAnEmbedding,
    ParameterOutOfRange,
    SizeOverflow,
    VerificationFailed,
)
from .io import export_dot, load_lattice, load_poset, save_lattice

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_INCONCLUSIVE = 4

CHECK_NAMES = ("regular", "uniform", "isoform", "simple", "permutable",
               "alg-isoform", "pq", "distributive", "seccomp")
_CLASSIFY_CHECKS = ("regular", "uniform", "isoform", "simple")


class _CliFailure(Exception):
    """Carries the exit code and message for a handled failure."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# -- generator expressions ---------------------------------------------------


class ExpressionError(ValueError):
    pass


_TOKEN = re.compile(r"[(),:]|[^\s(),:]+")


class _ExprParser:
    """Recursive-descent parser for generator expressions.

    Grammar: chain:k | boolean:k | m3 | n5 | prod(e, e) | nab(e, e)
    | prune(posetfile, e, ...) | represent(latfile) | cubic(latfile).
    """

    def __init__(self, text: str, *, max_elements: int | None = None):
        self.tokens = _TOKEN.findall(text)
        self.pos = 0
        self.max_elements = max_elements
        self.notes: list[str] = []

    def _peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> str:
        tok = self._peek()
        if tok is None:
            raise ExpressionError("unexpected end of expression")
        self.pos += 1
        return tok

    def _expect(self, want: str) -> None:
        got = self._take()
        if got != want:
            raise ExpressionError(f"expected {want!r}, found {got!r}")

    def parse(self) -> FiniteLattice:
        lat = self._expr()
        if self._peek() is not None:
            raise ExpressionError(f"trailing input at {self._peek()!r}")
        return lat

    _HEADS = ("chain", "boolean", "m3", "n5", "prod", "nab", "prune",
              "represent", "cubic")

    def _expr(self) -> FiniteLattice:
        head = self._take()
        if head in ("(", ")", ",", ":"):
            raise ExpressionError(f"expected a generator name, found {head!r}")
        if head not in self._HEADS:
            raise ExpressionError(f"unknown generator {head!r}")
        if self._peek() == ":":
            self._take()
            if head not in ("chain", "boolean"):
                raise ExpressionError(f"{head!r} does not take a ':k' size")
            tok = self._take()
            if not tok.isdigit():
                raise ExpressionError(f"expected an integer after '{head}:', found {tok!r}")
            return standard(head, int(tok))
        if self._peek() == "(":
            return self._call(head)
        if head in ("m3", "n5"):
            return standard(head)
        if head in ("chain", "boolean"):
            raise ExpressionError(f"{head!r} needs a size, e.g. '{head}:3'")
        raise ExpressionError(f"{head!r} needs parenthesized arguments")

    def _path_arg(self) -> str:
        tok = self._take()
        if tok in ("(", ")", ",", ":"):
            raise ExpressionError(f"expected a file path, found {tok!r}")
        return tok

    def _call(self, head: str) -> FiniteLattice:
        self._expect("(")
        if head == "prod":
            a = self._expr()
            self._expect(",")
            b = self._expr()
            self._expect(")")
            return direct_product(a, b, max_elements=self.max_elements)
        if head == "nab":
            a = self._expr()
            self._expect(",")
            b = self._expr()
            self._expect(")")
            return n_construction(a, b, max_elements=self.max_elements)
        if head == "prune":
            poset = load_poset(self._path_arg())
            factors = []
            while self._peek() == ",":
                self._take()
                factors.append(self._expr())
            self._expect(")")
            seps = tuple(default_separator(f) for f in factors)
            return pruned_product(PrunedProductSpec(poset, seps),
                                  max_elements=self.max_elements)
        if head == "represent":
            target = load_lattice(self._path_arg())
            self._expect(")")
            lat, report = represent_isoform(target, max_elements=self.max_elements)
            self.notes.append(
                "representation verified: congruence lattice has "
                f"{report['con_size']} elements, isoform={report['is_isoform']}")
            return lat
        if head == "cubic":
            base = load_lattice(self._path_arg())
            self._expect(")")
            result = cubic_extension(base, max_elements=self.max_elements)
            sizes = ", ".join(str(f.extension.target.n) for f in result.factors)
            self.notes.append(
                f"cubic extension verified: factor sizes [{sizes}], "
                f"Boolean congruence lattice with {len(result.factors)} atoms")
            return result.product
        raise ExpressionError(f"unknown generator {head!r}")


# -- shared plumbing ---------------------------------------------------------


def _load_lattice_arg(path: str) -> FiniteLattice:
    try:
        return load_lattice(path)
    except (OSError, json.JSONDecodeError, LatticeError) as exc:
        raise _CliFailure(EXIT_USAGE, f"cannot read lattice file {path!r}: {exc}")


def _emit(report: dict, args, render) -> None:
    if getattr(args, "as_json", False):
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        sys.stdout.write(render(report))


def _render_checks(report: dict) -> str:
    lines = [f"subject: {report['subject']} ({report['size']} elements)"]
    for chk in report["checks"]:
        line = f"  {chk['name']}: {chk['verdict']}"
        if chk.get("witness"):
            line += f"  [{chk['witness']}]"
        elif chk.get("detail"):
            line += f"  ({chk['detail']})"
        lines.append(line)
    if "error" in report:
        lines.append(f"aborted: {report['error']}")
    return "\n".join(lines) + "\n"


# -- gen ----------------------------------------------------------------------


def cmd_gen(args) -> int:
    parser = _ExprParser(args.expr, max_elements=args.max_elements)
    try:
        lat = parser.parse()
    except ExpressionError as exc:
        raise _CliFailure(EXIT_USAGE, f"parse error: {exc}")
    except (OSError, json.JSONDecodeError) as exc:
        raise _CliFailure(EXIT_USAGE, f"input error: {exc}")
    except LatticeError as exc:
        raise _CliFailure(EXIT_CAP, f"construction failed ({type(exc).__name__}): {exc}")
    save_lattice(lat, args.output)
    extra = ""
    if lat.pruned_edges is not None:
        extra = f" ({len(lat.pruned_edges)} pruned edges recorded)"
    print(f"wrote {lat.n}-element lattice to {args.output}{extra}")
    for note in parser.notes:
        print(note)
    return EXIT_PASS


# -- check ---------------------------------------------------------------------


def _classify_witness(cls, name: str) -> str | None:
    parts = [f"congruence {w['congruence']}: {w['detail']}"
             for w in cls.witnesses if w["check"] == name]
    return "; ".join(parts) or None


def _seccomp_witness(lat: FiniteLattice) -> str | None:
    for b in range(lat.n):
        down = [x for x in range(lat.n) if lat.le(x, b)]
        for a in down:
            if not any(lat.meet(a, c) == 0 and lat.join(a, c) == b for c in down):
                return f"element {a} has no complement in the interval [0, {b}]"
    return None


def _run_check(name: str, lat: FiniteLattice, cls, args) -> dict:
    out: dict = {"name": name}
    if name in _CLASSIFY_CHECKS:
        value = getattr(cls, f"is_{name}")
        out["verdict"] = "pass" if value else "fail"
        if not value:
            if name == "simple":
                out["witness"] = (f"|Con| = {cls.con_size}" if lat.n >= 2
                                  else "the one-element lattice is not simple")
            else:
                out["witness"] = _classify_witness(cls, name)
        return out
    if name == "permutable":
        r = is_congruence_permutable(lat, max_host=args.max_elements)
        out["verdict"] = "pass" if r.ok else "fail"
        if not r.ok:
            i, j, a, b = r.witness
            out["witness"] = (f"congruences {i} and {j}: elements ({a}, {b}) are "
                              "related in one composition order only")
        return out
    if name == "alg-isoform":
        try:
            r = is_algebraically_isoform(lat, max_functions=args.max_functions)
        except FunctionSpaceCapExceeded as exc:
            out["verdict"] = "inconclusive"
            out["witness"] = str(exc)
            return out
        out["verdict"] = "pass" if r.ok else "fail"
        if r.ok:
            out["detail"] = f"{len(r.certificate)} class maps certified by polynomials"
        else:
            i, least = r.witness
            out["witness"] = (f"congruence {i}: no unary polynomial maps the zero class "
                              f"onto the class at {least}")
        return out
    if name == "pq":
        r = check_properties_PQ(lat, max_host=args.max_elements)
        ok = r.p_holds and r.q_holds
        out["verdict"] = "pass" if ok else "fail"
        out["detail"] = (f"P {'holds' if r.p_holds else 'fails'}, "
                         f"Q {'holds' if r.q_holds else 'fails'}")
        if not ok:
            out["witness"] = "; ".join(
                f"{w['check']} at congruence {w['congruence']}: {w['detail']}"
                for w in r.witnesses)
        return out
    if name == "distributive":
        rep = structure_report(lat)
        out["verdict"] = "pass" if rep.is_distributive else "fail"
        if not rep.is_distributive:
            kind, *elems = rep.nondistributive_witness
            out["witness"] = f"{kind} sublattice on elements {tuple(elems)}"
        return out
    if name == "seccomp":
        rep = structure_report(lat)
        out["verdict"] = "pass" if rep.is_sectionally_complemented else "fail"
        if not rep.is_sectionally_complemented:
            out["witness"] = _seccomp_witness(lat)
        return out
    raise _CliFailure(EXIT_USAGE, f"unknown check {name!r}")


def cmd_check(args) -> int:
    lat = _load_lattice_arg(args.file)
    selected = [n for n in CHECK_NAMES if getattr(args, n.replace("-", "_"))]
    if not selected:
        selected = list(CHECK_NAMES)

    checks: list[dict] = []
    error_note = None
    cls = None
    try:
        if any(n in _CLASSIFY_CHECKS for n in selected):
            cls = classify(lat, max_host=args.max_elements)
        for name in selected:
            checks.append(_run_check(name, lat, cls, args))
    except (CapExceeded, SizeOverflow) as exc:
        error_note = f"{type(exc).__name__}: {exc}"

    report = {"subject": args.file, "size": lat.n, "checks": checks}
    if error_note:
        report["error"] = error_note
    _emit(report, args, _render_checks)
    if error_note:
        return EXIT_CAP
    verdicts = [c["verdict"] for c in checks]
    if "fail" in verdicts:
        return EXIT_FAIL
    if "inconclusive" in verdicts:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


# -- con ------------------------------------------------------------------------


def _render_con(report: dict) -> str:
    lines = [f"subject: {report['subject']} ({report['size']} elements)",
             f"congruences: {report['con_size']}"]
    for ji in report["join_irreducible"]:
        a, b = ji["generating_pair"]
        lines.append(f"  ji congruence {ji['index']}: blocks={ji['num_blocks']}, "
                     f"generated by ({a}, {b})")
    if "exported_to" in report:
        lines.append(f"exported congruence lattice to {report['exported_to']}")
    return "\n".join(lines) + "\n"


def cmd_con(args) -> int:
    lat = _load_lattice_arg(args.file)
    con = con_lattice(lat, max_host=args.max_elements)

    by_blocks: dict[tuple, tuple[int, int]] = {}
    for a, b in sorted(lat.covers):
        theta = principal(lat, a, b)
        by_blocks.setdefault(theta.block_of, (a, b))
    ji_rows = []
    for i in con.ji_indices:
        theta = con.congruences[i]
        pair = by_blocks.get(theta.block_of)
        row = {"index": int(i), "num_blocks": theta.num_blocks,
               "generating_pair": list(pair)}
        ji_rows.append(row)

    report = {"subject": args.file, "size": lat.n,
              "con_size": len(con.congruences), "join_irreducible": ji_rows}
    if args.export:
        save_lattice(con.lattice, args.export)
        report["exported_to"] = args.export
    _emit(report, args, _render_con)
    return EXIT_PASS


# -- cpe -------------------------------------------------------------------------


def _render_cpe(report: dict) -> str:
    lines = [f"subject: {report['subject']}",
             f"verdict: {report['verdict']}",
             f"extension counts: {report['extension_counts']}"]
    if report.get("witness"):
        lines.append(f"witness: {report['witness']}")
    return "\n".join(lines) + "\n"


def cmd_cpe(args) -> int:
    small = _load_lattice_arg(args.kfile)
    big = _load_lattice_arg(args.lfile)
    try:
        with open(args.mapfile, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise _CliFailure(EXIT_USAGE, f"cannot read map file {args.mapfile!r}: {exc}")
    raw = data.get("map") if isinstance(data, dict) else data
    if not (isinstance(raw, list) and all(isinstance(x, int) for x in raw)):
        raise _CliFailure(EXIT_USAGE, "map file must hold a list of target indices")
    try:
        emb = Embedding(small, big, tuple(raw))
    except NotAnEmbedding as exc:
        raise _CliFailure(EXIT_USAGE, f"not an embedding: {exc}")

    result = is_cpe(emb, max_host=args.max_elements)
    report = {"subject": f"{args.kfile} into {args.lfile}",
              "verdict": "pass" if result.ok else "fail",
              "extension_counts": list(result.extension_counts)}
    if not result.ok:
        bad = next(i for i, c in enumerate(result.extension_counts) if c != 1)
        report["witness"] = (f"congruence {bad} of the sublattice has "
                             f"{result.extension_counts[bad]} extensions")
    _emit(report, args, _render_cpe)
    return EXIT_PASS if result.ok else EXIT_FAIL


# -- survey ----------------------------------------------------------------------


_IMPLICATIONS = (
    ("isoform", "uniform"),
    ("uniform", "regular"),
    ("seccomp", "regular"),
    ("simple", "isoform"),
)


def _render_survey(report: dict) -> str:
    lines = ["   n  total  regular  uniform  isoform  simple  seccomp"]
    for row in report["rows"]:
        lines.append(f"  {row['n']:>2}  {row['total']:>5}  {row['regular']:>7}  "
                     f"{row['uniform']:>7}  {row['isoform']:>7}  {row['simple']:>6}  "
                     f"{row['seccomp']:>7}")
    lines.append(f"implication violations: {len(report['violations'])}")
    for v in report["violations"]:
        lines.append(f"  {v}")
    w = report["uniform_not_isoform"]
    lines.append(f"uniform but not isoform: {len(w)}")
    return "\n".join(lines) + "\n"


def cmd_survey(args) -> int:
    if args.max_n < 1:
        raise _CliFailure(EXIT_USAGE, "the size bound must be at least 1")
    if args.max_n > ENUMERATION_CAP:
        raise _CliFailure(EXIT_CAP,
                          f"enumeration is capped at {ENUMERATION_CAP} elements")
    rows = []
    violations: list[str] = []
    uniform_not_isoform: list[dict] = []
    for n in range(1, args.max_n + 1):
        counts = {"total": 0, "regular": 0, "uniform": 0, "isoform": 0,
                  "simple": 0, "seccomp": 0}
        for idx, lat in enumerate(enumerate_lattices(n)):
            cls = classify(lat)
            rep = structure_report(lat)
            flags = {"regular": cls.is_regular, "uniform": cls.is_uniform,
                     "isoform": cls.is_isoform, "simple": cls.is_simple,
                     "seccomp": rep.is_sectionally_complemented}
            counts["total"] += 1
            for key, val in flags.items():
                counts[key] += int(val)
            for premise, conclusion in _IMPLICATIONS:
                if flags[premise] and not flags[conclusion]:
                    violations.append(
                        f"lattice {idx} with {n} elements is {premise} "
                        f"but not {conclusion}")
            if flags["uniform"] and not flags["isoform"]:
                uniform_not_isoform.append({"n": n, "index": idx})
        rows.append({"n": n, **counts})

    report = {"rows": rows, "violations": violations,
              "uniform_not_isoform": uniform_not_isoform}
    _emit(report, args, _render_survey)
    return EXIT_FAIL if violations else EXIT_PASS


# -- export-dot --------------------------------------------------------------------


def cmd_export_dot(args) -> int:
    lat = _load_lattice_arg(args.file)
    try:
        text = export_dot(lat, show_pruned=args.show_pruned, label_mode=args.labels)
    except ParameterOutOfRange as exc:
        raise _CliFailure(EXIT_USAGE, str(exc))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


# -- entry point --------------------------------------------------------------------


def _add_caps(sub, functions: bool = False) -> None:
    sub.add_argument("--max-elements", type=int, default=None, dest="max_elements",
                     help="override the element / host size cap")
    if functions:
        sub.add_argument("--max-functions", type=int, default=None, dest="max_functions",
                         help="override the unary function space cap")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latkit",
        description="Finite lattice toolkit: build, check, survey, export.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="build a lattice from a generator expression")
    g.add_argument("expr", help="e.g. 'm3', 'chain:4', 'nab(boolean:2, chain:3)', "
                                "'prune(p.poset, m3, m3)'")
    g.add_argument("-o", "--output", required=True, help="output lattice file")
    _add_caps(g)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="run structure and congruence checks")
    c.add_argument("file", help="lattice file")
    for name in CHECK_NAMES:
        c.add_argument(f"--{name}", action="store_true",
                       dest=name.replace("-", "_"),
                       help=f"check the {name} property")
    c.add_argument("--json", action="store_true", dest="as_json")
    _add_caps(c, functions=True)
    c.set_defaults(func=cmd_check)

    n = sub.add_parser("con", help="congruence lattice summary")
    n.add_argument("file", help="lattice file")
    n.add_argument("--export", default=None, help="write Con L as a lattice file")
    n.add_argument("--json", action="store_true", dest="as_json")
    _add_caps(n)
    n.set_defaults(func=cmd_con)

    e = sub.add_parser("cpe", help="verify a congruence-preserving extension claim")
    e.add_argument("kfile", help="sublattice file")
    e.add_argument("lfile", help="extension file")
    e.add_argument("mapfile", help="JSON map file: {\"map\": [target indices]}")
    e.add_argument("--json", action="store_true", dest="as_json")
    _add_caps(e)
    e.set_defaults(func=cmd_cpe)

    s = sub.add_parser("survey", help="enumerate small lattices and verify "
                                      "property implications")
    s.add_argument("max_n", type=int, help="largest element count to enumerate")
    s.add_argument("--json", action="store_true", dest="as_json")
    s.set_defaults(func=cmd_survey)

    d = sub.add_parser("export-dot", help="Hasse diagram as DOT text")
    d.add_argument("file", help="lattice file")
    d.add_argument("-o", "--output", default=None, help="write DOT here (default stdout)")
    d.add_argument("--show-pruned", action="store_true",
                   help="draw recorded pruned edges dashed")
    d.add_argument("--labels", choices=("index", "coords"), default="index",
                   help="node label style")
    d.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _CliFailure as exc:
        print(f"latkit: {exc}", file=sys.stderr)
        return exc.code
    except (CapExceeded, SizeOverflow, BudgetExhausted) as exc:
        print(f"latkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (VerificationFailed, InternalVerificationFailed) as exc:
        print(f"latkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CAP
    except LatticeError as exc:
        print(f"latkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
