"""Command-line interface: ``qmono {stokes,connection,verify,braid}``."""

import argparse
import json
import math
import os
import sys

from . import grassmannian as grass
from . import projective as proj
from .cohomology import _scalar_json
from .core_algebra import BraidWord, SymScalar, sign_equivalence
from .fixtures import column_matches, connection_columns, load_fixture
from .monodromy import (
    MonodromyData,
    braid_act,
    check_p_invariants,
    markov_descend,
    validate,
)

MIN_PRECISION = 64


def _precision(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"precision must be an integer, got {text!r}")
    if value < MIN_PRECISION:
        raise argparse.ArgumentTypeError(f"precision must be at least {MIN_PRECISION} bits")
    return value


def _complex(text):
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}")


def _default_precision():
    env = os.environ.get("QMONO_PRECISION")
    if env is None:
        return 256
    try:
        return _precision(env)
    except argparse.ArgumentTypeError as exc:
        raise SystemExit(f"QMONO_PRECISION: {exc}")


# --------------------------------------------------------------------------
# Rendering
# --------------------------------------------------------------------------


def _cell_text(x):
    if isinstance(x, dict):
        return x.get("re", "") + ("+" if not str(x.get("im", "")).startswith("-") else "") + x.get("im", "") + "i"
    if isinstance(x, list):
        return str(SymScalar.from_json(x))
    return str(x)


def _matrix_text(m):
    cells = [[_cell_text(x) for x in row] for row in m]
    width = max((len(c) for row in cells for c in row), default=0)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)


def _matrix_latex(m):
    body = " \\\\\n".join(" & ".join(_cell_text(x) for x in row) for row in m)
    return "\\begin{pmatrix}\n" + body + "\n\\end{pmatrix}"


def render(doc, fmt):
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True)
    lines = []
    for key in sorted(doc):
        value = doc[key]
        is_matrix = isinstance(value, list) and value and all(isinstance(r, list) for r in value) and key in (
            "S", "C", "gram", "R", "eta",
        )
        if is_matrix:
            lines.append(f"{key} =")
            lines.append(_matrix_latex(value) if fmt == "latex" else _matrix_text(value))
        elif key == "checks":
            for check in value:
                mark = "PASS" if check["pass"] else "FAIL"
                lines.append(f"[{mark}] {check['name']}")
        else:
            lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
    return "\n".join(lines)


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------


def _resolve_chamber(args):
    if args.t is None and args.phi is None:
        return args.chamber
    return proj.chamber_index(args.k, args.t or 0, args.phi, args.precision)


def _check_space(args, parser):
    if args.space == "G":
        if args.r is None or not 0 < args.r < args.k:
            parser.error(f"--space G needs 0 < r < k (got r={args.r}, k={args.k})")
    elif args.k < 2:
        parser.error("--k must be at least 2")


def _data(args):
    chamber = _resolve_chamber(args)
    if args.space == "P":
        return proj.chamber_data(args.k, chamber, args.backend, args.precision)
    return grass.grass_monodromy(args.r, args.k, chamber=chamber, backend=args.backend, prec=args.precision)


def cmd_stokes(args):
    chamber = _resolve_chamber(args)
    if args.space == "P":
        s = [list(r) for r in proj.chamber_stokes(args.k, chamber)]
    else:
        s = grass.grass_stokes(args.r, args.k, chamber)
    doc = {"space": args.space, "k": args.k, "chamber": chamber, "S": s}
    if args.space == "G":
        doc["r"] = args.r
    return doc, True


def cmd_connection(args):
    data = _data(args)
    doc = {
        "space": args.space,
        "k": args.k,
        "chamber": data.meta.get("chamber", args.chamber),
        "backend": data.backend,
        "precision": args.precision,
        "C": [[_scalar_json(x) for x in row] for row in data.C],
    }
    if args.space == "G":
        doc["r"] = args.r
    return doc, True


def cmd_braid(args):
    with open(args.data_file) as fh:
        data = MonodromyData.from_json(json.load(fh))
    word = BraidWord.parse(args.word, data.n)
    out = braid_act(data, word) if len(word) else data
    doc = out.to_json()
    doc["word"] = str(word)
    return doc, True


# verification suites -------------------------------------------------------


def _check(name, ok, **extra):
    return dict(name=name, **{"pass": bool(ok)}, **extra)


def suite_constraints(kmax, prec):
    checks = []
    for k in range(2, kmax + 1):
        checks.append(_check(f"P{k} canonical symbolic", _valid(proj.canonical_data(k))))
        checks.append(_check(f"P{k} canonical numeric", _valid(proj.canonical_data(k, "numeric", prec))))
        for m in range(2 * k):
            checks.append(_check(f"P{k} chamber {m}", _valid(proj.chamber_data(k, m))))
        for r in range(2, k):
            for m in range(2 * k):
                checks.append(_check(f"G({r},{k}) chamber {m}", _valid(grass.grass_monodromy(r, k, chamber=m))))
    return checks


def _valid(data):
    return all(row["pass"] for row in validate(data))


def suite_quasi(kmax):
    checks = []
    for k in range(2, kmax + 1):
        checks.append(_check(f"P{k} quasi-periodicity", proj.quasi_periodicity_check(k)["pass"]))
        for r in range(2, k):
            checks.append(_check(f"G({r},{k}) quasi-periodicity", grass.grass_quasi_periodicity(r, k)["pass"]))
    return checks


def scaled_markov_solutions(bound):
    """All (a, b, c) with |entries| <= bound solving a^2 + b^2 + c^2 = abc."""
    out = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            # c^2 - ab c + (a^2 + b^2) = 0
            disc = (a * b) ** 2 - 4 * (a * a + b * b)
            if disc < 0:
                continue
            root = _isqrt_exact(disc)
            if root is None:
                continue
            for c in {(a * b + root) // 2, (a * b - root) // 2}:
                if abs(c) <= bound and (a * b + root) % 2 == 0:
                    out.append((a, b, c))
    return sorted(set(out))


def _isqrt_exact(n):
    r = math.isqrt(n)
    return r if r * r == n else None


def suite_markov(kmax, bound=300):
    checks = []
    sols = [s for s in scaled_markov_solutions(bound) if s != (0, 0, 0)]
    checks.append(
        _check(
            f"scaled Markov solutions up to {bound} descend to (3,3,3)",
            all(markov_descend(*s) is not None for s in sols),
            count=len(sols),
        )
    )
    for k in range(2, kmax + 1):
        ok = all(check_p_invariants([list(r) for r in proj.chamber_stokes(k, m)], k - 1) for m in range(2 * k))
        checks.append(_check(f"P{k} p-invariants", ok))
        for r in range(2, k):
            ok = all(check_p_invariants(grass.grass_stokes(r, k, m), r * (k - r)) for m in range(2 * k))
            checks.append(_check(f"G({r},{k}) p-invariants", ok))
    return checks


def suite_tables(kmax):
    checks = []
    tables = load_fixture("stokes_tables.json")
    for row in tables["chambers"]:
        if row["S"] is None or row["k"] > kmax:
            continue
        r, k, m = row["r"], row["k"], row["chamber"]
        s = [list(x) for x in proj.chamber_stokes(k, m)] if r == 1 else grass.grass_stokes(r, k, m)
        checks.append(_check(f"tabulated G({r},{k}) chamber {m}", sign_equivalence(s, row["S"]) is not None))
    if kmax >= 3:
        for row in tables["p2_walk"]:
            m = row["chamber"]
            s = [list(x) for x in proj.chamber_stokes(3, m)]
            checks.append(_check(f"P2 walk chamber {m}", s == row["S"]))
    columns = [("P3_chamber0", lambda: proj.chamber_data(4, 0)), ("P3_hat_p", lambda: proj.chamber_data(4, 1))]
    columns.append(("G24_chamber0", lambda: grass.grass_monodromy(2, 4, chamber=0)))
    for name, build in columns:
        if kmax < 4:
            break
        data = build()
        expected = connection_columns(name)
        found = [column_matches([row[j] for row in data.C], col) for j, col in enumerate(expected)]
        checks.append(_check(f"connection columns {name}", all(found), columns=found))
    return checks


SUITES = ("constraints", "quasi", "markov", "tables")


def cmd_verify(args):
    names = SUITES if args.suite == "all" else (args.suite,)
    checks = []
    for name in names:
        if name == "constraints":
            checks += suite_constraints(args.kmax, args.precision)
        elif name == "quasi":
            checks += suite_quasi(args.kmax)
        elif name == "markov":
            checks += suite_markov(args.kmax)
        else:
            checks += suite_tables(args.kmax)
    passed = all(c["pass"] for c in checks)
    return {"suite": args.suite, "kmax": args.kmax, "checks": checks, "pass": passed}, passed


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=_precision, default=None, help="working precision in bits (>= 64)")
    common.add_argument("--format", choices=("json", "text", "latex"), default="json")

    space = argparse.ArgumentParser(add_help=False)
    space.add_argument("--space", choices=("P", "G"), default="P")
    space.add_argument("--k", type=int, required=True)
    space.add_argument("--r", type=int, default=None)
    space.add_argument("--chamber", type=int, default=0)
    space.add_argument("--t", type=_complex, default=None, help='point t*sigma, e.g. "0.3+1.2i"')
    space.add_argument("--phi", type=float, default=None, help="slope of the oriented line")

    parser = argparse.ArgumentParser(prog="qmono", description="Monodromy data of projective spaces and Grassmannians.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("stokes", parents=[common, space], help="Stokes matrix of a chamber")
    conn = sub.add_parser("connection", parents=[common, space], help="central connection matrix")
    conn.add_argument("--backend", choices=("symbolic", "numeric"), default="symbolic")
    ver = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ver.add_argument("--suite", choices=SUITES + ("all",), default="all")
    ver.add_argument("--kmax", type=int, default=5)
    br = sub.add_parser("braid", parents=[common], help="apply a braid word to monodromy data")
    br.add_argument("data_file")
    br.add_argument("word", nargs="?", default="")
    return parser, {"stokes": cmd_stokes, "connection": cmd_connection, "verify": cmd_verify, "braid": cmd_braid}


def main(argv=None):
    parser, commands = build_parser()
    args = parser.parse_args(argv)
    if args.precision is None:
        args.precision = _default_precision()
    if args.command in ("stokes", "connection"):
        _check_space(args, parser)
    try:
        doc, ok = commands[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"qmono: error: {exc}", file=sys.stderr)
        return 2
    print(render(doc, args.format))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
