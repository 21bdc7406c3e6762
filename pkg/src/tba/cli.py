"""Command-line interface: ``tba <command> FILE ...``.

Exit status is 0 on success, 1 when a mathematical check fails (axiom
violation, Burnside-Brauer hypothesis, non-normal subset for lifting) and 2
on input or usage errors.
"""

from __future__ import annotations

import argparse
import os
import re
import sys

import numpy as np

from . import __version__
from .characters import (
    DEFAULT_TOL,
    Character,
    character_table,
    decompose,
    degree_character,
    embedding_check,
    kernel,
)
from .constructions import q_example
from .errors import (
    AxiomViolation,
    EmbeddingMismatch,
    HypothesisFailed,
    NotClosed,
    TBAError,
)
from .formats import dumps_native, load
from .products import burnside_brauer, product
from .report import Report
from .subsets import (
    ClosedSubset,
    enumerate_closed_subsets,
    quotient,
    quotient_degree_one_set,
)

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


def _indices(text):
    try:
        return [int(t) for t in re.split(r"[,\s]+", text.strip()) if t]
    except ValueError:
        raise UsageError(f"expected comma-separated indices, got {text!r}")


def _closed(A, text):
    idx = _indices(text)
    if any(not 0 <= i < A.dim for i in idx):
        raise UsageError(f"--closed index out of range for dim {A.dim}")
    try:
        return ClosedSubset(A, idx)
    except NotClosed as exc:
        raise UsageError(str(exc))


def _character(table, text):
    """``2``, ``0,1``, ``0+1``, ``2*0+1`` or ``deg``: a sum of irreducibles."""
    A = table.algebra
    total = np.zeros(A.dim, dtype=complex)
    terms = [t for t in re.split(r"[,+]", text.replace(" ", "")) if t]
    if not terms:
        raise UsageError("empty character specification")
    for term in terms:
        coeff, _, idx = term.rpartition("*")
        try:
            c = int(coeff) if coeff else 1
        except ValueError:
            raise UsageError(f"bad coefficient in {term!r}")
        if idx == "deg":
            total += c * degree_character(A).values
            continue
        try:
            i = int(idx)
        except ValueError:
            raise UsageError(f"bad character index {idx!r}")
        if not 0 <= i < len(table):
            raise UsageError(f"character index {i} out of range (0..{len(table) - 1})")
        total += c * table[i].values
    single = len(terms) == 1 and "*" not in terms[0]
    return Character(A, total, irreducible=single)


def _seed(args):
    env = os.environ.get("TBA_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"TBA_SEED must be an integer, got {env!r}")
    return args.seed


def _table(A, args):
    return character_table(A, tol=args.tol, seed=_seed(args))


def _value_header(A):
    return [f"b{i}" for i in range(A.dim)]


# -- commands -----------------------------------------------------------------

def cmd_validate(args):
    try:
        A = load(args.file, strict=args.strict)
    except AxiomViolation as exc:
        rep = Report(f"FAIL: {len(exc.violations)} axiom violation(s)")
        rep.table(
            "violations",
            ["axiom", "indices", "found", "expected"],
            [[v.axiom, v.indices, str(v.found), str(v.expected)] for v in exc.violations],
        )
        return rep, EXIT_CHECK
    rep = Report(f"OK: {A.dim} basis elements, axioms I–IV hold")
    rep.add("dim", A.dim)
    rep.add("degrees", A.degrees)
    rep.add("involution", A.star)
    rep.add("total_degree", A.total_degree)
    rep.add("commutative", A.is_commutative)
    exhaustive = args.strict or A.dim <= 12
    rep.add("associativity", "exhaustive" if exhaustive else "sampled")
    return rep, EXIT_OK


def cmd_subsets(args):
    A = load(args.file)
    rep = Report(f"closed subsets of a {A.dim}-dimensional table algebra")
    rows = []
    subsets = enumerate_closed_subsets(A)
    for n, C in enumerate(subsets):
        rows.append([n, C.indices, C.size, C.normal, C.strongly_normal, len(quotient(C).cosets)])
    rep.add("count", len(subsets))
    rep.table("subsets", ["#", "members", "size", "normal", "strongly_normal", "cosets"], rows)
    return rep, EXIT_OK


def cmd_quotient(args):
    A = load(args.file)
    C = _closed(A, args.closed)
    pres = quotient(C)
    Q = pres.quotient
    rep = Report(f"quotient by C = {{{', '.join(map(str, C.indices))}}}")
    rep.add("closed", C.indices)
    rep.add("size", C.size)
    rep.add("normal", C.normal)
    rep.add("strongly_normal", C.strongly_normal)
    rep.add("group_algebra", pres.is_group_algebra())
    rep.add("quotient_dim", Q.dim)
    rep.add("quotient_degrees", Q.degrees)
    rep.add("degree_one", sorted(quotient_degree_one_set(C, pres)))
    rep.table(
        "cosets",
        ["coset", "rep", "members", "degree"],
        [[k, pres.reps[k], block, Q.degrees[k]] for k, block in enumerate(pres.cosets)],
    )
    if pres.alphas is not None:
        rep.table(
            "alpha",
            ["b", "coset", "alpha"],
            [[b, pres.coset_of[b], a] for b, a in enumerate(pres.alphas)],
        )
    rep.table("gamma", ["i", "j", "k", "value"], [list(e) for e in Q.entries()])
    return rep, EXIT_OK


def _chartable_rows(T):
    return [
        [i, n, m] + list(chi.values)
        for i, (chi, n, m) in enumerate(zip(T.irreducibles, T.block_dims, T.multiplicities))
    ]


def cmd_chartable(args):
    A = load(args.file)
    T = _table(A, args)
    rep = Report(f"character table ({len(T)} irreducibles)")
    rep.add("dim", A.dim)
    rep.add("irreducibles", len(T))
    rep.add("block_dims", T.block_dims)
    rep.add("degree_character", T.degree_index)
    rep.add("tol", repr(T.tol))
    for key in ("gram_offdiag", "regular_trace", "idempotent"):
        rep.add(f"residual_{key}", "ok" if T.residuals[key] < T.tol else "FAIL")
    rep.table("characters", ["chi", "n", "m"] + _value_header(A), _chartable_rows(T))
    return rep, EXIT_OK


def _decomposition_rows(dec):
    return [[i, a, n] for i, (a, n) in enumerate(zip(dec.raw, dec.rounded))]


def cmd_product(args):
    A = load(args.file)
    T = _table(A, args)
    chi = _character(T, args.chi)
    psi = _character(T, args.psi)
    prod = product(chi, psi)
    dec = decompose(T, prod)
    rep = Report(f"character product chi[{args.chi}] * psi[{args.psi}]")
    rep.add("is_character", dec.is_character)
    rep.add("in_span", dec.in_span)
    rep.table(
        "values",
        ["b", "degree", "chi", "psi", "product"],
        [[b, A.degrees[b], chi[b], psi[b], prod[b]] for b in range(A.dim)],
    )
    rep.table("decomposition", ["irreducible", "coefficient", "rounded"], _decomposition_rows(dec))
    return rep, EXIT_OK


def cmd_bb(args):
    A = load(args.file)
    T = _table(A, args)
    chi = _character(T, args.chi)
    code = EXIT_OK
    try:
        bb = burnside_brauer(T, chi)
    except HypothesisFailed as exc:
        bb = exc.report
        code = EXIT_CHECK
    passed = bb.verdict and not bb.failures
    if not bb.verdict:
        code = EXIT_CHECK
    rep = Report(f"Burnside-Brauer check for chi[{args.chi}]: {'PASS' if passed else 'FAIL'}")
    rep.add("k", bb.k)
    rep.add("values", bb.values)
    rep.add("kernel", kernel(chi).indices)
    rep.add("hypothesis_kernel", bb.hypothesis_kernel_ok)
    rep.add("hypothesis_powers", bb.hypothesis_powers_ok)
    rep.add("verdict", "PASS" if passed else "FAIL")
    rep.add("theorem_coverage", bb.verdict)
    rep.add("vandermonde", bb.vandermonde)
    rep.add("chi0_regular_reading", bb.regular_chi0)
    for note in bb.notes:
        rep.add("note", note)
    rep.table(
        "coverage",
        ["irreducible", "first_power"],
        [[j, bb.coverage.get(j, "none")] for j in range(len(T))],
    )
    rep.table(
        "powers",
        ["i", "is_character", "coefficients"],
        [[i, d.is_character, d.rounded] for i, d in enumerate(bb.power_decompositions)],
    )
    rep.table(
        "beta",
        ["irreducible"] + [f"class{t}" for t in range(bb.k)],
        [[j] + row for j, row in enumerate(bb.betas)],
    )
    return rep, code


def cmd_lift(args):
    A = load(args.file)
    C = _closed(A, args.closed)
    if not C.normal:
        rep = Report(f"FAIL: C = {{{', '.join(map(str, C.indices))}}} is not normal")
        rep.add("normal", False)
        return rep, EXIT_CHECK
    pres = quotient(C)
    T = _table(A, args)
    QT = character_table(pres.quotient, tol=args.tol, seed=_seed(args))
    try:
        emb = embedding_check(C, T, QT, pres, tol=args.tol)
    except EmbeddingMismatch as exc:
        rep = Report(f"FAIL: {exc}")
        return rep, EXIT_CHECK
    rep = Report(f"lifting Irr(A/C) into Irr(A) for C = {{{', '.join(map(str, C.indices))}}}")
    rep.add("normal", True)
    rep.add("strongly_normal", C.strongly_normal)
    rep.add("quotient_irreducibles", len(QT))
    rep.add("nonvanishing_on_e", len(T) - len(emb.excluded))
    rep.add("excluded", emb.excluded)
    rep.table(
        "lifts",
        ["quotient_chi", "matches"] + _value_header(A),
        [[j, emb.mapping[j]] + list(lift.values) for j, lift in enumerate(emb.lifts)],
    )
    rep.table("chi_at_e", ["chi", "value"], [[i, v] for i, v in enumerate(emb.values_at_e)])
    return rep, EXIT_OK


def cmd_example_q(args):
    if args.q < 2:
        raise UsageError("Q must be at least 2")
    text = dumps_native(q_example(args.q), comment=f"q-family example, q = {args.q}")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return None, EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="tba", description="Table algebra toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--format", choices=["human", "tsv"], default="human")
    sub = p.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["human", "tsv"], default=argparse.SUPPRESS)
    numeric = argparse.ArgumentParser(add_help=False, parents=[fmt])
    numeric.add_argument("--tol", type=float, default=DEFAULT_TOL)
    numeric.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("validate", parents=[fmt], help="check axioms I-IV and associativity")
    s.add_argument("file")
    s.add_argument("--strict", action="store_true", help="exhaustive associativity at any size")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("subsets", parents=[fmt], help="list closed subsets")
    s.add_argument("file")
    s.set_defaults(func=cmd_subsets)

    s = sub.add_parser("quotient", parents=[fmt], help="quotient by a closed subset")
    s.add_argument("file")
    s.add_argument("--closed", required=True)
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("chartable", parents=[numeric], help="irreducible characters")
    s.add_argument("file")
    s.set_defaults(func=cmd_chartable)

    s = sub.add_parser("product", parents=[numeric], help="character product")
    s.add_argument("file")
    s.add_argument("--chi", required=True)
    s.add_argument("--psi", required=True)
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("bb", parents=[numeric], help="Burnside-Brauer check")
    s.add_argument("file")
    s.add_argument("--chi", required=True)
    s.set_defaults(func=cmd_bb)

    s = sub.add_parser("lift", parents=[numeric], help="embed Irr(A/C) into Irr(A)")
    s.add_argument("file")
    s.add_argument("--closed", required=True)
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("example-q", parents=[fmt], help="emit the q-family example as a native file")
    s.add_argument("q", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_example_q)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        rep, code = args.func(args)
    except (UsageError, TBAError, OSError) as exc:
        kind = type(exc).__name__
        print(f"tba: error: {kind}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if rep is not None:
        sys.stdout.write(rep.render(args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
