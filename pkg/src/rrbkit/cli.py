"""Command-line front end.

Exit codes: 0 for success or a true verdict, 1 for a false verdict, 2 for
usage and input errors.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import sys
from pathlib import Path

from .adjunction import apply_F_object, verify_adjunction
from .algebra import BOUNDED_LATTICE, VARIETIES, AlgebraError, FiniteAlgebra, check_variety_membership
from .congruence import (
    all_congruences,
    complementary_factor_pairs,
    monolith,
    principal,
)
from .constructions import (
    build_lattice,
    build_si_rrb,
    complement_graph,
    find_rrb_structure,
    rrb_from_equivalence,
    search_complement_graph,
)
from .decomposition import central_elements, check_c_direct_product, decompose_all, decompose_direct
from .formats import DocumentError, parse_document, render
from .free import free_algebra
from .relational import SCHEMES, RelationalStructure, apply_U, equivalence_blocks

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2

_VARIETIES = {**VARIETIES, "bounded-lattice": BOUNDED_LATTICE}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


# ---------------------------------------------------------------------------
# helpers


def _load(path):
    if path is None:
        raise UsageError("--input is required")
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_document(text)


def _algebra(args) -> FiniteAlgebra:
    obj = _load(args.input)
    if not isinstance(obj, FiniteAlgebra):
        raise UsageError("expected an algebra document")
    return obj


def _structure(args) -> RelationalStructure:
    obj = _load(args.input)
    if not isinstance(obj, RelationalStructure):
        raise UsageError("expected a relational or poset-shorthand document")
    return obj


def _blocks(algebra, partition) -> str:
    return " ".join("{" + ",".join(algebra.label(e) for e in b) + "}" for b in partition.blocks())


def _names(obj, elems) -> str:
    return "{" + ",".join(obj.label(e) for e in elems) + "}"


def _rendered(obj, args, default="table", annotate=None) -> str:
    return render(obj, args.render or default, annotate)


# ---------------------------------------------------------------------------
# commands; each returns (exit code, text)


def cmd_free(args):
    names = args.names.split(",") if args.names else None
    fa = free_algebra(args.variety or "rrb", args.generators, names)
    return EXIT_OK, _rendered(fa.algebra, args)


def cmd_apply_u(args):
    return EXIT_OK, _rendered(apply_U(_algebra(args), args.scheme or "posemigroup-order"), args)


def cmd_apply_f(args):
    x = _structure(args)
    fx = apply_F_object(x, args.variety or "rrb", args.scheme)
    annotate = {fx.eta[e]: f"η({x.label(e)})" for e in x.universe}
    fmt = args.render or "table"
    text = render(fx.algebra, fmt, annotate)
    if fmt == "table":
        text += "eta: " + ", ".join(f"{x.label(e)} -> {fx.algebra.label(fx.eta[e])}"
                                    for e in x.universe) + "\n"
    return EXIT_OK, text


def cmd_check_adjunction(args):
    x = _structure(args)
    if args.algebra is None:
        raise UsageError("--algebra is required")
    a = parse_document(Path(args.algebra).read_text(encoding="utf-8"))
    if not isinstance(a, FiniteAlgebra):
        raise UsageError("--algebra must be an algebra document")
    report = verify_adjunction(x, a, args.variety or "rrb", probe_structures=[x],
                               probe_algebras=[a], scheme=args.scheme)
    lines = [f"algebra homomorphisms F X -> A: {report.algebra_homs}",
             f"relational morphisms X -> U A: {report.relational_homs}",
             f"bijection: {report.injective and report.surjective}",
             f"round trip: {report.round_trip}",
             f"unit squares: {report.unit_squares} checked, {len(report.unit_failures)} failed",
             f"naturality: {report.naturality_checks} checked, "
             f"{len(report.naturality_failures)} failed",
             "verdict: " + ("adjunction verified" if report.passed else "adjunction FAILS")]
    return (EXIT_OK if report.passed else EXIT_FALSE), "\n".join(lines) + "\n"


def cmd_check_variety(args):
    a = _algebra(args)
    name = args.variety or "rrb"
    if name not in _VARIETIES:
        raise UsageError(f"unknown variety {name!r}; expected one of {sorted(_VARIETIES)}")
    report = check_variety_membership(a, _VARIETIES[name])
    if report.passed:
        return EXIT_OK, f"in {name}\n"
    lines = [f"not in {name}"]
    for lhs, rhs, env in report.failures:
        where = ", ".join(f"x{k}={a.label(v)}" for k, v in sorted(env.items()))
        lines.append(f"  {lhs} = {rhs} fails at {where}")
    return EXIT_FALSE, "\n".join(lines) + "\n"


def cmd_congruences(args):
    a = _algebra(args)
    cons = all_congruences(a, args.max_size)
    lines = [f"{len(cons)} congruences"] + [f"  {_blocks(a, c.partition)}" for c in cons]
    if a.size > 1:
        m = monolith(a, args.max_size)
        lines.append("monolith: " + (_blocks(a, m.monolith.partition) if m.monolith else "none")
                     + f" (subdirectly irreducible: {'yes' if m.subdirectly_irreducible else 'no'})")
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_factor_congruences(args):
    a = _algebra(args)
    pairs = complementary_factor_pairs(a, args.max_size)
    lines = [f"{len(pairs)} complementary pairs"]
    for t, d in pairs:
        lines.append(f"  {_blocks(a, t.partition)}  |  {_blocks(a, d.partition)}")
    nontrivial = any(not (t.partition.is_identity() or d.partition.is_identity()) for t, d in pairs)
    lines.append("directly decomposable: " + ("yes" if nontrivial else "no"))
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_decompose(args):
    a = _algebra(args)
    centrals = central_elements(a)
    if args.central is None:
        if not centrals:
            return EXIT_FALSE, "no central element\n"
        c = centrals[0]
    else:
        c = a.element(args.central)
        if c not in centrals:
            raise UsageError(f"{args.central} is not central")
    lines = [f"central element: {a.label(c)}"]
    if args.factors:
        i1, i2 = (tuple(a.element(s) for s in part.split(",")) for part in args.factors.split("|"))
        cert = check_c_direct_product(a, c, i1, i2)
        for name, ok in cert.axioms.items():
            lines.append(f"  {name}: {'ok' if ok else 'fails at ' + str(cert.witnesses.get(name))}")
        lines.append("verdict: " + ("decomposition" if cert.valid else "not a decomposition"))
        return (EXIT_OK if cert.valid else EXIT_FALSE), "\n".join(lines) + "\n"
    certs = decompose_all(a, c, args.max_size)
    lines.append(f"{len(certs)} decompositions (unordered)")
    for cert in certs:
        lines.append(f"  {_names(a, cert.i1)} x {_names(a, cert.i2)}")
    if args.direct:
        pairs = decompose_direct(a, c)
        lines.append(f"direct search: {len(pairs)} ordered pairs")
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_si_build(args):
    if args.x_size is None:
        raise UsageError("--x-size is required")
    alg, _ = build_si_rrb(args.x_size)
    text = _rendered(alg, args)
    if not args.certify:
        return EXIT_OK, text
    m = monolith(alg)
    base = principal(alg, 0, 1)
    contained = all(base.refines(principal(alg, u, v))
                    for u in alg.universe for v in alg.universe if u < v)
    ok = m.subdirectly_irreducible and contained
    lines = ["", f"size: {alg.size}",
             "monolith: " + (_blocks(alg, m.monolith.partition) if m.monolith else "none"),
             f"Cg(a0,a1) inside every Cg(u,v): {'yes' if contained else 'no'}",
             "verdict: " + ("subdirectly irreducible" if ok else "NOT certified")]
    return (EXIT_OK if ok else EXIT_FALSE), text + "\n".join(lines) + "\n"


def cmd_equiv_rrb(args):
    if args.blocks:
        blocks = [b.split(",") for b in args.blocks.split("|")]
    else:
        x = _structure(args)
        blocks = [[x.label(e) for e in b] for b in equivalence_blocks(x)]
    return EXIT_OK, _rendered(rrb_from_equivalence(blocks), args)


def _lattice_from_args(args):
    if args.kind is None or args.n is None:
        raise UsageError("--kind and --n are required")
    return build_lattice(args.kind, args.n, args.m)


def cmd_lattice(args):
    return EXIT_OK, _rendered(_lattice_from_args(args), args)


def cmd_complement_graph(args):
    lat = _algebra(args) if args.input else _lattice_from_args(args)
    return EXIT_OK, _rendered(complement_graph(lat), args, default="dot")


def cmd_graph_search(args):
    target = _structure(args)
    bound = args.max_size if args.max_size is not None else 6
    res = search_complement_graph(target, bound, args.mode)
    if not res.found:
        return EXIT_FALSE, (f"no lattice with at most {bound} elements realises the target "
                            f"({res.lattices_checked} lattices checked, mode {res.mode})\n")
    head = f"found a {res.lattice.size}-element lattice after {res.lattices_checked} checked\n"
    return EXIT_OK, head + _rendered(res.lattice, args)


def cmd_check_associative(args):
    p = _structure(args)
    alg = find_rrb_structure(p)
    if alg is None:
        return EXIT_FALSE, "no RRB structure exists\n"
    return EXIT_OK, _rendered(alg, args)


COMMANDS = {
    "free": cmd_free,
    "apply-u": cmd_apply_u,
    "apply-f": cmd_apply_f,
    "check-adjunction": cmd_check_adjunction,
    "check-variety": cmd_check_variety,
    "congruences": cmd_congruences,
    "decompose": cmd_decompose,
    "factor-congruences": cmd_factor_congruences,
    "si-build": cmd_si_build,
    "equiv-rrb": cmd_equiv_rrb,
    "lattice": cmd_lattice,
    "complement-graph": cmd_complement_graph,
    "graph-search": cmd_graph_search,
    "check-associative": cmd_check_associative,
}


_HELP = {
    "free": "free algebra on n generators",
    "apply-u": "relational reduct of an algebra under a scheme",
    "apply-f": "free algebra on a structure modulo its relations",
    "check-adjunction": "verify the hom-set bijection for a structure and an algebra",
    "check-variety": "test an algebra against a variety's identities",
    "congruences": "list all congruences",
    "decompose": "direct decompositions relative to a central element",
    "factor-congruences": "complementary factor congruence pairs",
    "si-build": "subdirectly irreducible band on self-maps of an n-set",
    "equiv-rrb": "band realising an ordered partition",
    "lattice": "named bounded lattices",
    "complement-graph": "complementation graph of a bounded lattice",
    "graph-search": "smallest lattice whose complement graph contains a target",
    "check-associative": "find a band whose order is a given poset",
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rrbkit", description="Finite right regular bands and friends.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    for name in COMMANDS:
        p = sub.add_parser(name, help=_HELP[name])
        p.add_argument("--input", help="document path, or - for stdin")
        p.add_argument("--variety", help=f"one of {', '.join(sorted(_VARIETIES))}")
        p.add_argument("--scheme", choices=sorted(SCHEMES))
        p.add_argument("--render", choices=["json", "dot", "table"])
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--max-size", type=int)
        if name == "free":
            p.add_argument("--generators", type=int, required=True)
            p.add_argument("--names", help="comma-separated generator names")
        if name == "check-adjunction":
            p.add_argument("--algebra", help="algebra document for the right-hand side")
        if name == "decompose":
            p.add_argument("--central", help="label of the central element")
            p.add_argument("--factors", help="check one pair, e.g. 'p,1|q,1'")
            p.add_argument("--direct", action="store_true", help="also run the direct subsemigroup search")
        if name == "si-build":
            p.add_argument("--x-size", type=int)
            p.add_argument("--certify", action="store_true")
        if name == "equiv-rrb":
            p.add_argument("--blocks", help="ordered blocks, e.g. '0|a,b'")
        if name in ("lattice", "complement-graph"):
            p.add_argument("--kind", choices=["Mn", "chain", "bounded-parallel-sum"])
            p.add_argument("--n", type=int)
            p.add_argument("--m", type=int)
        if name == "graph-search":
            p.add_argument("--mode", choices=["components", "exact"], default="components")
    return parser


def run_command(argv) -> tuple[int, str]:
    """Run one command; returns (exit code, output text).  Never raises on bad input."""
    parser = build_parser()
    captured = io.StringIO()
    try:
        try:
            with contextlib.redirect_stdout(captured):
                args = parser.parse_args(list(argv))
        except SystemExit as e:     # --help
            return int(e.code or 0), captured.getvalue()
        if args.variety is not None and args.command not in ("check-variety",) \
                and args.variety not in VARIETIES:
            raise UsageError(f"unknown variety {args.variety!r}; expected one of {sorted(VARIETIES)}")
        code, text = COMMANDS[args.command](args)
    except UsageError as e:
        return EXIT_USAGE, f"error: {e}\n"
    except (DocumentError, AlgebraError, OSError) as e:
        return EXIT_USAGE, f"error: {e}\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        return code, ""
    return code, text


def main(argv=None) -> int:
    code, text = run_command(sys.argv[1:] if argv is None else argv)
    stream = sys.stderr if code == EXIT_USAGE else sys.stdout
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
