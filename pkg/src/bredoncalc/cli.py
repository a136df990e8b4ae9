"""Command-line interface.

    bredoncalc compute --p 3 --coeff constant-z --sphere "1g" --theory homology --method all
    bredoncalc chart --p 5 --l -4 --m 5 --coeff constant-z --page 2 --format ascii
    bredoncalc verify --p 5 --max-m 3 --max-l 3
    bredoncalc mackey --p 3 --functor burnside

Exit codes: 0 success, 1 invalid input, 2 routes or checks disagree.
"""

import argparse
import asyncio
import csv
import io
import json
import re
import sys
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, NoReturn

import bredoncalc.exceptions as exc
from bredoncalc.cells import build_orbit_space, build_representation_sphere
from bredoncalc.charts import render as render_chart
from bredoncalc.dihedral import LEVELS, DihedralGroup, LevelName, Variance, validate_prime
from bredoncalc.formulas import (
    RODegree,
    compare,
    orbit_space_formula,
    sphere_formula,
    with_epsilon,
)
from bredoncalc.groups import GradedGroup
from bredoncalc.homology import COEFFICIENTS, Coefficients, bredon
from bredoncalc.logging import configure_cli_logging, logger
from bredoncalc.mackey import (
    burnside_A,
    check_mackey_axioms,
    constant_Z,
    fixed_point_functor,
    render_diagram,
)
from bredoncalc.spectral import assemble, build_E1, cofiber_assemble, turn_page
from bredoncalc.verify import GridConfig, render as render_grid, run_grid

Theory = Literal["homology", "cohomology"]
Method = Literal["formula", "chain", "spectral", "cofiber", "all"]
OutputFormat = Literal["text", "json", "csv"]

COEFFICIENT_NAMES: dict[str, Coefficients] = {"constant-z": "constant", "burnside": "burnside"}
METHODS: tuple[Method, ...] = ("formula", "chain", "spectral", "cofiber", "all")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_DISAGREE = 2


# Degree strings

_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*([A-Za-z]+\d*)\s*")


def parse_degree(text: str, *, p: int) -> RODegree:
    """Parse "5g-4a", "2g1+1g2", "1e+2a" and the like.

    Each term is a signed integer followed by a unit: e (trivial), a (sign),
    g or gi (the i-th two-dimensional irreducible, 1 ≤ i ≤ (p−1)/2). Terms
    after the first need an explicit sign; a missing integer means 1.

    Raises:
        DegreeParseError: If the string is empty or has an unknown unit
        ParameterError: If p is not an odd prime or a γ-index is out of range
    """
    validate_prime(p)
    if not text.strip():
        raise exc.DegreeParseError(text, "empty degree")
    k = ell = 0
    gammas: dict[int, int] = {}
    pos = 0
    while pos < len(text):
        match = _TERM.match(text, pos)
        if match is None or match.end() == pos:
            raise exc.DegreeParseError(text, f"cannot read a term at position {pos}")
        sign, digits, unit = match.groups()
        if pos > 0 and not sign:
            raise exc.DegreeParseError(text, f"missing + or - before {unit!r}")
        value = int(digits) if digits else 1
        value = -value if sign == "-" else value
        if unit == "e":
            k += value
        elif unit == "a":
            ell += value
        elif unit == "g" or re.fullmatch(r"g\d+", unit):
            i = int(unit[1:]) if len(unit) > 1 else 1
            if not 1 <= i <= (p - 1) // 2:
                raise exc.ParameterError(
                    "degree", f"γ-index {i} out of range 1..{(p - 1) // 2} for p={p}"
                )
            gammas[i] = gammas.get(i, 0) + value
        else:
            raise exc.DegreeParseError(text, f"unknown unit {unit!r}")
        pos = match.end()
    return RODegree.create(k, ell, gammas=gammas)


# Compute


@dataclass(frozen=True)
class Query:
    """One `compute` request."""

    p: int = 3
    degree: RODegree = field(default_factory=RODegree)
    coeff: Coefficients = "constant"
    theory: Theory = "homology"
    method: Method = "formula"
    level: LevelName = "G"
    orbit_space: bool = False  # Σ^{kε+ℓα}S(mγ)₊ instead of S^{kε+ℓα+mγ}
    printed: bool = False
    format: OutputFormat = "text"

    @property
    def variance(self) -> Variance:
        return "covariant" if self.theory == "homology" else "contravariant"

    def check(self) -> None:
        """Raises ValidationError for any out-of-range field."""
        self.degree.check_prime(self.p)
        if self.coeff not in COEFFICIENT_NAMES.values():
            raise exc.ValidationError("coeff", f"unknown coefficients {self.coeff!r}")
        if self.theory not in ("homology", "cohomology"):
            raise exc.ValidationError("theory", f"unknown theory {self.theory!r}")
        if self.method not in METHODS:
            raise exc.ValidationError("method", f"unknown method {self.method!r}")
        if self.level not in LEVELS:
            raise exc.ValidationError("level", f"unknown level {self.level!r}")
        if self.format not in ("text", "json", "csv"):
            raise exc.ValidationError("format", f"unknown format {self.format!r}")
        if self.orbit_space and self.degree.m < 1:
            raise exc.ValidationError("degree", "orbit spaces need a positive γ-multiplicity")

    def space(self) -> str:
        d = self.degree
        if self.orbit_space:
            suspension = str(RODegree.create(d.k, d.ell))
            return f"S^{{{suspension}}} S({d.m}g)+"
        return f"S^{{{d}}}"


@dataclass
class _Answer:
    routes: dict[str, GradedGroup] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def note(self, text: str) -> None:
        logger.warning("Query note: %s", text)
        self.notes.append(text)


def _formula(query: Query, answer: _Answer) -> GradedGroup:
    d = query.degree
    if query.orbit_space:
        return orbit_space_formula(d.ell, d.m, query.coeff, query.variance, p=query.p, k=d.k)
    if d.m < 0:
        answer.note(f"{d} has negative γ-multiplicity; extended by duality")
    return sphere_formula(
        d.ell, d.m, query.coeff, query.variance, p=query.p, k=d.k, printed=query.printed
    )


def _chain(query: Query) -> GradedGroup:
    d = query.degree
    if d.ell < 0 or d.m < 0:
        raise exc.NoChainModelError(str(d))
    # periodicity: any γ-index gives the same groups, so the model uses the first one
    i = d.gammas[0][0] if d.gammas else 1
    x = (
        build_orbit_space(query.p, d.ell, d.m, i)
        if query.orbit_space
        else build_representation_sphere(query.p, d.ell, d.m, i)
    )
    return with_epsilon(bredon(x, query.coeff, query.level, query.variance), d.k)


def _spectral(query: Query) -> GradedGroup:
    d = query.degree
    page = turn_page(build_E1(d.ell, d.m, query.coeff, query.variance, p=query.p))
    return with_epsilon(assemble(page), d.k)


def _cofiber(query: Query) -> GradedGroup:
    d = query.degree
    return with_epsilon(cofiber_assemble(d.ell, d.m, query.coeff, query.variance, p=query.p), d.k)


def _available(query: Query) -> list[str]:
    """Routes that apply to the query without rerouting, formula first."""
    d = query.degree
    routes = ["formula"]
    if d.ell >= 0 and d.m >= 0:
        routes.append("chain")
    if d.m >= 1:
        routes.append("spectral" if query.orbit_space else "cofiber")
    return routes


def _solve(query: Query) -> _Answer:
    answer = _Answer()
    if query.level != "G":
        d = query.degree
        if d.ell < 0 or d.m < 0:
            raise exc.ValidationError(
                "level",
                f"level {query.level} needs a chain model, which exists only for ℓ, m ≥ 0; "
                f"{d} is answered at level G only",
            )
        answer.note(
            f"level {query.level} is computed by the chain model only; "
            "unverified against closed forms"
        )
        answer.routes["chain"] = _chain(query)
        return answer

    available = _available(query)
    if query.method == "all":
        wanted = available
    else:
        method = query.method
        if method == "spectral" and not query.orbit_space:
            answer.note("spheres have no spectral route; answered by the cofiber sequence")
            method = "cofiber"
        elif method == "cofiber" and query.orbit_space:
            answer.note("orbit spaces have no cofiber route; answered by the spectral sequence")
            method = "spectral"
        if method not in available:
            answer.note(f"no {method} route for {query.degree}; answered by formula")
            method = "formula"
        wanted = [method]

    solvers = {
        "formula": lambda: _formula(query, answer),
        "chain": lambda: _chain(query),
        "spectral": lambda: _spectral(query),
        "cofiber": lambda: _cofiber(query),
    }
    for route in wanted:
        answer.routes[route] = solvers[route]()
    return answer


def _render(query: Query, answer: _Answer) -> tuple[int, str]:
    first, groups = next(iter(answer.routes.items()))
    reports = {name: compare(g, groups) for name, g in answer.routes.items() if name != first}
    agree = all(r.ok for r in reports.values())
    code = EXIT_OK if agree else EXIT_DISAGREE

    if query.format == "json":
        payload = {
            "query": {
                "p": query.p,
                "degree": str(query.degree),
                "space": query.space(),
                "coeff": query.coeff,
                "theory": query.theory,
                "level": query.level,
            },
            "result": groups.to_json(),
            "routes": {name: g.to_json() for name, g in answer.routes.items()},
            "agree": agree,
            "mismatches": {name: r.to_json() for name, r in reports.items() if not r.ok},
            "notes": answer.notes,
        }
        return code, json.dumps(payload, indent=2) + "\n"

    provenance = [f"# routes: {', '.join(answer.routes)}"]
    provenance.extend(f"# note: {note}" for note in answer.notes)
    verdict = []
    if len(answer.routes) > 1:
        if agree:
            verdict.append("# routes agree")
        for name, report in reports.items():
            if not report.ok:
                verdict.append(f"# {name} disagrees with {first}:")
                verdict.extend(f"#   {line}" for line in str(report).splitlines())

    if query.format == "csv":
        # comment rows first, then the table
        buffer = io.StringIO()
        buffer.writelines(f"{line}\n" for line in provenance + verdict)
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["degree", "free_rank", "invariant_factors"])
        writer.writerows(groups.to_csv_rows())
        return code, buffer.getvalue()

    star = "_*" if query.theory == "homology" else "^*"
    lines = [f"# H{star} at {query.level} of {query.space()}, coeff={query.coeff}, p={query.p}"]
    lines.extend(provenance)
    lines.append(str(groups))
    lines.extend(verdict)
    return code, "\n".join(lines) + "\n"


def run(query: Query) -> tuple[int, str]:
    """Answer one query.

    Returns:
        (exit code, output text). Invalid input gives exit code 1 with the
        error as text; disagreeing routes give exit code 2.
    """
    try:
        query.check()
        answer = _solve(query)
    except exc.BredonCalcError as e:
        return EXIT_INVALID, f"error: {e}\n"
    return _render(query, answer)


# Argument parsing


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise _UsageError(f"{self.prog}: {message}")


def _parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bredoncalc", description="RO(D2p)-graded Bredon (co)homology.")
    parser.add_argument("--verbose", action="store_true", help="Log progress to stderr")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    compute = commands.add_parser("compute", help="Compute one graded group")
    compute.add_argument("--p", type=int, default=3)
    compute.add_argument("--coeff", choices=tuple(COEFFICIENT_NAMES), default="constant-z")
    compute.add_argument("--sphere", required=True, metavar="DEGREE", help='e.g. "5g-4a"')
    compute.add_argument("--theory", choices=("homology", "cohomology"), default="homology")
    compute.add_argument("--method", choices=METHODS, default="formula")
    compute.add_argument("--level", choices=LEVELS, default="G")
    compute.add_argument("--format", choices=("text", "json", "csv"), default="text")
    compute.add_argument(
        "--orbit-space", action="store_true", help="Use S^{ke+la} S(mg)+ instead of the sphere"
    )
    compute.add_argument(
        "--printed", action="store_true", help="Burnside homology with the (l-1)A interval term"
    )

    chart = commands.add_parser("chart", help="Draw a spectral sequence page")
    chart.add_argument("--p", type=int, default=3)
    chart.add_argument("--l", type=int, required=True, dest="ell")
    chart.add_argument("--m", type=int, required=True)
    chart.add_argument("--coeff", choices=tuple(COEFFICIENT_NAMES), default="constant-z")
    chart.add_argument("--theory", choices=("homology", "cohomology"), default="homology")
    chart.add_argument("--page", type=int, choices=(1, 2), default=2)
    chart.add_argument("--format", choices=("ascii", "json", "svg"), default="ascii")
    chart.add_argument("--output", type=Path, help="Write to a file instead of stdout")

    verify = commands.add_parser("verify", help="Cross-check every route on a grid")
    verify.add_argument("--p", type=int, action="append", dest="primes")
    verify.add_argument("--max-l", type=int, default=3)
    verify.add_argument("--max-m", type=int, default=3)
    verify.add_argument("--coeff", choices=tuple(COEFFICIENT_NAMES), action="append")
    verify.add_argument("--jobs", type=int, default=4)

    mackey = commands.add_parser("mackey", help="Print a Mackey functor and check its axioms")
    mackey.add_argument("--p", type=int, default=3)
    mackey.add_argument(
        "--functor",
        choices=("constant-z", "burnside", "fixed-point-Z2", "fixed-point-e"),
        default="burnside",
    )
    return parser


def _compute(args: argparse.Namespace) -> tuple[int, str]:
    try:
        degree = parse_degree(args.sphere, p=args.p)
    except exc.ValidationError as e:
        return EXIT_INVALID, f"error: {e}\n"
    query = Query(
        p=args.p,
        degree=degree,
        coeff=COEFFICIENT_NAMES[args.coeff],
        theory=args.theory,
        method=args.method,
        level=args.level,
        orbit_space=args.orbit_space,
        printed=args.printed,
        format=args.format,
    )
    return run(query)


def _chart(args: argparse.Namespace) -> tuple[int, str]:
    variance: Variance = "covariant" if args.theory == "homology" else "contravariant"
    page = build_E1(args.ell, args.m, COEFFICIENT_NAMES[args.coeff], variance, p=args.p)
    if args.page == 2:
        page = turn_page(page)
    text = render_chart(page, args.format)
    if args.output is not None:
        args.output.write_text(text, encoding="utf-8")
        return EXIT_OK, f"wrote {args.output}\n"
    return EXIT_OK, text


def _verify(args: argparse.Namespace) -> tuple[int, str]:
    coefficients = COEFFICIENTS
    if args.coeff:
        coefficients = tuple(COEFFICIENT_NAMES[c] for c in args.coeff)
    config = GridConfig(
        primes=tuple(args.primes) if args.primes else (3, 5),
        max_l=args.max_l,
        max_m=args.max_m,
        concurrency=max(1, args.jobs),
        coefficients=coefficients,
    )
    results = asyncio.run(run_grid(config))
    code = EXIT_OK if all(r.ok for r in results) else EXIT_DISAGREE
    return code, render_grid(results)


def _mackey(args: argparse.Namespace) -> tuple[int, str]:
    group = DihedralGroup(args.p)
    match args.functor:
        case "constant-z":
            functor = constant_Z(args.p)
        case "burnside":
            functor = burnside_A(args.p)
        case "fixed-point-Z2":
            functor = fixed_point_functor(group.coset_space(group.reflection()))
        case _:
            functor = fixed_point_functor(group.coset_space(group.trivial()))
    report = check_mackey_axioms(functor)
    code = EXIT_OK if report.ok else EXIT_DISAGREE
    return code, f"{render_diagram(functor)}\n{report}\n"


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the `bredoncalc` console script."""
    try:
        args = _parser().parse_args(argv)
    except _UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_INVALID
    configure_cli_logging(args.verbose)
    commands = {"compute": _compute, "chart": _chart, "verify": _verify, "mackey": _mackey}
    try:
        code, text = commands[args.command](args)
    except exc.BredonCalcError as e:
        code, text = EXIT_INVALID, f"error: {e}\n"
    stream = sys.stdout if code != EXIT_INVALID else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
