"""
FIBRA - CLI entry point.
"""

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import typer
from loguru import logger
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from core import store
from core.budget import SearchBudget
from core.catalog import example, example_names, example_role
from core.config import JobConfig, settings
from core.errors import (
    EXIT_BUDGET,
    EXIT_NEGATIVE,
    EXIT_OK,
    EXIT_PARSE,
    BundleMismatchError,
    ClassificationInconclusive,
    FibraError,
    FunctorError,
    InvalidObjectError,
    exit_code_for,
)
from core.properties import run_properties
from finspace.space import FinSpace
from functorcat.enumerate import assignment_of
from functorcat.functor import functor_violations
from grothendieck.construction import groth
from bundles.bundle import FiberBundle, verify_bundle, with_witnesses
from bundles.canonical import canonical_representation
from bundles.classify import ClassTable, classify
from bundles.iso import bundle_iso
from bundles.pullback import pullback_bundle

logger.remove()
logger.add(
    sys.stderr,
    format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | <level>{message}</level>",
    level=settings.LOG_LEVEL,
)
if settings.LOG_FILE:
    logger.add(settings.LOG_FILE, rotation="10 MB", retention="7 days", level="DEBUG")

app = typer.Typer(help="FIBRA - fiber bundles over finite spaces", no_args_is_help=True)
console = Console()
err_console = Console(stderr=True)

OUT = typer.Option(None, "--out", "-o", help="Also write the result document to this file")
FORMAT = typer.Option("table", "--format", "-f", help="table (human) or document (JSON on stdout)")
BUDGET = typer.Option(settings.SEARCH_BUDGET, "--budget", help="Node budget for backtracking searches")
SEED = typer.Option(settings.DEFAULT_SEED, "--seed", help="Seed for randomized commands")
EXAMPLE = typer.Option(None, "--example", "-e", help="Take inputs from a built-in example")

r = store.render_label


@dataclass
class Outcome:
    document: Any
    code: int = EXIT_OK
    render: Optional[Callable[[], None]] = None


def _job(command: str, inputs: List[Optional[Path]], out, fmt, budget, seed, example_name) -> JobConfig:
    try:
        return JobConfig(
            command=command,
            inputs=[p for p in inputs if p is not None],
            out=out,
            format=fmt,
            budget=budget,
            seed=seed,
            example=example_name,
        )
    except ValidationError as exc:
        for err in exc.errors():
            err_console.print(f"[red]error[/red] {err['msg']}")
        raise typer.Exit(EXIT_PARSE)


def _describe(exc: BaseException) -> List[str]:
    lines = [f"{type(exc).__name__}: {exc}"]
    if isinstance(exc, FunctorError):
        lines.extend(f"  {v}" for v in exc.violations)
    return lines


def _finish(job: JobConfig, outcome: Outcome) -> None:
    text = store.write_document(outcome.document, job.out)
    if job.format == "document":
        if job.out is None:
            typer.echo(text, nl=False)
    elif outcome.render is not None:
        outcome.render()
    raise typer.Exit(outcome.code)


def _execute(job: JobConfig, action: Callable[[SearchBudget], Outcome]) -> None:
    """Run one command; errors become the exit-code contract."""
    budget = SearchBudget(job.budget, job.command)
    logger.info(f"{job.command}: inputs={[str(p) for p in job.inputs]} example={job.example} budget={job.budget}")
    try:
        outcome = action(budget)
    except ClassificationInconclusive as exc:
        err_console.print(f"[yellow]inconclusive[/yellow] {exc}")
        if exc.partial is None:
            raise typer.Exit(EXIT_BUDGET)
        partial = exc.partial
        outcome = Outcome(store.class_table_to_doc(partial), EXIT_BUDGET, lambda: _print_class_table(partial))
    except FibraError as exc:
        for line in _describe(exc):
            err_console.print(f"error {line}", style="red", markup=False)
        logger.debug(f"{job.command}: {type(exc).__name__} -> exit {exit_code_for(exc)}")
        raise typer.Exit(exit_code_for(exc))
    _finish(job, outcome)


def _input(path: Optional[Path], example_name: Optional[str], role: str, *kinds: str) -> Any:
    """Object from a document path, else the given role of the example."""
    if path is not None:
        return store.from_document(store.expect(store.read_document(path), *kinds))
    if example_name is not None:
        return example_role(example_name, role)
    raise typer.BadParameter(f"give a {kinds[0]} document or --example NAME")


def _bundle_input(path: Optional[Path], example_name: Optional[str], role: str, budget: SearchBudget) -> FiberBundle:
    return with_witnesses(_input(path, example_name, role, "bundle"), budget)


# -- check -------------------------------------------------------------------------


def _closure_problems(doc, X: FinSpace) -> List[str]:
    if doc.leq_closure is None:
        return []
    computed = {(X.label(i), X.label(j)) for i, j in X.relation_pairs}
    given = {tuple(p) for p in doc.leq_closure}
    problems = [f"leq_closure lists {x} <= {y}, which the generators do not imply" for x, y in sorted(given - computed)]
    problems += [f"leq_closure omits {x} <= {y}" for x, y in sorted(computed - given)]
    return problems


def _check_document(doc) -> Tuple[List[str], Dict[str, Any]]:
    problems: List[str] = []
    details: Dict[str, Any] = {"kind": doc.kind}
    try:
        if doc.kind == "space":
            X = store.space_from_doc(doc)
            problems.extend(_closure_problems(doc, X))
            details.update(points=len(X), t0=X.is_t0)
        elif doc.kind == "functor":
            D = store.functor_from_doc(doc)
            problems.extend(functor_violations(D))
            details.update(base_points=len(D.base))
        elif doc.kind == "bundle":
            bundle = store.bundle_from_doc(doc)
            details.update(points=len(bundle.total), verified=bundle.verified)
        elif doc.kind in ("map", "groth"):
            f = store.from_document(doc)
            details.update(points=len(f.dom))
    except InvalidObjectError as exc:
        problems.extend(_describe(exc))
    return problems, details


def _print_report(doc) -> None:
    if doc.ok:
        console.print("[green]ok[/green]")
        return
    for p in doc.problems:
        console.print(f"✗ {p}", style="red", markup=False)


@app.command()
def check(
    path: Optional[Path] = typer.Argument(None, help="Any FIBRA document"),
    out: Optional[Path] = OUT,
    fmt: str = FORMAT,
    budget: int = BUDGET,
    example_name: Optional[str] = EXAMPLE,
):
    """Validate a document (or every object of an example) and list violations."""
    job = _job("check", [path], out, fmt, budget, settings.DEFAULT_SEED, example_name)

    def action(_: SearchBudget) -> Outcome:
        if path is not None:
            problems, details = _check_document(store.read_document(path))
        elif example_name is not None:
            problems, details = [], {"example": example_name}
            for role, obj in example(example_name).items():
                doc = store.parse_document(store.dump_document(store.to_document(obj)))
                found, _ = _check_document(doc)
                problems.extend(f"{role}: {p}" for p in found)
        else:
            raise typer.BadParameter("give a document path or --example NAME")
        report = store.report("check", not problems, problems, **details)
        return Outcome(report, EXIT_OK if report.ok else EXIT_NEGATIVE, lambda: _print_report(report))

    _execute(job, action)


# -- groth ---------------------------------------------------------------------------


@app.command("groth")
def groth_command(
    path: Optional[Path] = typer.Argument(None, help="Functor document"),
    dump_opens: bool = typer.Option(False, "--dump-opens", help="List every open set of the result"),
    out: Optional[Path] = OUT,
    fmt: str = FORMAT,
    budget: int = BUDGET,
    example_name: Optional[str] = EXAMPLE,
):
    """Grothendieck construction of a functor, with projection and (b, x) tags."""
    job = _job("groth", [path], out, fmt, budget, settings.DEFAULT_SEED, example_name)

    def action(_: SearchBudget) -> Outcome:
        G = groth(_input(path, example_name, "functor", "functor"))
        if dump_opens and len(G.space) > settings.DUMP_OPENS_MAX_POINTS:
            raise InvalidObjectError(
                f"--dump-opens refuses spaces over {settings.DUMP_OPENS_MAX_POINTS} points ({len(G.space)} here)"
            )
        doc = store.groth_to_doc(G, dump_opens=dump_opens)

        def render() -> None:
            table = Table(title=f"∫D: {len(G.space)} points over {len(G.base)}")
            for col in ("point", "over", "fiber point", "|U|"):
                table.add_column(col)
            for k, lab in enumerate(G.space.labels):
                table.add_row(r(lab), r(lab[0]), r(lab[1]), str(len(G.space.down_sets[k])))
            console.print(table)
            for U in doc.space.opens or []:
                console.print("{" + ", ".join(U) + "}")

        return Outcome(doc, render=render)

    _execute(job, action)


# -- classify ------------------------------------------------------------------------


def _print_class_table(table: ClassTable) -> None:
    B, G = table.base, table.group
    edges = B.generators
    title = f"{len(table)} classes, {table.total_functors} functors, |Aut(F)| = {len(G)}"
    if table.inconclusive:
        title += " (inconclusive)"
    out = Table(title=title)
    for col in ("#", "edges (edge -> automorphism)", "total points", "class size"):
        out.add_column(col)
    for k, cls in enumerate(table.classes):
        assignment = assignment_of(cls.functor, G)
        shown = ", ".join(f"{r(B.label(i))}<{r(B.label(j))}->{assignment[(i, j)]}" for i, j in edges)
        total = str(len(cls.bundle.total)) if cls.bundle is not None else "?"
        out.add_row(str(k), shown or "-", total, str(cls.size))
    console.print(out)
    for g, h in enumerate(G.elements):
        console.print(f"  {g}: " + " ".join(f"{r(x)}->{r(y)}" for x, y in h.as_label_dict().items()))


@app.command("classify")
def classify_command(
    base: Optional[Path] = typer.Argument(None, help="Base space document"),
    fiber: Optional[Path] = typer.Argument(None, help="Fiber space document"),
    out: Optional[Path] = OUT,
    fmt: str = FORMAT,
    budget: int = BUDGET,
    example_name: Optional[str] = EXAMPLE,
):
    """Isomorphism classes of bundles over BASE with fiber FIBER."""
    job = _job("classify", [base, fiber], out, fmt, budget, settings.DEFAULT_SEED, example_name)

    def action(b: SearchBudget) -> Outcome:
        B = _input(base, example_name, "base", "space")
        F = _input(fiber, example_name, "fiber", "space")
        table = classify(B, F, b)
        return Outcome(store.class_table_to_doc(table), render=lambda: _print_class_table(table))

    _execute(job, action)


# -- canrep, iso, pullback, verify ---------------------------------------------------


@app.command()
def canrep(
    path: Optional[Path] = typer.Argument(None, help="Bundle document"),
    out: Optional[Path] = OUT,
    fmt: str = FORMAT,
    budget: int = BUDGET,
    example_name: Optional[str] = EXAMPLE,
):
    """Canonical representation: the morphism-inverting functor b |-> p^-1(b)."""
    job = _job("canrep", [path], out, fmt, budget, settings.DEFAULT_SEED, example_name)

    def action(b: SearchBudget) -> Outcome:
        D = canonical_representation(_bundle_input(path, example_name, "bundle", b)).functor

        def render() -> None:
            table = Table(title="canonical representation")
            table.add_column("b <= b'")
            table.add_column("map")
            for (i, j), arrow in sorted(D.arrows.items()):
                if i != j:
                    pairs = " ".join(f"{r(x)}->{r(y)}" for x, y in arrow.as_label_dict().items())
                    table.add_row(f"{r(D.base.label(i))} <= {r(D.base.label(j))}", pairs)
            console.print(table)

        return Outcome(store.functor_to_doc(D), render=render)

    _execute(job, action)


@app.command()
def iso(
    first: Optional[Path] = typer.Argument(None, help="Bundle document"),
    second: Optional[Path] = typer.Argument(None, help="Bundle document"),
    out: Optional[Path] = OUT,
    fmt: str = FORMAT,
    budget: int = BUDGET,
    example_name: Optional[str] = EXAMPLE,
):
    """Over-base isomorphism between two bundles; exit 1 when there is none."""
    job = _job("iso", [first, second], out, fmt, budget, settings.DEFAULT_SEED, example_name)

    def action(b: SearchBudget) -> Outcome:
        p = _bundle_input(first, example_name, "bundle", b)
        q = _bundle_input(second, example_name, "other", b)
        h = bundle_iso(p, q, b)
        if h is None:
            report = store.report("iso", False, ["not isomorphic"])
            return Outcome(report, EXIT_NEGATIVE, lambda: console.print("[red]not isomorphic[/red]"))
        doc = store.witness_to_doc("over-base isomorphism", h)

        def render() -> None:
            console.print("[green]isomorphic[/green]")
            for x, y in doc.map.items():
                console.print(f"  {x} -> {y}")

        return Outcome(doc, render=render)

    _execute(job, action)


def _print_bundle(bundle: FiberBundle, title: str) -> None:
    table = Table(title=title)
    for col in ("b", "|p^-1(b)|", "|p^-1(U_b)|"):
        table.add_column(col)
    for k, lab in enumerate(bundle.base.labels):
        table.add_row(r(lab), str(len(bundle.fiber_points(k))), str(len(bundle.chart(k).total_points)))
    console.print(table)


@app.command()
def pullback(
    bundle: Optional[Path] = typer.Argument(None, help="Bundle document"),
    along: Optional[Path] = typer.Argument(None, help="Map document into the bundle's base"),
    out: Optional[Path] = OUT,
    fmt: str = FORMAT,
    budget: int = BUDGET,
    example_name: Optional[str] = EXAMPLE,
):
    """Pullback of a bundle along a map of bases."""
    job = _job("pullback", [bundle, along], out, fmt, budget, settings.DEFAULT_SEED, example_name)

    def action(b: SearchBudget) -> Outcome:
        p = _bundle_input(bundle, example_name, "bundle", b)
        f = _input(along, example_name, "map", "map")
        if f.cod != p.base:
            raise BundleMismatchError("map does not land in the bundle's base")
        pulled = pullback_bundle(p, f, b)
        return Outcome(store.bundle_to_doc(pulled), render=lambda: _print_bundle(pulled, "pullback bundle"))

    _execute(job, action)


@app.command()
def verify(
    projection: Optional[Path] = typer.Argument(None, help="Map or groth document E -> B"),
    fiber: Optional[Path] = typer.Argument(None, help="Fiber space document"),
    out: Optional[Path] = OUT,
    fmt: str = FORMAT,
    budget: int = BUDGET,
    example_name: Optional[str] = EXAMPLE,
):
    """Decide whether a map is a fiber bundle; emits the bundle with its trivializations."""
    job = _job("verify", [projection, fiber], out, fmt, budget, settings.DEFAULT_SEED, example_name)

    def action(b: SearchBudget) -> Outcome:
        p = _input(projection, example_name, "projection", "map", "groth")
        F = _input(fiber, example_name, "fiber", "space")
        found = verify_bundle(p, F, b)
        if found is None:
            report = store.report("verify", False, ["not a fiber bundle with this fiber"])
            return Outcome(report, EXIT_NEGATIVE, lambda: console.print("[red]not a fiber bundle[/red]"))
        return Outcome(store.bundle_to_doc(found), render=lambda: _print_bundle(found, "locally trivial"))

    _execute(job, action)


# -- examples, properties -------------------------------------------------------------


@app.command()
def examples(
    name: Optional[str] = typer.Argument(None, help="Example name"),
    role: Optional[str] = typer.Argument(None, help="Role within the example (base, fiber, functor, ...)"),
    out: Optional[Path] = OUT,
    fmt: str = FORMAT,
):
    """List the built-in examples, or emit one object of an example."""
    job = _job("examples", [], out, fmt, settings.SEARCH_BUDGET, settings.DEFAULT_SEED, name)

    def action(_: SearchBudget) -> Outcome:
        if name is not None and role is not None:
            doc = store.to_document(example_role(name, role), name=f"{name}/{role}")
            return Outcome(doc, render=lambda: typer.echo(store.dump_document(doc), nl=False))
        names = [name] if name is not None else example_names()
        entries = {n: example(n) for n in names}
        listing = {n: {k: type(v).__name__ for k, v in entry.items()} for n, entry in entries.items()}

        def render() -> None:
            table = Table(title="examples")
            table.add_column("name")
            table.add_column("roles")
            for n, roles in listing.items():
                table.add_row(n, ", ".join(f"{k} ({v})" for k, v in roles.items()))
            console.print(table)

        return Outcome(store.report("examples", True, examples=listing), render=render)

    _execute(job, action)


@app.command()
def properties(
    trials: int = typer.Option(settings.PROPERTY_TRIALS, "--trials", help="Random functors to draw"),
    seed: int = SEED,
    out: Optional[Path] = OUT,
    fmt: str = FORMAT,
    budget: int = BUDGET,
):
    """Randomized oracles: J-basis topology and the bundle characterization."""
    job = _job("properties", [], out, fmt, budget, seed, None)

    def action(b: SearchBudget) -> Outcome:
        result = run_properties(trials=trials, seed=seed, budget=b)
        problems = [f"trial {t}: topology mismatch" for t in result.topology_mismatches]
        problems += [f"trial {t}: characterization mismatch" for t in result.characterization_mismatches]
        report = store.report(
            "properties", result.ok, problems, trials=trials, seed=seed, bundles=result.bundles_seen
        )

        def render() -> None:
            if result.ok:
                console.print(f"[green]ok[/green] {trials} trials, seed {seed}, {result.bundles_seen} bundles")
            else:
                _print_report(report)

        return Outcome(report, EXIT_OK if result.ok else EXIT_NEGATIVE, render)

    _execute(job, action)


if __name__ == "__main__":
    app()
