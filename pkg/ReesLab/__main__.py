import argparse
import sys
from typing import Any, Dict, List, Optional

from ReesLab.client.client import ReesLabClient
from ReesLab.client.job import FORMATS, JobSpec
from ReesLab.client.logger import LogLevel


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", "-o", default=None, help="Write the report here instead of stdout")
    parser.add_argument("--format", "-f", choices=FORMATS, default="json", help="Report format")
    parser.add_argument("--log-level", default=None, help="Library log level (DEBUG, INFO, WARNING, ...)")


def _add_source(parser: argparse.ArgumentParser, models: bool = False) -> None:
    if not models:
        parser.add_argument("input", help="Input document")
        return

    parser.add_argument("input", nargs="?", default=None, help="A bigraded_complex document")
    parser.add_argument("--model", "-m", default=None, help="A model descriptor such as torus:g=2")


def build_parser() -> argparse.ArgumentParser:
    """
    One sub-command per job command

    """

    parser: argparse.ArgumentParser = argparse.ArgumentParser(
        prog="rlab",
        description="Exact Rees modules, filtered complexes and Frolicher approximating vector bundles"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    for name, summary in (
            ("split", "Decide splittability and split a multifiltered space"),
            ("charts", "Glue the affine charts of a toric bundle on P^n"),
            ("p1type", "Splitting type of the bundle on P^1 of two filtrations"),
            ("coker", "Kernel, cokernel and torsion of the Rees map of a filtered map"),
    ):
        sub = commands.add_parser(name, help=summary)
        _add_source(sub)
        _add_common(sub)

    rees = commands.add_parser("rees", help="Rees module of a multifiltration, or recovery from a module dump")
    _add_source(rees)
    rees.add_argument("--fiber", default=None, help="Point a1,..,an at which to take the fibre")
    rees.add_argument("--window", default=None, help="Degree window lo..hi")
    _add_common(rees)

    fiber = commands.add_parser("fiber", help="Fibre of the Rees module at a point")
    _add_source(fiber)
    fiber.add_argument("--at", required=True, help="Point a1,..,an")
    _add_common(fiber)

    strict = commands.add_parser("strict", help="Test a filtered map for r-strictness")
    _add_source(strict)
    strict.add_argument("--r", type=int, required=True, help="Size of the index sets")
    _add_common(strict)

    connection = commands.add_parser("connection", help="Curvature of an equivariant connection")
    _add_source(connection)
    connection.add_argument("--flatten", action="store_true", help="Compute the trivializing gauge")
    _add_common(connection)

    specseq = commands.add_parser("specseq", help="Frolicher spectral sequence of a bigraded complex")
    _add_source(specseq, models=True)
    specseq.add_argument("--rmax", type=int, default=None, help="Last page to tabulate at least")
    _add_common(specseq)

    favb = commands.add_parser("favb", help="Frolicher approximating vector bundle of H^k")
    _add_source(favb, models=True)
    favb.add_argument("--k", type=int, required=True, help="Total degree")
    favb.add_argument("--samples", default=None, help="Points h != 0 for the generic fibre, e.g. 1,2,i")
    _add_common(favb)

    favb2 = commands.add_parser("favb2", help="Bundle of H^k with the Hodge and conjugate filtrations")
    _add_source(favb2, models=True)
    favb2.add_argument("--k", type=int, required=True, help="Total degree")
    favb2.add_argument("--base-change", action="store_true", help="Also compare with the two-parameter Rees complex")
    _add_common(favb2)

    models = commands.add_parser("models", help="List or export the built-in models")
    models.add_argument("action", choices=("list", "export"))
    models.add_argument("name", nargs="?", default=None, help="Model descriptor to export")
    _add_common(models)

    verify = commands.add_parser("verify-all", help="Run the acceptance suites")
    verify.add_argument("--model", "-m", default=None, help="Only run the suite of this model")
    verify.add_argument("--samples", type=int, default=None, help="Seeded instances for every randomized suite, instead of each suite's own count")
    _add_common(verify)

    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    reserved = {"command", "input", "model", "output", "format", "log_level"}
    options: Dict[str, Any] = {
        key: value for key, value in vars(args).items()
        if key not in reserved and value is not None and value is not False
    }

    return JobSpec(
        command=args.command,
        input=getattr(args, "input", None),
        model=getattr(args, "model", None),
        options=options,
        output=args.output,
        format=args.format
    )


def main(argv: Optional[List[str]] = None) -> int:
    args: argparse.Namespace = build_parser().parse_args(argv)

    try:
        level: Optional[LogLevel] = LogLevel.parse(args.log_level) if args.log_level else None
    except ValueError as ex:
        sys.stderr.write(f"{ex}\n")
        return 2

    client: ReesLabClient = ReesLabClient(log_level=level)
    return client.execute(job_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
