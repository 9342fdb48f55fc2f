"""
CLI commands using Click.
"""

import functools
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

import click

from config.settings import get_settings
from src.algebra.codes import Code
from src.errors import ChwError, InvariantBreach
from src.pipeline.bound import dim7_lower_bound
from src.pipeline.check import run_canon, run_check
from src.pipeline.classify import classify as run_classify
from src.pipeline.classify import parse_w_option, sub_report
from src.pipeline.report import FORMATS, emit_report, emit_sub

logger = logging.getLogger(__name__)


def setup_logging(level: Optional[str] = None):
    """Setup logging configuration; stdout is reserved for reports"""
    settings = get_settings()
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]

    if settings.log_file:
        log_file = Path(settings.log_file)
        log_file.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=getattr(logging, (level or settings.log_level).upper()),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True
    )


class ExitCodeGroup(click.Group):
    """Group whose usage errors (bad options, unknown commands) exit with 1"""

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as e:
            e.exit_code = 1
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = 1
            raise


def handle_errors(func):
    """Report ChwError on stderr and exit with its code"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ChwError as e:
            logger.debug(f"{type(e).__name__}: {e}")
            click.echo(f"❌ {e}", err=True)
            sys.exit(e.exit_code)
    return wrapper


def _emit(data: bytes, out: Optional[str]):
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
        click.echo(f"✅ Report written to {path}", err=True)
    else:
        click.echo(data.decode("utf-8"), nl=False)


@click.group(cls=ExitCodeGroup)
@click.option('--log-level', default=None, help='Logging level (default: CHW_LOG_LEVEL)')
def cli(log_level):
    """CHW classifier - fundamental groups of complex Hantzsche-Wendt manifolds"""
    setup_logging(log_level)


@cli.command()
@click.option('--dim', 'n', type=int, required=True, help='Dimension n')
@click.option('--format', 'fmt', type=click.Choice(['json', 'text']), default='json')
@handle_errors
def sub(n: int, fmt: str):
    """List canonical representatives of Sub(n)"""
    report = sub_report(n)
    click.echo(emit_sub(report, fmt).decode("utf-8"), nl=False)


def _codes_from_option(w: Tuple[str, ...], n: int) -> Optional[List[Code]]:
    if not w:
        return None
    codes = {}
    for gens in w:
        if gens.strip() == "0":
            code = Code.trivial(n)
        else:
            code = parse_w_option([g.strip() for g in gens.split(",")], n)
        codes[code.codewords] = code
    return list(codes.values())


@cli.command()
@click.option('--dim', 'n', type=int, required=True, help='Odd dimension n (3 or 5)')
@click.option('--w', 'w', multiple=True, help='Comma-separated generators of one W class ("0" for trivial)')
@click.option('--jobs', type=int, default=None, help='Worker processes (default: CHW_JOBS)')
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='Write the report to a file')
@click.option('--format', 'fmt', type=click.Choice(list(FORMATS)), default='json')
@click.option('--with-pairs', is_flag=True, help='List the canonical Phi of every manifold class')
@handle_errors
def classify(n: int, w: Tuple[str, ...], jobs: Optional[int], out: Optional[str], fmt: str, with_pairs: bool):
    """Classify CHW manifolds of dimension n"""
    codes = _codes_from_option(w, n)
    click.echo(f"🔍 Classifying dimension {n}...", err=True)
    report = run_classify(n, codes=codes, jobs=jobs, with_pairs=with_pairs)
    click.echo(f"✅ {report.total} manifold classes in {len(report.rows)} cells", err=True)

    published = report.published
    if published is not None and not published.all_rows_match:
        click.echo("⚠️  Counts differ from the published table", err=True)
    _emit(emit_report(report, fmt), out)


@cli.command()
@click.argument('path', type=click.Path(exists=True, dir_okay=False))
@handle_errors
def check(path: str):
    """Validate a pair file and report its torsion-free and oracle verdicts"""
    report = run_check(path)
    click.echo(report.model_dump_json(indent=2))
    if report.agreement is False:
        raise InvariantBreach("oracle and torsion-free filter disagree")


@cli.command()
@click.argument('path', type=click.Path(exists=True, dir_okay=False))
@handle_errors
def canon(path: str):
    """Print the canonical form of the class of a pair"""
    canonical = run_canon(path)
    click.echo(json.dumps(canonical.model_dump(), indent=2))


@cli.command()
@click.option('--format', 'fmt', type=click.Choice(['text', 'json']), default='text')
@handle_errors
def bound7(fmt: str):
    """Print the dimension-7 lower bound"""
    report = dim7_lower_bound()
    if not report.exceeds:
        raise InvariantBreach("matrix count divides the group order exactly")

    if fmt == 'json':
        click.echo(report.model_dump_json(indent=2))
        return
    click.echo(f"matrix_count: {report.matrix_count}")
    click.echo(f"group_order: {report.group_order}")
    click.echo(f"bound: {report.bound}")
    click.echo(f"excess: {report.excess_numerator}/{report.excess_denominator}")
