import io
import json
import random
import sys
from functools import wraps

import click

from sidcodes.bounds import bounds_record, density_gap_note, sweep
from sidcodes.config import Config
from sidcodes.constructions import construct
from sidcodes.errors import CodeFileError, DimensionError, InfeasibleError
from sidcodes.export import render_dot
from sidcodes.forms import ConstructForm, GraphForm, RandomSubsetsForm, SolveForm, SweepForm, parse_range
from sidcodes.graph import build_product_graph
from sidcodes.models import CodeSet
from sidcodes.serialization import (CodeFile, load_code_file, report_to_dict, serialize,
                                    solve_result_to_dict, write_sweep_csv)
from sidcodes.solver import Objective, SolveBudget, solve_min_id, solve_min_sid
from sidcodes.verification import verify as run_checks

EXIT_FAIL = 1
EXIT_UNSUPPORTED = 2
EXIT_IO = 3

topology_option = click.option('--topology', type=click.Choice(['path', 'cycle']), default='path', show_default=True)


def current_config():
    ctx = click.get_current_context()
    return ctx.find_root().obj or Config()


def validated(form_class):
    """Validate the command's keyword arguments with ``form_class``; exit 2 on errors."""
    def decorator(f):
        @wraps(f)
        def decorated_function(**kwargs):
            form = form_class(data=kwargs)
            if not form.validate():
                for field, errors in form.errors.items():
                    for error in errors:
                        click.echo(f'{field}: {error}', err=True)
                sys.exit(EXIT_UNSUPPORTED)
            return f(**kwargs)
        return decorated_function
    return decorator


def emit(text, out_path):
    """Write ``text`` to ``out_path`` or stdout; exit 3 on I/O failure."""
    if out_path is None:
        click.echo(text, nl=False)
        return
    try:
        with open(out_path, 'w', encoding='utf-8') as handle:
            handle.write(text)
    except OSError as exc:
        click.echo(f'Could not write {out_path}: {exc}', err=True)
        sys.exit(EXIT_IO)


def read_code(path):
    try:
        return load_code_file(path).to_code()
    except (OSError, CodeFileError, DimensionError) as exc:
        click.echo(f'Could not read code file {path}: {exc}', err=True)
        sys.exit(EXIT_IO)


@click.group()
def main():
    """Self-identifying codes in K_m x P_n and K_m x C_n."""


@main.command('construct')
@click.option('--m', type=int, required=True)
@click.option('--n', type=int, required=True)
@topology_option
@click.option('--out', 'out_path', type=click.Path(dir_okay=False), default=None)
@click.option('--format', 'fmt', type=click.Choice(['json', 'dot']), default='json', show_default=True)
@validated(ConstructForm)
def construct_command(m, n, topology, out_path, fmt):
    """Build the explicit code for (m, n, topology)."""
    try:
        code, plan = construct(m, n, topology)
        record = bounds_record(m, n, topology)
    except DimensionError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_UNSUPPORTED)
    if fmt == 'dot':
        text = render_dot(build_product_graph(m, n, topology), code)
    else:
        text = serialize(CodeFile.from_code(code, plan))
    emit(text, out_path)
    click.echo(f'size={len(code)} lower={record.lower} upper={record.upper}'
               + (f' exact={record.exact}' if record.exact is not None else '')
               + (' fallback' if plan.fallback else ''), err=True)


CHECK_NAMES = ['dominating', 'identifying', 'def1', 'def2', 'degree', 'sufficient', 'necessary']


@main.command('verify')
@click.argument('in_path', type=click.Path(dir_okay=False))
@click.option('--checks', default='def1', show_default=True,
              help=f'Comma-separated subset of: {", ".join(CHECK_NAMES)}.')
def verify_command(in_path, checks):
    """Check a code file and print the report as JSON."""
    names = [name.strip() for name in checks.split(',') if name.strip()]
    unknown = [name for name in names if name not in CHECK_NAMES]
    if unknown or not names:
        click.echo(f'Unknown checks: {", ".join(unknown) or "(none given)"}', err=True)
        sys.exit(EXIT_UNSUPPORTED)
    code = read_code(in_path)
    report, decisive = run_checks(code, names)
    click.echo(json.dumps(report_to_dict(report), indent=2))
    if not report.passed(decisive):
        for name, witness in report.violations:
            if name in decisive and name not in report.advisory:
                click.echo(f'{name} violated at {", ".join(map(str, witness))}', err=True)
        sys.exit(EXIT_FAIL)


@main.command('solve')
@click.option('--m', type=int, required=True)
@click.option('--n', type=int, required=True)
@topology_option
@click.option('--objective', type=click.Choice([o.value for o in Objective]), default='sid', show_default=True)
@click.option('--max-nodes', type=int, default=None)
@click.option('--max-seconds', type=click.FloatRange(min=0, min_open=True), default=None)
@click.option('--no-symmetry', is_flag=True, default=False)
@click.option('--pruning', default=None, help="Comma-separated rules, or 'none'.")
@click.option('--workers', type=int, default=None)
@click.option('--out', 'out_path', type=click.Path(dir_okay=False), default=None)
@validated(SolveForm)
def solve_command(m, n, topology, objective, max_nodes, max_seconds, no_symmetry, pruning, workers, out_path):
    """Compute a certified minimum code by branch and bound."""
    config = current_config()
    form = SolveForm(data={'m': m, 'n': n, 'topology': topology, 'pruning': pruning})
    budget = SolveBudget(
        max_nodes=max_nodes or config.MAX_NODES,
        max_seconds=max_seconds or config.MAX_SECONDS,
        allow_symmetry=not no_symmetry,
        pruning=form.rules(),
        workers=min(workers or config.THREADS, config.THREADS),
    )
    graph = build_product_graph(m, n, topology)
    solve = solve_min_sid if objective == 'sid' else solve_min_id
    try:
        result = solve(graph, budget)
    except InfeasibleError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_UNSUPPORTED)
    emit(json.dumps(solve_result_to_dict(result), indent=2) + '\n', out_path)
    if not result.certified:
        click.echo(f'Budget exhausted; best code found has {result.optimum} vertices (uncertified).', err=True)
        sys.exit(EXIT_FAIL)


@main.command('sweep')
@click.option('--m', 'm_range', required=True, help="Range such as '3..5'.")
@click.option('--n', 'n_range', required=True, help="Range such as '7..30'.")
@topology_option
@click.option('--out', 'out_path', type=click.Path(dir_okay=False), default=None)
@validated(SweepForm)
def sweep_command(m_range, n_range, topology, out_path):
    """Write bounds, construction sizes and densities as CSV."""
    m_values, n_values = parse_range(m_range), parse_range(n_range)
    rows = sweep(m_values, n_values, topology)

    buffer = io.StringIO()
    write_sweep_csv(rows, buffer, current_config().CSV_DIGITS)
    emit(buffer.getvalue(), out_path)
    for m in m_values:
        click.echo(density_gap_note(m), err=True)


@main.command('export-dot')
@click.option('--m', type=int, required=True)
@click.option('--n', type=int, required=True)
@topology_option
@click.option('--code', 'code_path', type=click.Path(dir_okay=False), default=None)
@click.option('--out', 'out_path', type=click.Path(dir_okay=False), default=None)
@validated(GraphForm)
def export_dot_command(m, n, topology, code_path, out_path):
    """Render the graph, optionally with a code, as Graphviz DOT."""
    graph = build_product_graph(m, n, topology)
    code = None
    if code_path is not None:
        code = read_code(code_path)
        if (code.graph.m, code.graph.n, code.graph.topology) != (graph.m, graph.n, graph.topology):
            click.echo(f'Code file {code_path} does not describe {graph}.', err=True)
            sys.exit(EXIT_IO)
    emit(render_dot(graph, code), out_path)


@main.command('random-subsets')
@click.option('--m', type=int, required=True)
@click.option('--n', type=int, required=True)
@topology_option
@click.option('--count', type=int, default=10, show_default=True)
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--out', 'out_path', type=click.Path(dir_okay=False), default=None)
@validated(RandomSubsetsForm)
def random_subsets_command(m, n, topology, count, seed, out_path):
    """Write random code files, one JSON object per line."""
    graph = build_product_graph(m, n, topology, precompute=False)
    rng = random.Random(seed)
    lines = []
    for _ in range(count):
        code = CodeSet.from_bits(graph, rng.getrandbits(graph.num_vertices))
        lines.append(json.dumps(CodeFile.from_code(code).to_dict(), separators=(',', ':')))
    emit('\n'.join(lines) + '\n', out_path)
