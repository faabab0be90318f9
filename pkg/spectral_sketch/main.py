import io
import logging
from typing import Optional

import click

from spectral_sketch.core.config import get_settings
from spectral_sketch.core.exceptions import SketchError
from spectral_sketch.core.logging import configure_logging
from spectral_sketch.operations.bench import loglog_slope, run_bench, write_bench_csv
from spectral_sketch.operations.generators import GraphKind, WeightMode, generate
from spectral_sketch.operations.query import build_bundle
from spectral_sketch.schemas.params import Algorithm, SketchParams, SparsifierBackend
from spectral_sketch.storage.edge_list import read_edge_list, read_vector, write_edge_list
from spectral_sketch.storage.sketch_file import load_sketch, read_footer, save_sketch

logger = logging.getLogger(__name__)


def _params(eps: float, delta: float, c_alpha: Optional[float], c_beta: Optional[float],
            c_med: Optional[float], sparsifier: str, verify: bool, tight: bool,
            h_override: Optional[float]) -> SketchParams:
    overrides = {k: v for k, v in (("c_alpha", c_alpha), ("c_beta", c_beta), ("c_med", c_med)) if v is not None}
    try:
        return SketchParams(eps=eps, delta=delta, sparsifier=sparsifier, verify_sparsifier=verify,
                            tight=tight, h_override=h_override, **overrides)
    except ValueError as e:
        raise click.BadParameter(str(e))


def _sketch_options(fn):
    options = [
        click.option("--eps", type=float, required=True, help="Target relative error."),
        click.option("--delta", type=float, default=0.05, show_default=True, help="Failure probability."),
        click.option("--c-alpha", type=float, default=None, help="Override C_ALPHA."),
        click.option("--c-beta", type=float, default=None, help="Override C_BETA."),
        click.option("--c-med", type=float, default=None, help="Override C_MED."),
        click.option("--sparsifier", type=click.Choice([b.value for b in SparsifierBackend]),
                     default=lambda: get_settings().SPARSIFIER, help="Front-end sparsifier."),
        click.option("--verify", is_flag=True, help="Check the sparsifier on random vectors."),
        click.option("--tight", is_flag=True, help="Run every stage at eps/3."),
        click.option("--h-override", type=float, default=None, help="Basic preprocessing threshold."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


@click.group()
@click.option("--log-level", default=None, help="Logging level (defaults to LOG_LEVEL).")
def cli(log_level: Optional[str]) -> None:
    """Build and query spectral sketches of weighted graphs."""
    configure_logging(log_level)


@cli.command()
@click.option("--algo", type=click.Choice([a.value for a in Algorithm]), default="basic", show_default=True)
@_sketch_options
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--workers", type=int, default=None, help="Parallel replica builds.")
@click.option("-i", "--input", "input_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-o", "--output", "output_path", type=click.Path(dir_okay=False), required=True)
def build(algo, eps, delta, c_alpha, c_beta, c_med, sparsifier, verify, tight, h_override,
          seed, workers, input_path, output_path):
    """Build a sketch file from an edge list."""
    params = _params(eps, delta, c_alpha, c_beta, c_med, sparsifier, verify, tight, h_override)
    try:
        g = read_edge_list(input_path)
        bundle = build_bundle(g, params, algo, seed=seed, workers=workers)
        size = save_sketch(bundle, output_path)
    except SketchError as e:
        raise click.ClickException(str(e))
    report = bundle.size_report()
    click.echo(f"Wrote {algo} sketch with {len(bundle.replicas)} replicas to {output_path} ({size} bytes)")
    click.echo(f"records={report.records} bits={report.total_bits}")


@cli.command()
@click.option("-s", "--sketch", "sketch_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-x", "--vector", "vector_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--exact-against", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Edge list to compute the exact value from.")
def query(sketch_path, vector_path, exact_against):
    """Answer x^T L x from a sketch file."""
    try:
        bundle = load_sketch(sketch_path)
        x = read_vector(vector_path)
        exact_graph = read_edge_list(exact_against, n=bundle.n) if exact_against else None
        report = bundle.query(x, exact_graph=exact_graph)
    except SketchError as e:
        raise click.ClickException(str(e))
    click.echo(report.model_dump_json(indent=2))


@cli.command()
@click.option("-s", "--sketch", "sketch_path", type=click.Path(exists=True, dir_okay=False), required=True)
def size(sketch_path):
    """Print the size summary of a sketch file."""
    try:
        with open(sketch_path, "rb") as fh:
            report = read_footer(fh.read())
    except SketchError as e:
        raise click.ClickException(str(e))
    click.echo(report.model_dump_json(indent=2))


@cli.command(name="generate")
@click.option("--kind", type=click.Choice([k.value for k in GraphKind]), required=True)
@click.option("-n", "--vertices", "n", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--weights", type=click.Choice([w.value for w in WeightMode]), default="constant", show_default=True)
@click.option("--degree", type=int, default=6, show_default=True, help="Degree for random-regular graphs.")
@click.option("-o", "--output", "output_path", type=click.Path(dir_okay=False), required=True)
def generate_graph(kind, n, seed, weights, degree, output_path):
    """Write a synthetic graph as an edge list."""
    try:
        g = generate(kind, n, seed=seed, weights=weights, degree=degree)
    except SketchError as e:
        raise click.ClickException(str(e))
    write_edge_list(g, output_path)
    click.echo(f"Wrote {kind} graph with n={g.n}, m={g.m} to {output_path}")


@cli.command()
@click.option("--kind", type=click.Choice([k.value for k in GraphKind]), default="dense-core", show_default=True)
@click.option("-n", "--vertices", "n", type=int, default=500, show_default=True)
@click.option("-i", "--input", "input_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Benchmark an edge list instead of a generated graph.")
@click.option("--sweep", default="0.5,0.35,0.25,0.18", show_default=True, help="Comma-separated eps values.")
@click.option("--algo", "algos", type=click.Choice([a.value for a in Algorithm]), multiple=True,
              help="Algorithms to run (default: both).")
@click.option("--delta", type=float, default=0.05, show_default=True)
@click.option("--trials", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("-o", "--output", "output_path", type=click.Path(dir_okay=False), default=None,
              help="CSV path (default: stdout).")
def bench(kind, n, input_path, sweep, algos, delta, trials, seed, workers, output_path):
    """Sweep eps and report size, error and timing as CSV."""
    try:
        eps_values = [float(e) for e in sweep.split(",") if e.strip()]
    except ValueError:
        raise click.BadParameter(f"Cannot parse sweep {sweep!r}")
    algorithms = [Algorithm(a) for a in (algos or [a.value for a in Algorithm])]
    try:
        g = read_edge_list(input_path) if input_path else generate(kind, n, seed=seed)
        base = SketchParams(eps=eps_values[0], delta=delta)
        rows = run_bench(g, eps_values, algorithms, base, seed=seed, trials=trials, workers=workers)
    except SketchError as e:
        raise click.ClickException(str(e))
    except ValueError as e:
        raise click.BadParameter(str(e))
    if output_path:
        with open(output_path, "w", newline="") as fh:
            write_bench_csv(rows, fh)
    else:
        buffer = io.StringIO()
        write_bench_csv(rows, buffer)
        click.echo(buffer.getvalue(), nl=False)
    if len(eps_values) > 1:
        for algo in algorithms:
            picked = [r for r in rows if r.algo == algo]
            slope = loglog_slope([r.eps for r in picked], [r.records for r in picked])
            logger.info(f"{algo.value}: log-log slope of records vs 1/eps = {slope:.3f}")


if __name__ == "__main__":
    cli()
