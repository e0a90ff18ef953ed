# coding: utf-8
from __future__ import absolute_import, division, print_function

from contextlib import contextmanager

import click
from logbook import StderrHandler

from .config import ExperimentConfig
from .exceptions import BlockFusionError, ConfigError, ShapeError, SpecError
from .fusions import param_breakdown
from .log import logger
from .results import run_table, sweep_table, write_csv
from .spec import SCHEMES, FusionSpec, core_param_count, param_count
from .train import SWEEP_MODES, generate_task, sweep_blocks, train_model
from .verify import run_suites


@contextmanager
def catch_exceptions():
    try:
        yield
    except (ConfigError, SpecError, ShapeError) as exc:
        raise click.UsageError(str(exc))
    except BlockFusionError as exc:
        raise click.ClickException(str(exc))


def format_suite(result):
    status = 'ok' if result.ok else 'FAILED'
    return u'{r.name:<24}{r.passed:>6} passed{r.failed:>6} failed  {status}'.format(
        r=result, status=status)


def format_count_row(name, value, shape=None):
    shape = 'x'.join(str(s) for s in shape) if shape is not None else ''
    return u'{:<12}{:<20}{}'.format(name, shape, value)


def format_run(record):
    fstring = u"""{r.spec_summary}
  parameters: {r.param_count}
  stopped:    epoch {r.stopping_epoch} (best {r.best_epoch})
  train loss: {r.final_train_loss:.6g}
  test:       {r.test_metric:.6g}
  seconds:    {r.seconds:.2f}"""
    return fstring.format(r=record)


def format_sweep(point):
    return u'R={p.R:<5} L={p.block_dim:<5} core={p.core_param_count:<10} ' \
        u'metric={p.metric_mean:.6g} ± {p.metric_std:.3g}'.format(p=point)


def parse_r_list(ctx, param, value):
    if value is None:
        return None
    try:
        return [int(v) for v in value.split(',') if v.strip()]
    except ValueError:
        raise click.BadParameter('expected comma-separated integers, e.g. 1,2,4')


@click.group()
@click.option('--verbose', '-v', is_flag=True, help='Log progress to stderr.')
@click.pass_context
def cli(ctx, verbose):
    """Bilinear fusion operators: verification, parameter counts and
    teacher-student experiments.

    Experiments are described by INI files; see the ``train`` command.
    """
    if verbose:
        logger.disabled = False
        ctx.with_resource(StderrHandler(level='DEBUG').applicationbound())


@cli.command()
@click.option('--scheme', type=click.Choice(SCHEMES),
              help='Only run suites for this scheme.')
@click.option('--instances', default=20, show_default=True, type=click.IntRange(min=1),
              help='Random instances per scheme and suite.')
@click.option('--seed', default=0, show_default=True)
def verify(scheme, instances, seed):
    """Check every operator against brute-force references."""
    with catch_exceptions():
        results = run_suites(scheme, instances=instances, seed=seed)
    for result in results:
        click.echo(format_suite(result))

    failed = [r for r in results if not r.ok]
    if failed:
        raise click.ClickException('{} failed; first failure in {}: {}'.format(
            ', '.join(r.name for r in failed), failed[0].name, failed[0].first_failure))


@cli.command()
@click.option('--scheme', required=True,
              type=click.Choice([s for s in SCHEMES if s != 'composite']))
@click.option('--in', 'input_dims', nargs=2, type=int, required=True, help='I J')
@click.option('--out', 'output_dim', type=int, required=True, help='K')
@click.option('--core', 'block_dims', nargs=3, type=int, help='L M N')
@click.option('--rank', type=int)
@click.option('--slice-rank', type=int)
@click.option('--factor-rank', type=int)
@click.option('--pooled', 'pooled_dim', type=int)
@click.option('--depth', type=int)
@click.option('--sketch', 'sketch_dim', type=int)
@click.option('--hidden', type=int)
def count(scheme, input_dims, output_dim, **options):
    """Print the parameter count of an operator, tensor by tensor."""
    options = {k: v for k, v in options.items() if v is not None}
    if scheme == 'mcb':
        options['seed'] = 0
    with catch_exceptions():
        spec = FusionSpec(scheme, input_dims, output_dim, **options)
        rows = param_breakdown(spec)

    for name, shape, size in rows:
        click.echo(format_count_row(name, size, shape))
    click.echo(format_count_row('core', core_param_count(spec)))
    click.echo(format_count_row('total', param_count(spec)))


@cli.command()
@click.argument('config', type=click.Path(exists=True, dir_okay=False))
@click.option('--seed', type=int, help='Override the model seed from CONFIG.')
@click.option('--out', type=click.Path(dir_okay=False),
              help='Override the output path from CONFIG.')
def train(config, seed, out):
    """Train the [fusion] student on the task described in CONFIG.

    Writes one CSV row per epoch (epoch, train_loss, val_metric) and a final
    ``test`` row with the kept parameters' training loss and test metric.

    Config file format:

    \b
    [fusion]          student spec: scheme, input_dims, output_dim, ...
    [teacher]         teacher spec, same keys
    [task]            kind, n_train, n_val, n_test, noise_std, data_seed,
                      teacher_seed
    [train]           learning_rate, batch_size, beta1, beta2, epsilon,
                      max_epochs, patience, loss, seed
    [output]          path
    """
    with catch_exceptions():
        experiment = ExperimentConfig.load(config)
        settings = experiment.train
        if seed is not None:
            settings = settings.replace(seed=seed)
        dataset = generate_task(experiment.task)
        record = train_model(experiment.fusion, dataset, settings)

    write_csv(run_table(record), out or experiment.output_path)
    click.echo(format_run(record))


@cli.command()
@click.argument('config', type=click.Path(exists=True, dir_okay=False))
@click.option('--mode', type=click.Choice(SWEEP_MODES), default='fixed_core_size',
              show_default=True)
@click.option('--r', 'r_values', required=True, callback=parse_r_list,
              help='Comma-separated numbers of blocks, e.g. 1,2,4.')
@click.option('--core-dim', type=click.IntRange(min=1),
              help='R·L for fixed_core_size.')
@click.option('--budget', type=click.IntRange(min=1),
              help='Bound on R·L³ for fixed_param_budget.')
@click.option('--splits', default=3, show_default=True, type=click.IntRange(min=1))
@click.option('--workers', default=1, show_default=True, type=click.IntRange(min=1))
@click.option('--seed', type=int, help='Override the model seed from CONFIG.')
@click.option('--out', type=click.Path(dir_okay=False),
              help='Override the output path from CONFIG.')
def sweep(config, mode, r_values, core_dim, budget, splits, workers, seed, out):
    """Train block-term students of varying R on the task in CONFIG.

    The [fusion] section is not used; students have L=M=N blocks sized by
    MODE.
    """
    with catch_exceptions():
        experiment = ExperimentConfig.load(config)
        settings = experiment.train
        if seed is not None:
            settings = settings.replace(seed=seed)
        points = sweep_blocks(mode, experiment.task, r_values, settings, budget=budget,
                              core_dim=core_dim, splits=splits, workers=workers)

    write_csv(sweep_table(points), out or experiment.output_path)
    for point in points:
        click.echo(format_sweep(point))


def main():
    cli(prog_name='blockfusion')


if __name__ == '__main__':
    main()
