"""Command-line front end: simulate, fit, select, study and quantile."""
from __future__ import annotations

import argparse
import copy
import json
import logging
import sys

import numpy as np
import pandas as pd

from .._version import __version__
from ..em import EmOption, em_fit
from ..load_data import ModelConfig, read_panel_csv, write_panel_csv
from ..panel import GroupAssignment, PanelData, conditional_quantiles, fit_grouped_panel
from ..regression import Family
from ..report import read_fit_report, write_fit_report
from ..selection import select_groups
from ..simulation import DgpConfig, run_study, simulate_panel
from ..threshold import extract_exceedances, tail_quantiles
from ..utils import ConfigError, ExtremePanelError, FitError, ParseError, make_generator

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value

def _probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"probability must lie in (0, 1), got {value}")
    return value

def _return_period(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not value > 1.0:
        raise argparse.ArgumentTypeError(f"return period must exceed 1, got {value}")
    return value


def _em_option(config: ModelConfig, args: argparse.Namespace) -> EmOption:
    option = copy.copy(config.em)
    if args.seed is not None:
        option.seed = args.seed
    if args.threads is not None:
        option.n_threads = args.threads
    return option

def _load_model_data(args: argparse.Namespace) -> tuple:
    """Return (config, raw panel, fitted panel, thresholds)."""
    config = ModelConfig.load(args.model)
    raw = read_panel_csv(args.data, config)
    if config.mode is Family.GP:
        exceedances = extract_exceedances(raw, config.p0)
        return config, raw, exceedances.data, exceedances.thresholds
    return config, raw, raw, None

def _report_extra(data: PanelData, thresholds: np.ndarray | None) -> dict:
    extra = {
        'column_names': data.get_column_names(),
        'individual_ids': [str(i) for i in data.get_individual_ids()],
    }
    if thresholds is not None:
        extra['thresholds'] = thresholds.tolist()
    return extra

def _write_failure(path: str, command: str, error: Exception, config: dict) -> None:
    """Write the error, the settings and the traces of the failed EM chains."""
    traces = error.traces if isinstance(error, FitError) else []
    try:
        with open(path, 'w', encoding='utf-8') as file:
            json.dump({
                'format': 'extreme-panel-failure',
                'command': command,
                'version': __version__,
                'error': str(error),
                'config': config,
                'traces': [trace.to_dict() for trace in traces],
            }, file, indent=2)
    except OSError:
        logger.error('could not write the failure report to %s', path)

def _read_assignment(path: str, data: PanelData) -> GroupAssignment:
    """Read an ``id,group`` CSV and order it like ``data``."""
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    if list(frame.columns[:2]) != ['id', 'group']:
        raise ParseError("assignment header must be id,group", row=1)
    groups = dict(zip(frame['id'].str.strip(), frame['group'].str.strip()))
    try:
        labels = [int(groups[str(i)]) for i in data.get_individual_ids()]
    except KeyError as error:
        raise ConfigError(f"individual {error.args[0]} has no group") from None
    except ValueError as error:
        raise ParseError(f"group labels must be integers: {error}") from None
    return GroupAssignment(labels)


def cmd_simulate(args: argparse.Namespace) -> int:
    config = DgpConfig.load(args.config)
    if args.seed is not None:
        config = config.replace(seed=args.seed)
    simulated = simulate_panel(config, make_generator(config.seed))
    write_panel_csv(simulated.data, args.out)
    if args.truth:
        truth = simulated.to_truth_dict()
        truth['individual_ids'] = simulated.data.get_individual_ids()
        truth['config'] = config.to_dict()
        with open(args.truth, 'w', encoding='utf-8') as file:
            json.dump(truth, file, indent=2)
    logger.info('simulated %s', simulated.data)
    return EXIT_OK

def cmd_fit(args: argparse.Namespace) -> int:
    config, _, data, thresholds = _load_model_data(args)
    spec = config.link_spec(data.get_column_names())
    option = _em_option(config, args)
    try:
        if args.assignment:
            assignment = _read_assignment(args.assignment, data)
            result = fit_grouped_panel(data, assignment, spec, option.optim)
        else:
            result = em_fit(data, args.groups, spec, option)
    except ConfigError:
        raise
    except ExtremePanelError as error:
        _write_failure(args.out, 'fit', error, config.to_dict())
        raise
    write_fit_report(result, args.out, seed=option.seed, config=config.to_dict(),
                     extra=_report_extra(data, thresholds))
    return EXIT_OK

def cmd_select(args: argparse.Namespace) -> int:
    config, _, data, thresholds = _load_model_data(args)
    spec = config.link_spec(data.get_column_names())
    option = _em_option(config, args)
    g_max = args.gmax or config.g_max
    try:
        sweep = select_groups(data, spec, g_max, option)
    except ConfigError:
        raise
    except ExtremePanelError as error:
        _write_failure(args.out, 'select', error, config.to_dict())
        raise
    write_fit_report(sweep, args.out, seed=option.seed, config=config.to_dict(),
                     extra=_report_extra(data, thresholds))
    logger.info('selected G=%d', sweep.g_star)
    return EXIT_OK

def cmd_study(args: argparse.Namespace) -> int:
    config = DgpConfig.load(args.config)
    if args.seed is not None:
        config = config.replace(seed=args.seed)
    option = EmOption(seed=config.seed, n_threads=args.threads)
    summary = run_study(config, args.gmax, args.reps, option, progress=True)
    write_fit_report(summary, args.out, seed=config.seed, config=config.to_dict())
    if summary.n_failed:
        logger.warning('%d of %d replication(s) failed', summary.n_failed, summary.n_reps)
    return EXIT_OK

def cmd_quantile(args: argparse.Namespace) -> int:
    report = read_fit_report(args.report)
    fit = report.fit_result()
    if report.config is None:
        raise ConfigError("the report carries no model configuration")
    config = ModelConfig.from_dict(report.config)
    data = read_panel_csv(args.data, config)
    columns = report.extra.get('column_names', [])
    if data.get_column_names() != columns:
        raise ConfigError(
            f"data columns {data.get_column_names()} do not match the report {columns}"
        )
    position = {str(i): k for k, i in enumerate(data.get_individual_ids())}
    fitted_ids = report.extra.get('individual_ids', [])
    missing = [i for i in fitted_ids if i not in position]
    if missing or len(fitted_ids) != len(fit.assignment):
        raise ConfigError(f"individuals {missing} of the report are not in the data")
    data = data.subset([position[i] for i in fitted_ids])

    prob = args.p if args.p is not None else 1.0 - 1.0 / args.return_period
    spec = config.link_spec(columns)
    if config.mode is Family.GP:
        if 'thresholds' not in report.extra:
            raise ConfigError("the gp-panel report carries no thresholds")
        quantiles = tail_quantiles(data, fit.coefficients, fit.assignment, spec,
                                   report.extra['thresholds'], config.p0, prob)
    else:
        quantiles = conditional_quantiles(data, fit.coefficients, fit.assignment,
                                          spec, prob)
    frame = pd.DataFrame({
        'id': np.repeat(np.asarray(fitted_ids, dtype=object), data.n_periods),
        'time': np.tile(np.asarray(data.get_time_index(), dtype=object),
                        data.n_individuals),
        'quantile': quantiles.reshape(-1),
    })
    frame.to_csv(sys.stdout, index=False, float_format='%.17g', na_rep='')
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--verbose', action='store_true', help='Log progress')
    common.add_argument('--threads', type=_positive_int, default=None,
                        help='Concurrent EM chains (default: EXTREME_PANEL_THREADS '
                             'or the CPU count)')
    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument('--seed', type=int, default=None,
                        help='Override the configured seed')

    parser = argparse.ArgumentParser(
        prog='ExtremePanel',
        description='Grouped panel regression for extremes.',
    )
    parser.add_argument('--version', action='version', version=__version__)
    commands = parser.add_subparsers(dest='command', required=True)

    simulate = commands.add_parser('simulate', parents=[common, seeded],
                                   help='Simulate a panel from a DGP file')
    simulate.add_argument('--config', required=True, help='DGP JSON file')
    simulate.add_argument('--out', required=True, help='Output panel CSV')
    simulate.add_argument('--truth', help='Output truth JSON')
    simulate.set_defaults(handler=cmd_simulate)

    fit = commands.add_parser('fit', parents=[common, seeded],
                              help='Fit a grouped panel model')
    fit.add_argument('--data', required=True, help='Panel CSV')
    fit.add_argument('--model', required=True, help='Model JSON file')
    grouping = fit.add_mutually_exclusive_group(required=True)
    grouping.add_argument('--groups', type=_positive_int, help='Number of groups')
    grouping.add_argument('--assignment', help='CSV of id,group for an a priori grouping')
    fit.add_argument('--out', required=True, help='Output report JSON')
    fit.set_defaults(handler=cmd_fit)

    select = commands.add_parser('select', parents=[common, seeded],
                                 help='Select the number of groups by BIC')
    select.add_argument('--data', required=True, help='Panel CSV')
    select.add_argument('--model', required=True, help='Model JSON file')
    select.add_argument('--gmax', type=_positive_int, default=None,
                        help='Largest number of groups (default: g_max of the model)')
    select.add_argument('--out', required=True, help='Output report JSON')
    select.set_defaults(handler=cmd_select)

    study = commands.add_parser('study', parents=[common, seeded],
                                help='Run the Monte Carlo selection study')
    study.add_argument('--config', required=True, help='DGP JSON file')
    study.add_argument('--gmax', type=_positive_int, default=6)
    study.add_argument('--reps', type=_positive_int, required=True)
    study.add_argument('--out', required=True, help='Output summary JSON')
    study.set_defaults(handler=cmd_study)

    quantile = commands.add_parser('quantile', parents=[common],
                                   help='Conditional quantiles of a fitted model')
    quantile.add_argument('--report', required=True, help='Fit or select report')
    quantile.add_argument('--data', required=True, help='Panel CSV')
    level = quantile.add_mutually_exclusive_group(required=True)
    level.add_argument('--p', type=_probability, help='Quantile level')
    level.add_argument('--return-period', type=_return_period,
                       help='Return period S, the level is 1 - 1/S')
    quantile.set_defaults(handler=cmd_quantile)
    return parser

def main(argv: list[str] | None = None) -> int:
    """Run the command line; return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return error.code
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
    )
    try:
        return args.handler(args)
    except (ConfigError, OSError) as error:
        print(f'ExtremePanel {args.command}: {error}', file=sys.stderr)
        return EXIT_USAGE
    except ExtremePanelError as error:
        print(f'ExtremePanel {args.command}: {error}', file=sys.stderr)
        return EXIT_FAILURE
