"""Command-line surface.

    sweep --config F [--out F] [--strict] [--plot F]
    figure K [--out DIR]
    validate --config F
    bounds --n K
    selfcheck [--report F]

Exit codes: 0 success, 1 usage/config/I-O error, 2 physicality violation.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import replace

from noonflow import configure_logging
from noonflow.analytics.entanglement import EntanglementAnalytics
from noonflow.analytics.metrology import PhaseMetrology
from noonflow.runner.config import load_config_file
from noonflow.runner.output import emit_csv, render_plot, render_series
from noonflow.runner.presets import figure_preset
from noonflow.runner.sweep import ScenarioRunner
from noonflow.utils.errors import NoonflowError, PhysicalityError
from noonflow.validation.oracle_suite import OracleSuite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PHYSICALITY = 2


def build_parser():
    parser = argparse.ArgumentParser(
        prog='noonflow',
        description='QFI, QFI flow and entanglement of N00N states under decoherence')
    parser.add_argument('--verbose', action='store_true', help='debug logging')
    commands = parser.add_subparsers(dest='command', required=True)

    sweep = commands.add_parser('sweep', help='run one scenario file over its time grid')
    sweep.add_argument('--config', required=True)
    sweep.add_argument('--out', help='CSV destination (stdout when omitted)')
    sweep.add_argument('--strict', action='store_true', help='abort on the first CP violation')
    sweep.add_argument('--plot', help='also write an SVG of the QFI curve')

    figure = commands.add_parser('figure', help='reproduce one figure preset')
    figure.add_argument('fig_id', type=int)
    figure.add_argument('--out', default='.', help='output directory')

    validate = commands.add_parser('validate', help='Choi scan of a scenario')
    validate.add_argument('--config', required=True)

    bounds = commands.add_parser('bounds', help='shot-noise and Heisenberg limits')
    bounds.add_argument('--n', type=int, required=True)

    selfcheck = commands.add_parser('selfcheck', help='closed forms against dense oracles')
    selfcheck.add_argument('--report', help='JSON report destination')
    return parser


def _load(path):
    config, error = load_config_file(path)
    if error:
        print(f'error: {error}', file=sys.stderr)
    return config


def cmd_sweep(args):
    config = _load(args.config)
    if config is None:
        return EXIT_USAGE
    if args.strict:
        config = replace(config, strict=True)

    rows = ScenarioRunner.run_sweep(config)
    if args.out:
        emit_csv(rows, args.out)
        ScenarioRunner.print_summary(config, rows)
    else:
        emit_csv(rows, sys.stdout)
    if args.plot:
        render_plot(rows, args.plot, metric='qfi', title=f'QFI, {config.channel}, n = {config.n}')
    return EXIT_OK


def cmd_figure(args):
    preset = figure_preset(args.fig_id)
    os.makedirs(args.out, exist_ok=True)
    stem = f'fig{preset.fig_id:02d}'

    curves, metadata_curves = [], []
    for curve in preset.curves:
        rows = ScenarioRunner.run_sweep(curve.config)
        csv_path = os.path.join(args.out, f'{stem}_{curve.label}.csv')
        emit_csv(rows, csv_path)
        curves.append((curve.label, rows))

        entry = {
            'label': curve.label,
            'csv': os.path.basename(csv_path),
            'channel': curve.config.channel,
            'n': curve.config.n,
            'rates': curve.config.rates,
            't_max': curve.config.t_max,
            'steps': curve.config.steps,
            'qfi_revivals': PhaseMetrology.count_revivals(
                [r.t for r in rows], [r.qfi for r in rows],
                ScenarioRunner.REVIVAL_FRACTION * curve.config.n ** 2),
        }
        if curve.config.n == 2:
            entry['nm_window'] = [0.0, curve.config.t_max]
            entry['nm_spacing'] = EntanglementAnalytics.NM_SPACING
            entry['nm_value'] = rows[-1].nm_cumulative
        metadata_curves.append(entry)
        print(f'  • {curve.label}: {len(rows)} rows -> {csv_path}')

    svg_path = os.path.join(args.out, f'{stem}.svg')
    render_series(curves, svg_path, metric=preset.metric, title=preset.title)
    with open(os.path.join(args.out, 'metadata.json'), 'w', encoding='utf-8') as handle:
        json.dump({'fig_id': preset.fig_id, 'title': preset.title, 'metric': preset.metric,
                   'curves': metadata_curves}, handle, indent=2)
    print(f'  • plot -> {svg_path}')
    return EXIT_OK


def cmd_validate(args):
    config = _load(args.config)
    if config is None:
        return EXIT_USAGE
    report = ScenarioRunner.validate(config)
    ScenarioRunner.print_validation(config, report)
    return EXIT_OK if report.clean else EXIT_PHYSICALITY


def cmd_bounds(args):
    shot_noise, heisenberg = PhaseMetrology.reference_bounds(args.n)
    print(f'n = {args.n}')
    print(f'  • shot-noise limit: {shot_noise:.12g}')
    print(f'  • Heisenberg limit: {heisenberg:.12g}')
    return EXIT_OK


def cmd_selfcheck(args):
    return EXIT_OK if OracleSuite().run_all(args.report) else EXIT_USAGE


COMMANDS = {
    'sweep': cmd_sweep,
    'figure': cmd_figure,
    'validate': cmd_validate,
    'bounds': cmd_bounds,
    'selfcheck': cmd_selfcheck,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    configure_logging(logging.DEBUG if args.verbose else logging.WARNING)

    try:
        return COMMANDS[args.command](args)
    except PhysicalityError as exc:
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_PHYSICALITY
    except (NoonflowError, OSError) as exc:
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_USAGE
