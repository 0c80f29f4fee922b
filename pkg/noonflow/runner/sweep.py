import logging

import numpy as np

from noonflow.analytics.entanglement import EntanglementAnalytics
from noonflow.analytics.metrology import PhaseMetrology
from noonflow.channels.channel_models import ChannelEvaluator
from noonflow.models import (
    Dephasing, Depolarization, FlowMethod, FlowSample,
    LorentzianReservoir, PhysicalityReport, SpontaneousEmission, SweepRow,
)
from noonflow.simulation.noon_state import NoonStateBuilder
from noonflow.utils.errors import PhysicalityError
from noonflow.utils.grids import contiguous_runs, uniform_grid

logger = logging.getLogger(__name__)


class ScenarioRunner:
    """Runs one scenario over its time grid with the closed-form kernels"""

    CP_TOL = ChannelEvaluator.CP_TOL
    REVIVAL_FRACTION = 1e-6  # revival rise threshold, relative to n^2

    @staticmethod
    def model_for(config):
        return ChannelEvaluator.build_channel_model(config.channel, config.rates)

    @staticmethod
    def rate_column(model, t):
        """Emission/decay rate reported in the gamma column, None where undefined"""
        if isinstance(model, LorentzianReservoir):
            sample = ChannelEvaluator.decay_rate(model, t)
            return None if sample.near_pole else sample.gamma
        if isinstance(model, (Dephasing, Depolarization)):
            return model.gamma1
        if isinstance(model, SpontaneousEmission):
            return model.gamma2
        return None

    @staticmethod
    def run_sweep(config):
        model = ScenarioRunner.model_for(config)
        times = uniform_grid(config.t_max, config.steps)
        logger.info('sweep %s n=%d over [0, %g] with %d points',
                    config.channel, config.n, config.t_max, config.steps)

        snapshots = []
        violations = 0
        for t in times:
            params = ChannelEvaluator.eval_params(model, t)
            passes, min_eigenvalue = ChannelEvaluator.is_completely_positive(params, ScenarioRunner.CP_TOL)
            if not passes:
                if config.strict:
                    raise PhysicalityError(
                        f"channel '{config.channel}' is not completely positive at t={t:.6g} "
                        f'(min Choi eigenvalue {min_eigenvalue:.3e})',
                        t=float(t), min_eigenvalue=min_eigenvalue)
                violations += 1
            snapshots.append(params)
        if violations:
            logger.warning("%d of %d grid points fail the CP test for '%s'",
                           violations, len(times), config.channel)

        states = [NoonStateBuilder.evolve(config.n, config.phi, params) for params in snapshots]

        concurrence = nm_running = None
        if config.n == 2:
            concurrence = np.array([EntanglementAnalytics.concurrence_noon(s) for s in states])
            fine = EntanglementAnalytics.nm_series(model, config.t_max, config.phi, include=times)
            running = EntanglementAnalytics.cumulative_nm(fine)
            nm_running = running[np.searchsorted(fine.times, times)]

        rows = []
        for k, (t, params, state) in enumerate(zip(times, snapshots, states)):
            F = PhaseMetrology.qfi(state).F
            bound = PhaseMetrology.qcrb(F, config.M)
            flow = PhaseMetrology.qfi_flow_fd(model, config.n, config.phi, t)
            rows.append(SweepRow(
                t=float(t),
                f=params.f,
                h=params.h,
                g=params.g,
                gamma=ScenarioRunner.rate_column(model, t),
                qfi=F,
                qcrb=None if bound.unbounded else bound.delta_phi,
                qfi_flow=flow.I,
                concurrence=None if concurrence is None else float(concurrence[k]),
                nm_cumulative=None if nm_running is None else float(nm_running[k]),
            ))

        logger.info('sweep %s finished: F(0)=%.6g, F(t_max)=%.6g', config.channel, rows[0].qfi, rows[-1].qfi)
        return rows

    @staticmethod
    def validate(config):
        """Choi scan of the scenario grid"""
        model = ScenarioRunner.model_for(config)
        times = uniform_grid(config.t_max, config.steps)

        worst_t, worst = 0.0, np.inf
        violations = []
        for t in times:
            passes, min_eigenvalue = ChannelEvaluator.is_completely_positive(
                ChannelEvaluator.eval_params(model, t), ScenarioRunner.CP_TOL)
            if min_eigenvalue < worst:
                worst, worst_t = min_eigenvalue, float(t)
            if not passes:
                violations.append((float(t), min_eigenvalue))

        if violations:
            logger.warning("'%s' violates complete positivity on %d grid points", config.channel, len(violations))
        return PhysicalityReport(clean=not violations, min_eigenvalue=float(worst), worst_t=worst_t,
                                 violations=violations, points_checked=len(times))

    @staticmethod
    def violation_intervals(config, report):
        times = uniform_grid(config.t_max, config.steps)
        bad = {t for t, _ in report.violations}
        return contiguous_runs(times, [float(t) in bad for t in times])

    @staticmethod
    def flow_series(rows):
        return [FlowSample(row.t, row.qfi_flow, FlowMethod.FINITE_DIFFERENCE) for row in rows]

    @staticmethod
    def summarize(config, rows):
        n_squared = config.n ** 2
        times = [row.t for row in rows]
        qfi = [row.qfi for row in rows]
        return {
            'initial_eta': qfi[0] / n_squared,
            'final_qfi': qfi[-1],
            'qfi_revivals': PhaseMetrology.count_revivals(
                times, qfi, ScenarioRunner.REVIVAL_FRACTION * n_squared),
            'backflow_intervals': EntanglementAnalytics.nm_qfi_witness(ScenarioRunner.flow_series(rows)),
            'final_nm': rows[-1].nm_cumulative,
        }

    @staticmethod
    def print_summary(config, rows):
        summary = ScenarioRunner.summarize(config, rows)
        print('\n' + '=' * 70)
        print(f' NOONFLOW sweep: {config.channel}, n = {config.n}, t in [0, {config.t_max:g}]')
        print('=' * 70)
        print(f"  • Initial QFI: {summary['initial_eta'] * 100:.2f}% of the Heisenberg limit")
        print(f"  • Final QFI: {summary['final_qfi']:.6g}")
        print(f"  • QFI revivals: {summary['qfi_revivals']}")
        intervals = summary['backflow_intervals']
        if intervals:
            print(f'  • Information backflow on {len(intervals)} interval(s):')
            for start, end in intervals:
                print(f'      [{start:.4g}, {end:.4g}]')
        else:
            print('  • Information backflow: none')
        if summary['final_nm'] is not None:
            print(f"  • I^(E) over the window: {summary['final_nm']:.6g}")
        print('=' * 70 + '\n')
        return summary

    @staticmethod
    def print_validation(config, report):
        print('\n' + '=' * 70)
        print(f' NOONFLOW physicality check: {config.channel}')
        print('=' * 70)
        print(f'  • Grid points checked: {report.points_checked}')
        print(f'  • Min Choi eigenvalue: {report.min_eigenvalue:.6e} at t = {report.worst_t:.6g}')
        if report.clean:
            print('  • Completely positive on the whole grid')
        else:
            print(f'  • Violations on {len(report.violations)} grid points:')
            for start, end in ScenarioRunner.violation_intervals(config, report):
                print(f'      [{start:.6g}, {end:.6g}]')
        print('=' * 70 + '\n')
