import json
import logging

import numpy as np

from noonflow.analytics.entanglement import EntanglementAnalytics
from noonflow.analytics.metrology import PhaseMetrology
from noonflow.channels.channel_models import ChannelEvaluator
from noonflow.models import (
    Dephasing, Depolarization, GeneralizedAmplitudeDamping, LorentzianReservoir,
    QfiMethod, SpontaneousEmission,
)
from noonflow.simulation.master_equation import MasterEquationSolver
from noonflow.simulation.noon_state import NoonStateBuilder

logger = logging.getLogger(__name__)


class OracleSuite:
    """Closed forms against their dense oracles, printed and saved as JSON"""

    SEED = 20240611
    SAMPLES_PER_MODEL = 5
    T_WINDOW = 5.0

    def __init__(self, seed=SEED):
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        self.models = [
            Dephasing(1.0),
            Depolarization(1.0, 1.0),
            SpontaneousEmission(1.0, 1.0),
            LorentzianReservoir(1.0, 3.0),
            LorentzianReservoir(1.0, 0.1),
            GeneralizedAmplitudeDamping(1.0, 10.0),
        ]
        self.test_results = []

    def run_all(self, report_path=None):
        print('\n' + '=' * 70)
        print(' NOONFLOW - Oracle Self-Check')
        print('=' * 70 + '\n')

        checks = [
            ('Heisenberg limit at t=0', self._check_heisenberg_limit),
            ('Compact vs dense density', self._check_dense_density),
            ('Closed-form vs oracle QFI', self._check_qfi_oracle),
            ('Closed-form vs general concurrence', self._check_concurrence),
            ('QFI flow methods', self._check_flow_methods),
            ('Channel maps vs master equation', self._check_map_equivalence),
        ]
        for number, (title, check) in enumerate(checks, start=1):
            print(f' Check {number}: {title}')
            result = check()
            result['name'] = title
            self.test_results.append(result)
            status = 'passed' if result['passed'] else 'FAILED'
            print(f"  • max error {result['max_error']:.3e} (tolerance {result['tolerance']:.0e}): {status}\n")

        passed = all(result['passed'] for result in self.test_results)
        if report_path:
            self._write_report(report_path, passed)

        print('=' * 70)
        print(' All checks passed!' if passed else ' Some checks FAILED')
        print('=' * 70 + '\n')
        return passed

    def _random_times(self):
        return self.rng.uniform(0.0, self.T_WINDOW, self.SAMPLES_PER_MODEL)

    def _result(self, errors, tolerance):
        worst = float(max(errors)) if errors else 0.0
        return {'max_error': worst, 'tolerance': tolerance, 'passed': worst <= tolerance,
                'samples': len(errors)}

    def _check_heisenberg_limit(self):
        errors = []
        for model in self.models:
            for n in (1, 2, 4, 8):
                F = PhaseMetrology.qfi_value(model, n, 0.0, 0.0)
                errors.append(abs(F - n * n))
        return self._result(errors, 1e-9)

    def _check_dense_density(self):
        errors = []
        for model in self.models:
            for t in self._random_times():
                params = ChannelEvaluator.eval_params(model, t)
                phi = self.rng.uniform(0.0, 2 * np.pi)
                dense = NoonStateBuilder.dense_density(NoonStateBuilder.evolve(4, phi, params)).data
                mapped = NoonStateBuilder.apply_local_channel(
                    NoonStateBuilder.pure_noon_density(4, phi), params).data
                errors.append(float(np.max(np.abs(dense - mapped))))
        return self._result(errors, 1e-12)

    def _check_qfi_oracle(self):
        errors = []
        for model in self.models:
            for t in self._random_times():
                state = PhaseMetrology.state_at(model, 4, self.rng.uniform(0.0, np.pi), t)
                closed = PhaseMetrology.qfi(state, QfiMethod.CLOSED_FORM).F
                oracle = PhaseMetrology.qfi(state, QfiMethod.ORACLE).F
                errors.append(abs(closed - oracle) / max(1.0, closed))
        return self._result(errors, 1e-8)

    def _check_concurrence(self):
        errors = []
        for model in self.models:
            for t in self._random_times():
                state = PhaseMetrology.state_at(model, 2, 0.0, t)
                general = EntanglementAnalytics.concurrence(NoonStateBuilder.dense_density(state))
                errors.append(abs(general - EntanglementAnalytics.concurrence_noon(state)))
        return self._result(errors, 1e-12)

    def _check_flow_methods(self):
        errors = []
        model = Dephasing(1.0)
        for t in (0.25, 0.5, 1.0):
            fd = PhaseMetrology.qfi_flow_fd(model, 2, 0.0, t).I
            structural = PhaseMetrology.qfi_flow_structural(model, 2, 0.0, t).I
            subflow = PhaseMetrology.qfi_subflows(model, 2, 0.0, t).I
            scale = max(1e-6, 1e-4 * abs(fd))
            errors.append(max(abs(fd - structural), abs(fd - subflow)) / scale)
        # errors are in units of the allowed band
        return self._result(errors, 1.0)

    def _check_map_equivalence(self):
        grid = np.linspace(0.0, self.T_WINDOW, 101)
        errors = [
            MasterEquationSolver.map_equivalence_check(model, grid).max_deviation
            for model in (Dephasing(1.0), SpontaneousEmission(0.5, 1.0), Depolarization(1.0, 1.0))
        ]
        return self._result(errors, 1e-6)

    def _write_report(self, path, passed):
        report = {'passed': passed, 'seed': self.seed, 'checks': self.test_results}
        with open(path, 'w', encoding='utf-8') as handle:
            json.dump(report, handle, indent=2)
        print(f' Report saved to: {path}\n')
        logger.info('self-check report written to %s', path)
