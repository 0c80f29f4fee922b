"""Time-local Lindblad integration used to cross-check the analytic channel maps.

Rate conventions (one single-qubit realization per family, applied to every qubit):

    dephasing       sz at gamma1/2
    spontaneous     s- at gamma2, plus sz at (gamma1 - gamma2/2)/2
    depolarization  sx, sy at gamma2/6 and sz at gamma1/3 - gamma2/6
    lorentzian      s- at the time-local decay rate gamma(t)
    gad             none shipped

Negative constant rates are kept as-is; such realizations are not CP and the
Choi test reports them.
"""

import logging
import math

import numpy as np

from noonflow.channels.channel_models import ChannelEvaluator
from noonflow.models import (
    DecayRateSample, DensityMatrix, Dephasing, Depolarization, EquivalenceReport,
    LindbladRealization, LindbladTerm, LorentzianReservoir, SpontaneousEmission,
    Trajectory,
)
from noonflow.utils.errors import (
    CapacityError, DomainError, IntegrationError, PoleError,
    UnsupportedDecompositionError,
)
from noonflow.utils.grids import require_increasing

logger = logging.getLogger(__name__)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1|, relaxes toward |0>


def _constant_rate(value):
    value = float(value)
    return lambda t: DecayRateSample(t, value, False)


class MasterEquationSolver:

    MAX_INTEGRATION_QUBITS = 4
    SUBSTEPS = 4
    TRACE_DRIFT_LIMIT = 1e-6

    # ------------------------------------------------------------------
    # realizations
    # ------------------------------------------------------------------

    @staticmethod
    def realization_for(model):
        if isinstance(model, Dephasing):
            terms = (LindbladTerm('dephasing', SIGMA_Z, _constant_rate(model.gamma1 / 2.0)),)

        elif isinstance(model, SpontaneousEmission):
            terms = (
                LindbladTerm('emission', SIGMA_MINUS, _constant_rate(model.gamma2)),
                LindbladTerm('dephasing', SIGMA_Z,
                             _constant_rate((model.gamma1 - model.gamma2 / 2.0) / 2.0)),
            )

        elif isinstance(model, Depolarization):
            transverse = model.gamma2 / 6.0
            terms = (
                LindbladTerm('flip_x', SIGMA_X, _constant_rate(transverse)),
                LindbladTerm('flip_y', SIGMA_Y, _constant_rate(transverse)),
                LindbladTerm('flip_z', SIGMA_Z, _constant_rate(model.gamma1 / 3.0 - transverse)),
            )

        elif isinstance(model, LorentzianReservoir):
            terms = (LindbladTerm('emission', SIGMA_MINUS,
                                  lambda t: ChannelEvaluator.decay_rate(model, t)),)

        else:
            raise UnsupportedDecompositionError(
                f"no Lindblad realization is shipped for channel '{getattr(model, 'family', model)}'")

        return LindbladRealization(model.family, terms)

    @staticmethod
    def embed_operator(op, qubit, n):
        """Lift a 2x2 operator onto `qubit` of an n-qubit register (qubit 0 is most significant)"""
        if not 0 <= qubit < n:
            raise DomainError(f'qubit {qubit} outside register of {n}')
        left = np.eye(2 ** qubit, dtype=complex)
        right = np.eye(2 ** (n - qubit - 1), dtype=complex)
        return np.kron(np.kron(left, op), right)

    @staticmethod
    def _embedded_terms(realization, n):
        embedded = []
        for term in realization.terms:
            for qubit in range(n):
                a = MasterEquationSolver.embed_operator(term.operator, qubit, n)
                a_dag = a.conj().T
                embedded.append((term, a, a_dag, a_dag @ a))
        return embedded

    # ------------------------------------------------------------------
    # right-hand side
    # ------------------------------------------------------------------

    @staticmethod
    def _rhs(rho, t, embedded):
        out = np.zeros_like(rho)
        for term, a, a_dag, a_dag_a in embedded:
            sample = term.rate(t)
            if sample.near_pole:
                raise PoleError(f"rate '{term.label}' has a pole at t={t:.6g}", t=t)
            if sample.gamma == 0.0:
                continue
            out += sample.gamma * (a @ rho @ a_dag - 0.5 * (a_dag_a @ rho + rho @ a_dag_a))
        return out

    @staticmethod
    def lindblad_rhs(rho, t, realization):
        data = rho.data if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
        n = int(round(math.log2(data.shape[0])))
        if 2 ** n != data.shape[0]:
            raise DomainError(f'dimension {data.shape[0]} is not a power of two')
        embedded = MasterEquationSolver._embedded_terms(realization, n)
        return MasterEquationSolver._rhs(data, float(t), embedded)

    # ------------------------------------------------------------------
    # integration
    # ------------------------------------------------------------------

    @staticmethod
    def integrate(rho0, realization, grid, substeps=SUBSTEPS):
        """Fixed-step RK4 over `grid`; the state is never renormalized"""
        times = require_increasing(grid)
        if times[0] != 0.0:
            raise DomainError('integration grid must start at t=0')

        data = rho0.data if isinstance(rho0, DensityMatrix) else np.asarray(rho0, dtype=complex)
        n = int(round(math.log2(data.shape[0])))
        if n > MasterEquationSolver.MAX_INTEGRATION_QUBITS:
            raise CapacityError(
                f'integration limited to {MasterEquationSolver.MAX_INTEGRATION_QUBITS} qubits, got {n}')

        embedded = MasterEquationSolver._embedded_terms(realization, n)
        rhs = MasterEquationSolver._rhs

        states = np.empty((len(times),) + data.shape, dtype=complex)
        states[0] = data
        rho = data.copy()
        trace0 = np.trace(rho)
        max_drift = 0.0
        max_herm = float(np.max(np.abs(rho - rho.conj().T)))

        for k in range(len(times) - 1):
            t = times[k]
            h = (times[k + 1] - t) / substeps
            with np.errstate(over='ignore', invalid='ignore'):
                for _ in range(substeps):
                    k1 = rhs(rho, t, embedded)
                    k2 = rhs(rho + 0.5 * h * k1, t + 0.5 * h, embedded)
                    k3 = rhs(rho + 0.5 * h * k2, t + 0.5 * h, embedded)
                    k4 = rhs(rho + h * k3, t + h, embedded)
                    rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
                    t += h

            # overflow surfaces as inf/NaN entries, never as trace drift
            if not np.all(np.isfinite(rho)):
                raise IntegrationError(
                    f'non-finite state at step {k + 1} (t={times[k + 1]:.6g}), step size too large',
                    step=k + 1, t=float(times[k + 1]))
            drift = abs(np.trace(rho) - trace0)
            if drift > MasterEquationSolver.TRACE_DRIFT_LIMIT:
                raise IntegrationError(
                    f'trace drift {drift:.3e} at step {k + 1} (t={times[k + 1]:.6g})',
                    step=k + 1, t=float(times[k + 1]))
            max_drift = max(max_drift, drift)
            max_herm = max(max_herm, float(np.max(np.abs(rho - rho.conj().T))))
            states[k + 1] = rho

        logger.debug('integrated %s over %d points, max trace drift %.3e',
                     realization.family, len(times), max_drift)
        return Trajectory(times=times, states=states, step=float(np.min(np.diff(times))) / substeps,
                          max_trace_drift=max_drift, max_hermiticity_residual=max_herm)

    # ------------------------------------------------------------------
    # cross-validation
    # ------------------------------------------------------------------

    @staticmethod
    def _basis_inputs():
        zero = np.array([[1, 0], [0, 0]], dtype=complex)
        one = np.array([[0, 0], [0, 1]], dtype=complex)
        plus = 0.5 * np.ones((2, 2), dtype=complex)
        plus_i = 0.5 * np.array([[1, -1j], [1j, 1]], dtype=complex)
        return zero, one, plus, plus_i

    @staticmethod
    def reconstruct_params(model, grid, substeps=SUBSTEPS):
        """(f, h, g_real, g_imag) arrays recovered from four integrated basis inputs"""
        realization = MasterEquationSolver.realization_for(model)
        runs = [MasterEquationSolver.integrate(rho0, realization, grid, substeps).states
                for rho0 in MasterEquationSolver._basis_inputs()]
        from_zero, from_one, from_plus, from_plus_i = runs

        z0 = np.real(from_zero[:, 0, 0] - from_zero[:, 1, 1])
        z1 = np.real(from_one[:, 0, 0] - from_one[:, 1, 1])
        f = 0.5 * (z0 + z1)
        h = 0.5 * (z0 - z1)
        g_real = 2.0 * np.real(from_plus[:, 0, 1])
        g_imag = -2.0 * np.imag(from_plus_i[:, 0, 1])
        return f, h, g_real, g_imag

    @staticmethod
    def map_equivalence_check(model, grid, substeps=SUBSTEPS):
        times = require_increasing(grid)
        f, h, g_real, g_imag = MasterEquationSolver.reconstruct_params(model, times, substeps)

        exact = [ChannelEvaluator.eval_params(model, t) for t in times]
        f_exact = np.array([p.f for p in exact])
        h_exact = np.array([p.h for p in exact])
        g_exact = np.array([p.g for p in exact])

        df = float(np.max(np.abs(f - f_exact)))
        dh = float(np.max(np.abs(h - h_exact)))
        dg = float(max(np.max(np.abs(g_real - g_exact)), np.max(np.abs(g_imag - g_exact))))
        report = EquivalenceReport(family=model.family, max_deviation=max(df, dh, dg),
                                   max_f_deviation=df, max_h_deviation=dh, max_g_deviation=dg,
                                   t_end=float(times[-1]))
        logger.debug('map equivalence for %s: max deviation %.3e', model.family, report.max_deviation)
        return report

    @staticmethod
    def convergence_study(model, t_end=5.0, spacings=(1.0, 0.5, 0.25)):
        """Final-time deviation per grid spacing and the observed order between refinements"""
        errors = []
        for spacing in spacings:
            steps = int(round(t_end / spacing))
            grid = np.linspace(0.0, t_end, steps + 1)
            f, h, g_real, _ = MasterEquationSolver.reconstruct_params(model, grid)
            exact = ChannelEvaluator.eval_params(model, t_end)
            errors.append(max(abs(f[-1] - exact.f), abs(h[-1] - exact.h), abs(g_real[-1] - exact.g)))

        orders = [
            math.log(errors[i] / errors[i + 1]) / math.log(spacings[i] / spacings[i + 1])
            for i in range(len(spacings) - 1)
        ]
        return {'spacings': list(spacings), 'errors': errors, 'orders': orders}
