import logging
import math

import numpy as np
from scipy import linalg

from noonflow.channels.channel_models import ChannelEvaluator
from noonflow.models import ConcurrenceSeries, DensityMatrix, NmMeasure
from noonflow.simulation.noon_state import NoonStateBuilder
from noonflow.utils.errors import DomainError
from noonflow.utils.grids import contiguous_runs, require_increasing

logger = logging.getLogger(__name__)

SIGMA_YY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


class EntanglementAnalytics:
    """Two-photon concurrence and the non-Markovianity witnesses built on it"""

    BACKFLOW_TOL = 1e-9

    # I^(E) grid: spacing in reference-rate units, subdivided where C reaches zero
    NM_SPACING = 1e-3
    NM_REFINE = 10
    ZERO_TOL = 1e-8

    @staticmethod
    def concurrence(rho):
        """Wootters concurrence of a two-qubit density matrix

        sqrt(lambda_i) are the singular values of sqrt(rho) (sy ⊗ sy) sqrt(rho)*,
        which avoids the square roots of tiny negative eigenvalues that the
        product rho rho~ produces.
        """
        data = rho.data if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
        if data.shape != (4, 4):
            raise DomainError(f'concurrence needs a 4x4 matrix, got {data.shape}')

        eigenvalues, vectors = linalg.eigh(data)
        root = (vectors * np.sqrt(np.clip(eigenvalues, 0.0, None))) @ vectors.conj().T
        singular = np.sort(linalg.svdvals(root @ SIGMA_YY @ root.conj()))[::-1]
        return float(max(0.0, singular[0] - singular[1] - singular[2] - singular[3]))

    @staticmethod
    def concurrence_noon(state):
        if state.n != 2:
            raise DomainError(f'closed-form concurrence needs n = 2, got n = {state.n}')
        p01 = NoonStateBuilder.diagonal_weight(state, '01')
        p10 = NoonStateBuilder.diagonal_weight(state, '10')
        return float(2.0 * max(0.0, state.c - np.sqrt(max(p01 * p10, 0.0))))

    @staticmethod
    def concurrence_series(model, times, phi=0.0):
        values = [
            EntanglementAnalytics.concurrence_noon(
                NoonStateBuilder.evolve(2, phi, ChannelEvaluator.eval_params(model, t)))
            for t in times
        ]
        return ConcurrenceSeries(times, values)

    @staticmethod
    def nm_series(model, t_max, phi=0.0, include=None, spacing=NM_SPACING, refine=NM_REFINE):
        """Concurrence on a `spacing` grid over [0, t_max], refined `refine` times around zeros of C

        Every interval where C crosses ZERO_TOL (a kink of the clipped concurrence)
        is split into `refine` parts. Times in `include` are merged into the grid so
        running values can be read back at them.
        """
        if t_max <= 0 or spacing <= 0:
            raise DomainError('t_max and spacing must be positive')
        base = np.linspace(0.0, float(t_max), int(math.ceil(t_max / spacing)) + 1)
        if include is not None:
            base = np.union1d(base, np.asarray(include, dtype=float))
        coarse = EntanglementAnalytics.concurrence_series(model, base, phi)

        at_zero = coarse.values <= EntanglementAnalytics.ZERO_TOL
        edges = np.flatnonzero(at_zero[:-1] != at_zero[1:])
        if edges.size == 0 or refine < 2:
            return coarse

        fractions = np.arange(1, refine) / refine
        extra = (base[edges, None] + np.diff(base)[edges, None] * fractions).ravel()
        inserted = EntanglementAnalytics.concurrence_series(model, extra, phi)
        logger.debug('refined %d zero crossings of C with %d extra points', edges.size, extra.size)

        times = np.concatenate((coarse.times, inserted.times))
        values = np.concatenate((coarse.values, inserted.values))
        order = np.argsort(times, kind='stable')
        return ConcurrenceSeries(times[order], values[order])

    @staticmethod
    def nm_entanglement_measure(series):
        """Delta E + total variation; zero exactly when C never increases"""
        times = require_increasing(series.times, 'concurrence time grid')
        values = series.values
        if len(values) != len(times):
            raise DomainError('times and values must have the same length')

        delta_e = float(values[-1] - values[0])
        total_variation = float(np.sum(np.abs(np.diff(values))))
        return NmMeasure(delta_E=delta_e, total_variation=total_variation,
                         value=delta_e + total_variation)

    @staticmethod
    def cumulative_nm(series):
        """Running I^(E) at every grid point"""
        steps = np.diff(series.values)
        running = np.concatenate(([0.0], np.cumsum(steps + np.abs(steps))))
        return running

    @staticmethod
    def nm_qfi_witness(flow_series, tol=BACKFLOW_TOL):
        """Maximal grid intervals where the QFI flows back (I > tol)"""
        if not flow_series:
            return []
        times = np.array([sample.t for sample in flow_series])
        if len(times) > 1:
            require_increasing(times, 'flow grid')
        mask = [sample.I > tol for sample in flow_series]
        intervals = contiguous_runs(times, mask)
        if intervals:
            logger.debug('QFI backflow on %d interval(s)', len(intervals))
        return intervals
