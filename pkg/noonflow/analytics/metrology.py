import logging
import math

import numpy as np
from scipy import linalg

from noonflow.channels.channel_models import ChannelEvaluator
from noonflow.models import (
    DensityMatrix, FlowMethod, FlowSample, PhaseBound, QfiMethod, QfiResult,
    SldMatrix, SubFlow,
)
from noonflow.simulation.master_equation import MasterEquationSolver
from noonflow.simulation.noon_state import NoonStateBuilder
from noonflow.utils.errors import (
    CapacityError, DegenerateStateError, DomainError, PoleError,
)

logger = logging.getLogger(__name__)


class PhaseMetrology:
    """SLD, QFI, Cramér-Rao bound and QFI flow for decohered N00N states

    Each quantity has a closed form working on the compact state and a dense
    oracle working on the full 2^n x 2^n matrix.
    """

    SLD_CUTOFF = 1e-12          # eigenvalue pairs with lambda_m + lambda_n below this are dropped
    DEGENERATE_BLOCK = 1e-14    # coherence-block trace treated as empty
    HERMITICITY_TOL = 1e-10

    FD_STEP = 1e-5
    STRUCTURAL_STEP = 1e-4
    MAX_STRUCTURAL_QUBITS = 8
    MAX_SUBFLOW_QUBITS = 6

    @staticmethod
    def state_at(model, n, phi, t):
        return NoonStateBuilder.evolve(n, phi, ChannelEvaluator.eval_params(model, t))

    # ------------------------------------------------------------------
    # SLD
    # ------------------------------------------------------------------

    @staticmethod
    def sld_oracle(rho, drho, cutoff=SLD_CUTOFF):
        """L = 2 sum <m|drho|n>/(lambda_m + lambda_n) |m><n| over the retained pairs"""
        if cutoff <= 0:
            raise DomainError('cutoff must be positive')
        rho = rho.data if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
        drho = np.asarray(drho, dtype=complex)
        if rho.shape != drho.shape:
            raise DomainError(f'shape mismatch {rho.shape} vs {drho.shape}')
        for name, matrix in (('rho', rho), ('drho', drho)):
            if np.max(np.abs(matrix - matrix.conj().T)) > PhaseMetrology.HERMITICITY_TOL:
                raise DomainError(f'{name} is not Hermitian')

        eigenvalues, vectors = linalg.eigh(rho)
        rotated = vectors.conj().T @ drho @ vectors
        pair_sums = eigenvalues[:, None] + eigenvalues[None, :]
        keep = pair_sums > cutoff
        safe = np.where(keep, pair_sums, 1.0)
        sld_eigenbasis = np.where(keep, 2.0 * rotated / safe, 0.0)
        sld = vectors @ sld_eigenbasis @ vectors.conj().T
        sld = 0.5 * (sld + sld.conj().T)

        residual = float(np.linalg.norm(drho - 0.5 * (rho @ sld + sld @ rho)))
        return SldMatrix(sld, cutoff, residual)

    @staticmethod
    def sld_coefficient(state):
        """alpha in L = alpha i (e^{i n phi}|0..0><1..1| - h.c.)"""
        block = state.block_trace
        if block < PhaseMetrology.DEGENERATE_BLOCK:
            raise DegenerateStateError(f'coherence block trace {block:.3e} is empty')
        return state.n * state.params.g ** state.n / block

    @staticmethod
    def sld_closed_form(state):
        alpha = PhaseMetrology.sld_coefficient(state)
        if state.n > NoonStateBuilder.MAX_DENSE_QUBITS:
            raise CapacityError(f'dense SLD for n={state.n} exceeds the memory guard')

        dim = 2 ** state.n
        sld = np.zeros((dim, dim), dtype=complex)
        corner = 1j * alpha * np.exp(1j * state.n * state.phi)
        sld[0, dim - 1] = corner
        sld[dim - 1, 0] = np.conj(corner)

        rho = NoonStateBuilder.dense_density(state).data
        drho = NoonStateBuilder.dense_phase_derivative(state)
        residual = float(np.linalg.norm(drho - 0.5 * (rho @ sld + sld @ rho)))
        return SldMatrix(sld, PhaseMetrology.DEGENERATE_BLOCK, residual)

    # ------------------------------------------------------------------
    # QFI and bounds
    # ------------------------------------------------------------------

    @staticmethod
    def qfi(state, method=QfiMethod.CLOSED_FORM):
        method = QfiMethod(method)
        n_squared = float(state.n ** 2)

        if method is QfiMethod.CLOSED_FORM:
            block = state.block_trace
            if block < PhaseMetrology.DEGENERATE_BLOCK:
                logger.debug('degenerate coherence block (trace %.3e), reporting F = 0', block)
                return QfiResult(0.0, 0.0, method, degenerate=True)
            F = n_squared * state.params.g ** (2 * state.n) / block
            return QfiResult(F, F / n_squared, method)

        rho = NoonStateBuilder.dense_density(state).data
        drho = NoonStateBuilder.dense_phase_derivative(state)
        sld = PhaseMetrology.sld_oracle(rho, drho).matrix
        F = float(np.real(np.trace(rho @ sld @ sld)))
        return QfiResult(F, F / n_squared, method,
                         degenerate=state.block_trace < PhaseMetrology.DEGENERATE_BLOCK)

    @staticmethod
    def qfi_value(model, n, phi, t):
        return PhaseMetrology.qfi(PhaseMetrology.state_at(model, n, phi, t)).F

    @staticmethod
    def qcrb(F, M=1):
        """Best phase uncertainty 1/sqrt(M F); unbounded when F carries no information"""
        if int(M) != M or M < 1:
            raise DomainError(f'repetition count must be an integer ≥ 1, got {M}')
        if F <= 0:
            return PhaseBound(math.inf, unbounded=True)
        return PhaseBound(1.0 / math.sqrt(M * F))

    @staticmethod
    def reference_bounds(n):
        """(shot-noise limit, Heisenberg limit) on delta phi"""
        if n < 1:
            raise DomainError(f'n must be ≥ 1, got {n}')
        return 1.0 / math.sqrt(n), 1.0 / n

    # ------------------------------------------------------------------
    # QFI flow
    # ------------------------------------------------------------------

    @staticmethod
    def qfi_flow_fd(model, n, phi, t, dt=FD_STEP):
        """dF/dt by central difference of the closed form (forward when t < dt)"""
        if dt <= 0:
            raise DomainError('dt must be positive')
        if t < 0:
            raise DomainError(f'time must be ≥ 0, got {t}')

        F = lambda s: PhaseMetrology.qfi_value(model, n, phi, s)
        if t < dt:
            flow = (F(t + dt) - F(t)) / dt
        else:
            flow = (F(t + dt) - F(t - dt)) / (2.0 * dt)
        return FlowSample(float(t), float(flow), FlowMethod.FINITE_DIFFERENCE)

    @staticmethod
    def _dense_at(model, n, phi, t):
        return NoonStateBuilder.dense_density(PhaseMetrology.state_at(model, n, phi, t)).data

    @staticmethod
    def _time_derivative(model, n, phi, t, dt):
        if t < dt:
            return (PhaseMetrology._dense_at(model, n, phi, t + dt)
                    - PhaseMetrology._dense_at(model, n, phi, t)) / dt
        return (PhaseMetrology._dense_at(model, n, phi, t + dt)
                - PhaseMetrology._dense_at(model, n, phi, t - dt)) / (2.0 * dt)

    @staticmethod
    def qfi_flow_structural(model, n, phi, t, dt=STRUCTURAL_STEP, dphi=STRUCTURAL_STEP):
        """I = 2 Tr[L d_phi d_t rho] - Tr[L^2 d_t rho] on dense matrices"""
        if n > PhaseMetrology.MAX_STRUCTURAL_QUBITS:
            raise CapacityError(f'structural flow limited to n ≤ {PhaseMetrology.MAX_STRUCTURAL_QUBITS}')
        if dt <= 0 or dphi <= 0:
            raise DomainError('finite-difference steps must be positive')

        state = PhaseMetrology.state_at(model, n, phi, t)
        rho = NoonStateBuilder.dense_density(state).data
        sld = PhaseMetrology.sld_oracle(rho, NoonStateBuilder.dense_phase_derivative(state)).matrix

        d_t = PhaseMetrology._time_derivative(model, n, phi, t, dt)
        d_phi_d_t = (PhaseMetrology._time_derivative(model, n, phi + dphi, t, dt)
                     - PhaseMetrology._time_derivative(model, n, phi - dphi, t, dt)) / (2.0 * dphi)

        flow = 2.0 * np.trace(sld @ d_phi_d_t) - np.trace(sld @ sld @ d_t)
        return FlowSample(float(t), float(np.real(flow)), FlowMethod.STRUCTURAL)

    @staticmethod
    def qfi_subflows(model, n, phi, t):
        """Per-operator contributions gamma_i J_i with J_i = -sum_qubits Tr(rho [L,A]^† [L,A])"""
        if n > PhaseMetrology.MAX_SUBFLOW_QUBITS:
            raise CapacityError(f'sub-flows limited to n ≤ {PhaseMetrology.MAX_SUBFLOW_QUBITS}')
        realization = MasterEquationSolver.realization_for(model)

        state = PhaseMetrology.state_at(model, n, phi, t)
        rho = NoonStateBuilder.dense_density(state).data
        sld = PhaseMetrology.sld_oracle(rho, NoonStateBuilder.dense_phase_derivative(state)).matrix

        subflows = []
        for term in realization.terms:
            sample = term.rate(t)
            if sample.near_pole:
                raise PoleError(f"rate '{term.label}' has a pole at t={t:.6g}", t=t)
            value = 0.0
            for qubit in range(n):
                a = MasterEquationSolver.embed_operator(term.operator, qubit, n)
                commutator = sld @ a - a @ sld
                value -= float(np.real(np.trace(rho @ commutator.conj().T @ commutator)))
            subflows.append(SubFlow(term.label, float(sample.gamma), value))

        total = sum(sub.rate * sub.value for sub in subflows)
        return FlowSample(float(t), float(total), FlowMethod.SUBFLOW_SUM, tuple(subflows))

    # ------------------------------------------------------------------
    # series helpers
    # ------------------------------------------------------------------

    @staticmethod
    def count_revivals(times, values, rise):
        """Number of local minima followed by a rise of more than `rise`

        Uses hysteresis: after a counted rise the series must drop by `rise`
        again before the next minimum can count.
        """
        values = np.asarray(values, dtype=float)
        if len(values) != len(times):
            raise DomainError('times and values must have the same length')

        revivals = 0
        seeking_rise = True
        extreme = values[0]
        for value in values[1:]:
            if seeking_rise:
                if value < extreme:
                    extreme = value
                elif value - extreme > rise:
                    revivals += 1
                    seeking_rise = False
                    extreme = value
            else:
                if value > extreme:
                    extreme = value
                elif extreme - value > rise:
                    seeking_rise = True
                    extreme = value
        return revivals
