import logging

import numpy as np

from noonflow.channels.channel_models import ChannelEvaluator
from noonflow.models import DensityMatrix, EvolvedNoonState
from noonflow.utils.errors import CapacityError, DomainError

logger = logging.getLogger(__name__)


class NoonStateBuilder:
    """Builds the decohered N00N state in compact and dense form

    The phase sits on the |0...0><1...1| corner: rho[0, -1] = c e^{i n phi}.
    Every qubit goes through the same single-qubit map, so the diagonal only
    depends on the Hamming weight of the basis label.
    """

    MAX_DENSE_QUBITS = 12

    @staticmethod
    def _local_weights(params):
        f, h, _ = params.as_tuple()
        # (weight of bit 0, weight of bit 1) for each of the two diagonal terms
        head_term = ((1.0 + f + h) / 2.0, (1.0 - f - h) / 2.0)
        tail_term = ((1.0 + f - h) / 2.0, (1.0 - f + h) / 2.0)
        return head_term, tail_term

    @staticmethod
    def evolve(n, phi, params):
        n = int(n)
        if n < 1:
            raise DomainError(f'n must be ≥ 1, got {n}')

        head_term, tail_term = NoonStateBuilder._local_weights(params)
        a_head = 0.5 * (head_term[0] ** n + tail_term[0] ** n)
        a_tail = 0.5 * (head_term[1] ** n + tail_term[1] ** n)
        c = 0.5 * params.g ** n
        return EvolvedNoonState(n=n, phi=float(phi), params=params,
                                a_head=a_head, a_tail=a_tail, c=c)

    @staticmethod
    def diagonal_weight(state, bits):
        """Population of one computational basis state, bits given as '0101' or [0, 1, 0, 1]"""
        bits = [int(b) for b in bits]
        if len(bits) != state.n:
            raise DomainError(f'expected {state.n} bits, got {len(bits)}')
        if any(b not in (0, 1) for b in bits):
            raise DomainError('bits must be 0 or 1')

        head_term, tail_term = NoonStateBuilder._local_weights(state.params)
        head = np.prod([head_term[b] for b in bits])
        tail = np.prod([tail_term[b] for b in bits])
        return float(0.5 * (head + tail))

    @staticmethod
    def _require_dense(n):
        if n > NoonStateBuilder.MAX_DENSE_QUBITS:
            raise CapacityError(
                f'dense matrix for n={n} exceeds the {NoonStateBuilder.MAX_DENSE_QUBITS}-qubit guard')
        return 2 ** n

    @staticmethod
    def _hamming_weights(n):
        indices = np.arange(2 ** n)
        return np.array([bin(i).count('1') for i in indices])

    @staticmethod
    def dense_density(state):
        dim = NoonStateBuilder._require_dense(state.n)
        weights = NoonStateBuilder._hamming_weights(state.n)
        ones, zeros = weights, state.n - weights

        head_term, tail_term = NoonStateBuilder._local_weights(state.params)
        diagonal = 0.5 * (head_term[0] ** zeros * head_term[1] ** ones
                          + tail_term[0] ** zeros * tail_term[1] ** ones)

        rho = np.diag(diagonal.astype(complex))
        corner = state.c * np.exp(1j * state.n * state.phi)
        rho[0, dim - 1] += corner
        rho[dim - 1, 0] += np.conj(corner)
        return DensityMatrix(rho)

    @staticmethod
    def dense_phase_derivative(state):
        dim = NoonStateBuilder._require_dense(state.n)
        drho = np.zeros((dim, dim), dtype=complex)
        corner = 1j * state.n * state.c * np.exp(1j * state.n * state.phi)
        drho[0, dim - 1] = corner
        drho[dim - 1, 0] = np.conj(corner)
        return drho

    @staticmethod
    def pure_noon_density(n, phi):
        """(|0...0> + e^{-i n phi}|1...1>)/sqrt(2) as a dense projector"""
        dim = NoonStateBuilder._require_dense(int(n))
        psi = np.zeros(dim, dtype=complex)
        psi[0] = 1.0
        psi[-1] = np.exp(-1j * n * phi)
        psi /= np.sqrt(2.0)
        return DensityMatrix(np.outer(psi, psi.conj()))

    @staticmethod
    def apply_local_channel(rho, params):
        """Apply the single-qubit map of `params` to every qubit of a dense state"""
        data = rho.data if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
        dim = data.shape[0]
        n = int(round(np.log2(dim)))
        if 2 ** n != dim or data.shape != (dim, dim):
            raise DomainError(f'expected a square 2^n matrix, got shape {data.shape}')
        NoonStateBuilder._require_dense(n)

        transfer = ChannelEvaluator.transfer_tensor(params)
        tensor = data.reshape((2,) * (2 * n))
        for qubit in range(n):
            tensor = np.tensordot(transfer, tensor, axes=([2, 3], [qubit, n + qubit]))
            tensor = np.moveaxis(tensor, [0, 1], [qubit, n + qubit])
        return DensityMatrix(tensor.reshape(dim, dim))
