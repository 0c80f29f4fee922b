import logging
import math

import numpy as np
from scipy import linalg
from scipy.optimize import brentq

from noonflow.models import (
    CHANNEL_FAMILIES, IDENTITY_PARAMS, ChannelParams, ChoiMatrix,
    DecayRateSample, Dephasing, Depolarization, GeneralizedAmplitudeDamping,
    LorentzianReservoir, SpontaneousEmission,
)
from noonflow.utils.errors import DomainError

logger = logging.getLogger(__name__)


class ChannelEvaluator:
    """Pauli-transfer triples, decay rates and CP tests for the five channel families

    Conventions:
    - |0> is the sz = +1 eigenstate, so relaxation (f -> 1) pulls toward |0>
    - s- = |0><1| and s+ = |1><0| both scale by g
    - Lorentzian quantities use the overflow-free form of the cosh/sinh
      expressions, so large t never produces inf/inf
    """

    # decay-rate denominator below this (relative to |d|) flags a pole
    POLE_THRESHOLD = 1e-8

    # |d^2| below this fraction of lambda^2 is treated as critical damping
    CRITICAL_TOL = 1e-12

    CP_TOL = 1e-9

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    @staticmethod
    def build_channel_model(family, rates):
        """Build a ChannelModel from a family name and a {key: value} rate map

        Raises DomainError naming the first missing key.
        """
        cls = CHANNEL_FAMILIES.get(str(family).strip().lower())
        if cls is None:
            known = ', '.join(sorted(CHANNEL_FAMILIES))
            raise DomainError(f"unknown channel '{family}' (expected one of: {known})")

        missing = [key for key in cls.rate_keys if key not in rates]
        if missing:
            raise DomainError(f"channel '{cls.family}' requires '{missing[0]}'")

        kwargs = {key: float(rates[key]) for key in cls.rate_keys}
        if cls is LorentzianReservoir:
            kwargs['lambda_w'] = kwargs.pop('lambda')
            kwargs['omega0'] = float(rates.get('omega0', 0.0))
        return cls(**kwargs)

    # ------------------------------------------------------------------
    # Pauli-transfer triples
    # ------------------------------------------------------------------

    @staticmethod
    def eval_params(model, t):
        """(f, h, g) of `model` at time t ≥ 0"""
        t = float(t)
        if not np.isfinite(t) or t < 0:
            raise DomainError(f'time must be ≥ 0, got {t}')
        if t == 0.0:
            return IDENTITY_PARAMS

        if isinstance(model, Dephasing):
            return ChannelParams(0.0, 1.0, math.exp(-model.gamma1 * t), t)

        if isinstance(model, Depolarization):
            return ChannelParams(
                0.0,
                math.exp(-2.0 * model.gamma2 * t / 3.0),
                math.exp(-2.0 * model.gamma1 * t / 3.0),
                t,
            )

        if isinstance(model, SpontaneousEmission):
            h = math.exp(-model.gamma2 * t)
            return ChannelParams(1.0 - h, h, math.exp(-model.gamma1 * t), t)

        if isinstance(model, LorentzianReservoir):
            amplitude = ChannelEvaluator.lorentzian_amplitude(model, t)
            h = amplitude * amplitude
            return ChannelParams(1.0 - h, h, abs(amplitude), t)

        if isinstance(model, GeneralizedAmplitudeDamping):
            h = math.exp(-model.delta * t)
            f = -math.cos(model.omega * t) * (1.0 - h)
            return ChannelParams(f, h, math.exp(-model.delta * t / 2.0), t)

        raise DomainError(f'unsupported channel model {type(model).__name__}')

    @staticmethod
    def lorentzian_amplitude(model, t):
        """Signed excited-state amplitude G(t); h = G^2 and g = |G|"""
        lam = model.lambda_w
        d2 = model.d_squared
        half = lam * t / 2.0

        if abs(d2) <= ChannelEvaluator.CRITICAL_TOL * lam * lam:
            return math.exp(-half) * (1.0 + half)

        if d2 > 0:
            d = math.sqrt(d2)
            ratio = lam / d
            return 0.5 * ((1.0 + ratio) * math.exp((d - lam) * t / 2.0)
                          + (1.0 - ratio) * math.exp(-(d + lam) * t / 2.0))

        w = math.sqrt(-d2)
        x = w * t / 2.0
        return math.exp(-half) * (math.cos(x) + (lam / w) * math.sin(x))

    # ------------------------------------------------------------------
    # Lorentzian reservoir
    # ------------------------------------------------------------------

    @staticmethod
    def decay_rate(model, t):
        """Time-local emission rate gamma(t); poles are flagged, never thrown"""
        if not isinstance(model, LorentzianReservoir):
            raise DomainError('decay_rate is defined for the Lorentzian reservoir only')
        t = float(t)
        if t < 0:
            raise DomainError(f'time must be ≥ 0, got {t}')

        lam = model.lambda_w
        coupling = 2.0 * model.gamma0 * lam
        d2 = model.d_squared

        if abs(d2) <= ChannelEvaluator.CRITICAL_TOL * lam * lam:
            return DecayRateSample(t, model.gamma0 * lam * t / (1.0 + lam * t / 2.0), False)

        if d2 > 0:
            d = math.sqrt(d2)
            th = math.tanh(d * t / 2.0)
            denominator = d + lam * th
            scale = d
            numerator = coupling * th
        else:
            w = math.sqrt(-d2)
            x = w * t / 2.0
            denominator = w * math.cos(x) + lam * math.sin(x)
            scale = w
            numerator = coupling * math.sin(x)

        near_pole = abs(denominator) / scale < ChannelEvaluator.POLE_THRESHOLD
        if near_pole:
            logger.debug('decay rate pole flagged at t=%.6g (denominator %.3e)', t, denominator)
        gamma = numerator / denominator if denominator != 0.0 else math.copysign(math.inf, numerator)
        return DecayRateSample(t, gamma, near_pole)

    @staticmethod
    def spectral_density(model, omega):
        """Lorentzian J(omega); accepts scalars or arrays"""
        lam = model.lambda_w
        detuning = model.omega0 - np.asarray(omega, dtype=float)
        density = 2.0 * model.gamma0 * lam ** 2 / (2.0 * np.pi * (detuning ** 2 + lam ** 2))
        return float(density) if np.ndim(density) == 0 else density

    @staticmethod
    def first_coherence_zero(model, t_max=None):
        """First t > 0 where the Lorentzian h(t) vanishes, None if it never does

        Only the strong-coupling regime has zeros; the root sits inside the
        first half-period where the amplitude changes sign.
        """
        if not isinstance(model, LorentzianReservoir) or not model.is_strong_coupling:
            return None

        w = math.sqrt(-model.d_squared)
        lo, hi = math.pi / w, 2.0 * math.pi / w
        root = brentq(lambda t: ChannelEvaluator.lorentzian_amplitude(model, t),
                      lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps)
        if t_max is not None and root > t_max:
            return None
        return root

    # ------------------------------------------------------------------
    # complete positivity
    # ------------------------------------------------------------------

    @staticmethod
    def transfer_tensor(params):
        """T[o, o', i, i'] with rho_out[o, o'] = sum T[o, o', i, i'] rho_in[i, i']"""
        f, h, g = params.as_tuple()
        tensor = np.zeros((2, 2, 2, 2), dtype=complex)
        tensor[0, 0, 0, 0] = (1.0 + f + h) / 2.0
        tensor[1, 1, 0, 0] = (1.0 - f - h) / 2.0
        tensor[0, 0, 1, 1] = (1.0 + f - h) / 2.0
        tensor[1, 1, 1, 1] = (1.0 - f + h) / 2.0
        tensor[0, 1, 0, 1] = g
        tensor[1, 0, 1, 0] = g
        return tensor

    @staticmethod
    def choi(params):
        """C = sum_ij Phi(|i><j|) ⊗ |i><j|"""
        tensor = ChannelEvaluator.transfer_tensor(params)
        matrix = tensor.transpose(0, 2, 1, 3).reshape(4, 4)
        return ChoiMatrix(matrix, params)

    @staticmethod
    def is_completely_positive(params, tol=CP_TOL):
        """(passes, minimum Choi eigenvalue)"""
        if tol <= 0:
            raise DomainError('tolerance must be positive')
        matrix = ChannelEvaluator.choi(params).matrix
        min_eigenvalue = float(linalg.eigvalsh(matrix)[0])
        return min_eigenvalue >= -tol, min_eigenvalue
