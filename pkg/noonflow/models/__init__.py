"""Domain value types.

Everything here is an immutable value object; the kernels in
`noonflow.channels`, `noonflow.simulation` and `noonflow.analytics` build and
consume them. Times are dimensionless (rates relative to a reference rate of 1).
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, ClassVar, Dict, List, Optional, Tuple, Union

import numpy as np

from noonflow.utils.errors import DomainError


def _require_nonnegative(obj, *names):
    for name in names:
        value = getattr(obj, name)
        if not np.isfinite(value) or value < 0:
            raise DomainError(f'{type(obj).__name__}.{name} must be a finite rate ≥ 0, got {value}')


# ============================================================================
# CHANNEL FAMILIES
# ============================================================================

@dataclass(frozen=True)
class Dephasing:
    """Pure dephasing, coherence decays at gamma1"""
    gamma1: float

    family: ClassVar[str] = 'dephasing'
    rate_keys: ClassVar[Tuple[str, ...]] = ('gamma1',)

    def __post_init__(self):
        _require_nonnegative(self, 'gamma1')

    @property
    def reference_rate(self):
        return self.gamma1


@dataclass(frozen=True)
class Depolarization:
    """Depolarization with independent coherence (gamma1) and population (gamma2) rates"""
    gamma1: float
    gamma2: float

    family: ClassVar[str] = 'depolarization'
    rate_keys: ClassVar[Tuple[str, ...]] = ('gamma1', 'gamma2')

    def __post_init__(self):
        _require_nonnegative(self, 'gamma1', 'gamma2')

    @property
    def reference_rate(self):
        return self.gamma1


@dataclass(frozen=True)
class SpontaneousEmission:
    """Relaxation toward |0> at gamma2 with coherence decay at gamma1.

    Note the naming: T2 = 1/gamma2 is the energy-exchanging ('longitudinal')
    time and T1 = 1/gamma1 the dephasing time, the reverse of the usual
    convention. gamma1 < gamma2/2 is accepted here and caught by the Choi test.
    """
    gamma1: float
    gamma2: float

    family: ClassVar[str] = 'spontaneous'
    rate_keys: ClassVar[Tuple[str, ...]] = ('gamma1', 'gamma2')

    def __post_init__(self):
        _require_nonnegative(self, 'gamma1', 'gamma2')

    @property
    def reference_rate(self):
        return self.gamma1

    @property
    def satisfies_cp_constraint(self):
        return self.gamma1 >= self.gamma2 / 2


@dataclass(frozen=True)
class LorentzianReservoir:
    """Zero-temperature qubit coupled to a Lorentzian-broadened cavity mode"""
    gamma0: float        # system-reservoir coupling
    lambda_w: float      # spectral width, 1/lambda_w is the reservoir memory time
    omega0: float = 0.0  # centre frequency, reporting only

    family: ClassVar[str] = 'lorentzian'
    rate_keys: ClassVar[Tuple[str, ...]] = ('gamma0', 'lambda')

    def __post_init__(self):
        _require_nonnegative(self, 'gamma0', 'lambda_w')
        if self.lambda_w <= 0:
            raise DomainError('LorentzianReservoir.lambda_w must be > 0')

    @property
    def reference_rate(self):
        return self.gamma0

    @property
    def d_squared(self):
        return self.lambda_w ** 2 - 2.0 * self.gamma0 * self.lambda_w

    @property
    def is_strong_coupling(self):
        return self.d_squared < 0


@dataclass(frozen=True)
class GeneralizedAmplitudeDamping:
    """Finite-temperature relaxation with an oscillating excited-state weight"""
    delta: float  # longitudinal rate
    omega: float  # oscillation frequency of the bath population

    family: ClassVar[str] = 'gad'
    rate_keys: ClassVar[Tuple[str, ...]] = ('delta', 'omega')

    def __post_init__(self):
        _require_nonnegative(self, 'delta', 'omega')

    @property
    def reference_rate(self):
        return self.delta


ChannelModel = Union[
    Dephasing, Depolarization, SpontaneousEmission,
    LorentzianReservoir, GeneralizedAmplitudeDamping,
]

CHANNEL_FAMILIES = {
    cls.family: cls
    for cls in (Dephasing, Depolarization, SpontaneousEmission,
                LorentzianReservoir, GeneralizedAmplitudeDamping)
}


# ============================================================================
# CHANNEL SNAPSHOTS
# ============================================================================

@dataclass(frozen=True)
class ChannelParams:
    """Pauli-transfer triple at one instant: 1 -> 1 + f sz, sz -> h sz, s± -> g s±"""
    f: float
    h: float
    g: float
    t: float = 0.0

    def as_tuple(self):
        return (self.f, self.h, self.g)


IDENTITY_PARAMS = ChannelParams(0.0, 1.0, 1.0, 0.0)


@dataclass(frozen=True)
class ChoiMatrix:
    matrix: np.ndarray  # 4x4, output ⊗ input ordering
    params: ChannelParams

    @property
    def eigenvalues(self):
        return np.linalg.eigvalsh(self.matrix)

    @property
    def trace(self):
        return float(np.real(np.trace(self.matrix)))


@dataclass(frozen=True)
class DecayRateSample:
    t: float
    gamma: float  # may be negative in the strong-coupling regime
    near_pole: bool


# ============================================================================
# STATES
# ============================================================================

@dataclass(frozen=True)
class EvolvedNoonState:
    """N00N state after n independent copies of one channel snapshot.

    Only four numbers matter: the head/tail diagonal weights of the coherence
    block and the corner magnitude c. The remaining diagonal follows from params.
    """
    n: int
    phi: float
    params: ChannelParams
    a_head: float  # <0...0|rho|0...0>
    a_tail: float  # <1...1|rho|1...1>
    c: float       # |<0...0|rho|1...1>| = g^n / 2

    @property
    def block_trace(self):
        return self.a_head + self.a_tail


@dataclass(frozen=True)
class DensityMatrix:
    data: np.ndarray

    TRACE_TOL: ClassVar[float] = 1e-12
    HERMITICITY_TOL: ClassVar[float] = 1e-12
    POSITIVITY_TOL: ClassVar[float] = 1e-10

    def trace(self):
        return complex(np.trace(self.data))

    def hermiticity_residual(self):
        return float(np.max(np.abs(self.data - self.data.conj().T)))

    def min_eigenvalue(self):
        return float(np.min(np.linalg.eigvalsh(self.data)))

    def violations(self):
        """Names of the invariants this matrix breaks (empty when valid)"""
        problems = []
        if abs(self.trace() - 1.0) > self.TRACE_TOL:
            problems.append(f'trace {self.trace().real:.3e} != 1')
        if self.hermiticity_residual() > self.HERMITICITY_TOL:
            problems.append(f'hermiticity residual {self.hermiticity_residual():.3e}')
        elif self.min_eigenvalue() < -self.POSITIVITY_TOL:
            problems.append(f'negative eigenvalue {self.min_eigenvalue():.3e}')
        return problems


# ============================================================================
# METROLOGY
# ============================================================================

class QfiMethod(str, Enum):
    CLOSED_FORM = 'closed_form'
    ORACLE = 'oracle'


class FlowMethod(str, Enum):
    FINITE_DIFFERENCE = 'finite_difference'
    STRUCTURAL = 'structural'
    SUBFLOW_SUM = 'subflow_sum'


@dataclass(frozen=True)
class QfiResult:
    F: float
    eta: float  # F / n^2, 1 at the Heisenberg limit
    method: QfiMethod
    degenerate: bool = False


@dataclass(frozen=True)
class SldMatrix:
    matrix: np.ndarray
    cutoff: float
    residual: float  # ||d_phi rho - (rho L + L rho)/2||_F


@dataclass(frozen=True)
class PhaseBound:
    delta_phi: float
    unbounded: bool = False


@dataclass(frozen=True)
class SubFlow:
    label: str
    rate: float   # gamma_i(t)
    value: float  # J_i, never positive


@dataclass(frozen=True)
class FlowSample:
    t: float
    I: float
    method: FlowMethod
    subflows: Tuple[SubFlow, ...] = ()


# ============================================================================
# ENTANGLEMENT
# ============================================================================

@dataclass(frozen=True)
class ConcurrenceSeries:
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'times', np.asarray(self.times, dtype=float))
        object.__setattr__(self, 'values', np.asarray(self.values, dtype=float))
        if self.times.shape != self.values.shape:
            raise DomainError('times and values must have the same length')


@dataclass(frozen=True)
class NmMeasure:
    delta_E: float
    total_variation: float
    value: float

    MARKOVIAN_TOL: ClassVar[float] = 1e-6

    @property
    def is_markovian(self):
        return self.value <= NmMeasure.MARKOVIAN_TOL


# ============================================================================
# MASTER EQUATION
# ============================================================================

@dataclass(frozen=True)
class LindbladTerm:
    label: str
    operator: np.ndarray                      # single-qubit 2x2
    rate: Callable[[float], DecayRateSample]


@dataclass(frozen=True)
class LindbladRealization:
    family: str
    terms: Tuple[LindbladTerm, ...]


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (len(times), d, d)
    step: float
    max_trace_drift: float = 0.0
    max_hermiticity_residual: float = 0.0

    def density(self, index):
        return DensityMatrix(self.states[index])


@dataclass(frozen=True)
class EquivalenceReport:
    family: str
    max_deviation: float
    max_f_deviation: float
    max_h_deviation: float
    max_g_deviation: float
    t_end: float


# ============================================================================
# SCENARIOS
# ============================================================================

@dataclass(frozen=True)
class ScenarioConfig:
    channel: str
    n: int
    t_max: float
    steps: int
    rates: Dict[str, float] = field(default_factory=dict)
    phi: float = 0.0
    M: int = 1          # repetitions entering the QCRB
    strict: bool = False


CSV_COLUMNS = ('t', 'f', 'h', 'g', 'gamma', 'qfi', 'qcrb',
               'qfi_flow', 'concurrence', 'nm_cumulative')


@dataclass(frozen=True)
class SweepRow:
    t: float
    f: float
    h: float
    g: float
    gamma: Optional[float]
    qfi: float
    qcrb: Optional[float]
    qfi_flow: float
    concurrence: Optional[float] = None    # only for n = 2
    nm_cumulative: Optional[float] = None  # running I^(E), only for n = 2

    def as_record(self):
        return {name: getattr(self, name) for name in CSV_COLUMNS}


@dataclass(frozen=True)
class PhysicalityReport:
    clean: bool
    min_eigenvalue: float
    worst_t: float
    violations: List[Tuple[float, float]]
    points_checked: int


@dataclass(frozen=True)
class PresetCurve:
    label: str
    config: ScenarioConfig


@dataclass(frozen=True)
class FigurePreset:
    fig_id: int
    title: str
    metric: str  # SweepRow column plotted on the y axis
    curves: Tuple[PresetCurve, ...]

    @property
    def channels(self):
        return {curve.config.channel for curve in self.curves}
