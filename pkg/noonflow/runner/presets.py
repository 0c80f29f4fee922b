"""Figure presets.

All rates are relative to a reference rate of 1. Strong coupling means
lambda/gamma0 = 0.1, weak coupling lambda/gamma0 = 3.
"""

from noonflow.models import FigurePreset, PresetCurve, ScenarioConfig
from noonflow.utils.errors import DomainError

STEPS = 2000
SHORT_WINDOW = 10.0
REVIVAL_WINDOW = 50.0

WEAK = {'gamma0': 1.0, 'lambda': 3.0}
STRONG = {'gamma0': 1.0, 'lambda': 0.1}
GAD_SLOW = {'delta': 1.0, 'omega': 0.1}
GAD_FAST = {'delta': 1.0, 'omega': 10.0}

METRIC_TITLES = {
    'qfi': 'QFI',
    'qfi_flow': 'QFI flow',
    'concurrence': 'Concurrence',
    'nm_cumulative': 'I(t)',
}


def _curve(label, channel, n, rates, t_max=SHORT_WINDOW):
    return PresetCurve(label, ScenarioConfig(channel=channel, n=n, t_max=t_max,
                                             steps=STEPS, rates=dict(rates)))


def _single(fig_id, metric, label, channel, n, rates, t_max=SHORT_WINDOW):
    return fig_id, metric, (_curve(label, channel, n, rates, t_max),)


def _table():
    markovian = {'gamma1': 1.0, 'gamma2': 1.0}
    return {
        1: (1, 'qfi', (
            _curve('dephasing', 'dephasing', 8, {'gamma1': 1.0}),
            _curve('depolarization', 'depolarization', 8, markovian),
            _curve('spontaneous', 'spontaneous', 8, markovian),
        )),
        2: _single(2, 'qfi', 'weak', 'lorentzian', 8, WEAK),
        3: _single(3, 'qfi', 'strong', 'lorentzian', 8, STRONG, REVIVAL_WINDOW),
        4: _single(4, 'qfi', 'omega_0.1', 'gad', 8, GAD_SLOW),
        5: _single(5, 'qfi', 'omega_10', 'gad', 8, GAD_FAST),
        6: _single(6, 'qfi_flow', 'weak', 'lorentzian', 8, WEAK),
        7: _single(7, 'qfi_flow', 'strong', 'lorentzian', 8, STRONG, REVIVAL_WINDOW),
        8: _single(8, 'qfi_flow', 'omega_0.1', 'gad', 8, GAD_SLOW),
        9: _single(9, 'qfi_flow', 'omega_10', 'gad', 8, GAD_FAST),
        10: _single(10, 'concurrence', 'weak', 'lorentzian', 2, WEAK),
        11: _single(11, 'concurrence', 'omega_0.1', 'gad', 2, GAD_SLOW),
        12: _single(12, 'concurrence', 'strong', 'lorentzian', 2, STRONG, REVIVAL_WINDOW),
        13: _single(13, 'concurrence', 'omega_10', 'gad', 2, GAD_FAST),
        14: (14, 'nm_cumulative', (
            _curve('weak', 'lorentzian', 2, WEAK, REVIVAL_WINDOW),
            _curve('strong', 'lorentzian', 2, STRONG, REVIVAL_WINDOW),
        )),
        15: (15, 'nm_cumulative', (
            _curve('omega_0.1', 'gad', 2, GAD_SLOW),
            _curve('omega_10', 'gad', 2, GAD_FAST),
        )),
    }


def figure_preset(fig_id):
    try:
        fig_id = int(fig_id)
    except (TypeError, ValueError):
        raise DomainError(f"figure id must be an integer, got '{fig_id}'") from None
    table = _table()
    if fig_id not in table:
        raise DomainError(f'figure id must be in 1..{len(table)}, got {fig_id}')

    _, metric, curves = table[fig_id]
    n = curves[0].config.n
    title = f'{METRIC_TITLES[metric]}, n = {n} (Fig {fig_id})'
    return FigurePreset(fig_id=fig_id, title=title, metric=metric, curves=curves)
