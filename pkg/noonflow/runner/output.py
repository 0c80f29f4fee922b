import logging

import matplotlib

matplotlib.use('Agg')

import matplotlib.pyplot as plt
import pandas as pd

from noonflow.models import CSV_COLUMNS
from noonflow.utils.errors import DomainError

logger = logging.getLogger(__name__)

TIME_LABEL = 'Time = δ₁t'

METRIC_LABELS = {
    't': TIME_LABEL,
    'f': 'f(t)',
    'h': 'h(t)',
    'g': 'g(t)',
    'gamma': 'γ(t)',
    'qfi': 'QFI',
    'qcrb': 'δφ',
    'qfi_flow': 'QFI flow',
    'concurrence': 'Concurrence',
    'nm_cumulative': 'I(t)',
}

# Text stays as <text> and ids are salted so identical rows give identical bytes
plt.rcParams['svg.fonttype'] = 'none'
plt.rcParams['svg.hashsalt'] = 'noonflow'


def rows_to_frame(rows):
    if not rows:
        raise DomainError('no rows to emit')
    frame = pd.DataFrame.from_records([row.as_record() for row in rows], columns=list(CSV_COLUMNS))
    return frame.astype(float)


def emit_csv(rows, destination):
    """Write rows with 12 significant digits, LF endings and blank undefined fields"""
    frame = rows_to_frame(rows)
    frame.to_csv(destination, index=False, float_format='%.12g', na_rep='', lineterminator='\n')
    logger.debug('wrote %d rows to %s', len(frame), destination)


def render_series(curves, destination, metric='qfi', title=None):
    """Line chart of `metric` against time, one line per (label, rows) pair"""
    if metric not in METRIC_LABELS:
        raise DomainError(f"unknown metric '{metric}'")
    if not curves:
        raise DomainError('no curves to plot')

    fig, ax = plt.subplots(figsize=(7, 4.5))
    try:
        for label, rows in curves:
            frame = rows_to_frame(rows)
            ax.plot(frame['t'], frame[metric], linewidth=1.4, label=label)
        ax.set_xlabel(TIME_LABEL)
        ax.set_ylabel(METRIC_LABELS[metric])
        if title:
            ax.set_title(title)
        if len(curves) > 1:
            ax.legend()
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        fig.savefig(destination, format='svg', metadata={'Date': None})
    finally:
        plt.close(fig)
    logger.debug('rendered %s plot to %s', metric, destination)


def render_plot(rows, destination, metric='qfi', title=None):
    render_series([(metric, rows)], destination, metric=metric, title=title)
