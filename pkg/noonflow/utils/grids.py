import numpy as np

from noonflow.utils.errors import DomainError


def uniform_grid(t_max, steps):
    """Uniform grid of `steps` points on [0, t_max]"""
    if steps < 2:
        raise DomainError('steps ≥ 2 required')
    if t_max <= 0:
        raise DomainError('t_max must be positive')
    return np.linspace(0.0, float(t_max), int(steps))


def require_increasing(times, name='time grid'):
    """Reject grids that are not strictly increasing"""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size < 2:
        raise DomainError(f'{name} needs at least 2 points')
    if np.any(np.diff(times) <= 0):
        bad = int(np.argmax(np.diff(times) <= 0))
        raise DomainError(f'{name} is not strictly increasing at index {bad + 1}')
    return times


def contiguous_runs(times, mask):
    """Maximal runs of consecutive True entries as (t_start, t_end) pairs"""
    runs = []
    start = None
    for idx, flag in enumerate(mask):
        if flag and start is None:
            start = idx
        elif not flag and start is not None:
            runs.append((float(times[start]), float(times[idx - 1])))
            start = None
    if start is not None:
        runs.append((float(times[start]), float(times[len(mask) - 1])))
    return runs
