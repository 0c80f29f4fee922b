import pytest

from noonflow.models import ScenarioConfig, SweepRow
from noonflow.runner.output import emit_csv, render_plot, render_series, rows_to_frame
from noonflow.runner.sweep import ScenarioRunner
from noonflow.utils.errors import DomainError


@pytest.fixture
def dephasing_rows():
    return ScenarioRunner.run_sweep(ScenarioConfig('dephasing', 8, 1.0, 3, {'gamma1': 1.0}))


def test_csv_layout(tmp_path, dephasing_rows):
    path = tmp_path / 'sweep.csv'
    emit_csv(dephasing_rows, path)
    lines = path.read_bytes().decode('utf-8').split('\n')
    assert lines[-1] == ''
    lines = lines[:-1]
    assert len(lines) == 4
    assert lines[0] == 't,f,h,g,gamma,qfi,qcrb,qfi_flow,concurrence,nm_cumulative'
    assert lines[1].startswith('0,0,1,1,1,64,0.125,')
    # concurrence is undefined for n != 2
    assert all(line.endswith(',,') for line in lines[1:])
    assert b'\r' not in path.read_bytes()


def test_csv_is_reproducible(tmp_path, dephasing_rows):
    first, second = tmp_path / 'a.csv', tmp_path / 'b.csv'
    emit_csv(dephasing_rows, first)
    emit_csv(ScenarioRunner.run_sweep(ScenarioConfig('dephasing', 8, 1.0, 3, {'gamma1': 1.0})), second)
    assert first.read_bytes() == second.read_bytes()


def test_two_photon_columns_are_filled():
    rows = ScenarioRunner.run_sweep(ScenarioConfig('dephasing', 2, 1.0, 3, {'gamma1': 1.0}))
    frame = rows_to_frame(rows)
    assert frame['concurrence'].notna().all()
    assert frame['nm_cumulative'].iloc[0] == 0.0


def test_undefined_fields_are_blank(tmp_path):
    row = SweepRow(t=0.5, f=0.0, h=1.0, g=0.0, gamma=None, qfi=0.0, qcrb=None, qfi_flow=0.0)
    path = tmp_path / 'blank.csv'
    emit_csv([row], path)
    assert path.read_text(encoding='utf-8').splitlines()[1] == '0.5,0,1,0,,0,,0,,'


def test_empty_rows_rejected(tmp_path):
    with pytest.raises(DomainError):
        emit_csv([], tmp_path / 'empty.csv')


def test_svg_plot_is_deterministic(tmp_path, dephasing_rows):
    first, second = tmp_path / 'a.svg', tmp_path / 'b.svg'
    render_plot(dephasing_rows, first, title='QFI, dephasing')
    render_plot(dephasing_rows, second, title='QFI, dephasing')
    content = first.read_text(encoding='utf-8')
    assert content.startswith('<?xml')
    assert 'QFI, dephasing' in content
    assert first.read_bytes() == second.read_bytes()


def test_series_legend_names_curves(tmp_path, dephasing_rows):
    path = tmp_path / 'pair.svg'
    render_series([('slow', dephasing_rows), ('fast', dephasing_rows)], path, metric='g')
    content = path.read_text(encoding='utf-8')
    assert 'slow' in content and 'fast' in content


def test_unknown_metric(tmp_path, dephasing_rows):
    with pytest.raises(DomainError):
        render_series([('x', dephasing_rows)], tmp_path / 'x.svg', metric='entropy')
