import json

import pytest

from noonflow.runner.cli import EXIT_OK, EXIT_PHYSICALITY, EXIT_USAGE, main

NOT_CP = 'channel = spontaneous\nn = 4\ngamma1 = 0.25\ngamma2 = 1\nt_max = 2\nsteps = 50\n'


@pytest.fixture
def scenario(tmp_path, config_text):
    def write(text=None, name='scenario.ini', **overrides):
        path = tmp_path / name
        path.write_text(text if text is not None else config_text(**overrides), encoding='utf-8')
        return str(path)
    return write


def test_bounds(capsys):
    assert main(['bounds', '--n', '4']) == EXIT_OK
    out = capsys.readouterr().out
    assert 'shot-noise limit: 0.5' in out
    assert 'Heisenberg limit: 0.25' in out


def test_bounds_rejects_zero_photons(capsys):
    assert main(['bounds', '--n', '0']) == EXIT_USAGE
    assert 'error:' in capsys.readouterr().err


def test_usage_errors():
    assert main([]) == EXIT_USAGE
    assert main(['sweep']) == EXIT_USAGE
    assert main(['--help']) == EXIT_OK


def test_sweep_to_stdout(scenario, capsys):
    assert main(['sweep', '--config', scenario(steps=3)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith('t,f,h,g,gamma,qfi')
    assert len(lines) == 4


def test_sweep_to_file_with_plot(scenario, tmp_path, capsys):
    out, plot = tmp_path / 'rows.csv', tmp_path / 'qfi.svg'
    assert main(['sweep', '--config', scenario(steps=11), '--out', str(out), '--plot', str(plot)]) == EXIT_OK
    assert len(out.read_text(encoding='utf-8').splitlines()) == 12
    assert plot.exists()
    assert 'NOONFLOW sweep' in capsys.readouterr().out


def test_sweep_config_error(scenario, capsys):
    assert main(['sweep', '--config', scenario(steps=1)]) == EXIT_USAGE
    assert 'line 5: steps ≥ 2 required' in capsys.readouterr().err


def test_sweep_missing_config(tmp_path):
    assert main(['sweep', '--config', str(tmp_path / 'nowhere.ini')]) == EXIT_USAGE


def test_strict_sweep_exit_code(scenario, capsys):
    path = scenario(NOT_CP)
    assert main(['sweep', '--config', path]) == EXIT_OK
    capsys.readouterr()
    assert main(['sweep', '--config', path, '--strict']) == EXIT_PHYSICALITY
    assert 'not completely positive' in capsys.readouterr().err


def test_validate_exit_codes(scenario, capsys):
    assert main(['validate', '--config', scenario()]) == EXIT_OK
    assert 'Completely positive on the whole grid' in capsys.readouterr().out
    assert main(['validate', '--config', scenario(NOT_CP, name='bad.ini')]) == EXIT_PHYSICALITY
    assert 'Violations on 49 grid points' in capsys.readouterr().out


def test_figure_writes_artifacts(tmp_path):
    out = tmp_path / 'fig'
    assert main(['figure', '10', '--out', str(out)]) == EXIT_OK
    assert (out / 'fig10_weak.csv').exists()
    assert (out / 'fig10.svg').exists()
    metadata = json.loads((out / 'metadata.json').read_text(encoding='utf-8'))
    assert metadata['fig_id'] == 10
    assert metadata['metric'] == 'concurrence'
    curve = metadata['curves'][0]
    assert curve['csv'] == 'fig10_weak.csv'
    assert curve['nm_window'] == [0.0, 10.0]
    assert curve['nm_spacing'] == 1e-3
    assert curve['nm_value'] <= 1e-6


def test_unknown_figure(tmp_path, capsys):
    assert main(['figure', '16', '--out', str(tmp_path)]) == EXIT_USAGE
    assert '1..15' in capsys.readouterr().err
