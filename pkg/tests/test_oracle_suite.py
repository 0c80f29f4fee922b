import json

from noonflow.runner.cli import EXIT_OK, main
from noonflow.validation.oracle_suite import OracleSuite


def test_all_checks_pass(tmp_path, capsys):
    report_path = tmp_path / 'selfcheck.json'
    suite = OracleSuite()
    assert suite.run_all(str(report_path))

    out = capsys.readouterr().out
    assert 'Oracle Self-Check' in out
    assert 'All checks passed!' in out

    report = json.loads(report_path.read_text(encoding='utf-8'))
    assert report['passed'] is True
    assert report['seed'] == OracleSuite.SEED
    assert len(report['checks']) == 6
    for check in report['checks']:
        assert check['max_error'] <= check['tolerance'], check['name']


def test_seed_is_recorded():
    suite = OracleSuite(seed=7)
    assert suite.seed == 7
    assert suite.test_results == []


def test_selfcheck_command(capsys):
    assert main(['selfcheck']) == EXIT_OK
    assert 'Check 6' in capsys.readouterr().out
