import json

import pytest

from prefnoise.cli import main, parse_args

from conftest import tiny_config_dict


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / 'cfg.json'
    path.write_text(json.dumps(tiny_config_dict(str(tmp_path / 'default.csv'), rounds=1)))
    return str(path)


def test_run_with_overrides(config_path, tmp_path):
    out = tmp_path / 'seed3.csv'
    assert main(['run', '--config', config_path, '--seed', '3', '--out', str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 2
    assert lines[1].startswith('3,0,uniform')


def test_run_then_report(config_path, tmp_path):
    assert main(['run', '--config', config_path]) == 0
    assert main(['report', str(tmp_path / 'default.csv'), '--out', str(tmp_path / 'report')]) == 0
    assert (tmp_path / 'report' / 'summary.csv').exists()


def test_sweep(config_path, tmp_path):
    out = tmp_path / 'sweep'
    argv = ['sweep', '--config', config_path, '--kinds', 'uniform,distance', '--rates', '0.1,0.3',
            '--seed', '0', '--out', str(out), '--jobs', '2']
    assert main(argv) == 0
    assert len((out / 'aggregate.csv').read_text().splitlines()) == 5


def test_failures_exit_with_one(tmp_path):
    assert main(['run', '--config', str(tmp_path / 'absent.json')]) == 1
    assert main(['report', str(tmp_path / 'absent.csv')]) == 1


@pytest.mark.parametrize('rates', ['0.1,abc', '1.5', ''])
def test_bad_rates(config_path, rates):
    with pytest.raises(SystemExit):
        parse_args(['sweep', '--config', config_path, '--rates', rates])


def test_defaults(config_path):
    args = parse_args(['sweep', '--config', config_path])
    assert args.rates == [0.1, 0.2, 0.3, 0.4]
    assert args.kinds is None and args.jobs == 1


def test_run_seeds_in_parallel(config_path, tmp_path):
    serial, parallel = tmp_path / 'serial.csv', tmp_path / 'parallel.csv'
    assert main(['run', '--config', config_path, '--out', str(serial)]) == 0
    assert main(['run', '--config', config_path, '--out', str(parallel), '--jobs', '2']) == 0
    assert parallel.read_bytes() == serial.read_bytes()
    assert parse_args(['run', '--config', config_path]).jobs == 1
    assert main(['run', '--config', config_path, '--jobs', '0']) == 1
