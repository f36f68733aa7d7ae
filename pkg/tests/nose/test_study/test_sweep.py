import os.path
import json
import shutil

from nose.tools import assert_equal, assert_in, assert_true

from droplet.study import status
from droplet.study.sweep import JobList, EtaJob, SweepRunner

from test_study import TEST_OUTPUT_DIR


def test_job_list():
    jl = JobList(lambda x: x, [23, 2, 256, 17, 99])
    assert_equal(len(jl), 5)
    assert_equal([jl.pop_job() for _ in range(5)], [256, 99, 23, 17, 2])
    assert_equal(len(jl), 0)
    assert_equal(jl.pop_job(), None)
    assert_equal(JobList(lambda x: x).pop_job(), None)


def test_runner_records_every_failure():
    done = []

    def fn(eta):
        if eta == 30.0:
            raise ValueError('bad eta')
        if eta == 300.0:
            raise KeyError('unexpected')
        done.append(eta)

    path = os.path.join(TEST_OUTPUT_DIR, 'runner')
    shutil.rmtree(path, ignore_errors=True)
    os.makedirs(path)
    status_file = os.path.join(path, 'sweep.status.json')
    runner = SweepRunner(workers=3, status_file=status_file,
                         errors=(ValueError,))
    failures = runner.run([EtaJob(eta, fn)
                           for eta in (10.0, 30.0, 100.0, 300.0)])
    assert_equal(sorted(done), [10.0, 100.0])
    assert_equal(sorted(failures), [30.0, 300.0])
    assert_in('bad eta', failures[30.0])
    with open(status_file) as f:
        states = json.load(f)
    assert_equal(states['30']['reason'], status.REASON_FAILED)
    assert_equal(states['300']['reason'], status.REASON_EXCEPTION)
    assert_equal(states['10']['state'], status.DONE)
    assert_true(states['100']['runtime'] >= 0)


def test_runner_needs_a_worker():
    try:
        SweepRunner(workers=0)
    except ValueError as e:
        assert_in('worker', str(e))
    else:
        assert False, 'expected ValueError'


def test_status_file_keeps_earlier_runs():
    path = os.path.join(TEST_OUTPUT_DIR, 'status')
    shutil.rmtree(path, ignore_errors=True)
    os.makedirs(path)
    status_file = os.path.join(path, 'sweep.status.json')
    st = status.SweepStatus(status_file)
    st.set_state(status.EtaState(10.0, status.DONE,
                                 reason=status.REASON_SUCCEEDED, runtime=1.5))
    again = status.SweepStatus(status_file)
    again.set_state(status.EtaState(30.0, status.RUNNING))
    assert_equal(again.get_state(10.0)['runtime'], 1.5)
    assert_equal(again.get_state(30.0)['state'], status.RUNNING)
    assert_equal(again.get_state(100.0), None)


def test_runner_drops_etas_of_an_earlier_sweep():
    path = os.path.join(TEST_OUTPUT_DIR, 'stale')
    shutil.rmtree(path, ignore_errors=True)
    os.makedirs(path)
    status_file = os.path.join(path, 'sweep.status.json')
    earlier = status.SweepStatus(status_file)
    earlier.set_state(status.EtaState(1000.0, status.DONE,
                                      reason=status.REASON_SUCCEEDED))
    earlier.set_state(status.EtaState(10.0, status.FAILED,
                                      reason=status.REASON_FAILED))
    runner = SweepRunner(workers=2, status_file=status_file)
    failures = runner.run([EtaJob(eta, lambda eta: None)
                           for eta in (10.0, 30.0)])
    assert_equal(failures, {})
    with open(status_file) as f:
        states = json.load(f)
    assert_equal(sorted(states), ['10', '30'])
    assert_equal(states['10']['state'], status.DONE)
