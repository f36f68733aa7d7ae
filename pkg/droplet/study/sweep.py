"""
Worker pool for the eta runs of a sweep.

Runs are independent, so a fixed number of worker threads pull jobs from
a shared list until it is empty. The stiffest runs (largest eta) produce
the most interactions and are started first so that the pool is not left
waiting on one long run at the end.
"""

import time
import logging
import threading

from droplet.study import status


_log = logging.getLogger('droplet.study.sweep')


class JobList(object):
    """Jobs kept sorted by cost; pop_job removes the most expensive one.

    The job objects can be any type, but a key function must be provided
    that takes an instance of a job and returns its cost."""
    def __init__(self, costfn, initial_jobs=None):
        self._jobs = sorted(initial_jobs or [], key=costfn)
        self._lock = threading.Lock()

    def pop_job(self):
        """Remove and return the highest cost job, None if the list is
        empty."""
        with self._lock:
            if not self._jobs:
                return None
            return self._jobs.pop()

    def __len__(self):
        return len(self._jobs)


class EtaJob(object):
    def __init__(self, eta, fn):
        self.eta = eta
        self.fn = fn

    def get_state(self, state, **kw):
        return status.EtaState(self.eta, state, **kw)

    def __repr__(self):
        return 'EtaJob(eta=%r)' % self.eta


class SweepRunner(object):
    """Run jobs on `workers` threads. A job that raises one of `errors` is
    recorded as failed; any other exception is logged with its traceback
    and recorded too, so one bad eta never stops the sweep."""

    def __init__(self, workers=1, status_file=None, errors=(Exception,)):
        if workers < 1:
            raise ValueError("need at least one worker, got %r" % workers)
        self.workers = workers
        self.errors = errors
        if status_file is not None:
            self._status = status.SweepStatus(status_file)
        else:
            self._status = None
        self._failures_lock = threading.Lock()
        self.failures = {}
        self.job_list = None

    def _set_state(self, job, state, **kw):
        if self._status is not None:
            self._status.set_state(job.get_state(state, **kw))

    def _fail(self, job, reason, message):
        with self._failures_lock:
            self.failures[job.eta] = message
        self._set_state(job, status.FAILED, reason=reason, message=message)

    def _run_job(self, job):
        self._set_state(job, status.RUNNING)
        start = time.time()
        try:
            job.fn(job.eta)
        except self.errors as e:
            _log.error("eta=%r failed: %s", job.eta, e)
            self._fail(job, status.REASON_FAILED,
                       '%s: %s' % (type(e).__name__, e))
        except Exception as e:
            _log.exception("eta=%r raised", job.eta)
            self._fail(job, status.REASON_EXCEPTION,
                       '%s: %s' % (type(e).__name__, e))
        else:
            runtime = time.time() - start
            _log.info("eta=%r done in %.3fs", job.eta, runtime)
            self._set_state(job, status.DONE,
                            reason=status.REASON_SUCCEEDED, runtime=runtime)

    def _worker(self):
        while True:
            job = self.job_list.pop_job()
            if job is None:
                return
            self._run_job(job)

    def run(self, jobs):
        """Run every job and return {eta: message} for the failed ones."""
        self.job_list = JobList(lambda job: job.eta, jobs)
        if self._status is not None:
            self._status.retain([job.eta for job in jobs])
        for job in jobs:
            self._set_state(job, status.NOT_STARTED)
        if self.workers == 1:
            self._worker()
            return dict(self.failures)
        threads = [threading.Thread(target=self._worker,
                                    name='Thread-sweep-%d' % i)
                   for i in range(min(self.workers, len(jobs)))]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        return dict(self.failures)
