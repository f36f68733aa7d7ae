"""
State of every eta run of a sweep. State is saved in a JSON file,
overwritten on each state change, so a long sweep can be watched from
outside with sweep_summary.py.
"""

import json
import os
import threading

from droplet.study import helpers


NOT_STARTED = 'not_started'
RUNNING = 'running'
DONE = 'done'
FAILED = 'failed'

REASON_SUCCEEDED = 'succeeded'
REASON_FAILED = 'failed'
REASON_EXCEPTION = 'exception'


class SweepStatus(object):
    def __init__(self, file_path):
        self.file_path = file_path
        self._lock = threading.Lock()
        self._state = {}

        # reload an existing file; SweepRunner.run retains its own etas
        if os.path.isfile(file_path):
            with open(file_path, 'r') as f:
                self._state = json.load(f)

    def set_state(self, eta_state):
        with self._lock:
            self._state[helpers.eta_label(eta_state.eta)] = \
                eta_state.as_data()
            self._save()

    def get_state(self, eta):
        with self._lock:
            return self._state.get(helpers.eta_label(eta))

    def retain(self, etas):
        """Drop the entries of etas not in `etas`, left by an earlier
        sweep written to the same file."""
        keep = set(helpers.eta_label(eta) for eta in etas)
        with self._lock:
            self._state = dict((k, v) for k, v in self._state.items()
                               if k in keep)
            self._save()

    def _save(self):
        # caller holds _lock
        with open(self.file_path, 'w') as f:
            json.dump(self._state, f, indent=2, sort_keys=True)


class EtaState(object):
    def __init__(self, eta, state, reason=None, message=None, runtime=None):
        self.eta = eta
        self.state = state
        self.reason = reason
        self.message = message
        self.runtime = runtime

    def as_data(self):
        # NB: eta is the key
        return dict(state=self.state, reason=self.reason,
                    message=self.message, runtime=self.runtime)
