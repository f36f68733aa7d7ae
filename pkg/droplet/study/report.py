"""
Output files of the simulate, limit and sweep commands.

Every CSV file starts with a '# scenario_sha256=<hash>' line and every
JSON summary carries the same hash, so each output can be traced back to
the exact scenario bytes. Numbers are written with 17 significant digits
and lines end in '\\n' on every platform, so the same scenario gives
byte-identical files.
"""

import os
import csv
import json
import logging
import threading

from droplet.fronts.functionals import violation_as_data
from droplet.study import helpers


_log = logging.getLogger('droplet.study.report')

SNAPSHOT_COLUMNS = ['t', 'piece', 'x_left', 'x_right', 'phase', 'tau', 'v',
                    'p']
EVENT_COLUMNS = ['seq', 't', 'x', 'case', 'incoming_from', 'incoming',
                 'outgoing']
DROPLET_COLUMNS = ['t', 'v_l', 'impulse', 'dp', 'reason']
METRIC_COLUMNS = ['eta', 't', 'metric', 'value']

SCALAR_METRICS = ['l1_v_liquid', 'l1_tau_liquid', 'trace_left',
                  'trace_right', 'weakstar', 'eulerian', 'momentum',
                  'space_lipschitz', 'upsilon0', 'liquid_tau_ratio',
                  'max_fronts', 'interactions', 'violations']


class OutputDir(object):
    """Writer for one output directory. Writes are serialized so that
    sweep workers can report concurrently."""

    def __init__(self, path, scenario_sha256):
        self.path = helpers.make_output_dir(path)
        self.sha256 = scenario_sha256
        self._lock = threading.Lock()

    def file_path(self, name):
        return os.path.join(self.path, name)

    def write_csv(self, name, columns, rows):
        path = self.file_path(name)
        with self._lock:
            with open(path, 'w', newline='') as f:
                f.write('# scenario_sha256=%s\n' % self.sha256)
                writer = csv.DictWriter(f, columns, lineterminator='\n',
                                        extrasaction='ignore')
                writer.writeheader()
                for row in rows:
                    writer.writerow(dict((k, helpers.format_number(row.get(k)))
                                         for k in columns))
        _log.debug("wrote %s", path)
        return path

    def write_json(self, name, data):
        path = self.file_path(name)
        data = dict(data, scenario_sha256=self.sha256)
        with self._lock:
            with open(path, 'w') as f:
                json.dump(data, f, indent=2, sort_keys=True)
                f.write('\n')
        _log.debug("wrote %s", path)
        return path


def snapshot_rows(snapshots):
    for s in snapshots:
        edges = [-float('inf')] + list(s.positions) + [float('inf')]
        for k, state in enumerate(s.states):
            yield dict(t=s.time, piece=k, x_left=edges[k],
                       x_right=edges[k + 1], phase=s.phases[k],
                       tau=state.tau, v=state.v, p=state.p)


def _sizes(waves):
    return ';'.join(helpers.format_number(w.sigma) for w in waves)


def event_rows(events):
    for e in events:
        yield dict(seq=e.seq, t=e.time, x=e.position, case=e.case,
                   incoming_from=e.incoming_from,
                   incoming=_sizes(e.incoming), outgoing=_sizes(e.outgoing))


def droplet_rows(droplet, T):
    for start, end, u in droplet.intervals():
        yield dict(t=u.time, v_l=u.v_l, impulse=u.impulse, dp=u.dp,
                   reason=u.reason)
    last = droplet.updates[-1]
    if last.time < T:
        yield dict(t=T, v_l=last.v_l, impulse=droplet.impulse(T),
                   dp=last.dp, reason='end')


def metric_rows(sweep_result, T):
    for eta in sweep_result.completed():
        metrics = sweep_result.per_eta[eta]
        for name in SCALAR_METRICS:
            yield dict(eta=eta, t=T, metric=name, value=metrics.get(name))
        for k, value in enumerate(metrics['weakstar_windows']):
            yield dict(eta=eta, t=T, metric='weakstar_window_%d' % k,
                       value=value)


def write_functionals(out, name, report):
    return out.write_csv(name, report.columns(), report.rows)


def run_summary(result, scenario, extra=None):
    data = dict(scenario=scenario.name, config=result.config.as_data(),
                diagnostics=result.diagnostics,
                snapshots=len(result.snapshots),
                interactions=len(result.interactions()))
    if result.report is not None:
        data['functionals'] = result.report.summary()
    if extra:
        data.update(extra)
    return data


def violation_summary(violations):
    return dict(violations=[violation_as_data(v) for v in violations])
