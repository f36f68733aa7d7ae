"""
Scenario files: a single JSON document with a versioned schema describing
the pressure laws, the slab, the initial datum and what to record.

Errors are reported against the file: malformed JSON as
'path:line:col: message', invalid values as 'path:line: message' with the
line of the offending key.
"""

import json
import logging

from droplet.fronts import config
from droplet.fronts.engine import RunConfig, Datum
from droplet.fronts.limit import LimitConfig, limit_datum
from droplet.fronts.exc import ScenarioParseError
from droplet.study import helpers


_log = logging.getLogger('droplet.study.scenario')

TOP_LEVEL_KEYS = set([
    'schema', 'name', 'description', 'gas', 'liquid', 'm', 'T', 'epsilon',
    'datum', 'droplet_velocity', 'output_times', 'measurement_lines',
    'window_depth', 'ode_steps', 'max_events', 'seed', 'calibration',
    'interaction_constant', 'eulerian'])
DATUM_PARTS = ['gas_left', 'liquid', 'gas_right']


class Scenario(object):
    def __init__(self, path, text, data):
        self.path = path
        self.text = text
        self.data = data
        self.sha256 = helpers.bytes_sha256(text.encode('utf-8'))

    @property
    def name(self):
        return self.data.get('name', self.path)

    def line_of(self, key):
        """Line number of the first occurrence of "key" in the file, 1 if
        it does not appear."""
        needle = '"%s"' % key
        for lineno, line in enumerate(self.text.splitlines(), 1):
            if needle in line:
                return lineno
        return 1

    def error(self, key, message):
        return ScenarioParseError("%s:%d: %s" % (self.path, self.line_of(key),
                                                 message))

    def etas(self):
        liquid = self.data['liquid']
        if 'etas' in liquid:
            return helpers.parse_eta_list(liquid['etas'])
        if 'eta' in liquid:
            return [float(liquid['eta'])]
        return list(config.DEFAULT_ETA_LADDER)

    def window_depth(self):
        return int(self.data.get('window_depth', config.DEFAULT_WINDOW_DEPTH))

    def eulerian_origin(self):
        return float(self.data.get('eulerian', {}).get('a_o', 0.0))

    def _overridden(self, max_events, seed):
        data = dict(self.data)
        if max_events is not None:
            data['max_events'] = max_events
        if seed is not None:
            data['seed'] = seed
        return data

    def run_config(self, eta=None, max_events=None, seed=None):
        data = self._overridden(max_events, seed)
        if eta is None:
            eta = self.etas()[0]
        try:
            return RunConfig.from_data(data, eta=eta)
        except ValueError as e:
            raise self.error('liquid' if 'eta' in str(e) else 'epsilon',
                             str(e))

    def limit_config(self, max_events=None, seed=None):
        try:
            return LimitConfig.from_data(self._overridden(max_events, seed))
        except ValueError as e:
            raise self.error('ode_steps', str(e))

    def datum(self):
        try:
            return Datum.from_data(self.data['datum'])
        except ValueError as e:
            raise self.error('datum', str(e))

    def limit_datum(self, limit_config=None):
        if limit_config is None:
            limit_config = self.limit_config()
        return limit_datum(self.datum(), limit_config)


def _check_number(scenario, data, key, positive=True):
    if key not in data:
        raise scenario.error(key, "missing required key '%s'" % key)
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise scenario.error(key, "'%s' must be a number, got %r"
                             % (key, value))
    if positive and not value > 0:
        raise scenario.error(key, "'%s' must be positive, got %r"
                             % (key, value))


def _check_states(scenario, part, data):
    if isinstance(data, list):
        data = dict(states=[data])
    if not isinstance(data, dict) or 'states' not in data:
        raise scenario.error(part, "datum part '%s' needs a 'states' list"
                             % part)
    jumps = data.get('jumps', [])
    states = data['states']
    if len(states) != len(jumps) + 1:
        raise scenario.error(part, "datum part '%s' has %d jumps and %d "
                             "states" % (part, len(jumps), len(states)))
    for state in states:
        if not (isinstance(state, list) and len(state) == 2):
            raise scenario.error(part, "state %r in '%s' is not [tau, v]"
                                 % (state, part))
        if not state[0] > 0:
            raise scenario.error(part, "specific volume must be positive in "
                                 "'%s': %r" % (part, state))


def validate(scenario):
    data = scenario.data
    if not isinstance(data, dict):
        raise ScenarioParseError("%s:1: scenario must be a JSON object"
                                 % scenario.path)
    unknown = sorted(set(data) - TOP_LEVEL_KEYS)
    if unknown:
        raise scenario.error(unknown[0], "unknown key '%s'" % unknown[0])
    if data.get('schema') != config.SCENARIO_SCHEMA:
        raise scenario.error('schema', "unsupported schema %r, expected %d"
                             % (data.get('schema'), config.SCENARIO_SCHEMA))
    for key in ('m', 'T', 'epsilon'):
        _check_number(scenario, data, key)
    if 'liquid' not in data or not isinstance(data['liquid'], dict):
        raise scenario.error('liquid', "missing 'liquid' section")
    liquid = data['liquid']
    for key in ('p_bar', 'tau_bar', 'eta'):
        if key in liquid:
            _check_number(scenario, liquid, key, positive=(key != 'p_bar'))
    if 'etas' in liquid:
        try:
            helpers.parse_eta_list(liquid['etas'])
        except (TypeError, ValueError) as e:
            raise scenario.error('etas', str(e))
    if 'datum' not in data:
        raise scenario.error('datum', "missing 'datum' section")
    for part in DATUM_PARTS:
        if part not in data['datum']:
            raise scenario.error('datum', "datum is missing '%s'" % part)
        _check_states(scenario, part, data['datum'][part])
    T = data['T']
    for t in data.get('output_times', []):
        if not 0 <= t <= T:
            raise scenario.error('output_times', "output time %r outside "
                                 "[0, %r]" % (t, T))
    for x in data.get('measurement_lines', []):
        if 0 <= x <= data['m']:
            raise scenario.error('measurement_lines', "measurement line %r "
                                 "inside the liquid [0, %r]" % (x, data['m']))
    for key in ('ode_steps', 'max_events', 'window_depth'):
        if key in data and (not isinstance(data[key], int)
                            or data[key] < (0 if key == 'window_depth'
                                            else 1)):
            raise scenario.error(key, "'%s' must be a positive integer, got "
                                 "%r" % (key, data[key]))


def parse_scenario(text, path='<scenario>'):
    try:
        data = json.loads(text)
    except ValueError as e:
        lineno = getattr(e, 'lineno', 1)
        colno = getattr(e, 'colno', 1)
        msg = getattr(e, 'msg', str(e))
        raise ScenarioParseError("%s:%d:%d: %s" % (path, lineno, colno, msg))
    scenario = Scenario(path, text, data)
    validate(scenario)
    _log.debug("loaded scenario %s (sha256 %s)", path, scenario.sha256)
    return scenario


def load_scenario(path):
    try:
        with open(path, 'rb') as f:
            raw = f.read()
    except IOError as e:
        raise ScenarioParseError("%s:1: cannot read scenario: %s"
                                 % (path, e.strerror))
    try:
        text = raw.decode('utf-8')
    except UnicodeDecodeError as e:
        raise ScenarioParseError("%s:1: scenario is not UTF-8: %s" % (path, e))
    return parse_scenario(text, path)
