"""
The simulate, limit and sweep commands.

Each command returns an exit status instead of exiting: 0 on success, 1 for
a bad scenario or a run that could not be completed, 2 when a checked
property of the run was violated. In the last case the offending checks are
written to violation.json next to the regular outputs.
"""

import sys
import logging

from droplet.fronts import engine
from droplet.fronts import limit
from droplet.fronts.exc import (FrontsException, PropertyViolation,
                                ScenarioParseError)
from droplet.study import analysis
from droplet.study import helpers
from droplet.study import report
from droplet.study.scenario import load_scenario


EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2

LOG_FORMAT = '%(asctime)s:%(levelname)s:%(name)s:%(message)s'

_log = logging.getLogger('droplet.study.main')


def setup_logging(log_file=None, log_level='INFO'):
    logger = logging.getLogger('droplet')
    if log_file:
        handler = logging.FileHandler(log_file)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
        logger.setLevel(log_level)
    else:
        logger.addHandler(logging.NullHandler())
    return logger


def _error(message):
    print('error: %s' % message, file=sys.stderr)
    return EXIT_ERROR


def _single_eta(etas):
    if not etas:
        return None
    etas = helpers.parse_eta_list(etas)
    if len(etas) != 1:
        raise ValueError("simulate takes a single --eta, got %r" % etas)
    return etas[0]


def _violation(out, e):
    path = out.write_json('violation.json', report.violation_summary(
        e.verdicts))
    print('property violated: %s (see %s)' % (e.verdict, path),
          file=sys.stderr)
    return EXIT_VIOLATION


def _write_run(out, result, scenario, extra=None):
    out.write_csv('snapshots.csv', report.SNAPSHOT_COLUMNS,
                  report.snapshot_rows(result.snapshots))
    out.write_csv('events.csv', report.EVENT_COLUMNS,
                  report.event_rows(result.events))
    out.write_json('run.json', report.run_summary(result, scenario, extra))


def cmd_simulate(scenario_path, out_dir, etas=None, max_events=None,
                 seed=None):
    """Two-phase run for one eta with every functional check."""
    try:
        scenario = load_scenario(scenario_path)
        config = scenario.run_config(_single_eta(etas), max_events, seed)
        datum = scenario.datum()
        datum.validate(config.m)
        _log.info("simulate %s with eta=%r", scenario.name, config.eta)
        result = engine.run(config, datum)
    except (ScenarioParseError, KeyError, ValueError, FrontsException) as e:
        return _error(e)
    out = report.OutputDir(out_dir, scenario.sha256)
    _write_run(out, result, scenario)
    report.write_functionals(out, 'functionals.csv', result.report)
    try:
        result.report.check()
    except PropertyViolation as e:
        return _violation(out, e)
    return EXIT_OK


def cmd_limit(scenario_path, out_dir, max_events=None, seed=None):
    """Run of the rigid droplet model."""
    try:
        scenario = load_scenario(scenario_path)
        config = scenario.limit_config(max_events, seed)
        datum = scenario.limit_datum(config)
        datum.validate(config.m)
        _log.info("limit %s with %d ODE steps", scenario.name,
                  config.ode_steps)
        result = limit.run_limit(config, datum)
    except (ScenarioParseError, KeyError, ValueError, FrontsException) as e:
        return _error(e)
    out = report.OutputDir(out_dir, scenario.sha256)
    residual = limit.newton_law_residual(result.droplet)
    _write_run(out, result, scenario,
               dict(newton_residual=residual, droplet_updates=len(
                   result.droplet)))
    out.write_csv('droplet.csv', report.DROPLET_COLUMNS,
                  report.droplet_rows(result.droplet, config.T))
    return EXIT_OK


def cmd_sweep(scenario_path, out_dir, etas=None, max_events=None, seed=None,
              workers=1):
    """Two-phase runs over the eta ladder compared with the rigid model."""
    try:
        scenario = load_scenario(scenario_path)
        ladder = helpers.parse_eta_list(etas) if etas else scenario.etas()
        template = scenario.run_config(ladder[0], max_events, seed)
        limit_config = scenario.limit_config(max_events, seed)
        datum = scenario.datum()
        datum.validate(template.m)
    except (ScenarioParseError, KeyError, ValueError, FrontsException) as e:
        return _error(e)
    out = report.OutputDir(out_dir, scenario.sha256)

    def write_eta(eta, result):
        name = 'functionals-eta-%s.csv' % helpers.eta_label(eta)
        report.write_functionals(out, name, result.report)

    try:
        result = analysis.sweep(
            template, ladder, datum, limit_config,
            scenario.limit_datum(limit_config), workers=workers,
            status_file=out.file_path('sweep.status.json'),
            window_depth=scenario.window_depth(),
            a_o=scenario.eulerian_origin(), on_result=write_eta)
    except (ValueError, FrontsException) as e:
        return _error(e)
    out.write_json('sweep.json', dict(result.summary(),
                                      scenario=scenario.name))
    out.write_csv('metrics.csv', report.METRIC_COLUMNS,
                  report.metric_rows(result, template.T))
    if result.failures:
        return _error("%d of %d eta runs failed"
                      % (len(result.failures), len(ladder)))
    violations = sum(m['violations'] for m in result.per_eta.values())
    if violations or not result.ok():
        print('sweep checks failed: %d functional violations, trends %s'
              % (violations, dict((k, t['ok']) for k, t in
                                  result.trends().items()
                                  if isinstance(t, dict))),
              file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK
