"""
Metrics comparing two-phase runs with the rigid droplet model, and the
eta sweep that collects them.

Every quantity is an exact integral of piecewise constant data (fronts
move linearly, traces switch at known times), so nothing here samples or
uses quadrature.
"""

import time
import logging
import threading
import itertools
from collections import namedtuple

import numpy as np

from droplet.fronts import config
from droplet.fronts import engine
from droplet.fronts import limit
from droplet.fronts.model import LIQUID, state_after_crossing
from droplet.fronts.exc import FrontsException
from droplet.study import sweep as pool
from droplet.study import helpers


_log = logging.getLogger('droplet.study.analysis')


class Trace(object):
    """States seen on a fixed line: states[k] holds on
    [times[k], times[k+1]), the last one until `end`."""

    def __init__(self, times, states, end):
        if len(times) != len(states) or not times:
            raise ValueError("a trace needs one state per switch time")
        self.times = list(times)
        self.states = list(states)
        self.end = end

    def __len__(self):
        return len(self.times)

    def value(self, t):
        k = int(np.searchsorted(self.times, t, side='right')) - 1
        return self.states[max(k, 0)]

    def pieces(self, t1=None, t2=None):
        """(start, end, state) over [t1, t2] clipped to the trace."""
        t1 = self.times[0] if t1 is None else t1
        t2 = self.end if t2 is None else t2
        out = []
        for k, state in enumerate(self.states):
            start = self.times[k]
            stop = self.times[k + 1] if k + 1 < len(self.times) else self.end
            lo, hi = max(start, t1), min(stop, t2)
            if hi > lo:
                out.append((lo, hi, state))
        return out

    def integral(self, field, t1=None, t2=None):
        return sum(getattr(s, field) * (hi - lo)
                   for lo, hi, s in self.pieces(t1, t2))


def trace(history, x, side='+', end=None):
    """Trace of a run on z = x. At a phase boundary the state on `side`
    of it is taken from the boundary fronts; elsewhere the switches are the
    front crossings of the line."""
    lives = history.boundary_lives(x)
    if end is None:
        end = max([f.t0 for f, _ in history.lives()] + [0.0])
    if lives:
        times, states = [], []
        for f, _ in lives:
            times.append(f.t0)
            states.append(f.left if side == '-' else f.right)
    else:
        times = [0.0]
        states = [history.snapshot(0.0).sample(x, side)]
        for tc, _, f in history.crossings(x):
            if tc > end:
                break
            times.append(tc)
            states.append(state_after_crossing(f))
    merged_t, merged_s = [], []
    for t, s in zip(times, states):
        if merged_t and t == merged_t[-1]:
            merged_s[-1] = s
        elif merged_s and s == merged_s[-1]:
            continue
        else:
            merged_t.append(t)
            merged_s.append(s)
    return Trace(merged_t, merged_s, end)


def _merged_pieces(tr1, tr2, t_end):
    cuts = sorted(set([0.0, t_end] + [t for t in tr1.times + tr2.times
                                      if 0 < t < t_end]))
    for lo, hi in zip(cuts, cuts[1:]):
        mid = 0.5 * (lo + hi)
        yield lo, hi, tr1.value(mid), tr2.value(mid)


def trace_distance(tr1, tr2, fields=('tau', 'v'), t_end=None):
    """Exact integral in time of the distance between two traces."""
    if t_end is None:
        t_end = min(tr1.end, tr2.end)
    return sum((hi - lo) * sum(abs(getattr(a, f) - getattr(b, f))
                               for f in fields)
               for lo, hi, a, b in _merged_pieces(tr1, tr2, t_end))


def l1_distance(s1, s2, window, fields=('tau', 'v')):
    """Exact L1 distance of two snapshots at the same time over
    window = (a, b)."""
    if s1.time != s2.time:
        raise ValueError("snapshots at different times: %r, %r"
                         % (s1.time, s2.time))
    return _l1(s1, s2, window, fields)


def _l1(s1, s2, window, fields):
    a, b = window
    inside = [z for z in np.concatenate([s1.positions, s2.positions])
              if a < z < b]
    cuts = np.unique(np.array([a, b] + inside, dtype=float))
    if len(cuts) < 2:
        return 0.0
    mids = 0.5 * (cuts[:-1] + cuts[1:])
    widths = np.diff(cuts)
    total = 0.0
    for f in fields:
        v1 = np.array([getattr(s, f) for s in s1.states])
        v2 = np.array([getattr(s, f) for s in s2.states])
        i1 = np.searchsorted(s1.positions, mids, side='right')
        i2 = np.searchsorted(s2.positions, mids, side='right')
        total += float(np.sum(np.abs(v1[i1] - v2[i2]) * widths))
    return total


def integral_over(snapshot, window, field):
    """Exact integral of one field of a snapshot over window = (a, b)."""
    a, b = window
    cuts = np.unique(np.array(
        [a, b] + [z for z in snapshot.positions if a < z < b], dtype=float))
    mids = 0.5 * (cuts[:-1] + cuts[1:])
    values = np.array([getattr(s, field) for s in snapshot.states])
    idx = np.searchsorted(snapshot.positions, mids, side='right')
    return float(np.sum(values[idx] * np.diff(cuts)))


def front_extent(history, t):
    """Interval containing every front of the run on [0, t]."""
    lo, hi = 0.0, 0.0
    for f, died in history.lives():
        if f.t0 > t:
            continue
        for z in (f.x0, f.position(min(died, t))):
            lo, hi = min(lo, z), max(hi, z)
    return lo, hi


Window = namedtuple('Window', ['t1', 't2', 'x1', 'x2'])


def dyadic_windows(T, m, depth=config.DEFAULT_WINDOW_DEPTH):
    """Rectangles of [0, T] x [0, m] split into 2^k x 2^k for k <= depth.

    >>> len(dyadic_windows(1.0, 1.0, 2))
    21
    >>> dyadic_windows(2.0, 1.0, 0)
    [Window(t1=0.0, t2=2.0, x1=0.0, x2=1.0)]
    """
    windows = []
    for level in range(depth + 1):
        n = 2 ** level
        for i in range(n):
            for j in range(n):
                windows.append(Window(T * i / n, T * (i + 1) / n,
                                      m * j / n, m * (j + 1) / n))
    return windows


def liquid_pressure_integral(history, window):
    """Exact space-time integral of the liquid pressure over a window
    inside [0, T] x [0, m]."""
    t1, t2, x1, x2 = window
    base = trace(history, x1, '+', end=t2)
    total = (x2 - x1) * base.integral('p', t1, t2)
    for f, died in history.lives():
        if f.phase != LIQUID:
            continue
        jump = f.right.p - f.left.p
        # times in [t1, t2] during which x1 < x_f(t) < x2
        lo, hi = max(t1, f.t0), min(t2, died)
        if hi <= lo:
            continue
        ta = f.t0 + (x1 - f.x0) / f.speed
        tb = f.t0 + (x2 - f.x0) / f.speed
        lo, hi = max(lo, min(ta, tb)), min(hi, max(ta, tb))
        if hi <= lo:
            continue
        mid = 0.5 * (lo + hi)
        total += jump * (x2 - f.position(mid)) * (hi - lo)
    return total


def interpolated_pressure_integral(p_left, p_right, window, m):
    """Integral of (1 - x/m) p_left(t) + (x/m) p_right(t) over a window."""
    t1, t2, x1, x2 = window
    ramp = (x2 ** 2 - x1 ** 2) / (2.0 * m)
    return (p_left.integral('p', t1, t2) * ((x2 - x1) - ramp)
            + p_right.integral('p', t1, t2) * ramp)


def weakstar_window_residuals(history, limit_traces, windows, m):
    p_left, p_right = limit_traces
    return [abs(liquid_pressure_integral(history, w)
                - interpolated_pressure_integral(p_left, p_right, w, m))
            for w in windows]


def weakstar_pressure_residual(history, limit_traces, windows, m):
    residuals = weakstar_window_residuals(history, limit_traces, windows, m)
    return max(residuals) if residuals else 0.0


LipschitzReport = namedtuple('LipschitzReport', [
    'v_ratio', 'v_bound', 'gas_tau_ratio', 'gas_tau_bound',
    'liquid_tau_ratio', 'liquid_tau_bound', 'ok'])


def lipschitz_report(history, times, m, upsilon0, Lambda, C, eta):
    """Largest L1 change per unit time over all pairs of snapshots, for v
    on the whole line and for tau on the gas and on the liquid."""
    snaps = [history.snapshot(t) for t in sorted(set(times))]
    lo, hi = front_extent(history, max(times))
    lo, hi = lo - 1.0, hi + 1.0
    v_ratio = gas_ratio = liquid_ratio = 0.0
    for s1, s2 in itertools.combinations(snaps, 2):
        dt = s2.time - s1.time
        v_ratio = max(v_ratio, _l1(s1, s2, (lo, hi), ('v',)) / dt)
        gas = _l1(s1, s2, (lo, 0.0), ('tau',)) + \
            _l1(s1, s2, (m, hi), ('tau',))
        gas_ratio = max(gas_ratio, gas / dt)
        liquid_ratio = max(liquid_ratio,
                           _l1(s1, s2, (0.0, m), ('tau',)) / dt)
    slack = 1.0 + 1e-6
    v_bound = upsilon0 * (1.0 + Lambda)
    gas_bound = C * upsilon0 * Lambda
    liquid_bound = upsilon0 / eta if eta else float('inf')
    ok = (v_ratio <= v_bound * slack and gas_ratio <= gas_bound * slack
          and liquid_ratio <= liquid_bound * slack)
    return LipschitzReport(v_ratio, v_bound, gas_ratio, gas_bound,
                           liquid_ratio, liquid_bound, ok)


class EulerianBoundaries(object):
    def __init__(self, times, a, b):
        self.times = np.asarray(times, dtype=float)
        self.a = np.asarray(a, dtype=float)
        self.b = np.asarray(b, dtype=float)

    def width(self):
        return self.b - self.a

    def distance(self, other):
        """Largest gap between the boundary positions on the common grid."""
        return float(max(np.max(np.abs(self.a - other.a)),
                         np.max(np.abs(self.b - other.b))))

    def as_data(self):
        return dict(times=self.times.tolist(), a=self.a.tolist(),
                    b=self.b.tolist())


def liquid_volume(snapshot, m):
    return integral_over(snapshot, (0.0, m), 'tau')


def eulerian_boundaries(history, times, m, a_o=0.0, droplet=None,
                        tau_bar=None):
    """Eulerian positions of the slab ends: a(t) = a_o + int v(s, 0-) and
    b(t) = b_o + int v(s, m+), with b_o - a_o the initial liquid volume.
    For the rigid model both ends move with the droplet velocity."""
    if droplet is not None:
        b_o = a_o + m * tau_bar
        drift = [droplet.velocity_integral(t) for t in times]
        return EulerianBoundaries(times, [a_o + d for d in drift],
                                  [b_o + d for d in drift])
    b_o = a_o + liquid_volume(history.snapshot(0.0), m)
    end = max(times)
    left = trace(history, 0.0, '-', end=end)
    right = trace(history, m, '+', end=end)
    return EulerianBoundaries(times,
                              [a_o + left.integral('v', 0.0, t)
                               for t in times],
                              [b_o + right.integral('v', 0.0, t)
                               for t in times])


def space_lipschitz(history, x1, x2, T):
    """Integral in time of |u(s, x2) - u(s, x1)| over |x2 - x1|."""
    return trace_distance(trace(history, x1, end=T), trace(history, x2, end=T),
                          fields=('tau', 'v'), t_end=T) / abs(x2 - x1)


def conservation_defect(s0, st, window):
    """Mismatch of the balance of tau and v over window = (a, b) whose
    ends stay in constant far-field states over [0, t]. Returns
    (tau defect, v defect)."""
    a, b = window
    t = st.time - s0.time
    d_tau = integral_over(st, window, 'tau') - integral_over(s0, window, 'tau')
    d_v = integral_over(st, window, 'v') - integral_over(s0, window, 'v')
    left, right = s0.sample(a), s0.sample(b)
    return (abs(d_tau - t * (right.v - left.v)),
            abs(d_v + t * (right.p - left.p)))


def liquid_momentum_residual(history, times, m):
    """Largest |int v(t) - int v(0) - int_0^t (p(s, 0+) - p(s, m-)) ds|
    over the liquid."""
    end = max(times)
    p0 = trace(history, 0.0, '+', end=end)
    pm = trace(history, m, '-', end=end)
    start = integral_over(history.snapshot(0.0), (0.0, m), 'v')
    worst = 0.0
    for t in times:
        momentum = integral_over(history.snapshot(t), (0.0, m), 'v') - start
        impulse = p0.integral('p', 0.0, t) - pm.integral('p', 0.0, t)
        worst = max(worst, abs(momentum - impulse))
    return worst


def loglog_slope(x, y):
    """
    >>> round(loglog_slope([10, 100, 1000], [1.0, 0.1, 0.01]), 9)
    -1.0
    """
    return float(np.polyfit(np.log(np.asarray(x, dtype=float)),
                            np.log(np.asarray(y, dtype=float)), 1)[0])


Trend = namedtuple('Trend', ['ok', 'increasing_steps', 'violating_steps'])


def monotone_trend(values, slack=config.TREND_SLACK,
                   floor=config.TREND_FLOOR):
    """
    Check that values decrease. A single step may grow, by at most
    `slack`; a step ending below `floor` never counts as growing.

    >>> monotone_trend([4.0, 2.0, 2.1, 1.0])
    Trend(ok=True, increasing_steps=[1], violating_steps=[])
    >>> monotone_trend([4.0, 5.0]).ok
    False
    >>> monotone_trend([1.0, 1.09, 1.18, 1.28])
    Trend(ok=False, increasing_steps=[0, 1, 2], violating_steps=[])
    """
    increasing = [k for k in range(len(values) - 1)
                  if values[k + 1] > values[k] and values[k + 1] > floor]
    violating = [k for k in increasing
                 if values[k + 1] > values[k] * (1.0 + slack)]
    return Trend(not violating and len(increasing) <= 1, increasing,
                 violating)


def reduction_ratio(values, floor=config.TREND_FLOOR):
    """Last value over the first, None when the first is already below
    floor."""
    if not values or values[0] <= floor:
        return None
    return values[-1] / values[0]


def _ratio_ok(ratio, limit):
    return limit is None or ratio is None or ratio < limit


def spread(values):
    """Half the range of values relative to its midpoint.

    >>> spread([0.9, 1.1])
    0.1
    >>> spread([0.0, 0.0])
    0.0
    """
    lo, hi = min(values), max(values)
    if hi <= 0:
        return 0.0
    return round((hi - lo) / (hi + lo), 15)


# --- sweep

TREND_METRICS = ['l1_v_liquid', 'l1_tau_liquid', 'trace_left', 'trace_right',
                 'weakstar', 'eulerian']


class LimitReference(object):
    """What the eta runs are compared with: the rigid model run and the
    quantities derived from it once."""

    def __init__(self, result, m, a_o, windows):
        self.result = result
        T = result.config.T
        self.final = result.history.snapshot(T)
        self.left = trace(result.history, 0.0, '-', end=T)
        self.right = trace(result.history, m, '+', end=T)
        self.pressures = (self.left, self.right)
        self.eulerian = eulerian_boundaries(
            result.history, result.config.output_times, m, a_o,
            droplet=result.droplet, tau_bar=result.config.tau_bar)
        self.newton = limit.newton_law_residual(result.droplet)
        self.windows = windows


def eta_metrics(result, reference, m, a_o):
    """Distances of one eta run to the rigid model."""
    cfg = result.config
    T = cfg.T
    history = result.history
    final = history.snapshot(T)
    left = trace(history, 0.0, '-', end=T)
    right = trace(history, m, '+', end=T)
    eulerian = eulerian_boundaries(history, cfg.output_times, m, a_o)
    x1, x2 = [m * f for f in config.LIPSCHITZ_POINTS]
    report = result.report
    upsilon0 = report.upsilon0 if report is not None else None
    lip = None
    if report is not None and len(cfg.output_times) > 1:
        lip = lipschitz_report(history, cfg.output_times, m, upsilon0,
                               result.diagnostics['max_sound_speed'],
                               report.weights.C, cfg.eta)
    return dict(
        eta=cfg.eta,
        l1_v_liquid=l1_distance(final, reference.final, (0.0, m), ('v',)),
        l1_tau_liquid=l1_distance(final, reference.final, (0.0, m),
                                  ('tau',)),
        trace_left=trace_distance(left, reference.left, t_end=T),
        trace_right=trace_distance(right, reference.right, t_end=T),
        weakstar=weakstar_pressure_residual(history, reference.pressures,
                                            reference.windows, m),
        weakstar_windows=weakstar_window_residuals(
            history, reference.pressures, reference.windows, m),
        eulerian=eulerian.distance(reference.eulerian),
        momentum=liquid_momentum_residual(history, cfg.output_times, m),
        space_lipschitz=space_lipschitz(history, x1, x2, T),
        upsilon0=upsilon0,
        liquid_tau_ratio=lip.liquid_tau_ratio if lip else None,
        lipschitz_ok=lip.ok if lip else None,
        max_fronts=result.diagnostics['max_live_fronts'],
        interactions=result.diagnostics['interactions'],
        violations=len(report.violations()) if report is not None else 0)


class SweepResult(object):
    def __init__(self, etas, per_eta, failures, reference, runtimes):
        self.etas = etas
        self.per_eta = per_eta
        self.failures = failures
        self.reference = reference
        self.runtimes = runtimes

    def completed(self):
        return [eta for eta in self.etas if eta in self.per_eta]

    def metric(self, name):
        return [self.per_eta[eta][name] for eta in self.completed()]

    def ratio_limits(self):
        """Largest last/first ratio per metric, applied only when the
        completed ladder spans two decades or more."""
        etas = self.completed()
        if len(etas) < 2 or etas[-1] < etas[0] * config.TREND_RATIO_SPAN:
            return {}
        return config.TREND_RATIO_LIMITS

    def trends(self, slack=config.TREND_SLACK):
        out = {}
        limits = self.ratio_limits()
        for name in TREND_METRICS:
            values = self.metric(name)
            trend = monotone_trend(values, slack)
            ratio = reduction_ratio(values)
            ratio_ok = _ratio_ok(ratio, limits.get(name))
            out[name] = dict(ok=trend.ok and ratio_ok,
                             increasing=trend.increasing_steps,
                             violating=trend.violating_steps,
                             last_over_first=ratio, ratio_ok=ratio_ok)
        windows = self.metric('weakstar_windows')
        if windows:
            bad = [k for k, series in enumerate(zip(*windows))
                   if not monotone_trend(series, slack).ok
                   or not _ratio_ok(reduction_ratio(series),
                                    limits.get('weakstar_windows'))]
            out['weakstar_windows'] = dict(ok=not bad, violating=bad)
        lemp = self.metric('space_lipschitz')
        if lemp:
            out['space_lipschitz'] = dict(
                ok=spread(lemp) <= config.LIPSCHITZ_SPREAD,
                spread=spread(lemp))
        ratios = self.metric('liquid_tau_ratio')
        etas = self.completed()
        if len(etas) > 1 and all(r for r in ratios):
            out['liquid_tau_slope'] = loglog_slope(etas, ratios)
        return out

    def ok(self):
        return not self.failures and all(
            t['ok'] for k, t in self.trends().items() if isinstance(t, dict))

    def summary(self):
        return dict(etas=self.etas, completed=self.completed(),
                    failures=dict((helpers.eta_label(k), v)
                                  for k, v in self.failures.items()),
                    metrics=dict((helpers.eta_label(k),
                                  dict((n, v) for n, v in m.items()
                                       if n != 'weakstar_windows'))
                                 for k, m in self.per_eta.items()),
                    trends=self.trends() if self.per_eta else {},
                    limit_newton_residual=self.reference.newton,
                    runtimes=dict((helpers.eta_label(k), v)
                                  for k, v in self.runtimes.items()))


def sweep(template, etas, datum, limit_config, limit_datum, workers=1,
          status_file=None, window_depth=config.DEFAULT_WINDOW_DEPTH,
          a_o=0.0, on_result=None):
    """Run the rigid model once and the two-phase model for every eta,
    then compare. A failed eta is recorded and the sweep goes on."""
    m = template.m
    etas = sorted(etas)
    if not datum.liquid.is_constant():
        raise ValueError("an eta sweep needs a constant liquid datum")
    _log.info("sweep over eta=%r with %d workers", etas, workers)
    reference = LimitReference(limit.run_limit(limit_config, limit_datum), m,
                               a_o, dyadic_windows(template.T, m,
                                                   window_depth))
    per_eta, runtimes = {}, {}
    lock = threading.Lock()

    def run_one(eta):
        start = time.time()
        result = engine.run(template.with_eta(eta), datum)
        metrics = eta_metrics(result, reference, m, a_o)
        if on_result is not None:
            on_result(eta, result)
        with lock:
            runtimes[eta] = time.time() - start
            per_eta[eta] = metrics
        return metrics

    runner = pool.SweepRunner(workers, status_file=status_file,
                              errors=(FrontsException, ValueError,
                                      ArithmeticError))
    failures = runner.run([pool.EtaJob(eta, run_one) for eta in etas])
    for eta, reason in sorted(failures.items()):
        _log.error("eta=%r failed: %s", eta, reason)
    return SweepResult(etas, per_eta, failures, reference, runtimes)
