"""
Glimm type functionals of a front tracking solution and the checks built
on them.

Upsilon weights the wave sizes by phase, side and family and adds H times
the interaction potential of each gas side. Its decrease at every
interaction is checked against the bound of the interaction case. Xi_x
adds to 4 Upsilon the variation of the gas pressure already seen on the
line z = x and the waves still heading towards it.
"""

import logging
from collections import namedtuple

import numpy as np

from droplet.fronts import config
from droplet.fronts import riemann
from droplet.fronts.pressure import LiquidLaw
from droplet.fronts.model import (
    GAS_LEFT, LIQUID, GAS_RIGHT, GAS_PHASES,
    LIQUID_INTERIOR, INTERFACE_LEFT, INTERFACE_RIGHT, GAS_SAME_FAMILY,
    GAS_DIFFERENT_FAMILY, TRANSMISSION, FROM_GAS)
from droplet.fronts.exc import DomainError, FrontsException, PropertyViolation


_log = logging.getLogger('droplet.fronts.functionals')

OUTSIDE_REGIME = 'outside-proven-regime'
INSIDE_REGIME = 'inside-proven-regime'


class GlimmWeights(object):
    def __init__(self, K1_gm, K2_gm, K1_gp, K2_gp, K_l, H, C):
        for name, value in (('K1_gm', K1_gm), ('K2_gm', K2_gm),
                            ('K1_gp', K1_gp), ('K2_gp', K2_gp),
                            ('K_l', K_l), ('H', H), ('C', C)):
            if not value > 0:
                raise ValueError("weight %s must be positive: %r"
                                 % (name, value))
        self.K1_gm = K1_gm
        self.K2_gm = K2_gm
        self.K1_gp = K1_gp
        self.K2_gp = K2_gp
        self.K_l = K_l
        self.H = H
        self.C = C

    @classmethod
    def from_constant(cls, C):
        """The weight table for interaction constant C: waves leaving the
        slab weigh 1, waves heading to it 4C."""
        return cls(K1_gm=1.0, K2_gm=4.0 * C, K1_gp=4.0 * C, K2_gp=1.0,
                   K_l=2.0, H=4.0 * (1.0 + 2.0 * C) * C, C=C)

    @property
    def delta(self):
        return min(1.0 / (2.0 * self.C), 1.0 / (2.0 * self.H))

    def gas_weight(self, phase, family):
        if phase == GAS_LEFT:
            return self.K1_gm if family == 1 else self.K2_gm
        return self.K1_gp if family == 1 else self.K2_gp

    def as_data(self):
        return dict(K1_gm=self.K1_gm, K2_gm=self.K2_gm, K1_gp=self.K1_gp,
                    K2_gp=self.K2_gp, K_l=self.K_l, H=self.H, C=self.C,
                    delta=self.delta)


class FunctionalSnapshot(object):
    FIELDS = ['Vgm', 'Qgm', 'Vl', 'Vgp', 'Qgp', 'Upsilon']

    def __init__(self, time, Vgm, Qgm, Vl, Vgp, Qgp, H):
        self.time = time
        self.Vgm = Vgm
        self.Qgm = Qgm
        self.Vl = Vl
        self.Vgp = Vgp
        self.Qgp = Qgp
        self.Upsilon = Vgm + H * Qgm + Vl + Vgp + H * Qgp

    def as_data(self):
        d = dict((name, getattr(self, name)) for name in self.FIELDS)
        d['time'] = self.time
        return d

    def __repr__(self):
        return 'FunctionalSnapshot(t=%r, Upsilon=%r)' % (self.time,
                                                          self.Upsilon)


def _exclusive_cumsum(a):
    return np.cumsum(a) - a


def interaction_potential(fronts):
    """Sum of |sigma_a sigma_b| over approaching pairs of a position
    sorted list of gas fronts: a 2-wave left of a 1-wave, or two waves of
    one family at least one of which is a shock.

    >>> from droplet.fronts.model import Front, SHOCK
    >>> f = lambda fam, s: Front(0, fam, SHOCK, 'gas-left', s, 0, 0, 0,
    ...                          None, None)
    >>> round(interaction_potential([f(2, -0.2), f(1, -0.1)]), 12)
    0.02
    >>> interaction_potential([f(1, -0.2), f(2, -0.1)])
    0.0
    """
    if len(fronts) < 2:
        return 0.0
    sig = np.abs(np.array([f.sigma for f in fronts], dtype=float))
    is1 = np.array([f.family == 1 for f in fronts])
    shock = np.array([f.is_shock for f in fronts])
    p1 = _exclusive_cumsum(sig * is1)
    p2 = _exclusive_cumsum(sig * ~is1)
    p1s = _exclusive_cumsum(sig * (is1 & shock))
    p2s = _exclusive_cumsum(sig * (~is1 & shock))
    same = np.where(is1, p1, p2)
    same_shock = np.where(is1, p1s, p2s)
    return float(np.sum(sig * (is1 * p2 + np.where(shock, same, same_shock))))


def upsilon(snapshot, w):
    gm, gp, liquid = [], [], []
    for f in snapshot.waves():
        if f.phase == GAS_LEFT:
            gm.append(f)
        elif f.phase == GAS_RIGHT:
            gp.append(f)
        else:
            liquid.append(f)
    Vgm = sum(w.gas_weight(GAS_LEFT, f.family) * abs(f.sigma) for f in gm)
    Vgp = sum(w.gas_weight(GAS_RIGHT, f.family) * abs(f.sigma) for f in gp)
    Vl = w.K_l * sum(abs(f.sigma) for f in liquid)
    return FunctionalSnapshot(snapshot.time, Vgm, interaction_potential(gm),
                              Vl, Vgp, interaction_potential(gp), w.H)


class DecreaseVerdict(object):
    """Outcome of the decrease check at one event. margin = bound - dU;
    ok when the margin is not below -tol."""

    def __init__(self, event, delta, bound, tol=config.DECREASE_TOL,
                 equality=False):
        self.event = event
        self.case = event.case
        self.delta = delta
        self.bound = bound
        self.equality = equality
        if equality:
            self.margin = -abs(delta)
        else:
            self.margin = bound - delta
        self.ok = self.margin >= -tol

    def as_data(self):
        return dict(kind='decrease', case=self.case, seq=self.event.seq,
                    time=self.event.time, delta=self.delta, bound=self.bound,
                    margin=self.margin, ok=self.ok,
                    event=self.event.as_data())

    def __repr__(self):
        return 'DecreaseVerdict(%s #%d dU=%r bound=%r ok=%s)' % (
            self.case, self.event.seq, self.delta, self.bound, self.ok)


def decrease_bound(event, w):
    """Required upper bound on the change of Upsilon across `event`, and
    whether the change must vanish."""
    case = event.case
    C = w.C
    if case in (LIQUID_INTERIOR, TRANSMISSION):
        return 0.0, True
    if case in (INTERFACE_LEFT, INTERFACE_RIGHT):
        if event.incoming_from == FROM_GAS:
            return -0.5 * C * abs(event.incoming[0].sigma), False
        family = 1 if case == INTERFACE_LEFT else 2
        return -0.5 * abs(event.outgoing_gas(family)), False
    if case in (GAS_SAME_FAMILY, GAS_DIFFERENT_FAMILY):
        s1, s2 = event.incoming[0].sigma, event.incoming[1].sigma
        return -C * abs(s1 * s2), False
    return None, False


def check_decrease(event, before, after, w, tol=config.DECREASE_TOL):
    """Verdict for one event, None for events no bound applies to."""
    bound, equality = decrease_bound(event, w)
    if bound is None:
        return None
    return DecreaseVerdict(event, after.Upsilon - before.Upsilon, bound, tol,
                           equality)


def heading_to_line(snapshot, x, exclude=None):
    """Sum of |sigma| over the gas waves of the phase containing x that
    still have to cross z = x: 2-waves on its left, 1-waves on its
    right."""
    if x < 0:
        phase = GAS_LEFT
    else:
        phase = GAS_RIGHT
    total = 0.0
    for f, z in zip(snapshot.fronts, snapshot.positions):
        if f.phase != phase or f.id == exclude:
            continue
        if (f.family == 2 and z < x) or (f.family == 1 and z > x):
            total += abs(f.sigma)
    return total


class XiTracker(object):
    """Incremental Xi_x along a run."""

    def __init__(self, x, m):
        if 0 <= x <= m:
            raise DomainError("measurement line %r inside the liquid [0, %r]"
                              % (x, m))
        self.x = x
        self.trace_tv = 0.0
        self.value = None

    def update(self, event, snapshot, upsilon_value):
        exclude = None
        if event is not None and event.case == TRANSMISSION \
                and event.position == self.x:
            self.trace_tv += abs(event.incoming[0].sigma)
            exclude = event.incoming[0].id
        self.value = self.trace_tv + heading_to_line(snapshot, self.x,
                                                     exclude) \
            + 4.0 * upsilon_value
        return self.value


XiVerdict = namedtuple('XiVerdict', ['x', 'seq', 'time', 'before', 'after',
                                     'ok'])


def xi(events, history, x, w, m):
    """Xi_x at t = 0 and after every event, as a list of (t, value)."""
    tracker = XiTracker(x, m)
    start = history.snapshot(0.0)
    values = [(0.0, tracker.update(None, start, upsilon(start, w).Upsilon))]
    for event in events:
        snap = history.snapshot(event.time)
        values.append((event.time,
                       tracker.update(event, snap, upsilon(snap, w).Upsilon)))
    return values


TV_FIELDS = ['tv_p_gas', 'tv_p_liquid', 'tv_tau_liquid', 'tv_v_liquid',
             'tv_u_gas', 'tv_p_gas_left', 'tv_p_gas_right']


def tv_measures(snapshot):
    tv = dict((name, 0.0) for name in TV_FIELDS)
    for f in snapshot.waves():
        dp = abs(f.right.p - f.left.p)
        dtau = abs(f.right.tau - f.left.tau)
        dv = abs(f.right.v - f.left.v)
        if f.phase == LIQUID:
            tv['tv_p_liquid'] += dp
            tv['tv_tau_liquid'] += dtau
            tv['tv_v_liquid'] += dv
        else:
            tv['tv_p_gas'] += dp
            tv['tv_u_gas'] += dtau + dv
            if f.phase == GAS_LEFT:
                tv['tv_p_gas_left'] += dp
            else:
                tv['tv_p_gas_right'] += dp
    return tv


def uniform_bounds(tv, eta, upsilon0, rel_tol=1e-9):
    """Liquid total variations against the initial functional:
    TV(p_l), eta^2 TV(tau_l) and eta TV(v_l) may not exceed Upsilon(0)."""
    limit = upsilon0 * (1.0 + rel_tol) + config.DECREASE_TOL
    scaled = dict(p_liquid=tv['tv_p_liquid'],
                  tau_liquid=eta ** 2 * tv['tv_tau_liquid'],
                  v_liquid=eta * tv['tv_v_liquid'])
    return dict((name, (value, value <= limit))
                for name, value in scaled.items())


BoundCheck = namedtuple('BoundCheck', ['time', 'name', 'value', 'limit',
                                       'ok'])


def regime_diagnostic(snapshot, w):
    """Gas variation per side against delta = min(1/2C, 1/2H)."""
    tv = tv_measures(snapshot)
    sides = dict(gas_left=tv['tv_p_gas_left'],
                 gas_right=tv['tv_p_gas_right'])
    flag = INSIDE_REGIME
    if max(sides.values()) > w.delta:
        flag = OUTSIDE_REGIME
        _log.warning("gas variation %r exceeds delta=%r: %s",
                     sides, w.delta, flag)
    return dict(flag=flag, delta=w.delta, **sides)


def liquid_initial_weight(eta, tv_tau, tv_v, K_l=2.0):
    """Upper bound on the liquid part of Upsilon(0+) created by the
    liquid jumps of the datum.

    >>> liquid_initial_weight(10.0, 0.01, 0.0)
    2.0
    """
    return K_l * (eta ** 2 * tv_tau + eta * tv_v)


# --- calibration of the interaction constant

class CalibrationResult(object):
    def __init__(self, constant, ratios, samples, safety, seed, etas):
        self.constant = constant
        self.ratios = ratios
        self.samples = samples
        self.safety = safety
        self.seed = seed
        self.etas = etas

    @property
    def max_ratio(self):
        return max(self.ratios.values())

    def as_data(self):
        return dict(constant=self.constant, ratios=self.ratios,
                    samples=self.samples, safety=self.safety, seed=self.seed,
                    etas=self.etas)


def _interior_ratios(gas, rng, random_state, random_size, samples):
    different, same = 0.0, 0.0
    for _ in range(samples):
        uL = random_state()
        s2, s1 = random_size(), random_size()
        try:
            uM = riemann.lax_curve_gas(uL, 2, s2, gas)
            uR = riemann.lax_curve_gas(uM, 1, s1, gas)
            o1, o2 = riemann.solve_riemann_gas(uL, uR, gas).sizes()
        except FrontsException:
            continue
        different = max(different,
                        (abs(o1 - s1) + abs(o2 - s2)) / abs(s1 * s2))
        family = 1 if rng.uniform() < 0.5 else 2
        s_a, s_b = -abs(random_size()), random_size()
        try:
            uM = riemann.lax_curve_gas(uL, family, s_a, gas)
            uR = riemann.lax_curve_gas(uM, family, s_b, gas)
            sizes = riemann.solve_riemann_gas(uL, uR, gas).sizes()
        except FrontsException:
            continue
        own, other = (sizes[0], sizes[1]) if family == 1 \
            else (sizes[1], sizes[0])
        same = max(same, (abs(own - (s_a + s_b)) + abs(other))
                   / abs(s_a * s_b))
    return different, same


def _interface_ratio(gas, eta, random_state, random_size, samples):
    worst = 0.0
    for _ in range(samples):
        u_far = random_state()
        s = random_size()
        try:
            # 2-wave from u_far reaching a matched interface at z=0
            u = riemann.lax_curve_gas(u_far, 2, s, gas)
            liq = LiquidLaw(u.p, 1.0, eta)
            u_liq = liq.state_at_pressure(u.p, u.v)
            sol = riemann.solve_interface_left(u_far, u_liq, gas, liq)
            worst = max(worst, max(abs(x) for x in sol.sizes()) / abs(s))
            # 1-wave from a matched interface at z=m out to u_beyond,
            # travelling back onto the interface
            u = random_state()
            u_beyond = riemann.lax_curve_gas(u, 1, s, gas)
            liq = LiquidLaw(u.p, 1.0, eta)
            u_liq = liq.state_at_pressure(u.p, u.v)
            sol = riemann.solve_interface_right(u_liq, u_beyond, gas, liq)
            worst = max(worst, max(abs(x) for x in sol.sizes()) / abs(s))
        except FrontsException:
            continue
    return worst


def calibrate_interaction_constant(gas, eta_values, centre,
                                   radius=config.CALIBRATION_RADIUS,
                                   samples=config.CALIBRATION_SAMPLES,
                                   seed=0, safety=config.CALIBRATION_SAFETY,
                                   max_size=config.CALIBRATION_MAX_SIZE):
    """Largest interaction ratio over random interactions near `centre`,
    times `safety`.

    Gas interior ratios compare the outgoing sizes with the incoming ones
    relative to |sigma' sigma''|; interface ratios compare the outgoing
    sizes with the size of an incoming gas wave.
    """
    c0 = gas.sound_speed(centre.tau)

    def sampler(rng):
        def random_state():
            p = centre.p * (1.0 + radius * rng.uniform(-1.0, 1.0))
            v = centre.v + radius * centre.p / c0 * rng.uniform(-1.0, 1.0)
            return gas.state_at_pressure(p, v)

        def random_size():
            size = max_size * centre.p * rng.uniform(1e-2, 1.0)
            return size if rng.uniform() < 0.5 else -size
        return random_state, random_size

    rng = np.random.default_rng(seed)
    ratios = {}
    ratios['gas-different-family'], ratios['gas-same-family'] = \
        _interior_ratios(gas, rng, *sampler(rng), samples=samples)
    # one stream per eta: a ratio depends on (seed, eta) only
    for eta in eta_values:
        eta_rng = np.random.default_rng([seed, int(round(eta * 1000))])
        ratios['interface-eta-%g' % eta] = _interface_ratio(
            gas, eta, *sampler(eta_rng), samples=samples)
    constant = safety * max(max(ratios.values()), 1.0)
    _log.info("interaction constant C=%r from ratios %r", constant, ratios)
    return CalibrationResult(constant, ratios, samples, safety, seed,
                             list(eta_values))


# --- report

class FunctionalReport(object):
    """Time series of the functionals along a run with every check that
    was made on them."""

    def __init__(self, weights, rows, verdicts, xi_verdicts, bound_checks,
                 regime, calibration=None, lines=()):
        self.weights = weights
        self.rows = rows
        self.verdicts = verdicts
        self.xi_verdicts = xi_verdicts
        self.bound_checks = bound_checks
        self.regime = regime
        self.calibration = calibration
        self.lines = list(lines)

    @property
    def upsilon0(self):
        return self.rows[0]['Upsilon']

    def columns(self):
        return (['t', 'seq', 'case'] + FunctionalSnapshot.FIELDS + TV_FIELDS
                + [xi_column(x) for x in self.lines])

    def series(self, name):
        return np.array([row[name] for row in self.rows], dtype=float)

    def upsilon_monotone(self, tol=config.DECREASE_TOL):
        u = self.series('Upsilon')
        return bool(np.all(np.diff(u) <= tol))

    def xi_monotone(self, x, tol=config.DECREASE_TOL):
        values = self.series(xi_column(x))
        return bool(np.all(np.diff(values) <= tol))

    def trace_tv_ratio(self, x):
        """TV of the gas pressure seen on z = x relative to Upsilon(0)."""
        final = self.rows[-1].get('trace_tv_%g' % x, 0.0)
        if self.upsilon0 == 0:
            return 0.0
        return final / self.upsilon0

    def violations(self):
        bad = [v for v in self.verdicts if not v.ok]
        bad += [v for v in self.xi_verdicts if not v.ok]
        bad += [b for b in self.bound_checks if not b.ok]
        return bad

    def check(self):
        """Raise PropertyViolation carrying every failed check."""
        bad = self.violations()
        if bad:
            raise PropertyViolation(bad[0], bad)

    def min_margin(self):
        if not self.verdicts:
            return None
        return min(v.margin for v in self.verdicts)

    def summary(self):
        return dict(weights=self.weights.as_data(), upsilon0=self.upsilon0,
                    rows=len(self.rows), checks=len(self.verdicts),
                    min_margin=self.min_margin(),
                    violations=len(self.violations()),
                    upsilon_monotone=self.upsilon_monotone(),
                    xi_monotone=dict(('%g' % x, self.xi_monotone(x))
                                     for x in self.lines),
                    trace_tv_ratio=dict(('%g' % x, self.trace_tv_ratio(x))
                                        for x in self.lines),
                    regime=self.regime,
                    calibration=self.calibration.as_data()
                    if self.calibration is not None else None)


def xi_column(x):
    return 'xi_%g' % x


def violation_as_data(v):
    if isinstance(v, DecreaseVerdict):
        return v.as_data()
    if isinstance(v, XiVerdict):
        return dict(kind='xi', **v._asdict())
    return dict(kind='uniform-bound', **v._asdict())


class ReportBuilder(object):
    """Listener of a WaveFrontTracker that evaluates the functionals
    after every event."""

    def __init__(self, weights, eta, m, lines=(), calibration=None,
                 liquid_tv=None):
        self.weights = weights
        self.eta = eta
        self.m = m
        self.lines = list(lines)
        self.calibration = calibration
        # (TV tau, TV v) of the liquid datum
        self.liquid_tv = liquid_tv
        self.xi = [XiTracker(x, m) for x in self.lines]
        self.rows = []
        self.verdicts = []
        self.xi_verdicts = []
        self.bound_checks = []
        self.current = None
        self.regime = None

    def _row(self, snapshot, f, event):
        row = dict(t=snapshot.time, seq=-1 if event is None else event.seq,
                   case='initial' if event is None else event.case)
        row.update(f.as_data())
        del row['time']
        row.update(tv_measures(snapshot))
        for tracker in self.xi:
            row[xi_column(tracker.x)] = tracker.value
            row['trace_tv_%g' % tracker.x] = tracker.trace_tv
        return row

    def start(self, snapshot):
        self.current = upsilon(snapshot, self.weights)
        for tracker in self.xi:
            tracker.update(None, snapshot, self.current.Upsilon)
        self.regime = regime_diagnostic(snapshot, self.weights)
        self.rows.append(self._row(snapshot, self.current, None))
        if self.liquid_tv is not None:
            self._check_liquid_start(snapshot)

    def _check_liquid_start(self, snapshot):
        """Liquid waves born inside the slab against the weight of the
        liquid jumps they came from."""
        w = self.weights
        value = w.K_l * sum(abs(f.sigma) for f in snapshot.waves(LIQUID)
                            if 0 < f.x0 < self.m)
        limit = liquid_initial_weight(self.eta, self.liquid_tv[0],
                                      self.liquid_tv[1], w.K_l)
        ok = value <= limit * (1.0 + 1e-9) + config.DECREASE_TOL
        self.bound_checks.append(BoundCheck(snapshot.time, 'liquid_initial',
                                            value, limit, ok))
        if not ok:
            _log.error("liquid waves at t=0 weigh %r, datum allows %r",
                       value, limit)

    def record(self, event, tracker):
        snapshot = tracker.snapshot(event.time)
        after = upsilon(snapshot, self.weights)
        verdict = check_decrease(event, self.current, after, self.weights)
        if verdict is not None:
            self.verdicts.append(verdict)
            if not verdict.ok:
                _log.error("decrease check failed: %r", verdict)
        for xt in self.xi:
            before = xt.value
            xt.update(event, snapshot, after.Upsilon)
            ok = xt.value <= before + config.DECREASE_TOL
            self.xi_verdicts.append(XiVerdict(xt.x, event.seq, event.time,
                                              before, xt.value, ok))
            if not ok:
                _log.error("Xi at x=%r increased from %r to %r at event #%d",
                           xt.x, before, xt.value, event.seq)
        self.current = after
        self.rows.append(self._row(snapshot, after, event))

    def output(self, snapshot):
        tv = tv_measures(snapshot)
        upsilon0 = self.rows[0]['Upsilon']
        for name, (value, ok) in sorted(
                uniform_bounds(tv, self.eta, upsilon0).items()):
            self.bound_checks.append(BoundCheck(snapshot.time, name, value,
                                                upsilon0, ok))

    def report(self, tracker=None):
        return FunctionalReport(self.weights, self.rows, self.verdicts,
                                self.xi_verdicts, self.bound_checks,
                                self.regime, self.calibration, self.lines)
