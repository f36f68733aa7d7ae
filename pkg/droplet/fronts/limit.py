"""
Incompressible limit: gas on both half-lines around a rigid droplet of
mass m whose velocity obeys m dv_l/dt = p_g(t, 0-) - p_g(t, m+).

The gas is tracked by the same machinery as the two-phase model, with the
liquid slab replaced by two phase boundaries carrying the droplet state.
The droplet velocity is piecewise constant. It is updated on a uniform
time grid and whenever a gas wave reaches a boundary, by integrating the
boundary pressure difference exactly; every update sends piston waves
into both gas sides so the gas moves with the droplet at 0- and m+.
"""

import math
import logging

from droplet.fronts import config as defaults
from droplet.fronts import riemann
from droplet.fronts.pressure import GasLaw, State
from droplet.fronts.engine import (WaveFrontTracker, RunResult, Datum,
                                   PiecewiseConstant)
from droplet.fronts.model import (InteractionEvent, interval_index,
                                  GAS_LEFT, GAS_RIGHT, INTERFACE_LEFT,
                                  INTERFACE_RIGHT, DROPLET_UPDATE, FROM_GAS)


_log = logging.getLogger('droplet.fronts.limit')

GRID = 'grid'
BOUNDARY_HIT = 'boundary'
INITIAL = 'initial'


class LimitConfig(object):
    def __init__(self, epsilon, T, m, droplet_velocity, tau_bar=1.0,
                 gas=None, output_times=None, measurement_lines=(),
                 ode_steps=defaults.DEFAULT_ODE_STEPS,
                 max_events=defaults.DEFAULT_MAX_EVENTS, seed=0):
        for name, value in (('epsilon', epsilon), ('T', T), ('m', m),
                            ('tau_bar', tau_bar)):
            if not value > 0:
                raise ValueError("%s must be positive: %r" % (name, value))
        if int(ode_steps) < 1:
            raise ValueError("ode_steps must be at least 1: %r" % ode_steps)
        self.epsilon = float(epsilon)
        self.T = float(T)
        self.m = float(m)
        self.droplet_velocity = float(droplet_velocity)
        self.tau_bar = float(tau_bar)
        self.gas = gas if gas is not None else GasLaw()
        if output_times is None:
            output_times = [0.0, self.T]
        self.output_times = sorted(set(float(t) for t in output_times))
        self.measurement_lines = sorted(float(x) for x in measurement_lines)
        self.ode_steps = int(ode_steps)
        self.max_events = int(max_events)
        self.seed = int(seed)
        # no liquid law and no functional checks in the rigid model
        self.eta = None
        self.liquid = None
        self.check = False

    @property
    def dt_ode(self):
        return self.T / self.ode_steps

    def grid_time(self, k):
        if k == self.ode_steps:
            return self.T
        return k * self.dt_ode

    def with_ode_steps(self, ode_steps):
        other = LimitConfig.__new__(LimitConfig)
        other.__dict__.update(self.__dict__)
        other.ode_steps = int(ode_steps)
        return other

    @classmethod
    def from_data(cls, data):
        gas_data = data.get('gas', {})
        gas = GasLaw(gas_data.get('K', defaults.DEFAULT_GAS_K),
                     gas_data.get('gamma', defaults.DEFAULT_GAS_GAMMA))
        liquid = data['liquid']
        liquid_datum = PiecewiseConstant.from_data(data['datum']['liquid'])
        tau_bar, v_bar = liquid_datum.states[0]
        return cls(epsilon=data['epsilon'], T=data['T'], m=data['m'],
                   droplet_velocity=data.get('droplet_velocity', v_bar),
                   tau_bar=liquid.get('tau_bar', tau_bar), gas=gas,
                   output_times=data.get('output_times'),
                   measurement_lines=data.get('measurement_lines', ()),
                   ode_steps=data.get('ode_steps',
                                      defaults.DEFAULT_ODE_STEPS),
                   max_events=data.get('max_events',
                                       defaults.DEFAULT_MAX_EVENTS),
                   seed=data.get('seed', 0))

    def as_data(self):
        return dict(epsilon=self.epsilon, T=self.T, m=self.m,
                    droplet_velocity=self.droplet_velocity,
                    tau_bar=self.tau_bar,
                    gas=dict(K=self.gas.K, gamma=self.gas.gamma),
                    output_times=self.output_times,
                    measurement_lines=self.measurement_lines,
                    ode_steps=self.ode_steps, max_events=self.max_events)


class DropletState(object):
    __slots__ = ('time', 'v_l', 'impulse', 'reason', 'dp')

    def __init__(self, time, v_l, impulse, reason, dp):
        self.time = time
        self.v_l = v_l
        self.impulse = impulse
        self.reason = reason
        # p_g(0-) - p_g(m+) in force from this update to the next one
        self.dp = dp

    def as_data(self):
        return dict(t=self.time, v_l=self.v_l, impulse=self.impulse,
                    reason=self.reason, dp=self.dp)


class DropletHistory(object):
    """Log of droplet updates; v_l is constant between two of them."""

    def __init__(self, m, v_bar):
        self.m = m
        self.v_bar = v_bar
        self.updates = []
        self.end_time = 0.0

    def record(self, state):
        self.updates.append(state)
        self.end_time = max(self.end_time, state.time)

    def times(self):
        return [u.time for u in self.updates]

    def _at(self, t):
        return self.updates[interval_index(self.times(), t)]

    def velocity(self, t):
        return self._at(t).v_l

    def impulse(self, t):
        """Exact integral of the boundary pressure difference on [0, t]."""
        u = self._at(t)
        return u.impulse + u.dp * (t - u.time)

    def velocity_integral(self, t):
        """Exact integral of v_l on [0, t]."""
        total = 0.0
        for k, u in enumerate(self.updates):
            if u.time >= t:
                break
            end = self.updates[k + 1].time if k + 1 < len(self.updates) \
                else t
            total += u.v_l * (min(end, t) - u.time)
        return total

    def intervals(self):
        """(start, end, state) for every constant piece up to end_time."""
        out = []
        for k, u in enumerate(self.updates):
            end = self.updates[k + 1].time if k + 1 < len(self.updates) \
                else self.end_time
            out.append((u.time, end, u))
        return out

    def __len__(self):
        return len(self.updates)


class CoupledSnapshot(object):
    """Gas fronts and droplet state at one time."""

    def __init__(self, snapshot, droplet):
        self.snapshot = snapshot
        self.droplet = droplet
        self.time = snapshot.time

    @property
    def p_left(self):
        return self.snapshot.boundaries()[0].left.p

    @property
    def p_right(self):
        return self.snapshot.boundaries()[-1].right.p

    def gas_fronts(self, side):
        return self.snapshot.waves(side)


class LimitResult(RunResult):
    def __init__(self, config, snapshots, events, history, diagnostics,
                 droplet):
        RunResult.__init__(self, config, snapshots, events, None, history,
                           diagnostics)
        self.droplet = droplet
        self.coupled = [CoupledSnapshot(s, droplet._at(s.time))
                        for s in snapshots]


class LimitTracker(WaveFrontTracker):
    """Front tracking of the gas with a rigid droplet on [0, m]."""

    def __init__(self, config, datum):
        self.droplet = DropletHistory(config.m, config.droplet_velocity)
        self.updates = 0
        self.max_velocity_mismatch = 0.0
        self._grid_k = 1
        self._b0 = None
        self._bm = None
        WaveFrontTracker.__init__(self, config, datum)

    def droplet_state(self, v):
        # a rigid droplet has no pressure of its own
        return State(self.config.tau_bar, v, math.nan)

    def _initial_fronts(self, datum):
        gas = self.gas
        v = self.config.droplet_velocity
        gl = [gas.state(tau, u) for tau, u in datum.gas_left.states]
        gr = [gas.state(tau, u) for tau, u in datum.gas_right.states]
        fronts = []
        for z, uL, uR in zip(datum.gas_left.jumps, gl, gl[1:]):
            sol = riemann.solve_riemann_gas(uL, uR, gas)
            fronts += self._wave_fronts(sol.left_wave, z, GAS_LEFT, True)
            fronts += self._wave_fronts(sol.right_wave, z, GAS_LEFT, True)
        fronts += self._droplet_fronts(gl[-1], gr[0], v, split=True)
        for z, uL, uR in zip(datum.gas_right.jumps, gr, gr[1:]):
            sol = riemann.solve_riemann_gas(uL, uR, gas)
            fronts += self._wave_fronts(sol.left_wave, z, GAS_RIGHT, True)
            fronts += self._wave_fronts(sol.right_wave, z, GAS_RIGHT, True)
        dp = self._b0.left.p - self._bm.right.p
        self.droplet.record(DropletState(0.0, v, 0.0, INITIAL, dp))
        return fronts

    def _droplet_fronts(self, u_left, u_right, v, split=False):
        """Piston waves at both boundaries for droplet velocity v, with
        the new boundary fronts in between."""
        left = riemann.solve_piston_left(u_left, v, self.gas)
        right = riemann.solve_piston_right(v, u_right, self.gas)
        droplet = self.droplet_state(v)
        self._b0 = self._boundary_front(0.0, left.middle_left, droplet)
        self._bm = self._boundary_front(self.m, droplet, right.middle_right)
        for side in (self._b0.left, self._bm.right):
            self.max_velocity_mismatch = max(self.max_velocity_mismatch,
                                             abs(side.v - v))
        return (self._wave_fronts(left.left_wave, 0.0, GAS_LEFT, split)
                + [self._b0, self._bm]
                + self._wave_fronts(right.right_wave, self.m, GAS_RIGHT,
                                    split))

    def _report_builder(self):
        return None

    def speed_bound(self):
        return self.max_sound_speed

    def _next_grid_time(self):
        if self._grid_k > self.config.ode_steps:
            return None
        return self.config.grid_time(self._grid_k)

    def next_event_time(self):
        t_wave = WaveFrontTracker.next_event_time(self)
        t_grid = self._next_grid_time()
        if t_grid is None:
            return t_wave
        if t_wave is None:
            return t_grid
        return min(t_wave, t_grid)

    def step_to_next_event(self):
        t_wave = WaveFrontTracker.next_event_time(self)
        t_grid = self._next_grid_time()
        if t_grid is not None and (t_wave is None or t_grid < t_wave):
            self._log_transmissions(self.time, t_grid)
            self.time = max(t_grid, self.time)
            self._grid_k += 1
            event = self._update(GRID)
            self._emit(event)
            return self.snapshot(), event
        return WaveFrontTracker.step_to_next_event(self)

    def _interact(self, a, b):
        if a.is_boundary and b.is_boundary:
            raise AssertionError("phase boundaries do not move")
        if a.is_boundary or b.is_boundary:
            return self._update(BOUNDARY_HIT, a, b)
        return WaveFrontTracker._interact(self, a, b)

    def _update(self, reason, a=None, b=None):
        """Integrate the droplet up to now and re-impose v_g = v_l on both
        sides. (a, b) is the wave-boundary pair that forced the update."""
        t = self.time
        b0, bm = self._b0, self._bm
        last = self.droplet.updates[-1]
        impulse = last.impulse + last.dp * (t - last.time)
        v = self.droplet.v_bar + impulse / self.m
        old = [b0, bm]
        u_left, u_right = b0.left, bm.right
        incoming = []
        case, x = DROPLET_UPDATE, 0.5 * self.m
        if a is not None:
            if b is b0:
                old = [a, b0, bm]
                u_left = a.left
                incoming = [a.record()]
                case, x = INTERFACE_LEFT, 0.0
            else:
                old = [b0, bm, b]
                u_right = b.right
                incoming = [b.record()]
                case, x = INTERFACE_RIGHT, self.m
        new = self._droplet_fronts(u_left, u_right, v)
        new = self._replace(old, new)
        self.updates += 1
        dp = self._b0.left.p - self._bm.right.p
        self.droplet.record(DropletState(t, v, impulse, reason, dp))
        outgoing = [f.record() for f in new if not f.is_boundary]
        return InteractionEvent(self._next_seq(), t, x, case, incoming,
                                outgoing, FROM_GAS if incoming else None)

    def run(self):
        result = WaveFrontTracker.run(self)
        self.droplet.end_time = self.config.T
        diagnostics = result.diagnostics
        diagnostics.update(droplet_updates=self.updates,
                           max_velocity_mismatch=self.max_velocity_mismatch)
        _log.info("limit run finished: %d droplet updates, final v_l=%r",
                  self.updates, self.droplet.updates[-1].v_l)
        return LimitResult(self.config, result.snapshots, result.events,
                           result.history, diagnostics, self.droplet)


def run_limit(config, datum):
    return LimitTracker(config, datum).run()


def limit_datum(datum, config):
    """Datum of the rigid model: the gas parts of `datum` around a
    constant droplet."""
    return Datum(datum.gas_left,
                 PiecewiseConstant.constant(config.tau_bar,
                                            config.droplet_velocity),
                 datum.gas_right)


def newton_law_residual(history, times=None):
    """Largest |m (v_l(t) - v_bar) - impulse(t)|.

    With `times` the residual is evaluated there; without, the supremum
    over the whole run, which on each constant piece of v_l is reached at
    its end.
    """
    m, v_bar = history.m, history.v_bar
    if times is not None:
        worst = 0.0
        for t in times:
            worst = max(worst, abs(m * (history.velocity(t) - v_bar)
                                   - history.impulse(t)))
        return worst
    worst = 0.0
    for start, end, u in history.intervals():
        drift = abs(m * (u.v_l - v_bar) - u.impulse) \
            + abs(u.dp) * (end - start)
        worst = max(worst, drift)
    return worst
