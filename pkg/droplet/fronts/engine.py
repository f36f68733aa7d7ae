"""
Epsilon-approximate wave front tracking for gas | liquid slab [0, m] | gas
in Lagrangian coordinates.

The live fronts form a doubly linked list ordered by position. Only
neighbours can collide first, so the candidate collisions of neighbour
pairs are kept in a binary heap; entries whose fronts died since they were
pushed are discarded when they reach the top. Every front ever created is
kept in a FrontHistory, which is what snapshots, traces and window
integrals are rebuilt from once the run is over.
"""

import math
import heapq
import logging

from droplet.fronts import config as defaults
from droplet.fronts import riemann
from droplet.fronts import functionals
from droplet.fronts.pressure import GasLaw, LiquidLaw
from droplet.fronts.model import (
    Front, Snapshot, InteractionEvent, FrontHistory,
    GAS_LEFT, LIQUID, GAS_RIGHT, BOUNDARY, GAS_PHASES,
    SHOCK, FAN_JUMP, PHASE_BOUNDARY, LINEAR,
    LIQUID_INTERIOR, INTERFACE_LEFT, INTERFACE_RIGHT, GAS_SAME_FAMILY,
    GAS_DIFFERENT_FAMILY, TRANSMISSION, FROM_GAS, FROM_LIQUID)
from droplet.fronts.exc import AccumulationSuspected


_log = logging.getLogger('droplet.fronts.engine')


PHASE_RANGES = {
    GAS_LEFT: (-math.inf, 0.0),
    LIQUID: (0.0, None),
    GAS_RIGHT: (None, math.inf),
}


class RunConfig(object):
    """Parameters of one front tracking run."""

    def __init__(self, epsilon, eta, T, m, gas=None, p_bar=1.0, tau_bar=1.0,
                 output_times=None, measurement_lines=(),
                 max_events=defaults.DEFAULT_MAX_EVENTS,
                 interaction_constant=None,
                 calibration_samples=defaults.CALIBRATION_SAMPLES,
                 calibration_safety=defaults.CALIBRATION_SAFETY,
                 calibration_radius=defaults.CALIBRATION_RADIUS,
                 seed=0, check=True):
        for name, value in (('epsilon', epsilon), ('eta', eta), ('T', T),
                            ('m', m)):
            if not value > 0:
                raise ValueError("%s must be positive: %r" % (name, value))
        self.epsilon = float(epsilon)
        self.eta = float(eta)
        self.T = float(T)
        self.m = float(m)
        self.gas = gas if gas is not None else GasLaw()
        self.liquid = LiquidLaw(p_bar, tau_bar, eta)
        if output_times is None:
            output_times = [0.0, self.T]
        self.output_times = sorted(set(float(t) for t in output_times))
        for t in self.output_times:
            if not 0 <= t <= self.T:
                raise ValueError("output time %r outside [0, %r]" % (t, T))
        self.measurement_lines = sorted(float(x) for x in measurement_lines)
        for x in self.measurement_lines:
            if 0 <= x <= self.m:
                raise ValueError("measurement line %r lies in the liquid "
                                 "[0, %r]" % (x, self.m))
        if int(max_events) < 1:
            raise ValueError("max_events must be at least 1: %r" % max_events)
        self.max_events = int(max_events)
        if interaction_constant is not None and not interaction_constant > 0:
            raise ValueError("interaction constant must be positive: %r"
                             % interaction_constant)
        self.interaction_constant = interaction_constant
        self.calibration_samples = int(calibration_samples)
        self.calibration_safety = float(calibration_safety)
        self.calibration_radius = float(calibration_radius)
        self.seed = int(seed)
        self.check = check

    @property
    def p_bar(self):
        return self.liquid.p_bar

    @property
    def tau_bar(self):
        return self.liquid.tau_bar

    def with_eta(self, eta):
        other = RunConfig.__new__(RunConfig)
        other.__dict__.update(self.__dict__)
        if not eta > 0:
            raise ValueError("eta must be positive: %r" % eta)
        other.eta = float(eta)
        other.liquid = self.liquid.with_eta(eta)
        return other

    @classmethod
    def from_data(cls, data, eta=None):
        gas_data = data.get('gas', {})
        gas = GasLaw(gas_data.get('K', defaults.DEFAULT_GAS_K),
                     gas_data.get('gamma', defaults.DEFAULT_GAS_GAMMA))
        liquid = data['liquid']
        if eta is None:
            if 'eta' in liquid:
                eta = liquid['eta']
            else:
                eta = liquid['etas'][0]
        calibration = data.get('calibration', {})
        return cls(epsilon=data['epsilon'], eta=eta, T=data['T'], m=data['m'],
                   gas=gas, p_bar=liquid.get('p_bar', 1.0),
                   tau_bar=liquid.get('tau_bar', 1.0),
                   output_times=data.get('output_times'),
                   measurement_lines=data.get('measurement_lines', ()),
                   max_events=data.get('max_events',
                                       defaults.DEFAULT_MAX_EVENTS),
                   interaction_constant=data.get('interaction_constant'),
                   calibration_samples=calibration.get(
                       'samples', defaults.CALIBRATION_SAMPLES),
                   calibration_safety=calibration.get(
                       'safety', defaults.CALIBRATION_SAFETY),
                   calibration_radius=calibration.get(
                       'radius', defaults.CALIBRATION_RADIUS),
                   seed=data.get('seed', 0))

    def as_data(self):
        return dict(epsilon=self.epsilon, eta=self.eta, T=self.T, m=self.m,
                    gas=dict(K=self.gas.K, gamma=self.gas.gamma),
                    liquid=dict(p_bar=self.p_bar, tau_bar=self.tau_bar),
                    output_times=self.output_times,
                    measurement_lines=self.measurement_lines,
                    max_events=self.max_events,
                    interaction_constant=self.interaction_constant,
                    seed=self.seed)


class PiecewiseConstant(object):
    """(tau, v) values separated by jump positions; len(states) is
    len(jumps) + 1."""

    def __init__(self, jumps, states):
        self.jumps = [float(z) for z in jumps]
        self.states = [(float(tau), float(v)) for tau, v in states]
        if len(self.states) != len(self.jumps) + 1:
            raise ValueError("%d jumps need %d states, got %d"
                             % (len(self.jumps), len(self.jumps) + 1,
                                len(self.states)))
        for z1, z2 in zip(self.jumps, self.jumps[1:]):
            if not z1 < z2:
                raise ValueError("jump positions must be strictly "
                                 "increasing: %r, %r" % (z1, z2))

    @classmethod
    def constant(cls, tau, v):
        return cls([], [(tau, v)])

    @classmethod
    def from_data(cls, data):
        if isinstance(data, (list, tuple)):
            return cls([], [data])
        return cls(data.get('jumps', []), data['states'])

    def is_constant(self):
        return all(s == self.states[0] for s in self.states)

    def total_variation(self):
        """(TV tau, TV v) across the jumps."""
        pairs = list(zip(self.states, self.states[1:]))
        return (sum(abs(b[0] - a[0]) for a, b in pairs),
                sum(abs(b[1] - a[1]) for a, b in pairs))

    def as_data(self):
        return dict(jumps=self.jumps, states=[list(s) for s in self.states])


class Datum(object):
    """Initial data: gas on z < 0, liquid on [0, m], gas on z > m."""

    def __init__(self, gas_left, liquid, gas_right):
        self.gas_left = gas_left
        self.liquid = liquid
        self.gas_right = gas_right

    @classmethod
    def from_data(cls, data):
        return cls(PiecewiseConstant.from_data(data['gas_left']),
                   PiecewiseConstant.from_data(data['liquid']),
                   PiecewiseConstant.from_data(data['gas_right']))

    def validate(self, m):
        if self.gas_left.jumps and not self.gas_left.jumps[-1] < 0:
            raise ValueError("left gas jumps must lie in z < 0")
        if self.liquid.jumps and not (0 < self.liquid.jumps[0]
                                      and self.liquid.jumps[-1] < m):
            raise ValueError("liquid jumps must lie in ]0, %r[" % m)
        if self.gas_right.jumps and not self.gas_right.jumps[0] > m:
            raise ValueError("right gas jumps must lie in z > %r" % m)

    def states(self, gas, liquid):
        return ([gas.state(tau, v) for tau, v in self.gas_left.states],
                [liquid.state(tau, v) for tau, v in self.liquid.states],
                [gas.state(tau, v) for tau, v in self.gas_right.states])

    def as_data(self):
        return dict(gas_left=self.gas_left.as_data(),
                    liquid=self.liquid.as_data(),
                    gas_right=self.gas_right.as_data())


class RunResult(object):
    def __init__(self, config, snapshots, events, report, history,
                 diagnostics):
        self.config = config
        self.snapshots = snapshots
        self.events = events
        self.report = report
        self.history = history
        self.diagnostics = diagnostics

    def interactions(self):
        return [e for e in self.events if e.case != TRANSMISSION]

    def snapshot_at(self, t):
        for s in self.snapshots:
            if s.time == t:
                return s
        return self.history.snapshot(t)


class WaveFrontTracker(object):
    """Event driven evolution of a front list."""

    def __init__(self, config, datum):
        self.config = config
        self.gas = config.gas
        self.liquid = config.liquid
        self.m = config.m
        self.time = 0.0
        self.history = FrontHistory()
        self.events = []
        self.interactions = 0
        self.transmissions = 0
        self.listeners = []
        self.inconsistencies = []
        self.max_speed = 0.0
        self.max_sound_speed = 0.0
        self.max_live_fronts = 0
        self._live = {}
        self._left = {}
        self._right = {}
        self._head = None
        self._heap = []
        self._push_seq = 0
        self._next_id = 0
        self._pending = None
        datum.validate(self.m)
        self.datum = datum
        self._link_initial(self._initial_fronts(datum))

    # --- front creation

    def _new_front(self, family, kind, phase, sigma, speed, x0, left, right):
        f = Front(self._next_id, family, kind, phase, sigma, speed, x0,
                  self.time, left, right)
        self._next_id += 1
        self.history.add(f)
        self.max_speed = max(self.max_speed, abs(speed))
        if phase in GAS_PHASES:
            self.max_sound_speed = max(self.max_sound_speed,
                                       self.gas.sound_speed(left.tau),
                                       self.gas.sound_speed(right.tau))
        return f

    def _boundary_front(self, x, left, right):
        return self._new_front(0, PHASE_BOUNDARY, BOUNDARY, 0.0, 0.0, x,
                               left, right)

    def _wave_fronts(self, wave, x, phase, split=False):
        if wave is None or wave.is_null():
            return []
        if wave.kind == riemann.LINEAR:
            return [self._new_front(wave.family, LINEAR, phase, wave.sigma,
                                    wave.speed, x, wave.left, wave.right)]
        if wave.kind == riemann.SHOCK:
            return [self._new_front(wave.family, SHOCK, phase, wave.sigma,
                                    wave.speed, x, wave.left, wave.right)]
        n = defaults.fan_jump_count(wave.sigma, self.config.epsilon) \
            if split else 1
        sub = wave.sigma / n
        states = [wave.left]
        for _ in range(n - 1):
            states.append(riemann.lax_curve_gas(states[-1], wave.family, sub,
                                                self.gas))
        states.append(wave.right)
        return [self._new_front(
                    wave.family, FAN_JUMP, phase, sub,
                    riemann.characteristic_speed(self.gas, wave.family,
                                                 states[k + 1]),
                    x, states[k], states[k + 1])
                for k in range(n)]

    def _initial_fronts(self, datum):
        gas, liq = self.gas, self.liquid
        gl, lq, gr = datum.states(gas, liq)
        fronts = []
        for z, uL, uR in zip(datum.gas_left.jumps, gl, gl[1:]):
            sol = riemann.solve_riemann_gas(uL, uR, gas)
            fronts += self._wave_fronts(sol.left_wave, z, GAS_LEFT, True)
            fronts += self._wave_fronts(sol.right_wave, z, GAS_LEFT, True)
        fronts += self._initial_interface_left(gl[-1], lq[0])
        for z, uL, uR in zip(datum.liquid.jumps, lq, lq[1:]):
            sol = riemann.solve_riemann_liquid(uL, uR, liq)
            fronts += self._wave_fronts(sol.left_wave, z, LIQUID)
            fronts += self._wave_fronts(sol.right_wave, z, LIQUID)
        fronts += self._initial_interface_right(lq[-1], gr[0])
        for z, uL, uR in zip(datum.gas_right.jumps, gr, gr[1:]):
            sol = riemann.solve_riemann_gas(uL, uR, gas)
            fronts += self._wave_fronts(sol.left_wave, z, GAS_RIGHT, True)
            fronts += self._wave_fronts(sol.right_wave, z, GAS_RIGHT, True)
        _log.info("initialized %d fronts (eta=%r, epsilon=%r)", len(fronts),
                  self.config.eta, self.config.epsilon)
        return fronts

    def _initial_interface_left(self, u_gas, u_liq):
        sol = riemann.solve_interface_left(u_gas, u_liq, self.gas,
                                           self.liquid)
        return (self._wave_fronts(sol.left_wave, 0.0, GAS_LEFT, True)
                + [self._boundary_front(0.0, sol.middle_left,
                                        sol.middle_right)]
                + self._wave_fronts(sol.right_wave, 0.0, LIQUID))

    def _initial_interface_right(self, u_liq, u_gas):
        sol = riemann.solve_interface_right(u_liq, u_gas, self.gas,
                                            self.liquid)
        return (self._wave_fronts(sol.left_wave, self.m, LIQUID)
                + [self._boundary_front(self.m, sol.middle_left,
                                        sol.middle_right)]
                + self._wave_fronts(sol.right_wave, self.m, GAS_RIGHT, True))

    # --- linked list and collision queue

    def _link(self, a_id, b_id):
        if a_id is None:
            self._head = b_id
        else:
            self._right[a_id] = b_id
        if b_id is not None:
            self._left[b_id] = a_id

    def _link_initial(self, fronts):
        ids = [None]
        for f in fronts:
            self._live[f.id] = f
            ids.append(f.id)
        ids.append(None)
        self._head = None
        for a_id, b_id in zip(ids, ids[1:]):
            self._link(a_id, b_id)
        for a, b in zip(fronts, fronts[1:]):
            self._push(a, b)
        self.max_live_fronts = len(fronts)

    def fronts(self):
        f_id = self._head
        while f_id is not None:
            yield self._live[f_id]
            f_id = self._right[f_id]

    def collision_time(self, a, b):
        """Time at which a (left) reaches b (right), None if they never
        meet."""
        ds = a.speed - b.speed
        if ds <= defaults.TIME_GUARD * max(abs(a.speed), abs(b.speed)):
            return None
        t = (b.x0 - a.x0 - b.speed * b.t0 + a.speed * a.t0) / ds
        return max(t, self.time)

    def _push(self, a, b):
        t = self.collision_time(a, b)
        if t is None:
            return
        heapq.heappush(self._heap, (t, a.position(t), self._push_seq,
                                    a.id, b.id))
        self._push_seq += 1

    def _valid(self, entry):
        a_id, b_id = entry[3], entry[4]
        return a_id in self._live and self._right.get(a_id) == b_id

    def _select_next(self):
        if self._pending is not None:
            return self._pending
        heap = self._heap
        while heap and not self._valid(heap[0]):
            heapq.heappop(heap)
        if not heap:
            return None
        first = heapq.heappop(heap)
        guard = defaults.TIME_GUARD * max(1.0, abs(first[0]))
        ties = [first]
        while heap and heap[0][0] <= first[0] + guard:
            entry = heapq.heappop(heap)
            if self._valid(entry):
                ties.append(entry)
        ties.sort(key=lambda e: (e[1], e[2]))
        for entry in ties[1:]:
            heapq.heappush(heap, entry)
        self._pending = ties[0]
        return self._pending

    def next_event_time(self):
        entry = self._select_next()
        if entry is None:
            return None
        return max(entry[0], self.time)

    # --- events

    def _emit(self, event):
        self.events.append(event)
        for listener in self.listeners:
            listener(event, self)

    def _next_seq(self):
        return len(self.events)

    def _log_transmissions(self, t_from, t_to):
        lines = self.config.measurement_lines
        if not lines or not t_to > t_from:
            return
        found = []
        for f in self.fronts():
            if f.phase not in GAS_PHASES:
                continue
            p_old, p_new = f.position(t_from), f.position(t_to)
            for x in lines:
                if p_old < x <= p_new or p_new <= x < p_old:
                    tc = f.t0 + (x - f.x0) / f.speed
                    found.append((min(max(tc, t_from), t_to), x, f))
        found.sort(key=lambda e: (e[0], e[1], e[2].id))
        for tc, x, f in found:
            self.transmissions += 1
            self._emit(InteractionEvent(self._next_seq(), tc, x, TRANSMISSION,
                                        [f.record()], [f.record()]))

    def step_to_next_event(self):
        """Advance to the earliest collision and resolve it. Returns
        (snapshot, event), or None when no collision is left."""
        entry = self._select_next()
        if entry is None:
            return None
        self._pending = None
        t = max(entry[0], self.time)
        self._log_transmissions(self.time, t)
        self.time = t
        a, b = self._live[entry[3]], self._live[entry[4]]
        event = self._interact(a, b)
        self.interactions += 1
        _log.debug("%r", event)
        self._emit(event)
        return self.snapshot(), event

    def _interact(self, a, b):
        t = self.time
        if a.is_boundary or b.is_boundary:
            case, incoming_from, new = self._resolve_interface(a, b)
            x = a.x0 if a.is_boundary else b.x0
        elif a.phase == LIQUID:
            sol = riemann.solve_riemann_liquid(a.left, b.right, self.liquid)
            case, incoming_from = LIQUID_INTERIOR, None
            x = 0.5 * (a.position(t) + b.position(t))
            new = (self._wave_fronts(sol.left_wave, x, LIQUID)
                   + self._wave_fronts(sol.right_wave, x, LIQUID))
        else:
            sol = riemann.solve_riemann_gas(a.left, b.right, self.gas)
            case = GAS_SAME_FAMILY if a.family == b.family \
                else GAS_DIFFERENT_FAMILY
            incoming_from = None
            x = 0.5 * (a.position(t) + b.position(t))
            new = (self._wave_fronts(sol.left_wave, x, a.phase)
                   + self._wave_fronts(sol.right_wave, x, a.phase))
        incoming = [f.record() for f in (a, b) if not f.is_boundary]
        new = self._replace([a, b], new)
        outgoing = [f.record() for f in new if not f.is_boundary]
        return InteractionEvent(self._next_seq(), t, x, case, incoming,
                                outgoing, incoming_from)

    def _resolve_interface(self, a, b):
        """Junction problem for a wave meeting a phase boundary. Returns
        (case, incoming_from, outgoing fronts)."""
        boundary = a if a.is_boundary else b
        if boundary.x0 == 0.0:
            sol = riemann.solve_interface_left(a.left, b.right, self.gas,
                                               self.liquid)
            incoming_from = FROM_GAS if b.is_boundary else FROM_LIQUID
            new = (self._wave_fronts(sol.left_wave, 0.0, GAS_LEFT)
                   + [self._boundary_front(0.0, sol.middle_left,
                                           sol.middle_right)]
                   + self._wave_fronts(sol.right_wave, 0.0, LIQUID))
            return INTERFACE_LEFT, incoming_from, new
        sol = riemann.solve_interface_right(a.left, b.right, self.gas,
                                            self.liquid)
        incoming_from = FROM_GAS if a.is_boundary else FROM_LIQUID
        new = (self._wave_fronts(sol.left_wave, self.m, LIQUID)
               + [self._boundary_front(self.m, sol.middle_left,
                                       sol.middle_right)]
               + self._wave_fronts(sol.right_wave, self.m, GAS_RIGHT))
        return INTERFACE_RIGHT, incoming_from, new

    def _replace(self, old, new):
        """Swap the contiguous fronts `old` for `new` at the current time.
        Returns `new` after coincident fronts were pulled apart."""
        t = self.time
        prev_id = self._left[old[0].id]
        next_id = self._right[old[-1].id]
        for f in old:
            del self._live[f.id]
            del self._left[f.id]
            del self._right[f.id]
            self.history.kill(f.id, t)
        ids = [prev_id]
        for f in new:
            self._live[f.id] = f
            ids.append(f.id)
        ids.append(next_id)
        for a_id, b_id in zip(ids, ids[1:]):
            self._link(a_id, b_id)
        new = list(new)
        touched = set(f.id for f in new)
        if new:
            if prev_id is not None:
                self._separate(self._live[prev_id], new[0], new, touched)
            if next_id is not None:
                self._separate(new[-1], self._live[next_id], new, touched)
        else:
            if prev_id is not None:
                touched.add(prev_id)
        for f_id in touched:
            if f_id not in self._live:
                continue
            f = self._live[f_id]
            left_id, right_id = self._left[f_id], self._right[f_id]
            if left_id is not None:
                self._push(self._live[left_id], f)
            if right_id is not None:
                self._push(f, self._live[right_id])
        self.max_live_fronts = max(self.max_live_fronts, len(self._live))
        if self.config.check:
            self._check_links(ids)
        return new

    def _coincident(self, a, b):
        if a.is_boundary or b.is_boundary:
            return False
        t = self.time
        if abs(a.position(t) - b.position(t)) > \
                0.5 * defaults.TRIPLE_SHIFT * self.m:
            return False
        return abs(a.speed - b.speed) <= \
            defaults.TIME_GUARD * max(abs(a.speed), abs(b.speed))

    def _inside_phase(self, front, x):
        lo, hi = PHASE_RANGES[front.phase]
        lo = self.m if lo is None else lo
        hi = self.m if hi is None else hi
        return lo <= x <= hi

    def _separate(self, a, b, new, touched):
        """Pull apart two neighbours that move together from the same
        point, so they are never resolved as a three-wave interaction."""
        if not self._coincident(a, b):
            return
        delta = defaults.TRIPLE_SHIFT * self.m
        t = self.time
        if b.id > a.id:
            moving, shift, other, other_shift = b, delta, a, -delta
        else:
            moving, shift, other, other_shift = a, -delta, b, delta
        if not self._inside_phase(moving, moving.position(t) + shift):
            moving, shift = other, other_shift
        moved = self._respawn(moving, moving.position(t) + shift)
        _log.debug("separated coincident fronts #%d and #%d at t=%r",
                   a.id, b.id, t)
        for k, f in enumerate(new):
            if f.id == moving.id:
                new[k] = moved
        touched.discard(moving.id)
        touched.add(moved.id)

    def _respawn(self, front, x):
        f_id = front.id
        left_id, right_id = self._left.pop(f_id), self._right.pop(f_id)
        del self._live[f_id]
        self.history.kill(f_id, self.time)
        moved = front.moved(self._next_id, x, self.time)
        self._next_id += 1
        self.history.add(moved)
        self._live[moved.id] = moved
        self._link(left_id, moved.id)
        self._link(moved.id, right_id)
        return moved

    def _check_links(self, ids):
        for a_id, b_id in zip(ids, ids[1:]):
            if a_id is None or b_id is None:
                continue
            a = self._live.get(a_id)
            b = self._live.get(b_id)
            if a is None or b is None:
                continue
            gap = a.right.pv_distance(b.left)
            if gap > defaults.STATE_MATCH_TOL:
                self.inconsistencies.append((self.time, a.id, b.id, gap))
                _log.error("state mismatch %r between fronts #%d and #%d "
                           "at t=%r", gap, a.id, b.id, self.time)

    # --- output

    def snapshot(self, t=None):
        return Snapshot(self.time if t is None else t, list(self.fronts()))

    def speed_bound(self):
        """max(Lambda, eta) with Lambda the largest gas sound speed seen."""
        return max(self.max_sound_speed, self.config.eta)

    def diagnostics(self):
        return dict(interactions=self.interactions,
                    transmissions=self.transmissions,
                    fronts_created=len(self.history),
                    max_live_fronts=self.max_live_fronts,
                    max_speed=self.max_speed,
                    max_sound_speed=self.max_sound_speed,
                    speed_bound=self.speed_bound(),
                    inconsistencies=len(self.inconsistencies))

    def _report_builder(self):
        cfg = self.config
        if not cfg.check:
            return None
        C = cfg.interaction_constant
        calibration = None
        if C is None:
            calibration = functionals.calibrate_interaction_constant(
                self.gas, calibration_etas(cfg.eta),
                self.datum.states(self.gas, self.liquid)[0][0],
                radius=cfg.calibration_radius,
                samples=cfg.calibration_samples, seed=cfg.seed,
                safety=cfg.calibration_safety)
            C = calibration.constant
        weights = functionals.GlimmWeights.from_constant(C)
        return functionals.ReportBuilder(
            weights, cfg.eta, cfg.m, cfg.measurement_lines,
            calibration=calibration,
            liquid_tv=self.datum.liquid.total_variation())

    def run(self):
        cfg = self.config
        builder = self._report_builder()
        if builder is not None:
            builder.start(self.snapshot(0.0))
            self.listeners.append(builder.record)
        snapshots = []
        outputs = list(cfg.output_times)
        k = 0
        while True:
            t_next = self.next_event_time()
            done = t_next is None or t_next > cfg.T
            while k < len(outputs) and (outputs[k] <= cfg.T if done
                                        else outputs[k] < t_next):
                snapshots.append(self.snapshot(outputs[k]))
                if builder is not None:
                    builder.output(snapshots[-1])
                k += 1
            if done:
                break
            if self.interactions >= cfg.max_events:
                raise AccumulationSuspected(cfg.max_events, t_next,
                                            self.events[-10:])
            self.step_to_next_event()
        self._log_transmissions(self.time, cfg.T)
        _log.info("run finished: %d interactions, %d fronts created, "
                  "at most %d live", self.interactions, len(self.history),
                  self.max_live_fronts)
        report = builder.report(self) if builder is not None else None
        return RunResult(cfg, snapshots, self.events, report, self.history,
                         self.diagnostics())


def calibration_etas(eta):
    """
    >>> calibration_etas(100.0)
    [10.0, 100.0, 1000.0, 10000.0]
    >>> calibration_etas(30.0)
    [10.0, 30.0, 100.0, 1000.0, 10000.0]
    """
    return sorted(set(defaults.CALIBRATION_ETAS) | set([float(eta)]))


def init(config, datum):
    """Front list at t = 0+."""
    return WaveFrontTracker(config, datum).snapshot(0.0)


def step_to_next_event(tracker):
    return tracker.step_to_next_event()


def run(config, datum):
    return WaveFrontTracker(config, datum).run()


def sample(snapshot, z, side='+'):
    return snapshot.sample(z, side)
