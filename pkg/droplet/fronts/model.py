"""
Data model shared by the front tracker, the limit model and the
functionals: fronts, snapshots, interaction events, and the history of
every front created during a run.

Fronts are immutable. A front moves as x0 + speed * (t - t0) from its
birth time t0 until the history records its death, so a finished run can
be sampled at any time without re-solving anything.
"""

import math
import bisect
from collections import namedtuple

import numpy as np

from droplet.fronts import config


GAS_LEFT = 'gas-left'
LIQUID = 'liquid'
GAS_RIGHT = 'gas-right'
BOUNDARY = 'boundary'
GAS_PHASES = (GAS_LEFT, GAS_RIGHT)

SHOCK = 'shock'
FAN_JUMP = 'fan-jump'
PHASE_BOUNDARY = 'phase-boundary'
LINEAR = 'linear'

LIQUID_INTERIOR = 'liquid-interior'
INTERFACE_LEFT = 'interface-left'
INTERFACE_RIGHT = 'interface-right'
GAS_SAME_FAMILY = 'gas-interior-same-family'
GAS_DIFFERENT_FAMILY = 'gas-interior-different-family'
TRANSMISSION = 'transmission'
DROPLET_UPDATE = 'droplet-update'

FROM_GAS = 'gas'
FROM_LIQUID = 'liquid'


class Front(object):
    __slots__ = ('id', 'family', 'kind', 'phase', 'sigma', 'speed', 'x0',
                 't0', 'left', 'right')

    def __init__(self, front_id, family, kind, phase, sigma, speed, x0, t0,
                 left, right):
        self.id = front_id
        self.family = family
        self.kind = kind
        self.phase = phase
        self.sigma = sigma
        self.speed = speed
        self.x0 = x0
        self.t0 = t0
        self.left = left
        self.right = right

    @property
    def is_boundary(self):
        return self.kind == PHASE_BOUNDARY

    @property
    def is_shock(self):
        return self.kind == SHOCK

    def position(self, t):
        if self.speed == 0.0:
            return self.x0
        return self.x0 + self.speed * (t - self.t0)

    def moved(self, front_id, x0, t0):
        return Front(front_id, self.family, self.kind, self.phase, self.sigma,
                     self.speed, x0, t0, self.left, self.right)

    def record(self):
        return WaveRecord(self.id, self.family, self.sigma, self.phase)

    def __repr__(self):
        return 'Front(#%d %s fam=%d %s sigma=%r x0=%r t0=%r s=%r)' % (
            self.id, self.phase, self.family, self.kind, self.sigma, self.x0,
            self.t0, self.speed)


WaveRecord = namedtuple('WaveRecord', ['id', 'family', 'sigma', 'phase'])


class InteractionEvent(object):
    __slots__ = ('seq', 'time', 'position', 'case', 'incoming', 'outgoing',
                 'incoming_from')

    def __init__(self, seq, time, position, case, incoming, outgoing,
                 incoming_from=None):
        self.seq = seq
        self.time = time
        self.position = position
        self.case = case
        self.incoming = tuple(incoming)
        self.outgoing = tuple(outgoing)
        self.incoming_from = incoming_from

    def incoming_sizes(self):
        return [w.sigma for w in self.incoming]

    def outgoing_sizes(self):
        return [w.sigma for w in self.outgoing]

    def outgoing_gas(self, family):
        """Size of the outgoing gas wave of `family`, 0 if none left."""
        for w in self.outgoing:
            if w.family == family and w.phase in GAS_PHASES:
                return w.sigma
        return 0.0

    def as_data(self):
        return dict(seq=self.seq, time=self.time, position=self.position,
                    case=self.case, incoming_from=self.incoming_from,
                    incoming=[list(w) for w in self.incoming],
                    outgoing=[list(w) for w in self.outgoing])

    def __repr__(self):
        return 'InteractionEvent(#%d t=%r z=%r %s in=%r out=%r)' % (
            self.seq, self.time, self.position, self.case,
            self.incoming_sizes(), self.outgoing_sizes())


class Snapshot(object):
    """Piecewise constant solution at one time. `states[k]` is the state
    between fronts k-1 and k; states[0] and states[-1] are the far
    fields."""

    def __init__(self, time, fronts):
        self.time = time
        self.fronts = tuple(fronts)
        self.positions = np.array([f.position(time) for f in self.fronts],
                                  dtype=float)
        if self.fronts:
            self.states = [self.fronts[0].left] + \
                [f.right for f in self.fronts]
        else:
            self.states = []
        self.phases = []
        phase = GAS_LEFT
        self.phases.append(phase)
        for f in self.fronts:
            if f.is_boundary:
                phase = LIQUID if phase == GAS_LEFT else GAS_RIGHT
            self.phases.append(phase)

    @property
    def far_left(self):
        return self.states[0]

    @property
    def far_right(self):
        return self.states[-1]

    def waves(self, phase=None):
        return [f for f in self.fronts if not f.is_boundary
                and (phase is None or f.phase == phase)]

    def boundaries(self):
        return [f for f in self.fronts if f.is_boundary]

    def _index(self, z, side):
        if side == '-':
            return int(np.searchsorted(self.positions, z, side='left'))
        return int(np.searchsorted(self.positions, z, side='right'))

    def sample(self, z, side='+'):
        """Constant state of the interval containing z; at a front the
        right limit, or the left limit with side='-'."""
        return self.states[self._index(z, side)]

    def phase_at(self, z, side='+'):
        return self.phases[self._index(z, side)]

    def check_consistency(self, tol=config.STATE_MATCH_TOL):
        """Indices k where fronts k and k+1 disagree on the state between
        them, or positions decrease."""
        bad = []
        for k in range(len(self.fronts) - 1):
            a, b = self.fronts[k], self.fronts[k + 1]
            if a.right.pv_distance(b.left) > tol:
                bad.append(k)
            elif self.positions[k + 1] < self.positions[k]:
                bad.append(k)
        return bad

    def __len__(self):
        return len(self.fronts)


class FrontHistory(object):
    """Every front of a run with its life interval [t0, died)."""

    def __init__(self):
        self._fronts = []
        self._died = {}

    def add(self, front):
        self._fronts.append(front)

    def kill(self, front_id, t):
        self._died[front_id] = t

    def died(self, front_id):
        return self._died.get(front_id, math.inf)

    def lives(self):
        for f in self._fronts:
            yield f, self._died.get(f.id, math.inf)

    def __len__(self):
        return len(self._fronts)

    def alive_at(self, t):
        alive = [f for f, d in self.lives() if f.t0 <= t < d]
        alive.sort(key=lambda f: (f.position(t), f.speed, f.id))
        return alive

    def snapshot(self, t):
        return Snapshot(t, self.alive_at(t))

    def boundary_lives(self, x):
        """Phase-boundary fronts sitting at x, in time order."""
        found = [(f, d) for f, d in self.lives()
                 if f.is_boundary and f.x0 == x and d > f.t0]
        found.sort(key=lambda fd: fd[0].t0)
        return found

    def crossings(self, x):
        """Times at which a moving front passes through, arrives at, or
        departs from the line z=x. Returns sorted tuples
        (t, order, front) with order 0 for arrivals and passes and 1 for
        departures, so that at an interaction on the line the state of
        the departing fronts wins."""
        out = []
        for f, d in self.lives():
            if f.is_boundary or d <= f.t0 or f.speed == 0.0:
                continue
            tc = f.t0 + (x - f.x0) / f.speed
            if f.x0 == x:
                out.append((f.t0, 1, f))
            elif f.t0 < tc <= d:
                out.append((tc, 0, f))
        out.sort(key=lambda e: (e[0], e[1], e[2].id))
        return out


def state_after_crossing(front):
    """State seen on a fixed line right after `front` went through it or
    departed from it."""
    if front.speed > 0:
        return front.left
    return front.right


def interval_index(times, t):
    """Index k with times[k] <= t < times[k+1] for a sorted list.

    >>> interval_index([0.0, 1.0, 2.0], 1.5)
    1
    >>> interval_index([0.0, 1.0, 2.0], 2.0)
    2
    """
    return max(0, bisect.bisect_right(times, t) - 1)
