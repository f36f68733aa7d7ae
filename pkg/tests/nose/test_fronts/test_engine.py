from nose.tools import assert_equal, assert_almost_equal, assert_true, \
                       assert_is_none

from droplet.fronts import engine
from droplet.fronts import riemann
from droplet.fronts.config import fan_jump_count
from droplet.fronts.engine import (RunConfig, Datum, PiecewiseConstant,
                                   WaveFrontTracker)
from droplet.fronts.pressure import GasLaw, LiquidLaw
from droplet.fronts.model import (Front, SHOCK, FAN_JUMP, GAS_LEFT, LIQUID,
                                  INTERFACE_LEFT, INTERFACE_RIGHT, FROM_GAS,
                                  FROM_LIQUID, TRANSMISSION)
from droplet.fronts.exc import AccumulationSuspected


GAS = GasLaw(1.0, 1.4)


def static_datum():
    rest = PiecewiseConstant.constant(1.0, 0.0)
    return Datum(rest, rest, rest)


def shock_datum():
    return Datum(PiecewiseConstant([-0.5], [(0.999, 0.0012), (1.0, 0.0)]),
                 PiecewiseConstant.constant(1.0, 0.0),
                 PiecewiseConstant.constant(1.0, 0.0))


def bouncing_datum(eta=10.0):
    """A single liquid 2-wave born at z = 0.5, matched gas on both sides."""
    liq = LiquidLaw(1.0, 1.0, eta)
    right = liq.state(1.0 - 0.001 / eta ** 2, 0.0001)
    return Datum(PiecewiseConstant.constant(1.0, 0.0),
                 PiecewiseConstant([0.5], [(1.0, 0.0), (right.tau, right.v)]),
                 PiecewiseConstant.constant(GAS.tau(right.p), right.v))


def test_static_run_has_no_events():
    cfg = RunConfig(epsilon=0.01, eta=10.0, T=1.0, m=1.0,
                    output_times=[0.0, 0.5, 1.0], interaction_constant=3.0)
    result = engine.run(cfg, static_datum())
    assert_equal(result.interactions(), [])
    assert_equal([s.time for s in result.snapshots], [0.0, 0.5, 1.0])
    for s in result.snapshots:
        assert_equal(len(s), 2)
        assert_true(all(f.is_boundary for f in s.fronts))
        assert_equal(s.check_consistency(), [])
    assert_equal(result.report.upsilon0, 0.0)
    assert_equal(result.report.violations(), [])


def test_init_and_sample():
    cfg = RunConfig(epsilon=0.01, eta=10.0, T=1.0, m=2.0)
    snap = engine.init(cfg, static_datum())
    assert_equal(snap.time, 0.0)
    assert_equal([f.x0 for f in snap.fronts], [0.0, 2.0])
    u = engine.sample(snap, 1.0)
    assert_equal((u.tau, u.v, u.p), (1.0, 0.0, 1.0))
    assert_equal(snap.phase_at(1.0), LIQUID)
    assert_equal(snap.phase_at(-1.0), GAS_LEFT)


def test_collision_time():
    cfg = RunConfig(epsilon=0.01, eta=10.0, T=1.0, m=1.0)
    tracker = WaveFrontTracker(cfg, static_datum())
    a = Front(100, 2, SHOCK, GAS_LEFT, -0.1, 1.0, -3.0, 0.0, None, None)
    b = Front(101, 1, SHOCK, GAS_LEFT, -0.1, -1.0, -1.0, 0.0, None, None)
    assert_almost_equal(tracker.collision_time(a, b), 1.0, places=14)
    assert_is_none(tracker.collision_time(b, a))
    c = Front(102, 2, SHOCK, GAS_LEFT, -0.1, 1.0, -2.0, 0.0, None, None)
    assert_is_none(tracker.collision_time(a, c))


def test_next_event_time_does_not_advance():
    cfg = RunConfig(epsilon=0.001, eta=10.0, T=1.0, m=1.0,
                    interaction_constant=3.0)
    tracker = WaveFrontTracker(cfg, shock_datum())
    t1 = tracker.next_event_time()
    assert_equal(tracker.next_event_time(), t1)
    assert_equal(tracker.time, 0.0)
    snap, event = engine.step_to_next_event(tracker)
    assert_equal(event.time, t1)
    assert_equal(tracker.time, t1)
    assert_equal(snap.check_consistency(), [])


def test_shock_reaches_interface_from_gas():
    cfg = RunConfig(epsilon=0.001, eta=10.0, T=0.8, m=1.0,
                    output_times=[0.0, 0.4, 0.8],
                    measurement_lines=[-0.25, 1.5])
    result = engine.run(cfg, shock_datum())
    first = [e for e in result.interactions()
             if e.case == INTERFACE_LEFT and e.incoming_from == FROM_GAS]
    assert_true(first, 'no gas wave reached the slab')
    # the 2-shock leaves z=-0.5 at the speed of the Riemann solution
    sol = riemann.solve_riemann_gas(GAS.state(0.999, 0.0012),
                                    GAS.state(1.0, 0.0), GAS)
    assert_almost_equal(first[0].time, 0.5 / sol.right_wave.speed,
                        places=9)
    assert_true(len(result.events) < 100000)
    for s in result.snapshots:
        assert_equal(s.check_consistency(), [])
    assert_equal(result.diagnostics['inconsistencies'], 0)
    crossings = [e for e in result.events if e.case == TRANSMISSION]
    assert_true(any(e.position == -0.25 for e in crossings))


def test_shock_impact_functional_checks():
    cfg = RunConfig(epsilon=0.001, eta=10.0, T=0.8, m=1.0,
                    output_times=[0.0, 0.4, 0.8],
                    measurement_lines=[-0.25, 1.5])
    result = engine.run(cfg, shock_datum())
    report = result.report
    assert_true(report.calibration is not None)
    assert_equal(report.violations(), [])
    assert_true(report.upsilon_monotone())
    assert_true(report.xi_monotone(-0.25))
    assert_true(report.min_margin() >= -1e-10)


def test_bouncing_wave_spacing():
    eta = 10.0
    cfg = RunConfig(epsilon=0.001, eta=eta, T=1.0, m=1.0,
                    interaction_constant=3.0)
    result = engine.run(cfg, bouncing_datum(eta))
    hits = [e for e in result.interactions()
            if e.case in (INTERFACE_LEFT, INTERFACE_RIGHT)
            and e.incoming_from == FROM_LIQUID]
    times = [e.time for e in hits]
    assert_equal(len(times), 10)
    assert_almost_equal(times[0], 0.05, places=12)
    for t1, t2 in zip(times, times[1:]):
        assert_almost_equal(t2 - t1, cfg.m / eta, places=9)
    # right and left boundaries alternate
    cases = [e.case for e in hits]
    assert_equal(cases[:3], [INTERFACE_RIGHT, INTERFACE_LEFT,
                             INTERFACE_RIGHT])
    for e in hits:
        outgoing = sum(abs(s) for s in e.outgoing_sizes())
        assert_almost_equal(outgoing, abs(e.incoming[0].sigma), places=9)


def test_rarefaction_is_split_into_fan_jumps():
    epsilon = 0.001
    datum = Datum(PiecewiseConstant([-0.5], [(1.0025, 0.0), (1.0, 0.0)]),
                  PiecewiseConstant.constant(1.0, 0.0),
                  PiecewiseConstant.constant(1.0, 0.0))
    cfg = RunConfig(epsilon=epsilon, eta=10.0, T=1.0, m=1.0)
    snap = engine.init(cfg, datum)
    sol = riemann.solve_riemann_gas(GAS.state(1.0025, 0.0),
                                    GAS.state(1.0, 0.0), GAS)
    sigma = sol.right_wave.sigma
    assert_true(sigma > 0)
    fan = [f for f in snap.fronts if f.kind == FAN_JUMP]
    assert_equal(len(fan), fan_jump_count(sigma, epsilon))
    assert_almost_equal(sum(f.sigma for f in fan), sigma, places=14)
    assert_true(all(f.sigma <= epsilon for f in fan))
    assert_equal(snap.check_consistency(), [])


def test_accumulation_cap():
    cfg = RunConfig(epsilon=0.001, eta=10.0, T=0.8, m=1.0, max_events=3,
                    interaction_constant=3.0)
    try:
        engine.run(cfg, shock_datum())
    except AccumulationSuspected as e:
        assert_equal(e.cap, 3)
    else:
        assert False, 'expected AccumulationSuspected'


def test_bad_datum():
    try:
        PiecewiseConstant([0.5, 0.2], [(1, 0), (1, 0), (1, 0)])
    except ValueError as e:
        assert_true('increasing' in str(e))
    else:
        assert False, 'expected ValueError for unsorted jumps'
    datum = Datum(PiecewiseConstant.constant(1.0, 0.0),
                  PiecewiseConstant([1.5], [(1.0, 0.0), (1.0, 0.1)]),
                  PiecewiseConstant.constant(1.0, 0.0))
    cfg = RunConfig(epsilon=0.01, eta=10.0, T=1.0, m=1.0)
    try:
        WaveFrontTracker(cfg, datum)
    except ValueError as e:
        assert_true('liquid' in str(e))
    else:
        assert False, 'expected ValueError for a jump outside the slab'


def test_bad_config():
    for kw in [dict(measurement_lines=[0.5]), dict(output_times=[2.0]),
               dict(max_events=0), dict(interaction_constant=-1.0)]:
        try:
            RunConfig(epsilon=0.01, eta=10.0, T=1.0, m=1.0, **kw)
        except ValueError:
            pass
        else:
            assert False, 'expected ValueError for %r' % kw
    cfg = RunConfig(epsilon=0.01, eta=10.0, T=1.0, m=1.0)
    assert_equal(cfg.with_eta(100.0).liquid.eta, 100.0)
    assert_equal(cfg.eta, 10.0)
