import json

from nose.tools import assert_equal, assert_almost_equal, assert_true, \
                       assert_false

from droplet.fronts import engine
from droplet.fronts.config import scenario_path
from droplet.fronts.engine import RunConfig, Datum, PiecewiseConstant
from droplet.fronts.limit import LimitConfig, run_limit, limit_datum
from droplet.fronts.pressure import GasLaw, State
from droplet.study import analysis
from droplet.study.analysis import Trace, Window
from droplet.study.scenario import load_scenario


GAS = GasLaw(1.0, 1.4)


def static_datum():
    rest = PiecewiseConstant.constant(1.0, 0.0)
    return Datum(rest, rest, rest)


def shock_datum():
    return Datum(PiecewiseConstant([-0.5], [(0.999, 0.0012), (1.0, 0.0)]),
                 PiecewiseConstant.constant(1.0, 0.0),
                 PiecewiseConstant.constant(1.0, 0.0))


def bouncing_datum(eta):
    cfg = RunConfig(epsilon=0.001, eta=eta, T=1.0, m=1.0)
    right = cfg.liquid.state(0.99999, 0.0001)
    return Datum(PiecewiseConstant.constant(1.0, 0.0),
                 PiecewiseConstant([0.5], [(1.0, 0.0), (right.tau, right.v)]),
                 PiecewiseConstant.constant(GAS.tau(right.p), right.v))


def static_run(T=1.0, m=1.0):
    cfg = RunConfig(epsilon=0.01, eta=10.0, T=T, m=m,
                    output_times=[0.0, T / 2, T], interaction_constant=3.0)
    return engine.run(cfg, static_datum())


def test_trace_pieces_and_integral():
    a, b = State(1.0, 0.0, 1.0), State(2.0, 0.5, 0.5)
    tr = Trace([0.0, 1.0], [a, b], 3.0)
    assert_equal(tr.value(0.5), a)
    assert_equal(tr.value(1.0), b)
    assert_equal(tr.pieces(0.5, 2.0), [(0.5, 1.0, a), (1.0, 2.0, b)])
    assert_almost_equal(tr.integral('tau'), 1.0 + 4.0, places=15)
    assert_almost_equal(tr.integral('v', 0.5, 1.5), 0.25, places=15)
    other = Trace([0.0], [a], 3.0)
    assert_almost_equal(analysis.trace_distance(tr, other), 2.0 * 1.5,
                        places=15)
    try:
        Trace([], [], 1.0)
    except ValueError:
        pass
    else:
        assert False, 'expected ValueError for an empty trace'


def test_trace_of_a_passing_shock():
    cfg = RunConfig(epsilon=0.001, eta=10.0, T=0.4, m=1.0,
                    interaction_constant=3.0)
    result = engine.run(cfg, shock_datum())
    tr = analysis.trace(result.history, -0.25, end=0.4)
    assert_equal(len(tr), 2)
    shock = [f for f in result.history.alive_at(0.0)
             if f.family == 2 and not f.is_boundary][0]
    assert_almost_equal(tr.times[1], 0.25 / shock.speed, places=12)
    assert_equal(tr.states[0], GAS.state(1.0, 0.0))
    assert_equal(tr.states[1], shock.left)


def test_boundary_trace_of_static_run():
    result = static_run()
    for x, side in ((0.0, '-'), (0.0, '+'), (1.0, '+')):
        tr = analysis.trace(result.history, x, side, end=1.0)
        assert_equal(len(tr), 1)
        assert_equal((tr.states[0].tau, tr.states[0].v, tr.states[0].p),
                     (1.0, 0.0, 1.0))


def test_l1_distance():
    cfg = RunConfig(epsilon=0.01, eta=10.0, T=1.0, m=2.0)
    s1 = engine.init(cfg, static_datum())
    moving = Datum(PiecewiseConstant.constant(1.0, 0.0),
                   PiecewiseConstant.constant(1.0, 0.001),
                   PiecewiseConstant.constant(1.0, 0.0))
    s2 = engine.init(cfg, moving)
    assert_equal(analysis.l1_distance(s1, s1, (0.0, 2.0)), 0.0)
    d = analysis.l1_distance(s1, s2, (0.0, 2.0), ('v',))
    assert_almost_equal(d, 0.002, places=15)
    assert_equal(d, analysis.l1_distance(s2, s1, (0.0, 2.0), ('v',)))
    assert_almost_equal(analysis.l1_distance(s1, s2, (0.5, 1.0), ('v',)),
                        0.0005, places=15)
    later = engine.WaveFrontTracker(cfg, moving).snapshot(0.5)
    try:
        analysis.l1_distance(s1, later, (0.0, 2.0))
    except ValueError as e:
        assert_true('different times' in str(e))
    else:
        assert False, 'expected ValueError'


def test_dyadic_windows_tile_each_level():
    windows = analysis.dyadic_windows(0.8, 2.0, 2)
    assert_equal(len(windows), 21)
    for start, n in ((0, 1), (1, 4), (5, 16)):
        level = windows[start:start + n]
        area = sum((w.t2 - w.t1) * (w.x2 - w.x1) for w in level)
        assert_almost_equal(area, 1.6, places=14)
    last = windows[-1]
    assert_almost_equal(last.t1, 0.6, places=14)
    assert_equal((last.t2, last.x1, last.x2), (0.8, 1.5, 2.0))


def test_weakstar_residual_of_static_run_is_zero():
    result = static_run()
    lcfg = LimitConfig(epsilon=0.01, T=1.0, m=1.0, droplet_velocity=0.0,
                       ode_steps=10)
    ref = run_limit(lcfg, limit_datum(static_datum(), lcfg))
    traces = (analysis.trace(ref.history, 0.0, '-', end=1.0),
              analysis.trace(ref.history, 1.0, '+', end=1.0))
    windows = analysis.dyadic_windows(1.0, 1.0, 2)
    residual = analysis.weakstar_pressure_residual(result.history, traces,
                                                   windows, 1.0)
    assert_true(residual < 1e-14, residual)


def test_liquid_pressure_integral_matches_midpoint_sum():
    cfg = RunConfig(epsilon=0.001, eta=10.0, T=0.6, m=1.0,
                    interaction_constant=3.0)
    result = engine.run(cfg, bouncing_datum(10.0))
    w = Window(0.1, 0.6, 0.2, 0.7)
    exact = analysis.liquid_pressure_integral(result.history, w)
    n = 200
    dt, dx = (w.t2 - w.t1) / n, (w.x2 - w.x1) / n
    approx = 0.0
    for i in range(n):
        snap = result.history.snapshot(w.t1 + (i + 0.5) * dt)
        for j in range(n):
            approx += snap.sample(w.x1 + (j + 0.5) * dx).p * dt * dx
    assert_true(abs(exact - approx) < 1e-5, (exact, approx))
    # the wave is visible: the integral differs from the rest pressure
    assert_true(abs(exact - 0.25) > 1e-5)


def test_conservation_across_shocks():
    T = 0.2
    cfg = RunConfig(epsilon=0.001, eta=10.0, T=T, m=1.0,
                    interaction_constant=3.0)
    result = engine.run(cfg, shock_datum())
    s0 = result.history.snapshot(0.0)
    st = result.history.snapshot(T)
    d_tau, d_v = analysis.conservation_defect(s0, st, (-0.9, -0.1))
    assert_true(d_tau < 1e-10, d_tau)
    assert_true(d_v < 1e-10, d_v)


def test_liquid_momentum_balance():
    cfg = RunConfig(epsilon=0.001, eta=10.0, T=1.0, m=1.0,
                    interaction_constant=3.0)
    result = engine.run(cfg, bouncing_datum(10.0))
    times = [0.1 * k for k in range(11)]
    assert_true(analysis.liquid_momentum_residual(result.history, times,
                                                  1.0) < 1e-10)


def test_eulerian_boundaries():
    result = static_run(m=2.0)
    times = [0.0, 0.5, 1.0]
    eb = analysis.eulerian_boundaries(result.history, times, 2.0, a_o=-1.0)
    assert_equal(eb.a.tolist(), [-1.0] * 3)
    assert_equal(eb.b.tolist(), [1.0] * 3)
    lcfg = LimitConfig(epsilon=0.001, T=0.8, m=1.0, droplet_velocity=0.0,
                       ode_steps=50, tau_bar=1.0)
    ref = run_limit(lcfg, limit_datum(shock_datum(), lcfg))
    times = [0.0, 0.2, 0.4, 0.6, 0.8]
    rigid = analysis.eulerian_boundaries(ref.history, times, 1.0,
                                         droplet=ref.droplet, tau_bar=1.0)
    for width in rigid.width():
        assert_almost_equal(width, 1.0, places=14)
    assert_true(rigid.a[-1] > 0)
    assert_equal(eb.distance(eb), 0.0)
    json.dumps(rigid.as_data())


def test_lipschitz_bounds_hold_on_shock_run():
    cfg = RunConfig(epsilon=0.001, eta=10.0, T=0.8, m=1.0,
                    output_times=[0.0, 0.2, 0.4, 0.6, 0.8],
                    interaction_constant=3.0)
    result = engine.run(cfg, shock_datum())
    lip = analysis.lipschitz_report(result.history, cfg.output_times, 1.0,
                                    result.report.upsilon0,
                                    result.diagnostics['max_sound_speed'],
                                    3.0, 10.0)
    assert_true(lip.ok, lip)
    assert_true(lip.v_ratio > 0)
    assert_true(lip.liquid_tau_ratio > 0)


def test_monotone_trend_slack():
    assert_true(analysis.monotone_trend([1.0, 0.5, 0.52], 0.05).ok)
    trend = analysis.monotone_trend([1.0, 0.5, 0.6], 0.05)
    assert_false(trend.ok)
    assert_equal(trend.violating_steps, [1])
    assert_almost_equal(analysis.loglog_slope([10, 100], [2.0, 0.2]), -1.0,
                        places=12)


def test_sweep_collects_every_eta():
    template = RunConfig(epsilon=0.001, eta=10.0, T=0.4, m=1.0,
                         output_times=[0.0, 0.2, 0.4],
                         interaction_constant=3.0)
    lcfg = LimitConfig(epsilon=0.001, T=0.4, m=1.0, droplet_velocity=0.0,
                       ode_steps=40)
    seen = []
    result = analysis.sweep(template, [30.0, 10.0], shock_datum(), lcfg,
                            limit_datum(shock_datum(), lcfg), workers=2,
                            window_depth=1,
                            on_result=lambda eta, r: seen.append(eta))
    assert_equal(result.failures, {})
    assert_equal(result.completed(), [10.0, 30.0])
    assert_equal(sorted(seen), [10.0, 30.0])
    for eta in (10.0, 30.0):
        metrics = result.per_eta[eta]
        assert_equal(metrics['eta'], eta)
        assert_equal(len(metrics['weakstar_windows']), 5)
        assert_equal(metrics['violations'], 0)
        assert_true(metrics['momentum'] < 1e-10)
    json.dumps(result.summary())


def test_sweep_records_failures():
    # the shock reaches the slab at t ~ 0.42, the liquid wave the far
    # boundary shortly after
    template = RunConfig(epsilon=0.001, eta=10.0, T=0.8, m=1.0,
                         max_events=1, interaction_constant=3.0)
    lcfg = LimitConfig(epsilon=0.001, T=0.8, m=1.0, droplet_velocity=0.0,
                       ode_steps=10)
    result = analysis.sweep(template, [10.0, 100.0], shock_datum(), lcfg,
                            limit_datum(shock_datum(), lcfg))
    assert_equal(sorted(result.failures), [10.0, 100.0])
    assert_true('AccumulationSuspected' in result.failures[10.0])
    assert_equal(result.completed(), [])
    assert_false(result.ok())


def test_sweep_needs_constant_liquid():
    template = RunConfig(epsilon=0.001, eta=10.0, T=0.4, m=1.0)
    lcfg = LimitConfig(epsilon=0.001, T=0.4, m=1.0, droplet_velocity=0.0)
    try:
        analysis.sweep(template, [10.0], bouncing_datum(10.0), lcfg,
                       limit_datum(bouncing_datum(10.0), lcfg))
    except ValueError as e:
        assert_true('constant' in str(e))
    else:
        assert False, 'expected ValueError'


def test_monotone_trend_allows_one_growing_step():
    trend = analysis.monotone_trend([1.0, 1.09, 1.18, 1.28])
    assert_false(trend.ok)
    assert_equal(trend.increasing_steps, [0, 1, 2])
    assert_equal(trend.violating_steps, [])
    assert_false(analysis.monotone_trend([1.0, 0.5, 0.52, 0.54, 0.1]).ok)
    assert_true(analysis.monotone_trend([1.0, 0.5, 0.52, 0.1]).ok)
    # noise below the floor is not growth
    assert_true(analysis.monotone_trend([1e-3, 1e-16, 2e-16, 3e-16]).ok)


def _sweep_result(values, etas=(10.0, 100.0, 1000.0), lemp=None):
    per_eta = {}
    for k, eta in enumerate(etas):
        metrics = dict((name, values[k]) for name in analysis.TREND_METRICS)
        metrics['weakstar_windows'] = [values[k], 0.0]
        metrics['liquid_tau_ratio'] = None
        metrics['space_lipschitz'] = lemp[k] if lemp else 1.0
        per_eta[eta] = metrics
    return analysis.SweepResult(list(etas), per_eta, {}, None, {})


def test_sweep_trends_need_enough_reduction():
    slow = _sweep_result([1.0, 0.95, 0.9])
    trends = slow.trends()
    assert_false(slow.ok())
    for name in ('l1_v_liquid', 'trace_left', 'weakstar'):
        assert_false(trends[name]['ok'])
        assert_false(trends[name]['ratio_ok'])
        assert_almost_equal(trends[name]['last_over_first'], 0.9, places=14)
    # no ratio limit on the Eulerian distance
    assert_true(trends['eulerian']['ok'])
    assert_false(trends['weakstar_windows']['ok'])
    fast = _sweep_result([1.0, 0.1, 0.01])
    assert_true(fast.ok(), fast.trends())
    # a ladder spanning less than two decades only checks monotonicity
    assert_true(_sweep_result([1.0, 0.95, 0.9], etas=(10.0, 30.0, 60.0)).ok())


def test_sweep_trends_check_space_lipschitz_spread():
    steady = _sweep_result([1.0, 0.1, 0.01], lemp=[1.9, 2.0, 2.05])
    assert_true(steady.trends()['space_lipschitz']['ok'])
    drifting = _sweep_result([1.0, 0.1, 0.01], lemp=[1.0, 1.5, 2.0])
    assert_false(drifting.trends()['space_lipschitz']['ok'])
    assert_false(drifting.ok())
    assert_almost_equal(analysis.spread([1.0, 1.5, 2.0]), 1.0 / 3.0,
                        places=14)


def test_space_lipschitz_of_a_passing_shock():
    cfg = RunConfig(epsilon=0.001, eta=10.0, T=0.3, m=1.0,
                    interaction_constant=3.0)
    result = engine.run(cfg, shock_datum())
    shock = [f for f in result.history.snapshot(0.0).fronts
             if not f.is_boundary and f.speed > 0][0]
    jump = abs(shock.right.tau - shock.left.tau) + \
        abs(shock.right.v - shock.left.v)
    # between the two lines the state differs from the first crossing
    # to the second one, 0.1 / |s| later
    for x1, x2 in ((-0.45, -0.35), (-0.35, -0.25)):
        value = analysis.space_lipschitz(result.history, x1, x2, cfg.T)
        assert_almost_equal(value, jump / abs(shock.speed), places=9)


def test_shock_impact_sweep_converges():
    scenario = load_scenario(scenario_path('shock-impact.json'))
    template = scenario.run_config(10.0)
    lcfg = scenario.limit_config()
    result = analysis.sweep(template, [10.0, 100.0, 1000.0],
                            scenario.datum(), lcfg,
                            scenario.limit_datum(lcfg), workers=3,
                            window_depth=scenario.window_depth())
    assert_equal(result.failures, {})
    trends = result.trends()
    assert_true(result.ok(), trends)
    for name in ('l1_v_liquid', 'trace_left', 'trace_right'):
        assert_true(trends[name]['last_over_first'] < 0.2, trends[name])
    assert_true(trends['weakstar']['last_over_first'] < 0.25)
    assert_true(trends['space_lipschitz']['spread'] <= 0.1)
    for eta in result.completed():
        assert_equal(result.per_eta[eta]['violations'], 0)
        assert_true(result.per_eta[eta]['space_lipschitz'] > 0)
