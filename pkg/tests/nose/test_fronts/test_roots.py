import numpy as np

from nose.tools import assert_almost_equal, assert_true, assert_equal

from droplet.fronts import roots
from droplet.fronts.exc import BracketError, NoConvergence


def test_newton_bisect_cube_root():
    x = roots.newton_bisect(lambda x: x ** 3 - 2.0, 0.5, 3.0, tol=1e-14)
    assert_almost_equal(x, 2.0 ** (1.0 / 3.0), places=12)


def test_newton_bisect_bad_guess_stays_in_bracket():
    # a guess outside the bracket falls back to the midpoint
    x = roots.newton_bisect(lambda x: np.tanh(x - 1.0), 0.1, 5.0, x0=50.0)
    assert_almost_equal(x, 1.0, places=9)


def test_newton_bisect_endpoint_root():
    assert_equal(roots.newton_bisect(lambda x: x - 1.0, 1.0, 2.0), 1.0)


def test_newton_bisect_no_sign_change():
    try:
        roots.newton_bisect(lambda x: x * x + 1.0, 0.1, 2.0)
    except BracketError as e:
        assert_true('sign change' in str(e))
    else:
        assert False, 'expected BracketError'


def test_newton_bisect_raises_when_out_of_iterations():
    try:
        roots.newton_bisect(lambda x: x ** 3 - 2.0, 0.5, 3.0, tol=1e-14,
                            max_iter=3)
    except NoConvergence as e:
        assert_true(e.residual > 1e-14)
        assert_true(0.5 < e.x < 3.0)
    else:
        assert False, 'expected NoConvergence'


def test_expand_bracket_gives_up():
    try:
        roots.expand_bracket(lambda x: 1.0 + x, 1.0, 2.0)
    except BracketError as e:
        assert_true('widenings' in str(e))
    else:
        assert False, 'expected BracketError'


def test_expand_bracket_rejects_bad_interval():
    try:
        roots.expand_bracket(lambda x: x, 2.0, 1.0)
    except ValueError:
        pass
    else:
        assert False, 'expected ValueError'


def test_grid_bracket_and_bisect():
    f = lambda x: np.cos(x) - x
    a, b = roots.grid_bracket(f, 0.0, 2.0, n=101)
    assert_true(a <= 0.7390851332 <= b)
    x = roots.bisect(f, a, b, tol=1e-15)
    assert_almost_equal(x, 0.739085133215161, places=12)


def test_grid_bracket_no_root():
    try:
        roots.grid_bracket(lambda x: x + 1.0, 0.0, 1.0)
    except BracketError:
        pass
    else:
        assert False, 'expected BracketError'
