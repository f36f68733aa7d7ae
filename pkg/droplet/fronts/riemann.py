"""
Exact Riemann solvers parametrized by the pressure size sigma of each wave.

Along a gas curve of family 1 the pressure goes from p to p - sigma, along
family 2 from p to p + sigma; sigma < 0 is a shock, sigma > 0 a
rarefaction. Liquid curves are affine in (p, v):

    L1: (p - sigma, v + sigma/eta)      L2: (p + sigma, v + sigma/eta)

Every solver reduces to a scalar root in the middle pressure, found by
droplet.fronts.roots.newton_bisect on a widened bracket.
"""

import math
import logging

from droplet.fronts import config
from droplet.fronts import roots
from droplet.fronts.exc import (BracketError, CurveDomainError, NoConvergence,
                                RiemannNoSolution)


_log = logging.getLogger('droplet.fronts.riemann')

SHOCK = 'shock'
RAREFACTION = 'rarefaction'
LINEAR = 'linear'

GAS_GAS = 'gas'
LIQUID_LIQUID = 'liquid'
INTERFACE_LEFT = 'interface-left'
INTERFACE_RIGHT = 'interface-right'
PISTON_LEFT = 'piston-left'
PISTON_RIGHT = 'piston-right'


class Wave(object):
    """One wave of a Riemann solution. `speeds` is (lo, hi); lo == hi for
    shocks and liquid waves, the characteristic interval for a
    rarefaction."""

    __slots__ = ('family', 'sigma', 'kind', 'left', 'right', 'speeds')

    def __init__(self, family, sigma, kind, left, right, speeds):
        if family not in (1, 2):
            raise ValueError("wave family must be 1 or 2: %r" % family)
        self.family = family
        self.sigma = sigma
        self.kind = kind
        self.left = left
        self.right = right
        self.speeds = speeds

    @property
    def speed(self):
        """Single propagation speed. A rarefaction kept as one front moves
        with the characteristic speed of its right state."""
        return self.speeds[1]

    def is_null(self, tol=config.ZERO_WAVE):
        return abs(self.sigma) < tol

    def __repr__(self):
        return 'Wave(%d, %s, sigma=%r, speeds=%r)' % (
            self.family, self.kind, self.sigma, self.speeds)


class RiemannSolution(object):
    """Outgoing waves of a Riemann problem. For junction problems the two
    middle states share p and v but not tau; for gas or liquid problems
    middle_left is middle_right."""

    def __init__(self, problem, left_wave, right_wave, middle_left,
                 middle_right):
        self.problem = problem
        self.left_wave = left_wave
        self.right_wave = right_wave
        self.middle_left = middle_left
        self.middle_right = middle_right

    @property
    def middle(self):
        return self.middle_left if self.middle_left is not None \
            else self.middle_right

    def waves(self):
        return [w for w in (self.left_wave, self.right_wave) if w is not None]

    def sizes(self):
        return tuple(w.sigma if w is not None else 0.0
                     for w in (self.left_wave, self.right_wave))

    def __repr__(self):
        return 'RiemannSolution(%s, %r, %r)' % (
            self.problem, self.left_wave, self.right_wave)


def characteristic_speed(law, family, u):
    c = law.sound_speed(u.tau)
    return -c if family == 1 else c


def shock_speed(law, family, left, right):
    """Rankine-Hugoniot speed -/+ sqrt(-[p]/[tau])."""
    dtau = right.tau - left.tau
    dp = right.p - left.p
    if dtau == 0.0 or dp == 0.0:
        s = law.sound_speed(left.tau)
    else:
        s = math.sqrt(max(-dp / dtau, 0.0))
    return -s if family == 1 else s


def _gas_dv(law, family, p, tau, sigma):
    """Velocity increment along the gas curve of `family` from the state
    (tau, p) with size sigma."""
    if sigma == 0.0:
        return 0.0
    p1 = p - sigma if family == 1 else p + sigma
    if not p1 > 0:
        raise CurveDomainError(family, p, sigma)
    if sigma < 0:
        jump = law.tau(p1) - tau
        if family == 1:
            return -math.sqrt(max(jump * sigma, 0.0))
        return -math.sqrt(max(-jump * sigma, 0.0))
    if family == 1:
        return law.rarefaction_integral(p1, p)
    return law.rarefaction_integral(p, p1)


def lax_curve_gas(u, family, sigma, law):
    """State reached from u along the gas Lax curve of `family`."""
    if sigma == 0:
        return u
    dv = _gas_dv(law, family, u.p, u.tau, sigma)
    p1 = u.p - sigma if family == 1 else u.p + sigma
    return law.state_at_pressure(p1, u.v + dv)


def lax_curve_liquid(u, family, sigma, law):
    if sigma == 0:
        return u
    p1 = u.p - sigma if family == 1 else u.p + sigma
    return law.state_at_pressure(p1, u.v + sigma / law.eta)


def _gas_wave(law, family, sigma, left, right):
    if sigma < 0:
        s = shock_speed(law, family, left, right)
        return Wave(family, sigma, SHOCK, left, right, (s, s))
    lo = characteristic_speed(law, family, left)
    hi = characteristic_speed(law, family, right)
    return Wave(family, sigma, RAREFACTION, left, right, (lo, hi))


def _liquid_wave(law, family, sigma, left, right):
    s = -law.eta if family == 1 else law.eta
    return Wave(family, sigma, LINEAR, left, right, (s, s))


def _middle_pressure(problem, f, p_a, p_b, guess, left, right):
    lo = min(p_a, p_b) / config.BRACKET_FACTOR
    hi = max(p_a, p_b) * config.BRACKET_FACTOR
    try:
        lo, hi, flo, fhi = roots.expand_bracket(f, lo, hi)
        return roots.newton_bisect(f, lo, hi, x0=guess, flo=flo, fhi=fhi)
    except (BracketError, NoConvergence, CurveDomainError) as e:
        raise RiemannNoSolution(problem, left, right, str(e))


def _acoustic_guess(p_a, z_a, v_a, p_b, z_b, v_b):
    """Intersection of the linearized curves v_a - (p - p_a)/z_a and
    v_b + (p - p_b)/z_b."""
    p = (v_a - v_b + p_a / z_a + p_b / z_b) / (1.0 / z_a + 1.0 / z_b)
    return p if p > 0 else None


def _same(uL, uR):
    return uL.p == uR.p and uL.v == uR.v


def solve_riemann_gas(uL, uR, law):
    if _same(uL, uR):
        return RiemannSolution(GAS_GAS, None, None, uL, uL)

    def mismatch(p):
        v1 = uL.v + _gas_dv(law, 1, uL.p, uL.tau, uL.p - p)
        v2 = uR.v - _gas_dv(law, 2, p, law.tau(p), uR.p - p)
        return v1 - v2

    guess = _acoustic_guess(uL.p, law.sound_speed(uL.tau), uL.v,
                            uR.p, law.sound_speed(uR.tau), uR.v)
    p_m = _middle_pressure(GAS_GAS, mismatch, uL.p, uR.p, guess, uL, uR)
    sigma1 = uL.p - p_m
    sigma2 = uR.p - p_m
    middle = lax_curve_gas(uL, 1, sigma1, law)
    left = _gas_wave(law, 1, sigma1, uL, middle)
    right = _gas_wave(law, 2, sigma2, middle, uR)
    return RiemannSolution(GAS_GAS, left, right, middle, middle)


def solve_riemann_liquid(uL, uR, law):
    eta = law.eta
    dv = uR.v - uL.v
    dp = uR.p - uL.p
    sigma1 = 0.5 * (eta * dv - dp)
    sigma2 = 0.5 * (eta * dv + dp)
    middle = lax_curve_liquid(uL, 1, sigma1, law)
    left = _liquid_wave(law, 1, sigma1, uL, middle)
    right = _liquid_wave(law, 2, sigma2, middle, uR)
    return RiemannSolution(LIQUID_LIQUID, left, right, middle, middle)


def solve_interface_left(u_gas, u_liq, gas, liq):
    """Junction at z=0: gas on the left, liquid on the right. The gas
    1-curve from u_gas meets the liquid 2-curve ending at u_liq, where
    v* = v_liq + (p* - p_liq)/eta."""
    eta = liq.eta

    def mismatch(p):
        v1 = u_gas.v + _gas_dv(gas, 1, u_gas.p, u_gas.tau, u_gas.p - p)
        return v1 - (u_liq.v + (p - u_liq.p) / eta)

    guess = _acoustic_guess(u_gas.p, gas.sound_speed(u_gas.tau), u_gas.v,
                            u_liq.p, eta, u_liq.v)
    if u_gas.p == u_liq.p and u_gas.v == u_liq.v:
        p_star = u_gas.p
    else:
        p_star = _middle_pressure(INTERFACE_LEFT, mismatch, u_gas.p, u_liq.p,
                                  guess, u_gas, u_liq)
    v_star = u_liq.v + (p_star - u_liq.p) / eta
    gas_mid = gas.state_at_pressure(p_star, v_star)
    liq_mid = liq.state_at_pressure(p_star, v_star)
    left = _gas_wave(gas, 1, u_gas.p - p_star, u_gas, gas_mid)
    right = _liquid_wave(liq, 2, u_liq.p - p_star, liq_mid, u_liq)
    return RiemannSolution(INTERFACE_LEFT, left, right, gas_mid, liq_mid)


def solve_interface_right(u_liq, u_gas, gas, liq):
    """Junction at z=m: liquid on the left, gas on the right."""
    eta = liq.eta

    def mismatch(p):
        v1 = u_liq.v + (u_liq.p - p) / eta
        v2 = u_gas.v - _gas_dv(gas, 2, p, gas.tau(p), u_gas.p - p)
        return v1 - v2

    guess = _acoustic_guess(u_liq.p, eta, u_liq.v,
                            u_gas.p, gas.sound_speed(u_gas.tau), u_gas.v)
    if u_gas.p == u_liq.p and u_gas.v == u_liq.v:
        p_star = u_gas.p
    else:
        p_star = _middle_pressure(INTERFACE_RIGHT, mismatch, u_liq.p, u_gas.p,
                                  guess, u_liq, u_gas)
    v_star = u_liq.v + (u_liq.p - p_star) / eta
    liq_mid = liq.state_at_pressure(p_star, v_star)
    gas_mid = gas.state_at_pressure(p_star, v_star)
    left = _liquid_wave(liq, 1, u_liq.p - p_star, u_liq, liq_mid)
    right = _gas_wave(gas, 2, u_gas.p - p_star, gas_mid, u_gas)
    return RiemannSolution(INTERFACE_RIGHT, left, right, liq_mid, gas_mid)


def solve_piston_left(u_gas, v_wall, gas):
    """Gas on the left of a wall moving with velocity v_wall: a single
    1-wave brings the gas velocity to v_wall."""
    if u_gas.v == v_wall:
        return RiemannSolution(PISTON_LEFT, None, None, u_gas, None)

    def mismatch(p):
        return u_gas.v + _gas_dv(gas, 1, u_gas.p, u_gas.tau, u_gas.p - p) \
            - v_wall

    c = gas.sound_speed(u_gas.tau)
    guess = u_gas.p + c * (u_gas.v - v_wall)
    if guess <= 0:
        guess = None
    p_star = _middle_pressure(PISTON_LEFT, mismatch, u_gas.p, u_gas.p, guess,
                              u_gas, v_wall)
    middle = lax_curve_gas(u_gas, 1, u_gas.p - p_star, gas)
    left = _gas_wave(gas, 1, u_gas.p - p_star, u_gas, middle)
    return RiemannSolution(PISTON_LEFT, left, None, middle, None)


def solve_piston_right(v_wall, u_gas, gas):
    """Gas on the right of a wall moving with velocity v_wall."""
    if u_gas.v == v_wall:
        return RiemannSolution(PISTON_RIGHT, None, None, None, u_gas)

    def mismatch(p):
        return v_wall - (u_gas.v - _gas_dv(gas, 2, p, gas.tau(p),
                                           u_gas.p - p))

    c = gas.sound_speed(u_gas.tau)
    guess = u_gas.p + c * (v_wall - u_gas.v)
    if guess <= 0:
        guess = None
    p_star = _middle_pressure(PISTON_RIGHT, mismatch, u_gas.p, u_gas.p, guess,
                              v_wall, u_gas)
    v_star = u_gas.v - _gas_dv(gas, 2, p_star, gas.tau(p_star),
                               u_gas.p - p_star)
    middle = gas.state_at_pressure(p_star, v_star)
    right = _gas_wave(gas, 2, u_gas.p - p_star, middle, u_gas)
    return RiemannSolution(PISTON_RIGHT, None, right, None, middle)
