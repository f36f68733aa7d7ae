"""
Pressure laws for the two phases. The gas follows p = K tau^-gamma; the
liquid is the affine law p = p_bar - eta^2 (tau - tau_bar), whose
characteristic speeds are exactly -eta and +eta.

States are stored as (tau, v) together with the pressure given by the
law that produced them, so algorithms can work in the (p, v) chart
without converting back and forth.
"""

import math
import logging
from collections import namedtuple

from scipy import integrate

from droplet.fronts import config
from droplet.fronts.exc import DomainError


_log = logging.getLogger('droplet.fronts.pressure')


class State(namedtuple('State', ['tau', 'v', 'p'])):
    """Constant fluid state. `p` is the pressure of the law the state was
    built with; compare states of the same phase only."""
    __slots__ = ()

    def pv_distance(self, other):
        return max(abs(self.p - other.p), abs(self.v - other.v))

    def as_data(self):
        return dict(tau=self.tau, v=self.v, p=self.p)


class GasLaw(object):
    """p(tau) = K tau^(-gamma), gamma >= 1."""

    def __init__(self, K=config.DEFAULT_GAS_K, gamma=config.DEFAULT_GAS_GAMMA):
        if not K > 0:
            raise ValueError("gas coefficient K must be positive: %r" % K)
        if not gamma >= 1:
            raise ValueError("adiabatic exponent must be >= 1: %r" % gamma)
        self.K = float(K)
        self.gamma = float(gamma)

    def __repr__(self):
        return 'GasLaw(K=%r, gamma=%r)' % (self.K, self.gamma)

    def pressure(self, tau):
        if not tau > 0:
            raise DomainError("gas specific volume must be positive: %r" % tau)
        return self.K * tau ** (-self.gamma)

    def tau(self, p):
        if not p > 0:
            raise DomainError("gas pressure must be positive: %r" % p)
        return (self.K / p) ** (1.0 / self.gamma)

    def dp_dtau(self, tau):
        if not tau > 0:
            raise DomainError("gas specific volume must be positive: %r" % tau)
        return -self.gamma * self.K * tau ** (-self.gamma - 1.0)

    def d2p_dtau2(self, tau):
        if not tau > 0:
            raise DomainError("gas specific volume must be positive: %r" % tau)
        return (self.gamma * (self.gamma + 1.0) * self.K
                * tau ** (-self.gamma - 2.0))

    def sound_speed(self, tau):
        """Lagrangian sound speed sqrt(-p'(tau)); lambda_1 = -c, lambda_2 = c."""
        if not tau > 0:
            raise DomainError("gas specific volume must be positive: %r" % tau)
        return (math.sqrt(self.gamma * self.K)
                * tau ** (-(self.gamma + 1.0) / 2.0))

    def sound_speed_at_pressure(self, p):
        return self.sound_speed(self.tau(p))

    def rarefaction_integral(self, p_from, p_to):
        """Integral of sqrt(-tau'(pi)) = 1/c(pi) from p_from to p_to."""
        if p_from == p_to:
            return 0.0
        if not (p_from > 0 and p_to > 0):
            raise DomainError("rarefaction through non-positive pressure: "
                              "%r -> %r" % (p_from, p_to))
        value, _ = integrate.quad(
            lambda pi: 1.0 / self.sound_speed_at_pressure(pi),
            p_from, p_to, epsabs=config.QUAD_ABS_TOL,
            epsrel=config.QUAD_REL_TOL)
        return value

    def state(self, tau, v):
        return State(tau, v, self.pressure(tau))

    def state_at_pressure(self, p, v):
        return State(self.tau(p), v, p)


class LiquidLaw(object):
    """p(tau) = p_bar - eta^2 (tau - tau_bar)."""

    def __init__(self, p_bar, tau_bar, eta):
        if not tau_bar > 0:
            raise ValueError("reference specific volume must be positive: %r"
                             % tau_bar)
        if not eta > 0:
            raise ValueError("liquid stiffness must be positive: %r" % eta)
        self.p_bar = float(p_bar)
        self.tau_bar = float(tau_bar)
        self.eta = float(eta)

    def __repr__(self):
        return 'LiquidLaw(p_bar=%r, tau_bar=%r, eta=%r)' % (
            self.p_bar, self.tau_bar, self.eta)

    def with_eta(self, eta):
        return LiquidLaw(self.p_bar, self.tau_bar, eta)

    def pressure(self, tau):
        return self.p_bar - self.eta ** 2 * (tau - self.tau_bar)

    def tau(self, p):
        tau = self.tau_bar - (p - self.p_bar) / self.eta ** 2
        if tau <= 0:
            _log.warning("liquid pressure %r gives tau=%r <= 0 at eta=%r, "
                         "outside the stiff regime", p, tau, self.eta)
        return tau

    def dp_dtau(self, tau):
        return -self.eta ** 2

    def sound_speed(self, tau=None):
        return self.eta

    def state(self, tau, v):
        return State(tau, v, self.pressure(tau))

    def state_at_pressure(self, p, v):
        return State(self.tau(p), v, p)
