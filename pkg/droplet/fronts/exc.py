"""
Exceptions.
"""


class FrontsException(Exception):
    pass


class DomainError(FrontsException, ValueError):
    pass


class CurveDomainError(DomainError):
    def __init__(self, family, base_p, sigma):
        Exception.__init__(self,
            "family %d curve from p=%r with size %r leaves p > 0"
            % (family, base_p, sigma))


class BracketError(FrontsException):
    pass


class NoConvergence(FrontsException):
    def __init__(self, iterations, x, residual):
        Exception.__init__(self, "no root after %d iterations: x=%r, |f|=%r"
                           % (iterations, x, residual))
        self.x = x
        self.residual = residual


class RiemannNoSolution(FrontsException):
    def __init__(self, problem, left, right, reason):
        Exception.__init__(self, "%s Riemann problem %r -> %r: %s"
                           % (problem, left, right, reason))
        self.problem = problem
        self.left = left
        self.right = right


class AccumulationSuspected(FrontsException):
    def __init__(self, cap, time, events):
        Exception.__init__(self,
            "interaction cap %d exceeded at t=%r, last event: %s"
            % (cap, time, events[-1] if events else None))
        self.cap = cap
        self.time = time
        self.events = events


class PropertyViolation(FrontsException):
    def __init__(self, verdict, verdicts=None):
        Exception.__init__(self, "property violated: %s" % (verdict,))
        self.verdict = verdict
        self.verdicts = verdicts or [verdict]


class ScenarioParseError(FrontsException):
    pass
