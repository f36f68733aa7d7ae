"""Front tracking for a gas | liquid slab | gas column in Lagrangian
coordinates: pressure laws, Riemann solvers, the event driven tracker, the
Glimm type functionals checked along a run, and the rigid droplet limit.
"""
