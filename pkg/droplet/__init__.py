"""
Wave front tracking for a gas/liquid/gas Lagrangian slab and its
incompressible limit.
"""
