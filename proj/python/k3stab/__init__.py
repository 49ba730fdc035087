"""Exact numerics for stability conditions on K3 surfaces with a (-2)-curve.

Rational inputs accept int, fractions.Fraction or strings such as "3/2";
rational outputs are fractions.Fraction. Divisor classes are lists of
coordinates in the lattice basis.
"""

from ._k3stab import *  # noqa: F401,F403
from ._k3stab import K3StabError  # noqa: F401
