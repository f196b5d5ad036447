"""Exact arithmetic for the rational cuspidal divisor class group C(N) of X0(N).

Subpackages:
  intarith    -- factorizations, divisor lattice, kappa, exponent-tuple index sets
  cusps       -- canonical cusp representatives, widths, operator actions on cusps
  divisors    -- the lattices S1(N)/S2(N), tensor structure, operator actions
  etalinalg   -- the matrices Lambda(N)/Upsilon(N), Ligozat checks, eta q-expansions
  orderengine -- order algorithm, eta certificates, closed-form order theorems
  generators  -- canonical generator constructions Z/Y and their predicted orders
  structure   -- group assembly, certificate verification, SNF lattice oracle
  cli         -- command-line front end
"""

__version__ = "0.1.0"
