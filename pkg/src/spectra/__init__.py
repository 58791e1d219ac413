"""Exact obstruction checks for determinantal (LMI) representability.

Modules:
  polyx     exact sparse multivariate polynomials over Q and Q(i)
  bitsets   subsets of small ground sets as bitmasks
  matroid   matroids by bases, the Vamos cube, rank functions
  polymat   polymatroid axioms, Ingleton inequality, rank tables
  jumpsys   jump systems and support lemmas
  detrep    determinant expansion, Cauchy-Binet, arrangement ranks
  reduce    numeric size reduction of monic pencils
  realcheck Sturm-exact real-rootedness and directional certification
  cli       the `spectra` command
"""

__version__ = "0.1.0"
