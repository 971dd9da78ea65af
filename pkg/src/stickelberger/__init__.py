"""Exact Stickelberger-element calculus over abelian Galois groups, with
finite-module models of the K-theory localization sequence, splitting maps,
and Euler-system norm relations.

The package is organised as follows:

- ``exact``       exact rational/modular arithmetic, Bernoulli numbers
- ``galois``      abelian extensions of Q, Galois groups, Artin symbols, w_n
- ``zeta``        partial zeta values at negative integers; table ingestion
- ``group_ring``  group-ring elements over a finite abelian Galois group
- ``characters``  exact cyclotomic ring Q[x]/Phi_d and character groups
- ``theta``       Stickelberger elements and every exactly checkable identity
- ``finite_k``    cyclic models of Quillen's K-theory of finite fields
- ``modules``     finite modules over (Z/l^k)[G]; splitting-lemma machinery
- ``simulate``    localization-sequence scenarios and splitting-map checks
- ``euler``       Euler-system families over squarefree auxiliary conductors
- ``cli``         command-line front end (theta/zeta/wn/verify/simulate/...)
"""

from stickelberger.exact import (
    Rational,
    Residue,
    bernoulli_number,
    bernoulli_polynomial,
    l_valuation,
    unit_group,
)

__all__ = [
    "Rational",
    "Residue",
    "bernoulli_number",
    "bernoulli_polynomial",
    "l_valuation",
    "unit_group",
]

__version__ = "0.1.0"
