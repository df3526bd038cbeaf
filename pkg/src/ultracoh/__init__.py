"""Exact experiments on continuous cohomology of p-adic Lie groups.

Subpackages and modules:

- :mod:`ultracoh.scalars`: F_p((t)) at finite precision, exact rationals
- :mod:`ultracoh.banach`: finite-rank Banach spaces, sections, quasi-inverses
- :mod:`ultracoh.padic_groups`: congruence subgroups of GL_n(Z_p)
- :mod:`ultracoh.cochain_lab`: cochains on level windows, oracles, homotopy
- :mod:`ultracoh.lie`: Chevalley-Eilenberg cohomology over Q
"""

__version__ = "0.1.0"
