"""Weak homomorphisms, Brown complexes of p-subgroups and their
equivariant constant-transition line bundles, computed exactly."""

__version__ = "0.1.0"
