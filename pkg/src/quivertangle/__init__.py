"""Quiver presentations of colored HOMFLY-PT invariants of rational
(2-bridge) links, with an independent skein-theoretic oracle."""

__version__ = "0.1.0"
