"""Driven two-well BEC and tilted-lattice Bose-Hubbard simulator."""

__version__ = "0.1.0"
