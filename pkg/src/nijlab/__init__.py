"""nijlab: almost complex structures with small Nijenhuis tensor on Lie algebras."""

__version__ = "0.1.0"
