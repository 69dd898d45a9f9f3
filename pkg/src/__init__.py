"""CFLA - complex fuzzy Lie subalgebras and ideals over finite fields."""

__version__ = "0.1.0"
