"""Higher Bruhat orders and Steenrod cup-i coproducts."""

__version__ = "0.1.0"
