"""First layer of the anti-cyclotomic Z_3-extension of imaginary quadratic fields."""

__version__ = "0.1.0"
