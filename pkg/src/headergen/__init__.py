"""Static annotation of undocumented notebooks with ML-operation headers."""

__version__ = "0.1.0"
