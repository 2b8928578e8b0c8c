"""GenPerm: vertex-centric community scoring and MaxGenPerm detection."""

__version__ = "0.3.0"
