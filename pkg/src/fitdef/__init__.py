"""Fitting subgroups, soluble radicals and their first-order definitions."""

__version__ = "0.1.0"
