"""Exact computation and identity auditing for telephone-exchange number families."""

__version__ = "0.1.0"
