"""Exact arithmetic for cyclotomic rings and the cyclic covers of the line they describe."""

__version__ = "0.1.0"
