"""Exact finite completions of generalized metric spaces and preorders."""

__version__ = "0.1.0"
