"""Weak-MZI test suite."""
