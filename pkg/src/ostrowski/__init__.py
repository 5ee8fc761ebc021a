"""Exact and one-sided arithmetic for absolute values on the integers."""
