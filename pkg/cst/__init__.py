"""Exact-arithmetic convex spaces and their law checkers."""
