"""Finite multiple Hurwitz zeta values and their structural identities."""
