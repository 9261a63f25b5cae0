"""Residual verification of the parity theorems, their finite and truncated forms, and the supporting bounds."""
