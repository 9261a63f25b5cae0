"""High-precision values with certified error bounds."""

from mpmath import mp

from core.config import settings

mp.dps = settings.precision_digits
