"""Physical constants used throughout the toolkit (SI units)."""

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact
PLANCK = 6.626_070_15e-34  # J s, exact
HBAR = 1.054_571_817e-34  # J s, CODATA derived value
