"""Physical constants in Hartree atomic units."""

import math

# Thomas-Fermi coefficient (3/10) (3 pi^2)^(2/3), about 2.871234.
CTF = 0.3 * (3.0 * math.pi**2) ** (2.0 / 3.0)

TWO_PI = 2.0 * math.pi
