"""Physical constants (CODATA 2018), hard-coded to keep the package dependency-light.

Values carry 12 significant digits; scipy.constants can be used as an
independent cross-check in tests but is not a runtime dependency.
"""

# Reduced Planck constant [J s].  h = 6.62607015e-34 J s is exact since the
# 2019 SI redefinition; hbar = h / (2 pi).
HBAR = 1.05457181765e-34

# Unified atomic mass unit [kg].
ATOMIC_MASS = 1.66053906660e-27
