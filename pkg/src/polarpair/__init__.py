"""polarpair: field-engineered interactions of cold polar molecule pairs.

Library layout
--------------
``angular``    exact Clebsch-Gordan / Wigner rotation algebra
``rotor``      single-molecule pendulum spectra, dipole moments, AC dressing
``pair``       two-molecule surfaces, coefficient tables, characteristic scales
``dressing``   rotating-wave dressed potentials (AC and DC+AC), Condon points
``trap``       transverse confinement: saddles, 2D reduction, z-bands
``instanton``  tunneling paths and euclidean actions through the barrier
``cli``        batch front end emitting CSV datasets with manifests

Internal unit system: B = hbar = d = 1 (see ``units``).
"""

from .units import MoleculeParams
from .rotor import pendulum_spectrum, dipole_moments, table1_perturbative, ac_dressed_levels, tensor_shift
from .pair import (PairBasis, StateLabel, Surface, vdd_matrix, bare_surfaces,
                   fit_long_range, table2_rows, table3_rows, v_eff_3d_dc,
                   characteristic_scales)

__version__ = "0.1.0"
