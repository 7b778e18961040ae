"""Exact de Rham cohomology of nilmanifolds and their symplectic invariants.

Everything is computed on the Chevalley-Eilenberg complex of the Lie algebra
with exact rational arithmetic.
"""

from .complex import (CohomologyBasis, CohomologyClass, Differential, build_differential,
                      cohomology, cup, poincare_pairing)
from .errors import (DegenerateFormError, DimensionMismatch, InputError, JacobiError,
                     NilcohomError, NotClosedError, OddDimensionError,
                     OracleMismatch, ParseError)
from .exterior import Form, interior, top_coefficient, wedge
from .lie import (AlgebraReport, StructureConstants, direct_sum, parse_algebra,
                  parse_algebra_file, parse_form, serialize, validate)
from .massey import MasseyResult, scan_triple_massey, triple_massey
from .symplectic import (FlexReport, HarmonicSummary, SymplecticData, check_symplectic,
                         evenness_skew_form, flex_scan, hard_lefschetz, harmonic_cohomology,
                         koszul_delta, lefschetz_rank, star)

__version__ = "0.1.0"
