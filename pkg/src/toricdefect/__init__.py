"""Support-level analysis of overdetermined sparse polynomial systems."""

__version__ = "0.1.0"

from .collection import (
    AnalysisReport,
    Collection,
    analyze,
    consistency_codimension,
    consistent_basis_subcollection,
    defect,
    essential_subcollection,
    is_generically_consistent,
    minimal_defect,
)
from .counting import CountReport, ResultantDegrees, bkk_count, overdetermined_count, resultant_degrees, zero_set_dimension
from .errors import CapacityError, InternalConsistencyError, PreconditionError
from .polytope import MixedVolumeResult, Polytope, SupportSet, minkowski_sum, mixed_volume, newton_polytope, volume
from .reduction import Reduction, reduce, reduce_to_defect_one
