"""HL7 v3 data types: nullflavors, three-valued logic, exact quantities with
UCUM units, timestamps, intervals, coded values and identifiers."""
from .anyvalue import AnyValue, TypeTag, downcast, upcast
from .errors import HL7Error
from .identity import II, IN, ii_equal, ii_parse, ii_print
from .interval import IVL, demotion, ivl_contains, ivl_equal, ivl_identical, ivl_overlaps, ivl_parse, ivl_print, promotion
from .logic import BL, BN, LogicMode, bl_binary, bl_not, bl_parse, truth_table
from .nullflavor import NullFlavor, lca, parse_nullflavor
from .numeric import Real, real_parse, real_print
from .quantity import PQ, pq_compare, pq_convert, pq_equal, pq_identical, pq_order, pq_parse, pq_print
from .terminology import CV, ConceptRegistry, cv_accessor, cv_parse, cv_print, implies
from .timestamp import TS, ts_diff, ts_parse, ts_print, ts_shift
from .ucum import UnitRegistry, canonicalize, unit_parse

__version__ = "0.1.0"
