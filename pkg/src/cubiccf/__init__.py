"""Continued fractions of Laurent series roots of cubics over GF(2^k)[x]."""
from .gf import GF2, GF4, GF8, FieldElem, FieldMismatch, FieldSpec, field_by_name
from .poly import Poly, content_normalize, gcd
from .laurent import (CASE_A, CASE_B, CASE_C, THREE_GF2_ROOTS, Cubic, LaurentSeries,
                      PrecisionError)
from .roots import (Convergent, SeriesExhausted, classical_cf, convergents, has_rational_root,
                    irreducible_over_closure, newton_polygon_roots)
from .engine import (INCONCLUSIVE, PROBABLE_BOUNDED, RATIONAL, UNBOUNDED, AutomatonLog, EngineError,
                     EngineMismatch, EngineStall, ExpansionReport, MRState, canonical_state,
                     detect_unbounded, flt_from_cubic, iter_quotients, run_expansion)
from .survey import (Substitution, SurveyRecord, apply_substitution, boundedness_transport_check,
                     classify_equation, enumerate_cubics, orbit_partition, substitution_group, survey)

__version__ = "0.1.0"
