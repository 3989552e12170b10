"""Valued fields of positive and mixed characteristic: Hahn series, rational
function fields and their perfect hulls, ramification and defect of simple
extensions, Hensel and Artin-Schreier approximation, pseudo-Cauchy traces,
field classification, and decision procedures for ordered abelian groups."""

from .classify import (HENS, MAXP, RFD, V0, VGD, VT, AxiomVerdict, FieldClassification, Status,
                       Verdict, check_axiom_instance, classify_field, kaplansky_check)
from .dsl import (parse_element, parse_field, parse_group, parse_input, parse_mpoly,
                  parse_poly)
from .errors import *  # noqa: F401,F403
from .extension import (ExtensionReport, analyze_extension, artin_schreier_analyze,
                        defect_multiplicativity_check, fundamental_inequality_check)
from .finfield import QQ, FiniteField, field_of_order, fq_make, fq_poly_factor, prime_field
from .gauss import (GaussAssignment, MPoly, check_svtb, gauss_residue, gauss_value,
                    leading_form, witness_value, wtd_check)
from .hensel import (NoRoot, as_root_in_field, artin_schreier_trace, hensel_lift,
                     newton_polygon)
from .ogroup import INFINITY, Atom, GroupElem, OrderedGroup
from .pcs import (artin_schreier_prefix, geometric_prefix, pcs_limit_in_field, pcs_poly_trace,
                  pcs_validate)
from .suite import run_suite
from .upoly import UPoly
from .valfield import HahnField, HahnSeries, RatFuncElem, RatFuncField

__version__ = "0.1.0"
