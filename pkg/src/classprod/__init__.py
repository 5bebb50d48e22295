"""Conjugacy-class products in GL(n,q) and SL(n,q) over small finite fields."""

from classprod.bounds import TraceSetReport, certified_lower_bound, trace_sweep
from classprod.canonical import ClassId, arrange_for_hypothesis, class_id
from classprod.classgroup import EtaReport, GroupSpec, conjugacy_classes, eta_exact, group_data, min_scan
from classprod.errors import BudgetExceeded, CentralInput, ClassProdError, FieldMismatch, MalformedInput
from classprod.field import FieldSpec, make_field, parse_field
from classprod.kernels import BACKEND
from classprod.matrices import ConjugatorSpec, Mat, companion, conjugate, parse_matrix
from classprod.polyring import Poly, parse_poly

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "CentralInput",
    "ClassId",
    "ClassProdError",
    "ConjugatorSpec",
    "EtaReport",
    "FieldMismatch",
    "FieldSpec",
    "GroupSpec",
    "MalformedInput",
    "Mat",
    "Poly",
    "TraceSetReport",
    "arrange_for_hypothesis",
    "certified_lower_bound",
    "class_id",
    "companion",
    "conjugacy_classes",
    "conjugate",
    "eta_exact",
    "group_data",
    "make_field",
    "min_scan",
    "parse_field",
    "parse_matrix",
    "parse_poly",
    "trace_sweep",
]
