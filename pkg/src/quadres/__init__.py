"""Combinatorial free resolutions over quotients by quadratic monomials."""

from __future__ import annotations

from .complex import DUAL, PRIMAL, FreeComplex, dualize, from_diagram, verify_all, verify_dd_zero
from .diagram import (
    Diagram,
    DiagramError,
    InternalConsistencyError,
    InvalidInitialMapError,
    SignConflictError,
    build,
    extend_level,
    init_diagram,
)
from .ext import find_vv_patterns, injective_dimension_evidence
from .fields import DEFAULT_PRIME, QQ, PrimeField, parse_field
from .homology import conjecture_hunt, exactness_report, h0_check, homology_dims
from .oracles import BINARY, FIBONACCI, OFamily, compare, oracle_complex
from .ring import InvalidSpecError, Monomial, RingElement, RingSpec, hilbert_function, load_spec, normalize_spec

__version__ = "0.1.0"
