"""Base-extension semantics for classical propositional logic, with sequent proofs.

The main entry points are re-exported here; see the submodules for details.
"""

from .bases import (
    HS,
    HS_BASE,
    ST,
    ST_BASE,
    Base,
    Derivation,
    GroundRule,
    axiom,
    check_derivation,
    derivable,
    derivation,
    extend,
    format_base,
    make_base,
    parse_base,
    rule,
    saturate,
)
from .clp import Proof, ProofError, Provable, Refutable, Rule, check_proof, eliminate_cuts, is_proof, prove
from .simulation import (
    AtomicMapping,
    ExtractionReport,
    atomic_mapping,
    extract_proof,
    prepend_context,
    prop6_counterexample,
    rewrite_q_rules,
    simulation_base,
    substitute,
)
from .support import (
    Judgment,
    NotSupported,
    Supported,
    Unknown,
    parse_judgment,
    support_atomic,
    support_oracle,
    support_refute,
    unfold,
    valid,
)
from .syntax import (
    BOT,
    And,
    Atom,
    Bottom,
    Imp,
    Or,
    ParseError,
    Sequent,
    atoms_of,
    degree,
    neg,
    parse_formula,
    parse_sequent,
    render,
    subformulas,
)

__version__ = "0.1.0"

__all__ = [
    "And",
    "Atom",
    "AtomicMapping",
    "BOT",
    "Base",
    "Bottom",
    "Derivation",
    "ExtractionReport",
    "GroundRule",
    "HS",
    "HS_BASE",
    "Imp",
    "Judgment",
    "NotSupported",
    "Or",
    "ParseError",
    "Proof",
    "ProofError",
    "Provable",
    "Refutable",
    "Rule",
    "ST",
    "ST_BASE",
    "Sequent",
    "Supported",
    "Unknown",
    "atomic_mapping",
    "atoms_of",
    "axiom",
    "check_derivation",
    "check_proof",
    "degree",
    "derivable",
    "derivation",
    "eliminate_cuts",
    "extend",
    "extract_proof",
    "format_base",
    "is_proof",
    "make_base",
    "neg",
    "parse_base",
    "parse_formula",
    "parse_judgment",
    "parse_sequent",
    "prepend_context",
    "prop6_counterexample",
    "prove",
    "render",
    "rewrite_q_rules",
    "rule",
    "saturate",
    "simulation_base",
    "subformulas",
    "substitute",
    "support_atomic",
    "support_oracle",
    "support_refute",
    "unfold",
    "valid",
]
