"""zcverify: exact verification engine for torsion-unit constraints in
integral group rings of small finite groups.

The package builds explicit Cayley-table groups, runs a HeLP-style partial
augmentation filter with exact cyclotomic arithmetic, evaluates an induced
character multiplicity identity, and machine-checks a battery of structural
lemmas about cyclic-by-nilpotent and cyclic-by-Hamiltonian groups.
"""

from .cyclotomic import CyclotomicNumber, zeta
from .groups import (
    ConjugacyClass,
    FiniteGroup,
    GroupError,
    QuotientMap,
    StructureReport,
    Subgroup,
    centralizer,
    closure,
    conjugacy_classes,
    normalizer,
    pi_parts,
    quotient,
    structure_report,
)
from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"
