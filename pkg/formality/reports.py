# ---- File: formality/reports.py ----

"""Result types shared by the formality checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from algebra.polynomial import Poly
from algebra.roots import RootInterval
from algebra.scalars import Scalar

FORMAL = "Formal"
NOT_FORMAL = "NotFormal"
UNDECIDED = "Undecided"

TRIVIAL = "Trivial"
NONTRIVIAL = "Nontrivial"

HOMOGENEOUS_ASSUMPTIONS = (
    "H is connected, so invariant forms compute the real cohomology of G/H",
    "harmonic forms of an invariant metric are invariant; harmonicity is tested against invariant exact forms only",
)


@dataclass(frozen=True)
class Witness:
    """A product of harmonic basis forms that fails to be harmonic."""

    degrees: Tuple[int, ...]
    indices: Tuple[int, ...]
    product: str
    exact_index: Optional[int] = None
    pairing: Optional[Scalar] = None
    primitive: Optional[str] = None
    note: str = ""


@dataclass
class FormalityReport:
    verdict: str
    witnesses: List[Witness] = field(default_factory=list)
    obstructions: List[Poly] = field(default_factory=list)
    assumptions: List[str] = field(default_factory=list)
    checked_degrees: List[Tuple[int, ...]] = field(default_factory=list)
    reason: str = ""


@dataclass(frozen=True)
class ObstructionPolynomial:
    polynomial: Poly
    real_roots: Tuple[RootInterval, ...] = ()
    positive_roots: Tuple[RootInterval, ...] = ()
    univariate: bool = False


@dataclass
class ObstructionReport:
    degrees: Tuple[int, int]
    obstructions: List[ObstructionPolynomial] = field(default_factory=list)
    pivots: List[Poly] = field(default_factory=list)
    products_tested: int = 0

    @property
    def polynomials(self) -> List[Poly]:
        return [o.polynomial for o in self.obstructions]


@dataclass(frozen=True)
class PolySystem:
    variables: Tuple[str, ...]
    generators: Tuple[Poly, ...]
    degree: int = 0
    power: int = 0
    space: str = "closed"
    # text of the basis form behind each variable
    basis: Tuple[str, ...] = ()


@dataclass(frozen=True)
class DerivationStep:
    kind: str
    statement: str
    combination: Dict[int, Fraction] = field(default_factory=dict)


@dataclass
class TrivialityVerdict:
    status: str
    witness: Optional[Tuple[Fraction, ...]] = None
    derivation: List[DerivationStep] = field(default_factory=list)
    reason: str = ""
