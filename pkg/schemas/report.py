# ---- File: schemas/report.py ----

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

# --- Report documents written by the command-line tool ---
# Every scalar is an exact string ("p/q" or polynomial text); floats never appear.


class FormSpaceModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    degree: int
    role: str = Field(..., description="invariant, closed, exact or harmonic")
    dim: int
    forms: List[str] = Field(default_factory=list, description="Basis forms written in the labels of m")
    coordinates: List[List[str]] = Field(default_factory=list, description="Coordinates in the invariant basis")
    pivots: List[str] = Field(default_factory=list, description="Pivot polynomials assumed nonzero")


class BettiModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    betti: List[int]
    invariant_dims: List[int]
    euler_characteristic: int
    poincare_duality: bool


class WitnessModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    degrees: List[int]
    indices: List[int]
    product: str
    exact_index: Optional[int] = None
    pairing: Optional[str] = None
    primitive: Optional[str] = None
    note: str = ""


class FormalityModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    verdict: str
    reason: str = ""
    witnesses: List[WitnessModel] = Field(default_factory=list)
    obstructions: List[str] = Field(default_factory=list)
    assumptions: List[str] = Field(default_factory=list)
    checked_degrees: List[List[int]] = Field(default_factory=list)


class RootModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    lower: str
    upper: str
    exact: bool


class ObstructionModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    polynomial: str
    univariate: bool
    real_roots: List[RootModel] = Field(default_factory=list)
    positive_roots: List[RootModel] = Field(default_factory=list)


class ObstructionReportModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    degrees: List[int]
    products_tested: int
    obstructions: List[ObstructionModel] = Field(default_factory=list)
    pivots: List[str] = Field(default_factory=list)


class DerivationStepModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: str
    statement: str


class TrivialityModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    status: str
    reason: str = ""
    witness: Optional[List[str]] = None
    derivation: List[DerivationStepModel] = Field(default_factory=list)


class PolySystemModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    degree: int
    power: int
    space: str
    variables: List[str]
    basis: List[str] = Field(default_factory=list)
    generators: List[str] = Field(default_factory=list)


class SampleCheckModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    sample: int = Field(..., description="Index of the random admissible metric")
    dim: int
    betti: int
    agrees: bool


class Report(BaseModel):
    """Top-level document; only the sections the command produced are present."""

    model_config = ConfigDict(extra="forbid")

    command: str
    space: str
    parameters: List[str] = Field(default_factory=list)
    specialized: Dict[str, str] = Field(default_factory=dict)
    validation: Optional[List[str]] = None
    betti: Optional[BettiModel] = None
    form_spaces: List[FormSpaceModel] = Field(default_factory=list)
    differential: Optional[List[List[str]]] = None
    formality: Optional[FormalityModel] = None
    obstructions: List[ObstructionReportModel] = Field(default_factory=list)
    system: Optional[PolySystemModel] = None
    triviality: Optional[TrivialityModel] = None
    samples: List[SampleCheckModel] = Field(default_factory=list)
    catalog: List[str] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
