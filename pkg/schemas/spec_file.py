# ---- File: schemas/spec_file.py ----

from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, model_validator

# Exact scalars are written as strings ("3/4", "1/t") or plain integers; floats are rejected
ExactText = Union[StrictInt, str]

# --- Homogeneous space files ---


class AlgebraModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dim: int = Field(..., ge=0, description="Dimension of g")
    labels: Optional[List[str]] = Field(None, description="Basis labels of g; defaults to g0..g{dim-1}")
    brackets: List[Tuple[int, int, List[Tuple[int, ExactText]]]] = Field(
        default_factory=list, description="Nonzero brackets [e_i, e_j] = sum c_k e_k as (i, j, [(k, c_k), ...])"
    )


class MatrixEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    row: int = Field(..., ge=0)
    col: int = Field(..., ge=0)
    value: List[ExactText] = Field(..., description="1 (real), 2 (complex) or 4 (quaternion) components")


class RepresentationModel(BaseModel):
    """Matrices of the basis of g; the structure constants must agree with their commutators."""

    model_config = ConfigDict(extra="forbid")

    field: Literal["real", "complex", "quaternion"] = "real"
    matrices: List[List[MatrixEntry]] = Field(..., description="One sparse matrix per basis element of g")


class BlockModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    indices: List[int] = Field(..., description="Indices into the basis of m")


class MetricModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    weights: Optional[Dict[str, ExactText]] = Field(None, description="Block name -> weight; metric = weight * Q on the block")
    gram: Optional[List[List[ExactText]]] = Field(None, description="Full Gram matrix on the basis of m")

    @model_validator(mode="after")
    def _one_kind(self) -> "MetricModel":
        if (self.weights is None) == (self.gram is None):
            raise ValueError("metric needs exactly one of 'weights' or 'gram'")
        return self


class SpecFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., description="Name of the homogeneous space")
    algebra: AlgebraModel
    q_form: Union[Literal["negative_half_trace"], List[List[ExactText]]] = Field(
        ..., description="Gram matrix of the bi-invariant form Q, or negative_half_trace with a representation"
    )
    representation: Optional[RepresentationModel] = None
    h_basis: List[List[ExactText]] = Field(..., description="Basis of h as coordinate vectors in g")
    m_basis: Optional[List[List[ExactText]]] = Field(None, description="Basis of m; defaults to the Q-orthogonal complement")
    m_labels: Optional[List[str]] = None
    blocks: List[BlockModel] = Field(default_factory=list)
    metric: Optional[MetricModel] = None
    parameters: List[str] = Field(default_factory=list, description="Metric parameters, declared positive")
    samples: List[Dict[str, ExactText]] = Field(default_factory=list, description="Positive parameter points for checks")
    notes: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _representation_present(self) -> "SpecFile":
        if self.q_form == "negative_half_trace" and self.representation is None:
            raise ValueError("q_form 'negative_half_trace' requires a 'representation' block")
        return self


# --- Abstract DGA files ---


class ElementModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    degree: int = Field(..., ge=0)


class ProductModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    left: str
    right: str
    result: Dict[str, ExactText]


class ClassModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    degree: int = Field(..., ge=0)


class DgaFile(BaseModel):
    """Table form of a finite graded-commutative differential algebra."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["dga"] = "dga"
    name: str = "dga"
    elements: List[ElementModel]
    unit: Optional[str] = None
    products: List[ProductModel] = Field(default_factory=list)
    differential: Dict[str, Dict[str, ExactText]] = Field(default_factory=dict)
    classes: List[ClassModel] = Field(default_factory=list)
    relations: List[str] = Field(default_factory=list, description="Polynomials in the class names that vanish in cohomology")
    notes: List[str] = Field(default_factory=list)
