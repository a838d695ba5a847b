from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class StabilizerEntry(BaseModel):
    phase: str = "+1"
    paulis: str


class LogicalPair(BaseModel):
    """Representatives of one logical qudit, in Pauli text form (optionally signed)."""

    x: str
    z: str


class CodeDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = None
    q: int = 2
    n: int = Field(ge=1)
    stabilizers: List[Union[StabilizerEntry, str]] = []
    logical: Optional[List[LogicalPair]] = None

    @field_validator("stabilizers", mode="before")
    @classmethod
    def _entries(cls, value):
        return [{"paulis": v} if isinstance(v, str) else v for v in value or []]


class LegoEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    code: Union[CodeDocument, str]
    legs: List[str]
    # legs closed by a |0> ("zero") or |+> ("plus") stopper before contraction
    stoppers: Dict[str, Literal["zero", "plus"]] = {}

    @field_validator("id")
    @classmethod
    def _plain_id(cls, value: str) -> str:
        if not value or "." in value or "~" in value:
            raise ValueError(f"lego id {value!r} must be non-empty without '.' or '~'")
        return value


class DanglingLegs(BaseModel):
    physical: List[str] = []
    logical: List[str] = []


class ExpectedValues(BaseModel):
    distance: Optional[int] = None
    n: Optional[int] = None
    k: Optional[int] = None


class BuilderSpec(BaseModel):
    """Generate the legos from a named lattice builder instead of listing them."""

    kind: str
    rows: int = Field(default=3, ge=1)
    cols: int = Field(default=3, ge=1)
    length: int = Field(default=2, ge=1)


class NetworkDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = None
    q: int = 2
    scheme: str = "shor-laflamme"
    builder: Optional[BuilderSpec] = None
    legos: List[LegoEntry] = []
    contract: List[Tuple[str, str]] = []
    dangling: DanglingLegs = DanglingLegs()
    plan: Optional[List[str]] = None
    expected: Optional[ExpectedValues] = None

    @model_validator(mode="after")
    def _legos_or_builder(self):
        if not self.legos and self.builder is None:
            raise ValueError("network needs either 'legos' or a 'builder'")
        if self.legos and self.builder is not None:
            raise ValueError("'legos' and 'builder' are mutually exclusive")
        return self


class PolynomialModel(BaseModel):
    scheme: str
    q: int
    variables: List[str]
    terms: List[Dict[str, Any]]


class EnumeratorResult(BaseModel):
    name: Optional[str] = None
    n: int
    k: int
    q: int
    scheme: str
    convention: str
    a: PolynomialModel
    b: PolynomialModel
    a_weights: Optional[List[str]] = None
    b_weights: Optional[List[str]] = None
    distance: Optional[Union[int, str]] = None
    pure: bool
    elapsed_ms: float = 0.0


class StepRecord(BaseModel):
    index: int
    kind: str
    target: str
    status: str
    width: int
    entries: int
    duration_ms: Optional[int] = None
    error_message: Optional[str] = None


class ContractionResult(EnumeratorResult):
    plan_strategy: str
    plan_width: int
    observed_width: int
    steps: List[StepRecord] = []
    mw_cross_check: bool = True
    factoring_legs: Dict[str, List[str]] = {}
