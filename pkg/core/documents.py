"""
FIBRA - Document models.
One JSON document format for every object kind, discriminated by `kind`.
"""

from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter

SEPARATOR = "∣"

LabelPair = Tuple[str, str]


class SpaceDoc(BaseModel):
    """Finite space: points plus generator pairs of the preorder."""

    kind: Literal["space"] = "space"
    name: Optional[str] = None
    points: List[str]
    leq: List[LabelPair] = Field(default_factory=list)
    leq_closure: Optional[List[LabelPair]] = None
    opens: Optional[List[List[str]]] = None


class MapDoc(BaseModel):
    kind: Literal["map"] = "map"
    name: Optional[str] = None
    domain: SpaceDoc
    codomain: SpaceDoc
    map: Dict[str, str]


class ArrowDoc(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    source: str = Field(alias="from")
    target: str = Field(alias="to")
    map: Dict[str, str]


class FunctorDoc(BaseModel):
    """Functor over `base`; arrows may be given on covering pairs only."""

    kind: Literal["functor"] = "functor"
    name: Optional[str] = None
    base: SpaceDoc
    objects: Dict[str, SpaceDoc]
    arrows: List[ArrowDoc] = Field(default_factory=list)
    group_elements: Optional[Dict[str, int]] = None


class GrothDoc(BaseModel):
    kind: Literal["groth"] = "groth"
    name: Optional[str] = None
    space: SpaceDoc
    base: SpaceDoc
    projection: Dict[str, str]
    tags: Dict[str, LabelPair]


class BundleDoc(BaseModel):
    """p: total -> base with fiber; trivializations map p^-1(U_b) onto U_b x F point by point."""

    kind: Literal["bundle"] = "bundle"
    name: Optional[str] = None
    total: SpaceDoc
    base: SpaceDoc
    map: Dict[str, str]
    fiber: SpaceDoc
    trivializations: Optional[Dict[str, Dict[str, str]]] = None


class ClassEntry(BaseModel):
    index: int
    representative_functor: FunctorDoc
    edges: Dict[str, int] = Field(default_factory=dict)
    total_space: SpaceDoc
    class_size: int
    functor_classes: int = 1


class ClassTableDoc(BaseModel):
    kind: Literal["class_table"] = "class_table"
    base: SpaceDoc
    fiber: SpaceDoc
    automorphisms: int
    total_functors: int
    inconclusive: bool = False
    classes: List[ClassEntry] = Field(default_factory=list)


class WitnessDoc(BaseModel):
    """An explicit point mapping certifying a positive answer."""

    kind: Literal["witness"] = "witness"
    relation: str
    map: Dict[str, str] = Field(default_factory=dict)
    components: Optional[Dict[str, Dict[str, str]]] = None


class ReportDoc(BaseModel):
    kind: Literal["report"] = "report"
    command: str
    ok: bool
    problems: List[str] = Field(default_factory=list)
    details: Dict[str, Any] = Field(default_factory=dict)


Document = Annotated[
    Union[SpaceDoc, MapDoc, FunctorDoc, GrothDoc, BundleDoc, ClassTableDoc, WitnessDoc, ReportDoc],
    Field(discriminator="kind"),
]

document_adapter: TypeAdapter = TypeAdapter(Document)
