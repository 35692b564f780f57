from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# ---------------------------------------------------------------------------
# Run configuration
# ---------------------------------------------------------------------------


class EdgeSpec(BaseModel):
    """A directed quotient edge of an explicit triangulation."""

    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = None
    tail: str
    head: str
    gain: str = "e"


class FaceSideSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    edge: str
    forward: bool = True


class ExplicitTriangulation(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vertices: List[str]
    edges: List[EdgeSpec]
    faces: List[List[FaceSideSpec]]

    @field_validator("faces")
    @classmethod
    def faces_are_triangles(cls, faces: List[List[FaceSideSpec]]) -> List[List[FaceSideSpec]]:
        for i, face in enumerate(faces):
            if len(face) != 3:
                raise ValueError(f"face {i} has {len(face)} sides, expected 3")
        return faces


class TargetSpec(BaseModel):
    """Which CAT(-1) space the representation acts on."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["h2", "tree"]
    rank: Optional[int] = Field(default=None, ge=1)
    edge_lengths: Dict[str, float] = {}

    @model_validator(mode="after")
    def tree_needs_rank(self) -> "TargetSpec":
        if self.kind == "tree" and self.rank is None:
            raise ValueError("tree targets need a rank")
        for name, length in self.edge_lengths.items():
            if not length > 0.0:
                raise ValueError(f"edge length for {name!r} must be positive, got {length}")
        return self


class RepresentationSpec(BaseModel):
    """Generator images: 2x2 SL(2,R) matrices for h2, reduced words for trees.

    Generators that are not listed map to the identity.
    """

    model_config = ConfigDict(extra="forbid")

    images: Dict[str, Union[List[List[float]], str]] = {}


class SolverParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    method: Literal["coordinate_descent", "proximal"] = "coordinate_descent"
    tol: float = Field(default=1e-9, gt=0.0)
    max_iter: int = Field(default=5000, ge=1)
    inner_max_iter: int = Field(default=50, ge=1)
    divergence_radius: float = Field(default=1e4, gt=0.0)
    lambda_schedule: Optional[List[float]] = None
    lambda_base: float = Field(default=2.0, gt=1.0)
    lambda_steps: int = Field(default=40, ge=1)
    seed: int = 0
    init: Union[Literal["random", "origin"], Dict[str, Any]] = "random"
    init_spread: float = Field(default=1.0, ge=0.0)

    @field_validator("lambda_schedule")
    @classmethod
    def schedule_is_increasing(cls, schedule: Optional[List[float]]) -> Optional[List[float]]:
        if schedule is None:
            return schedule
        if not schedule or schedule[0] <= 0.0:
            raise ValueError("lambda schedule must be nonempty and positive")
        if any(b <= a for a, b in zip(schedule, schedule[1:])):
            raise ValueError("lambda schedule must be strictly increasing")
        return schedule

    def schedule(self) -> List[float]:
        if self.lambda_schedule is not None:
            return list(self.lambda_schedule)
        return [self.lambda_base**k for k in range(self.lambda_steps)]


class SamplingSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    pairs: int = Field(default=10000, ge=1)
    seed: int = 0
    certificate_tol: float = Field(default=1e-6, gt=0.0)
    rigidity_tol: float = Field(default=1e-6, gt=0.0)


class PipelineConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = None
    genus: int = Field(ge=2)
    triangulation: Union[Literal["riemann"], ExplicitTriangulation] = "riemann"
    target: TargetSpec
    representation: RepresentationSpec = RepresentationSpec()
    solver: SolverParams = SolverParams()
    sampling: SamplingSpec = SamplingSpec()
    output: Optional[str] = None


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------


class Versions(BaseModel):
    domcert: str
    numpy: str
    scipy: str
    python: str


class RelatorCheck(BaseModel):
    passed: bool
    max_probe_displacement: float
    identity_deviation: Optional[float] = None


class TriangulationViolation(BaseModel):
    code: str
    detail: str


class TriangulationDiagnostics(BaseModel):
    vertices: int
    edges: int
    faces: int
    euler_characteristic: int
    violations: List[TriangulationViolation] = []

    @property
    def ok(self) -> bool:
        return not self.violations


class FlattenReport(BaseModel):
    flat_faces: List[int] = []
    flat_edges: List[int] = []

    @property
    def is_empty(self) -> bool:
        return not self.flat_faces and not self.flat_edges


class SolveSummary(BaseModel):
    status: Literal["Converged", "FixedPointConstant", "Diverged"]
    method: str
    energy: Optional[float]
    max_residual: Optional[float]
    iterations: int
    diverged_reason: Optional[str] = None
    final_displacement: float = 0.0
    images: Dict[str, Any] = {}
    note: Optional[str] = None


class CurvatureCertificate(BaseModel):
    status: Literal["CurvatureAtMostMinusOne", "Fails", "Degenerate"]
    margin: Optional[float]
    failing_vertices: List[str] = []
    reason: Optional[str] = None
    tolerance: float


class ConicalSummary(BaseModel):
    shapes: List[List[float]]
    corner_angles: List[List[float]]
    face_areas: List[float]
    cone_angles: Dict[str, float]
    total_area: float
    gauss_bonnet_residual: Optional[float]
    flat_faces: List[int] = []


class DominationReport(BaseModel):
    samples: int
    max_ratio: float
    max_excess: float
    face_pairs: int
    cross_edge_pairs: int
    routed_pairs: int
    face_max_ratio: float
    cross_edge_max_ratio: float
    boundary_only: bool = False
    passed: bool


class PerturbationPlan(BaseModel):
    epsilon: float
    margin: float
    angle_deltas: List[List[float]]
    cone_angles: Dict[str, float]


class DegeneracyReport(BaseModel):
    classification: Literal[
        "NonDegenerate", "FlatFaceNoFlatEdge", "SomeEdgeFlattened", "AllEdgesFlattened"
    ]
    cone_angle_exceeds_2pi: Optional[bool] = None
    flat_face_count: int = 0
    rigidity_eligible: bool = False
    nonstandard: bool = False


class DesingularizationReport(BaseModel):
    degeneracy: DegeneracyReport
    verdict: Literal["Perturbed", "RigidityCase", "ConstantMap", "NotNeeded"]
    plan: Optional[PerturbationPlan] = None
    composite_domination: Optional[DominationReport] = None
    perturbed_certificate: Optional[CurvatureCertificate] = None
    notes: List[str] = []


class LinkPolygonData(BaseModel):
    vertex: str
    angles: List[float]
    comparison_angles: List[float]
    spans: List[float]
    degenerate_corners: List[int] = []


class RigidityVerdict(BaseModel):
    status: Literal["Rigid", "NotRigid", "Inconclusive"]
    angle_sum_residual: float
    equality_residuals: List[float]
    local_geodesic_residuals: List[float]
    tolerance: float
    reason: Optional[str] = None


class RigidityReport(BaseModel):
    verdicts: Dict[str, RigidityVerdict]
    links: List[LinkPolygonData]
    face_pair_residuals: List[float] = []
    overall: Literal["Rigid", "NotRigid", "Inconclusive"]


class PipelineReport(BaseModel):
    """Everything a pipeline run produced, in a stable serialisable form."""

    name: Optional[str] = None
    genus: int
    target: str
    relator_check: RelatorCheck
    triangulation: TriangulationDiagnostics
    solver: SolveSummary
    lengths: Optional[Dict[str, float]] = None
    flatten: Optional[FlattenReport] = None
    conical: Optional[ConicalSummary] = None
    curvature: Optional[CurvatureCertificate] = None
    desingularization: Optional[DesingularizationReport] = None
    domination: Optional[DominationReport] = None
    rigidity: Optional[RigidityReport] = None
    domination_status: str
    notes: List[str] = []
    timing: Optional[Dict[str, float]] = None
    versions: Versions
    config: Dict[str, Any]
