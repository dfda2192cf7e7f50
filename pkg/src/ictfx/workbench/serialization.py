"""Scenario document parsing and canonical serialization.

Documents are JSON. Every emission quantity carries an explicit unit
string and is converted to kg CO2e on the way in; serialization always
writes kg. Canonical form sorts keys, indents with two spaces and ends
with a newline, so byte comparison of two serializations is meaningful.

Strict parsing rejects unknown fields with their path; lenient parsing
records them and puts them back on serialization, making round trips
lossless either way.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from ..model import (
    AssessmentPeriod,
    AssessmentScenario,
    BaselineCone,
    BaselineModel,
    BaselineStrategy,
    CaseStudy,
    CoefficientSource,
    CountBasis,
    CURRENT_SCHEMA_VERSION,
    DiscreteWeighted,
    DistributionShape,
    EstimationPath,
    EvidenceMetadata,
    ExtrapolationCoefficient,
    InstanceFootprint,
    Mechanism,
    ModifiedShare,
    ParameterDistribution,
    PeriodUnit,
    PerspectiveKind,
    PointValue,
    ReboundInstance,
    ReboundShareModel,
    SamplingScheme,
    SUPPORTED_SCHEMA_VERSIONS,
    TimePerspective,
    TriangularRange,
    UncertaintyClass,
    UniformRange,
    UsagePartition,
    ValidationIssue,
    to_kg,
    validate_scenario,
)

PathPart = str | int
Path = tuple[PathPart, ...]


class DocumentError(Exception):
    """Structured document failure: a machine-usable code, the offending
    field path in dotted/indexed form, and a human message."""

    def __init__(
        self,
        code: str,
        path: str,
        message: str,
        issues: tuple[ValidationIssue, ...] = (),
    ) -> None:
        super().__init__(f"[{code}] {path}: {message}" if path else f"[{code}] {message}")
        self.code = code
        self.path = path
        self.message = message
        self.issues = issues

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "code": self.code,
            "path": self.path,
            "message": self.message,
        }
        if self.issues:
            out["issues"] = [
                {
                    "code": i.code,
                    "path": i.path,
                    "message": i.message,
                    "severity": i.severity.value,
                }
                for i in self.issues
            ]
        return out


def format_path(path: Path) -> str:
    parts: list[str] = []
    for part in path:
        if isinstance(part, int):
            parts.append(f"[{part}]")
        elif parts:
            parts.append("." + part)
        else:
            parts.append(part)
    return "".join(parts)


@dataclass(frozen=True)
class DocumentMetadata:
    title: str = ""
    author: str = ""
    date: str = ""


@dataclass(frozen=True)
class ScenarioDocument:
    scenario: AssessmentScenario
    metadata: DocumentMetadata = field(default_factory=DocumentMetadata)
    # Unknown fields kept from lenient parsing: (path, raw value) pairs,
    # sorted by path so document equality is order-independent.
    extras: tuple[tuple[Path, Any], ...] = ()

    @property
    def schema_version(self) -> int:
        return self.scenario.schema_version


class _Ctx:
    def __init__(self, strict: bool) -> None:
        self.strict = strict
        self.extras: list[tuple[Path, Any]] = []


class _Obj:
    """One JSON object being consumed key by key; whatever is left at
    ``finish`` is either an error (strict) or preserved (lenient)."""

    def __init__(self, data: Any, path: Path, ctx: _Ctx) -> None:
        if not isinstance(data, dict):
            raise DocumentError("wrong-type", format_path(path), "expected a JSON object")
        self.data = data
        self.path = path
        self.ctx = ctx
        self.consumed: set[str] = set()

    def child(self, key: str) -> Path:
        return self.path + (key,)

    def has(self, key: str) -> bool:
        return key in self.data

    def get(self, key: str, required: bool = False) -> Any:
        if key not in self.data:
            if required:
                raise DocumentError(
                    "missing-field", format_path(self.child(key)), f"{key!r} is missing"
                )
            return None
        self.consumed.add(key)
        return self.data[key]

    def finish(self) -> None:
        for key in self.data:
            if key in self.consumed:
                continue
            if self.ctx.strict:
                raise DocumentError(
                    "unknown-field",
                    format_path(self.child(key)),
                    f"unknown field {key!r}",
                )
            self.ctx.extras.append((self.child(key), self.data[key]))


def _string(value: Any, path: Path) -> str:
    if not isinstance(value, str):
        raise DocumentError("wrong-type", format_path(path), "expected a string")
    return value


def _number(value: Any, path: Path) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentError("wrong-type", format_path(path), "expected a number")
    return float(value)


def _integer(value: Any, path: Path) -> int:
    if isinstance(value, bool):
        raise DocumentError("wrong-type", format_path(path), "expected an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    raise DocumentError("wrong-type", format_path(path), "expected an integer")


def _boolean(value: Any, path: Path) -> bool:
    if not isinstance(value, bool):
        raise DocumentError("wrong-type", format_path(path), "expected a boolean")
    return value


def _enum(value: Any, path: Path, enum_type: type) -> Any:
    raw = _string(value, path)
    try:
        return enum_type(raw)
    except ValueError:
        allowed = ", ".join(repr(m.value) for m in enum_type)
        raise DocumentError(
            "invalid-value",
            format_path(path),
            f"{raw!r} is not one of {allowed}",
        ) from None


def _quantity(value: Any, path: Path, ctx: _Ctx) -> float:
    """Parse an emission quantity with an explicit unit into kg CO2e."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        raise DocumentError(
            "missing-unit",
            format_path(path),
            "emission quantities need an explicit unit, e.g. "
            '{"value": 1.0, "unit": "kgCO2e"}',
        )
    obj = _Obj(value, path, ctx)
    magnitude = _number(obj.get("value", required=True), obj.child("value"))
    unit = _string(obj.get("unit", required=True), obj.child("unit"))
    obj.finish()
    try:
        return to_kg(magnitude, unit)
    except ValueError as exc:
        raise DocumentError("invalid-unit", format_path(obj.child("unit")), str(exc)) from None


def _array(value: Any, path: Path) -> list[Any]:
    if not isinstance(value, list):
        raise DocumentError("wrong-type", format_path(path), "expected an array")
    return value


def _parse_period(data: Any, path: Path, ctx: _Ctx) -> AssessmentPeriod:
    obj = _Obj(data, path, ctx)
    unit = _enum(obj.get("unit", required=True), obj.child("unit"), PeriodUnit)
    label_raw = obj.get("label")
    label = _string(label_raw, obj.child("label")) if label_raw is not None else ""
    obj.finish()
    return AssessmentPeriod(unit=unit, label=label)


def _parse_perspective(data: Any, path: Path, ctx: _Ctx) -> TimePerspective:
    obj = _Obj(data, path, ctx)
    kind = _enum(obj.get("kind", required=True), obj.child("kind"), PerspectiveKind)
    tags: dict[str, UncertaintyClass] = {}
    raw_tags = obj.get("uncertainty_tags")
    if raw_tags is not None:
        tags_obj = _Obj(raw_tags, obj.child("uncertainty_tags"), ctx)
        for key in list(tags_obj.data):
            tags[key] = _enum(tags_obj.get(key), tags_obj.child(key), UncertaintyClass)
        tags_obj.finish()
    obj.finish()
    return TimePerspective(kind=kind, uncertainty_tags=tags)


def _parse_instance(data: Any, path: Path, ctx: _Ctx) -> InstanceFootprint:
    obj = _Obj(data, path, ctx)
    inst = InstanceFootprint(
        instance_id=_string(obj.get("id", required=True), obj.child("id")),
        activity=_quantity(obj.get("activity", required=True), obj.child("activity"), ctx),
        optimized=_quantity(obj.get("optimized", required=True), obj.child("optimized"), ctx),
        service=_quantity(obj.get("service", required=True), obj.child("service"), ctx),
    )
    obj.finish()
    return inst


def _parse_rebound_instance(data: Any, path: Path, ctx: _Ctx) -> ReboundInstance:
    obj = _Obj(data, path, ctx)
    if obj.has("activity"):
        raise DocumentError(
            "invalid-value",
            format_path(obj.child("activity")),
            "rebound usages displaced nothing; they cannot carry an activity footprint",
        )
    inst = ReboundInstance(
        instance_id=_string(obj.get("id", required=True), obj.child("id")),
        optimized=_quantity(obj.get("optimized", required=True), obj.child("optimized"), ctx),
        service=_quantity(obj.get("service", required=True), obj.child("service"), ctx),
    )
    obj.finish()
    return inst


def _parse_case_study(data: Any, path: Path, ctx: _Ctx) -> CaseStudy:
    obj = _Obj(data, path, ctx)
    modified_raw = _array(obj.get("modified", required=True), obj.child("modified"))
    modified = tuple(
        _parse_instance(item, obj.child("modified") + (i,), ctx)
        for i, item in enumerate(modified_raw)
    )
    rebound: tuple[ReboundInstance, ...] = ()
    if obj.has("rebound"):
        rebound_raw = _array(obj.get("rebound"), obj.child("rebound"))
        rebound = tuple(
            _parse_rebound_instance(item, obj.child("rebound") + (i,), ctx)
            for i, item in enumerate(rebound_raw)
        )
    sampling = SamplingScheme.UNKNOWN
    if obj.has("sampling"):
        sampling = _enum(obj.get("sampling"), obj.child("sampling"), SamplingScheme)
    note = None
    if obj.has("observation_note"):
        raw = obj.get("observation_note")
        if raw is not None:
            note = _string(raw, obj.child("observation_note"))
    obj.finish()
    return CaseStudy(
        modified=modified, rebound=rebound, sampling=sampling, observation_note=note
    )


def _parse_partition(data: Any, path: Path, ctx: _Ctx) -> UsagePartition:
    obj = _Obj(data, path, ctx)

    def count(key: str) -> int | None:
        if not obj.has(key):
            return None
        return _integer(obj.get(key), obj.child(key))

    def quantity(key: str) -> float | None:
        if not obj.has(key):
            return None
        return _quantity(obj.get(key), obj.child(key), ctx)

    basis = CountBasis.UNSPECIFIED
    if obj.has("modified_count_basis"):
        basis = _enum(
            obj.get("modified_count_basis"), obj.child("modified_count_basis"), CountBasis
        )
    partition = UsagePartition(
        modified_count=count("modified_count"),
        unaffected_count=count("unaffected_count"),
        rebound_count=count("rebound_count"),
        modified_count_basis=basis,
        activity_modified=quantity("activity_modified"),
        activity_unaffected=quantity("activity_unaffected"),
        activity_rebound=quantity("activity_rebound"),
        optimized_all_usages=quantity("optimized_all_usages"),
        service_all_usages=quantity("service_all_usages"),
    )
    obj.finish()
    return partition


def _parse_rebound_model(data: Any, path: Path, ctx: _Ctx) -> ReboundShareModel:
    obj = _Obj(data, path, ctx)

    def quantity(key: str) -> float | None:
        if not obj.has(key):
            return None
        return _quantity(obj.get(key), obj.child(key), ctx)

    model = ReboundShareModel(
        usage_total=_number(obj.get("usage_total", required=True), obj.child("usage_total")),
        rebound_share=_number(
            obj.get("rebound_share", required=True), obj.child("rebound_share")
        ),
        per_usage_activity=quantity("per_usage_activity"),
        per_usage_optimized=quantity("per_usage_optimized"),
        per_usage_service=quantity("per_usage_service"),
    )
    obj.finish()
    return model


def _parse_coefficient(data: Any, path: Path, ctx: _Ctx) -> ExtrapolationCoefficient:
    obj = _Obj(data, path, ctx)
    k = _number(obj.get("k", required=True), obj.child("k"))
    source = CoefficientSource.USER
    if obj.has("source"):
        source = _enum(obj.get("source"), obj.child("source"), CoefficientSource)
    obj.finish()
    return ExtrapolationCoefficient(k=k, source=source)


def _parse_modified_share(data: Any, path: Path, ctx: _Ctx) -> ModifiedShare:
    obj = _Obj(data, path, ctx)
    share = ModifiedShare(
        value=_number(obj.get("value", required=True), obj.child("value")),
        origin_label=(
            _string(obj.get("origin_label"), obj.child("origin_label"))
            if obj.has("origin_label")
            else None
        ),
        reused_from_past=(
            _boolean(obj.get("reused_from_past"), obj.child("reused_from_past"))
            if obj.has("reused_from_past")
            else False
        ),
        modified_count_at_origin=(
            _integer(
                obj.get("modified_count_at_origin"), obj.child("modified_count_at_origin")
            )
            if obj.has("modified_count_at_origin")
            else None
        ),
    )
    obj.finish()
    return share


def _parse_evidence(data: Any, path: Path, ctx: _Ctx) -> EvidenceMetadata:
    obj = _Obj(data, path, ctx)
    split: tuple[str, ...] = ()
    if obj.has("mr_split_evidence"):
        raw = _array(obj.get("mr_split_evidence"), obj.child("mr_split_evidence"))
        split = tuple(
            _string(item, obj.child("mr_split_evidence") + (i,))
            for i, item in enumerate(raw)
        )
    justification = None
    if obj.has("zero_rebound_justification"):
        raw = obj.get("zero_rebound_justification")
        if raw is not None:
            justification = _string(raw, obj.child("zero_rebound_justification"))
    share = None
    if obj.has("modified_share"):
        share = _parse_modified_share(obj.get("modified_share"), obj.child("modified_share"), ctx)
    mainstream = False
    if obj.has("mainstream_service"):
        mainstream = _boolean(obj.get("mainstream_service"), obj.child("mainstream_service"))
    obj.finish()
    return EvidenceMetadata(
        mr_split_evidence=split,
        zero_rebound_justification=justification,
        modified_share=share,
        mainstream_service=mainstream,
    )


def _parse_cone(data: Any, path: Path, ctx: _Ctx) -> BaselineCone:
    obj = _Obj(data, path, ctx)
    cone = BaselineCone(
        growth_lo=_number(obj.get("growth_lo", required=True), obj.child("growth_lo")),
        growth_hi=_number(obj.get("growth_hi", required=True), obj.child("growth_hi")),
        efficiency_lo=_number(
            obj.get("efficiency_lo", required=True), obj.child("efficiency_lo")
        ),
        efficiency_hi=_number(
            obj.get("efficiency_hi", required=True), obj.child("efficiency_hi")
        ),
    )
    obj.finish()
    return cone


def _parse_baseline(data: Any, path: Path, ctx: _Ctx) -> BaselineModel:
    obj = _Obj(data, path, ctx)
    strategy = _enum(obj.get("strategy", required=True), obj.child("strategy"), BaselineStrategy)
    base_value = _quantity(obj.get("base_value", required=True), obj.child("base_value"), ctx)
    intro = 0
    if obj.has("intro_period"):
        intro = _integer(obj.get("intro_period"), obj.child("intro_period"))
    growth = 0.0
    if obj.has("growth_rate"):
        growth = _number(obj.get("growth_rate"), obj.child("growth_rate"))
    efficiency = 0.0
    if obj.has("efficiency_rate"):
        efficiency = _number(obj.get("efficiency_rate"), obj.child("efficiency_rate"))
    cone = None
    if obj.has("cone"):
        cone = _parse_cone(obj.get("cone"), obj.child("cone"), ctx)
    with_service: tuple[float, ...] = ()
    if obj.has("with_service"):
        raw = _array(obj.get("with_service"), obj.child("with_service"))
        with_service = tuple(
            _quantity(item, obj.child("with_service") + (i,), ctx)
            for i, item in enumerate(raw)
        )
    anchor = None
    if obj.has("anchor_period"):
        anchor = _integer(obj.get("anchor_period"), obj.child("anchor_period"))
    obj.finish()
    return BaselineModel(
        strategy=strategy,
        base_value=base_value,
        intro_period=intro,
        growth_rate=growth,
        efficiency_rate=efficiency,
        cone=cone,
        with_service=with_service,
        anchor_period=anchor,
    )


_SHAPE_KINDS = ("point", "uniform", "triangular", "discrete")


def _parse_shape(data: Any, path: Path, ctx: _Ctx) -> DistributionShape:
    obj = _Obj(data, path, ctx)
    kind = _string(obj.get("kind", required=True), obj.child("kind"))
    if kind == "point":
        shape: DistributionShape = PointValue(
            value=_number(obj.get("value", required=True), obj.child("value"))
        )
    elif kind == "uniform":
        shape = UniformRange(
            lo=_number(obj.get("lo", required=True), obj.child("lo")),
            hi=_number(obj.get("hi", required=True), obj.child("hi")),
        )
    elif kind == "triangular":
        shape = TriangularRange(
            lo=_number(obj.get("lo", required=True), obj.child("lo")),
            mode=_number(obj.get("mode", required=True), obj.child("mode")),
            hi=_number(obj.get("hi", required=True), obj.child("hi")),
        )
    elif kind == "discrete":
        values_raw = _array(obj.get("values", required=True), obj.child("values"))
        weights_raw = _array(obj.get("weights", required=True), obj.child("weights"))
        shape = DiscreteWeighted(
            values=tuple(
                _number(v, obj.child("values") + (i,)) for i, v in enumerate(values_raw)
            ),
            weights=tuple(
                _number(w, obj.child("weights") + (i,)) for i, w in enumerate(weights_raw)
            ),
        )
    else:
        raise DocumentError(
            "invalid-value",
            format_path(obj.child("kind")),
            f"{kind!r} is not one of {', '.join(repr(k) for k in _SHAPE_KINDS)}",
        )
    obj.finish()
    return shape


def _parse_distribution(data: Any, path: Path, ctx: _Ctx) -> ParameterDistribution:
    obj = _Obj(data, path, ctx)
    dist = ParameterDistribution(
        target=_string(obj.get("target", required=True), obj.child("target")),
        shape=_parse_shape(obj.get("shape", required=True), obj.child("shape"), ctx),
        uncertainty_class=(
            _enum(obj.get("uncertainty_class"), obj.child("uncertainty_class"), UncertaintyClass)
            if obj.has("uncertainty_class")
            else None
        ),
    )
    obj.finish()
    return dist


def _parse_metadata(data: Any, path: Path, ctx: _Ctx) -> DocumentMetadata:
    obj = _Obj(data, path, ctx)

    def text(key: str) -> str:
        if not obj.has(key):
            return ""
        return _string(obj.get(key), obj.child(key))

    meta = DocumentMetadata(title=text("title"), author=text("author"), date=text("date"))
    obj.finish()
    return meta


def parse_scenario(
    text: str, strict: bool = True, validate: bool = True
) -> ScenarioDocument:
    """Parse a scenario document from JSON text.

    Raises ``DocumentError`` for syntax problems, unsupported schema
    versions, structural problems (with the offending field path) and,
    when ``validate`` is on, for any error-severity domain violation.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            "syntax-error",
            "",
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
        ) from None
    ctx = _Ctx(strict=strict)
    root = _Obj(raw, (), ctx)
    version = _integer(root.get("schema_version", required=True), root.child("schema_version"))
    if version not in SUPPORTED_SCHEMA_VERSIONS:
        raise DocumentError(
            "unsupported-schema-version",
            "schema_version",
            f"version {version} is not supported; supported: "
            + ", ".join(str(v) for v in SUPPORTED_SCHEMA_VERSIONS),
        )
    metadata = DocumentMetadata()
    if root.has("metadata"):
        metadata = _parse_metadata(root.get("metadata"), root.child("metadata"), ctx)

    sc = _Obj(root.get("scenario", required=True), root.child("scenario"), ctx)
    service_id = _string(sc.get("service_id", required=True), sc.child("service_id"))
    activity_id = _string(sc.get("activity_id", required=True), sc.child("activity_id"))
    mechanism = _enum(sc.get("mechanism", required=True), sc.child("mechanism"), Mechanism)
    period = _parse_period(sc.get("period", required=True), sc.child("period"), ctx)
    perspective = _parse_perspective(
        sc.get("perspective", required=True), sc.child("perspective"), ctx
    )
    estimation_path = _enum(
        sc.get("estimation_path", required=True), sc.child("estimation_path"), EstimationPath
    )
    coefficient = _parse_coefficient(
        sc.get("coefficient", required=True), sc.child("coefficient"), ctx
    )
    partition = UsagePartition()
    if sc.has("partition"):
        partition = _parse_partition(sc.get("partition"), sc.child("partition"), ctx)
    case_study = None
    if sc.has("case_study"):
        case_study = _parse_case_study(sc.get("case_study"), sc.child("case_study"), ctx)
    model_average = None
    if sc.has("model_average"):
        model_average = _quantity(sc.get("model_average"), sc.child("model_average"), ctx)
    rebound_model = None
    if sc.has("rebound_model"):
        rebound_model = _parse_rebound_model(
            sc.get("rebound_model"), sc.child("rebound_model"), ctx
        )
    evidence = EvidenceMetadata()
    if sc.has("evidence"):
        evidence = _parse_evidence(sc.get("evidence"), sc.child("evidence"), ctx)
    sc.finish()

    baseline = None
    if root.has("baseline"):
        baseline = _parse_baseline(root.get("baseline"), root.child("baseline"), ctx)
    distributions: tuple[ParameterDistribution, ...] = ()
    if root.has("distributions"):
        raw_dists = _array(root.get("distributions"), root.child("distributions"))
        distributions = tuple(
            _parse_distribution(item, root.child("distributions") + (i,), ctx)
            for i, item in enumerate(raw_dists)
        )
    root.finish()

    scenario = AssessmentScenario(
        service_id=service_id,
        activity_id=activity_id,
        mechanism=mechanism,
        period=period,
        perspective=perspective,
        estimation_path=estimation_path,
        coefficient=coefficient,
        partition=partition,
        case_study=case_study,
        model_average=model_average,
        rebound_model=rebound_model,
        baseline=baseline,
        distributions=distributions,
        evidence=evidence,
        schema_version=version,
    )
    document = ScenarioDocument(
        scenario=scenario,
        metadata=metadata,
        extras=tuple(sorted(ctx.extras, key=lambda item: format_path(item[0]))),
    )
    if validate:
        report = validate_scenario(scenario)
        if not report.valid:
            first = report.errors()[0]
            raise DocumentError(first.code, first.path, first.message, issues=report.issues)
    return document


def _quantity_dict(kg: float) -> dict[str, Any]:
    return {"value": kg, "unit": "kgCO2e"}


def _scenario_dict(scenario: AssessmentScenario) -> dict[str, Any]:
    out: dict[str, Any] = {
        "service_id": scenario.service_id,
        "activity_id": scenario.activity_id,
        "mechanism": scenario.mechanism.value,
        "period": {"unit": scenario.period.unit.value},
        "perspective": {"kind": scenario.perspective.kind.value},
        "estimation_path": scenario.estimation_path.value,
        "coefficient": {
            "k": scenario.coefficient.k,
            "source": scenario.coefficient.source.value,
        },
    }
    if scenario.period.label:
        out["period"]["label"] = scenario.period.label
    if scenario.perspective.uncertainty_tags:
        out["perspective"]["uncertainty_tags"] = {
            key: value.value
            for key, value in sorted(scenario.perspective.uncertainty_tags.items())
        }
    p = scenario.partition
    partition: dict[str, Any] = {}
    for key in ("modified_count", "unaffected_count", "rebound_count"):
        value = getattr(p, key)
        if value is not None:
            partition[key] = value
    if p.modified_count_basis is not CountBasis.UNSPECIFIED:
        partition["modified_count_basis"] = p.modified_count_basis.value
    for key in (
        "activity_modified",
        "activity_unaffected",
        "activity_rebound",
        "optimized_all_usages",
        "service_all_usages",
    ):
        value = getattr(p, key)
        if value is not None:
            partition[key] = _quantity_dict(value)
    if partition:
        out["partition"] = partition
    cs = scenario.case_study
    if cs is not None:
        study: dict[str, Any] = {
            "modified": [
                {
                    "id": inst.instance_id,
                    "activity": _quantity_dict(inst.activity),
                    "optimized": _quantity_dict(inst.optimized),
                    "service": _quantity_dict(inst.service),
                }
                for inst in cs.modified
            ],
            "sampling": cs.sampling.value,
        }
        if cs.rebound:
            study["rebound"] = [
                {
                    "id": inst.instance_id,
                    "optimized": _quantity_dict(inst.optimized),
                    "service": _quantity_dict(inst.service),
                }
                for inst in cs.rebound
            ]
        if cs.observation_note is not None:
            study["observation_note"] = cs.observation_note
        out["case_study"] = study
    if scenario.model_average is not None:
        out["model_average"] = _quantity_dict(scenario.model_average)
    rm = scenario.rebound_model
    if rm is not None:
        model: dict[str, Any] = {
            "usage_total": rm.usage_total,
            "rebound_share": rm.rebound_share,
        }
        for key in ("per_usage_activity", "per_usage_optimized", "per_usage_service"):
            value = getattr(rm, key)
            if value is not None:
                model[key] = _quantity_dict(value)
        out["rebound_model"] = model
    ev = scenario.evidence
    evidence: dict[str, Any] = {}
    if ev.mr_split_evidence:
        evidence["mr_split_evidence"] = list(ev.mr_split_evidence)
    if ev.zero_rebound_justification is not None:
        evidence["zero_rebound_justification"] = ev.zero_rebound_justification
    if ev.modified_share is not None:
        share: dict[str, Any] = {"value": ev.modified_share.value}
        if ev.modified_share.origin_label is not None:
            share["origin_label"] = ev.modified_share.origin_label
        if ev.modified_share.reused_from_past:
            share["reused_from_past"] = True
        if ev.modified_share.modified_count_at_origin is not None:
            share["modified_count_at_origin"] = ev.modified_share.modified_count_at_origin
        evidence["modified_share"] = share
    if ev.mainstream_service:
        evidence["mainstream_service"] = True
    if evidence:
        out["evidence"] = evidence
    return out


def _baseline_dict(model: BaselineModel) -> dict[str, Any]:
    out: dict[str, Any] = {
        "strategy": model.strategy.value,
        "base_value": _quantity_dict(model.base_value),
    }
    if model.intro_period != 0:
        out["intro_period"] = model.intro_period
    if model.growth_rate != 0.0:
        out["growth_rate"] = model.growth_rate
    if model.efficiency_rate != 0.0:
        out["efficiency_rate"] = model.efficiency_rate
    if model.cone is not None:
        out["cone"] = {
            "growth_lo": model.cone.growth_lo,
            "growth_hi": model.cone.growth_hi,
            "efficiency_lo": model.cone.efficiency_lo,
            "efficiency_hi": model.cone.efficiency_hi,
        }
    if model.with_service:
        out["with_service"] = [_quantity_dict(v) for v in model.with_service]
    if model.anchor_period is not None:
        out["anchor_period"] = model.anchor_period
    return out


def _shape_dict(shape: DistributionShape) -> dict[str, Any]:
    if isinstance(shape, PointValue):
        return {"kind": "point", "value": shape.value}
    if isinstance(shape, UniformRange):
        return {"kind": "uniform", "lo": shape.lo, "hi": shape.hi}
    if isinstance(shape, TriangularRange):
        return {"kind": "triangular", "lo": shape.lo, "mode": shape.mode, "hi": shape.hi}
    if isinstance(shape, DiscreteWeighted):
        return {"kind": "discrete", "values": list(shape.values), "weights": list(shape.weights)}
    raise TypeError(f"unknown distribution shape {shape!r}")


def document_to_dict(document: ScenarioDocument) -> dict[str, Any]:
    """Plain-dict form of a document, extras reinserted at their paths."""
    scenario = document.scenario
    out: dict[str, Any] = {
        "schema_version": scenario.schema_version,
        "scenario": _scenario_dict(scenario),
    }
    meta = document.metadata
    if meta.title or meta.author or meta.date:
        metadata: dict[str, Any] = {}
        if meta.title:
            metadata["title"] = meta.title
        if meta.author:
            metadata["author"] = meta.author
        if meta.date:
            metadata["date"] = meta.date
        out["metadata"] = metadata
    if scenario.baseline is not None:
        out["baseline"] = _baseline_dict(scenario.baseline)
    if scenario.distributions:
        out["distributions"] = [
            {
                "target": dist.target,
                "shape": _shape_dict(dist.shape),
                **(
                    {"uncertainty_class": dist.uncertainty_class.value}
                    if dist.uncertainty_class is not None
                    else {}
                ),
            }
            for dist in scenario.distributions
        ]
    for path, value in document.extras:
        _insert_extra(out, path, value)
    return out


def _insert_extra(root: dict[str, Any], path: Path, value: Any) -> None:
    node: Any = root
    for i, part in enumerate(path[:-1]):
        nxt = path[i + 1]
        if isinstance(part, int):
            while len(node) <= part:
                node.append({} if isinstance(nxt, str) else [])
            node = node[part]
        else:
            if part not in node:
                node[part] = {} if isinstance(nxt, str) else []
            node = node[part]
    last = path[-1]
    if isinstance(last, int):
        while len(node) <= last:
            node.append(None)
        node[last] = value
    else:
        node[last] = value


def canonical_json(data: Any) -> str:
    """Stable serialization: sorted keys, two-space indent, trailing
    newline. Two equal structures always produce identical bytes."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize_scenario(document: ScenarioDocument) -> str:
    """Canonical JSON text for a document; parsing it back yields an
    equal document."""
    return canonical_json(document_to_dict(document))
