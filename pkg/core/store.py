"""
FIBRA - Document store.
Read and write JSON documents (UTF-8) and convert them to and from domain objects.
"""

import json
from pathlib import Path
from typing import Any, Dict, Hashable, List, Mapping, Optional

from loguru import logger
from pydantic import ValidationError

from core.documents import (
    SEPARATOR,
    ArrowDoc,
    BundleDoc,
    ClassEntry,
    ClassTableDoc,
    FunctorDoc,
    GrothDoc,
    MapDoc,
    ReportDoc,
    SpaceDoc,
    WitnessDoc,
    document_adapter,
)
from core.errors import DocumentError, UnknownPointError
from finspace.space import ContinuousMap, FinSpace, from_relations, open_sets
from functorcat.aut import AutGroup
from functorcat.enumerate import assignment_of
from functorcat.functor import TopFunctor
from grothendieck.construction import GrothSpace
from bundles.bundle import FiberBundle, attach_witnesses, local_chart, make_bundle
from bundles.classify import ClassTable


def render_label(label: Hashable) -> str:
    """Tuple labels become 'b∣x'; nested tuples are parenthesised."""
    if isinstance(label, tuple):
        parts = [f"({render_label(p)})" if isinstance(p, tuple) else render_label(p) for p in label]
        return SEPARATOR.join(parts)
    return str(label)


def _rendered_index(X: FinSpace) -> Dict[str, int]:
    return {render_label(lab): i for i, lab in enumerate(X.labels)}


def map_from_rendered(dom: FinSpace, cod: FinSpace, mapping: Mapping[str, str]) -> ContinuousMap:
    """ContinuousMap from a point mapping written with rendered labels."""
    src, dst = _rendered_index(dom), _rendered_index(cod)
    unknown = [k for k in mapping if k not in src]
    if unknown:
        raise UnknownPointError(f"map mentions unknown domain point {unknown[0]!r}")
    image = []
    for lab in dom.labels:
        key = render_label(lab)
        if key not in mapping:
            raise UnknownPointError(f"map undefined on {key!r}")
        value = mapping[key]
        if value not in dst:
            raise UnknownPointError(f"map sends {key!r} to unknown point {value!r}")
        image.append(dst[value])
    return ContinuousMap(dom, cod, image)


def map_to_rendered(f: ContinuousMap) -> Dict[str, str]:
    return {render_label(f.dom.label(i)): render_label(f.cod.label(v)) for i, v in enumerate(f.image)}


# -- reading and writing -----------------------------------------------------------


def parse_document(text: str) -> Any:
    try:
        return document_adapter.validate_json(text)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first.get("loc", ()))
        raise DocumentError(f"malformed document at {where or 'top level'}: {first.get('msg')}") from exc
    except ValueError as exc:
        raise DocumentError(f"malformed document: {exc}") from exc


def read_document(path: Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    logger.debug(f"read_document: {path}")
    return parse_document(text)


def dump_document(doc: Any) -> str:
    return json.dumps(doc.model_dump(by_alias=True, exclude_none=True), ensure_ascii=False, indent=2) + "\n"


def write_document(doc: Any, path: Optional[Path]) -> str:
    """Serialize `doc`; write it to `path` when given. Returns the text."""
    text = dump_document(doc)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
        logger.info(f"write_document: {doc.kind} -> {path}")
    return text


def expect(doc: Any, *kinds: str) -> Any:
    if doc.kind not in kinds:
        raise DocumentError(f"expected a {' or '.join(kinds)} document, got {doc.kind!r}")
    return doc


# -- spaces and maps -------------------------------------------------------------------


def space_from_doc(doc: SpaceDoc) -> FinSpace:
    return from_relations(doc.points, [tuple(p) for p in doc.leq])


def space_to_doc(X: FinSpace, name: Optional[str] = None, dump_opens: bool = False) -> SpaceDoc:
    r = render_label
    return SpaceDoc(
        name=name,
        points=[r(lab) for lab in X.labels],
        leq=[(r(X.label(i)), r(X.label(j))) for i, j in X.generators],
        leq_closure=[(r(X.label(i)), r(X.label(j))) for i, j in X.relation_pairs],
        opens=[sorted(r(x) for x in U) for U in open_sets(X)] if dump_opens else None,
    )


def map_from_doc(doc: MapDoc) -> ContinuousMap:
    return map_from_rendered(space_from_doc(doc.domain), space_from_doc(doc.codomain), doc.map)


def map_to_doc(f: ContinuousMap, name: Optional[str] = None) -> MapDoc:
    return MapDoc(name=name, domain=space_to_doc(f.dom), codomain=space_to_doc(f.cod), map=map_to_rendered(f))


# -- functors ---------------------------------------------------------------------------


def functor_from_doc(doc: FunctorDoc) -> TopFunctor:
    """Arrows given in the document are kept; missing pairs are derived along chains."""
    base = space_from_doc(doc.base)
    objects: List[FinSpace] = []
    for b in base.labels:
        if b not in doc.objects:
            raise UnknownPointError(f"functor has no object at base point {b!r}")
        objects.append(space_from_doc(doc.objects[b]))
    extra = set(doc.objects) - set(base.labels)
    if extra:
        raise UnknownPointError(f"object given at unknown base point {sorted(extra)[0]!r}")
    arrows = {}
    for a in doc.arrows:
        i, j = base.index(a.source), base.index(a.target)
        arrows[(i, j)] = map_from_rendered(objects[i], objects[j], a.map)
    return TopFunctor.from_generators(base, objects, arrows)


def functor_to_doc(D: TopFunctor, name: Optional[str] = None, group: Optional[AutGroup] = None) -> FunctorDoc:
    B = D.base
    r = render_label
    arrows = [
        ArrowDoc(source=r(B.label(i)), target=r(B.label(j)), map=map_to_rendered(a))
        for (i, j), a in sorted(D.arrows.items())
        if i != j
    ]
    elements = None
    if group is not None:
        elements = {
            f"{r(B.label(i))}{SEPARATOR}{r(B.label(j))}": g
            for (i, j), g in sorted(assignment_of(D, group).items())
            if i != j
        }
    return FunctorDoc(
        name=name,
        base=space_to_doc(B),
        objects={r(B.label(b)): space_to_doc(X) for b, X in enumerate(D.objects)},
        arrows=arrows,
        group_elements=elements,
    )


def groth_to_doc(G: GrothSpace, name: Optional[str] = None, dump_opens: bool = False) -> GrothDoc:
    r = render_label
    return GrothDoc(
        name=name,
        space=space_to_doc(G.space, dump_opens=dump_opens),
        base=space_to_doc(G.base),
        projection=map_to_rendered(G.projection),
        tags={r(lab): (r(lab[0]), r(lab[1])) for lab in G.space.labels},
    )


# -- bundles ------------------------------------------------------------------------------


def bundle_from_doc(doc: BundleDoc) -> FiberBundle:
    """Bundle candidate; supplied trivializations are re-validated."""
    total, base, fiber = space_from_doc(doc.total), space_from_doc(doc.base), space_from_doc(doc.fiber)
    p = map_from_rendered(total, base, doc.map)
    bundle = make_bundle(p, fiber)
    if doc.trivializations is None:
        return bundle
    witnesses = {}
    for key, mapping in doc.trivializations.items():
        b = base.index(key)
        chart = local_chart(p, fiber, b)
        witnesses[b] = map_from_rendered(chart.total, chart.trivial, mapping)
    if len(witnesses) != len(base):
        missing = [lab for lab in base.labels if base.index(lab) not in witnesses]
        raise UnknownPointError(f"no trivialization given over {missing[0]!r}")
    return attach_witnesses(bundle, witnesses)


def bundle_to_doc(bundle: FiberBundle, name: Optional[str] = None) -> BundleDoc:
    trivializations = None
    if bundle.trivializations is not None:
        trivializations = {
            render_label(bundle.base.label(b)): map_to_rendered(phi)
            for b, phi in sorted(bundle.trivializations.items())
        }
    return BundleDoc(
        name=name,
        total=space_to_doc(bundle.total),
        base=space_to_doc(bundle.base),
        map=map_to_rendered(bundle.map),
        fiber=space_to_doc(bundle.fiber),
        trivializations=trivializations,
    )


def class_table_to_doc(table: ClassTable) -> ClassTableDoc:
    entries = []
    for k, cls in enumerate(table.classes):
        fdoc = functor_to_doc(cls.functor, group=table.group)
        entries.append(
            ClassEntry(
                index=k,
                representative_functor=fdoc,
                edges=fdoc.group_elements or {},
                total_space=space_to_doc(cls.bundle.total) if cls.bundle is not None else SpaceDoc(points=[]),
                class_size=cls.size,
                functor_classes=cls.functor_classes,
            )
        )
    return ClassTableDoc(
        base=space_to_doc(table.base),
        fiber=space_to_doc(table.fiber),
        automorphisms=len(table.group),
        total_functors=table.total_functors,
        inconclusive=table.inconclusive,
        classes=entries,
    )


def witness_to_doc(relation: str, h: ContinuousMap, components: Optional[Dict[str, ContinuousMap]] = None) -> WitnessDoc:
    return WitnessDoc(
        relation=relation,
        map=map_to_rendered(h),
        components={k: map_to_rendered(v) for k, v in components.items()} if components else None,
    )


def report(command: str, ok: bool, problems: Optional[List[str]] = None, **details: Any) -> ReportDoc:
    return ReportDoc(command=command, ok=ok, problems=list(problems or []), details=details)


def to_document(obj: Any, name: Optional[str] = None, dump_opens: bool = False) -> Any:
    """Document for any domain object the CLI emits."""
    if isinstance(obj, FinSpace):
        return space_to_doc(obj, name=name, dump_opens=dump_opens)
    if isinstance(obj, ContinuousMap):
        return map_to_doc(obj, name=name)
    if isinstance(obj, TopFunctor):
        return functor_to_doc(obj, name=name)
    if isinstance(obj, GrothSpace):
        return groth_to_doc(obj, name=name, dump_opens=dump_opens)
    if isinstance(obj, FiberBundle):
        return bundle_to_doc(obj, name=name)
    if isinstance(obj, ClassTable):
        return class_table_to_doc(obj)
    raise TypeError(f"no document kind for {type(obj).__name__}")


def from_document(doc: Any) -> Any:
    """Domain object described by `doc`; groth documents yield their projection.

    Tables, witnesses and reports carry no object and yield None.
    """
    if doc.kind == "space":
        return space_from_doc(doc)
    if doc.kind == "map":
        return map_from_doc(doc)
    if doc.kind == "functor":
        return functor_from_doc(doc)
    if doc.kind == "groth":
        return map_from_rendered(space_from_doc(doc.space), space_from_doc(doc.base), doc.projection)
    if doc.kind == "bundle":
        return bundle_from_doc(doc)
    return None
