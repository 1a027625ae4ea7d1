"""
JSON documents for every structure the workbench handles.

A document is ``{"kind": ..., "version": 1, ...payload}``. Serialization is
canonical: sorted keys, sorted arrays, two-space indent, trailing newline,
so ``dumps(loads(text)) == text`` for every document written by ``dumps``.
"""

from __future__ import annotations

import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

from django.conf import settings

from src.core.exceptions import ParseError, SchemaError, UnreadableDocument
from src.core.structures import STConfig, STStructure, validate_st
from src.hda.cells import HDA, validate_hda
from src.interchange.models import DocumentKind
from src.related.structures import (
    ConfigStructure,
    InpureEventStructure,
    config_structure,
    event_structure,
    set_key,
)
from src.sculpting.bulks import make_bulk
from src.sculpting.listing import EventListing
from src.sculpting.sculptures import Sculpture, sculpture
from src.stc.chu import ChuSpace
from src.stc.structures import STCStructure, validate_stc

logger = logging.getLogger(__name__)

__all__ = [
    "DOCUMENT_VERSION",
    "Document",
    "encode",
    "decode",
    "dumps",
    "loads",
    "parse_json",
    "load",
    "read_text",
    "save",
]

DOCUMENT_VERSION = 1


@dataclass(frozen=True)
class Document:
    kind: str
    value: Any

    def as_json(self) -> dict[str, Any]:
        return encode(self.value)


# Encoding ------------------------------------------------------------------
def _labels(events, labeling) -> dict[str, str]:
    return {event: labeling[event] for event in sorted(events)}


def _st_payload(st: STStructure) -> dict[str, Any]:
    return {
        "events": st.sorted_events(),
        "labels": _labels(st.events, st.labeling),
        "configs": [config.as_json() for config in st.sorted_configs()],
        "mode": str(st.mode),
    }


def _config_payload(c: ConfigStructure) -> dict[str, Any]:
    return {
        "events": sorted(c.events),
        "labels": _labels(c.events, c.labeling),
        "configs": [sorted(config) for config in c.sorted_configs()],
    }


def _event_payload(e: InpureEventStructure) -> dict[str, Any]:
    return {
        "events": sorted(e.events),
        "labels": _labels(e.events, e.labeling),
        "enabling": [
            {"enabler": sorted(enabler), "enabled": sorted(enabled)}
            for enabler, enabled in e.sorted_enabling()
        ],
    }


def _hda_payload(h: HDA) -> dict[str, Any]:
    return {**h.as_json(), "degenerate": h.degenerate}


_ENCODERS: list[tuple[type, str, Callable[[Any], dict[str, Any]]]] = [
    (STStructure, DocumentKind.ST, _st_payload),
    (STCStructure, DocumentKind.STC, STCStructure.as_json),
    (ConfigStructure, DocumentKind.CONFIG, _config_payload),
    (InpureEventStructure, DocumentKind.EVENT, _event_payload),
    (HDA, DocumentKind.HDA, _hda_payload),
    (Sculpture, DocumentKind.SCULPTURE, Sculpture.as_json),
    (ChuSpace, DocumentKind.CHU, ChuSpace.as_json),
]


def encode(value: Any) -> dict[str, Any]:
    if isinstance(value, Document):
        value = value.value
    for cls, kind, payload in _ENCODERS:
        if isinstance(value, cls):
            return {"kind": str(kind), "version": DOCUMENT_VERSION, **payload(value)}
    raise TypeError(f"No document kind for {type(value).__name__}.")


def dumps(value: Any) -> str:
    return json.dumps(encode(value), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def save(value: Any) -> bytes:
    return dumps(value).encode("utf-8")


# Decoding ------------------------------------------------------------------
def _require(payload: dict, name: str, kind: str, expected: type | tuple[type, ...] = list):
    if name not in payload:
        raise SchemaError(kind=kind, detail=f"missing field {name!r}")
    value = payload[name]
    if not isinstance(value, expected):
        raise SchemaError(kind=kind, detail=f"field {name!r} has the wrong type")
    return value


def _decode_st(payload: dict) -> STStructure:
    configs = [
        STConfig.of(item["S"], item["T"]) for item in _require(payload, "configs", "st")
    ]
    return validate_st(
        _require(payload, "events", "st"),
        configs,
        payload.get("labels"),
        mode=payload.get("mode"),
    )


def _decode_stc(payload: dict) -> STCStructure:
    configs = [
        (item["S"], item["T"], item.get("C", [])) for item in _require(payload, "configs", "stc")
    ]
    return validate_stc(_require(payload, "events", "stc"), configs, payload.get("labels"))


def _decode_config(payload: dict) -> ConfigStructure:
    return config_structure(
        _require(payload, "configs", "config"),
        payload.get("labels"),
        events=_require(payload, "events", "config"),
    )


def _decode_event(payload: dict) -> InpureEventStructure:
    pairs = [
        (item["enabler"], item["enabled"]) for item in _require(payload, "enabling", "event")
    ]
    return event_structure(
        pairs, payload.get("labels"), events=_require(payload, "events", "event")
    )


def _decode_hda(payload: dict) -> HDA:
    cells = _require(payload, "cells", "hda")
    raw = HDA(
        {cell["id"]: cell["dim"] for cell in cells},
        {(face["cell"], face["i"]): face["to"] for face in payload.get("s", [])},
        {(face["cell"], face["i"]): face["to"] for face in payload.get("t", [])},
        payload.get("labels", {}),
        payload.get("initial"),
        frozenset(payload.get("finals", [])),
    )
    return validate_hda(raw, lenient=bool(payload.get("degenerate", False)))


def _decode_sculpture(payload: dict) -> Sculpture:
    h = _decode_hda(_require(payload, "hda", "sculpture", dict))
    listing = EventListing(tuple(_require(payload, "bulkEvents", "sculpture")))
    dim = _require(payload, "bulkDim", "sculpture", int)
    cap = max(dim, settings.TRUECC_SCULPTURE_MAX_DIM)
    bulk = make_bulk(dim, listing, payload.get("bulkLabels"), cap=cap)
    embedding = {
        cell: bulk.cell(
            STConfig(
                frozenset(listing[position] for position in started),
                frozenset(listing[position] for position in terminated),
            )
        )
        for cell, (started, terminated) in _require(
            payload, "embedding", "sculpture", dict
        ).items()
    }
    return sculpture(h, bulk, embedding)


def _decode_chu(payload: dict) -> ChuSpace:
    return ChuSpace.from_states(
        _require(payload, "K", "chu", int),
        _require(payload, "events", "chu"),
        _require(payload, "states", "chu"),
        payload.get("labels"),
    )


_DECODERS: dict[str, Callable[[dict], Any]] = {
    DocumentKind.ST: _decode_st,
    DocumentKind.STC: _decode_stc,
    DocumentKind.CONFIG: _decode_config,
    DocumentKind.EVENT: _decode_event,
    DocumentKind.HDA: _decode_hda,
    DocumentKind.SCULPTURE: _decode_sculpture,
    DocumentKind.CHU: _decode_chu,
}


def decode(payload: Any) -> Document:
    """Check the envelope, then hand the payload to the owning module's validator."""

    if not isinstance(payload, dict):
        raise SchemaError(kind="document", detail="top level must be an object")
    kind = payload.get("kind")
    if kind not in _DECODERS:
        raise SchemaError(kind="document", detail=f"unknown kind {kind!r}")
    if payload.get("version") != DOCUMENT_VERSION:
        raise SchemaError(kind=kind, detail=f"unsupported version {payload.get('version')!r}")
    try:
        value = _DECODERS[kind](payload)
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise SchemaError(kind=kind, detail=f"{type(exc).__name__}: {exc}") from exc
    logger.debug("Decoded a %s document", kind)
    return Document(kind, value)


def parse_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(line=exc.lineno, column=exc.colno, detail=exc.msg) from exc


def loads(text: str) -> Document:
    return decode(parse_json(text))


def read_text(path: str | Path) -> str:
    """Text of ``path``, or of stdin when ``path`` is ``-``."""

    try:
        if str(path) == "-":
            return sys.stdin.read()
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise UnreadableDocument(path=str(path), detail=str(exc)) from exc


def load(path: str | Path) -> Document:
    """Read a document from ``path``, or from stdin when ``path`` is ``-``."""

    return loads(read_text(path))
