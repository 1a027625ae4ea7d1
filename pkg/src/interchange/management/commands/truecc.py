"""
``manage.py truecc``: the workbench front-end.

Exit codes: 0 success, 1 negative verdict (the verdict is still printed),
2 domain or document error.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict
from typing import Any, Callable

from django.core.management.base import BaseCommand, CommandError, CommandParser

from src.core import samples as st_samples
from src.core.exceptions import SchemaError, WorkbenchError
from src.core.properties import property_report
from src.core.relations import cc_equivalent_structures
from src.core.semantics import enumerate_rooted_paths, st_trace, trace_set
from src.core.structures import STConfig, STStructure
from src.equivalences.bisimulation import st_h_bisimilar, st_hh_bisimilar
from src.equivalences.isomorphism import st_isomorphic
from src.hda import samples as hda_samples
from src.hda.bisimulation import hda_hh_bisimilar
from src.hda.cells import HDA, is_acyclic, is_non_degenerate
from src.hda.morphisms import hda_isomorphic
from src.hda.unfolding import history_unfolding
from src.interchange.documents import Document, decode, dumps, load, parse_json, read_text
from src.interchange.dot import hda_dot, st_dot, stc_dot
from src.interchange.models import CompareMode, DocumentKind
from src.refinement.refine import RefinementFunction, refine
from src.related.structures import config_properties, left_closed_configs
from src.related.translations import cintost, cintost2, cintost3, eintost, stintoc, stintoe
from src.sculpting.sculptures import (
    is_sculpture,
    sculpintost,
    sculpture_bound,
    sculptures_isomorphic,
    stintosculpture,
)
from src.sculpting.translations import hintost, stintoh
from src.stc import samples as stc_samples
from src.stc.chu import (
    chu2_decode,
    chu2_encode,
    chu3_decode,
    chu3_encode,
    chu4_decode,
    chu4_encode,
)
from src.stc.structures import STCStructure, maximal_configs

logger = logging.getLogger(__name__)

Kind = DocumentKind

TRANSLATIONS: dict[str, tuple[str, Callable[[Any], Any]]] = {
    "cintost": (Kind.CONFIG, cintost),
    "cintost2": (Kind.CONFIG, cintost2),
    "cintost3": (Kind.CONFIG, cintost3),
    "stintoc": (Kind.ST, stintoc),
    "eintost": (Kind.EVENT, eintost),
    "stintoe": (Kind.ST, stintoe),
    "stintoh": (Kind.ST, stintoh),
    "hintost": (Kind.HDA, hintost),
    "sculpintost": (Kind.SCULPTURE, sculpintost),
    "stintosculpture": (Kind.ST, stintosculpture),
    "unfold": (Kind.HDA, history_unfolding),
}

BUDGETED = frozenset({"hintost", "unfold"})

SIZED_EXAMPLES: dict[str, Callable[[int], Any]] = {
    "shutdown-backup": stc_samples.gen_shutdown_backup,
    "s-par-bstar": stc_samples.gen_s_par_bstar,
}


def _examples() -> dict[str, Callable[[], Any]]:
    return {
        **st_samples.SAMPLES,
        **hda_samples.HDA_SAMPLES,
        **stc_samples.STC_SAMPLES,
    }


def _bijection(found: Any) -> dict | None:
    return found.as_json() if found is not None else None


def parse_config(text: str) -> STConfig:
    """``S:T`` with comma-separated event ids, e.g. ``a,b:a``; ``:`` is the root."""

    started, _, terminated = text.partition(":")
    return STConfig.of(
        [event for event in started.split(",") if event],
        [event for event in terminated.split(",") if event],
    )


class Command(BaseCommand):
    help = "Check, translate, compare, refine and encode true-concurrency structures."

    def add_arguments(self, parser: CommandParser) -> None:
        commands = parser.add_subparsers(dest="subcommand", required=True)

        check = commands.add_parser("check", help="Validate a document and report its properties.")
        check.add_argument("path")
        check.add_argument("--dot", action="store_true", help="Emit the step graph instead.")

        translate = commands.add_parser("translate", help="Apply a translation by name.")
        translate.add_argument("path")
        translate.add_argument("--to", dest="target", required=True, choices=sorted(TRANSLATIONS))
        translate.add_argument("--from", dest="source", choices=[str(kind) for kind in Kind])
        translate.add_argument("--dot", action="store_true")

        compare = commands.add_parser("compare", help="Decide an equivalence of two documents.")
        compare.add_argument("left")
        compare.add_argument("right")
        compare.add_argument("--mode", choices=CompareMode.values, default=CompareMode.HH)

        refine_parser = commands.add_parser("refine", help="Refine actions of an ST-structure.")
        refine_parser.add_argument("path")
        refine_parser.add_argument(
            "--map", dest="images", required=True, help="JSON object {label: structure document}."
        )

        trace = commands.add_parser("trace", help="Rooted paths and their ST-traces.")
        trace.add_argument("path")
        trace.add_argument("--target", help="Configuration as S:T, e.g. a,b:a.")

        sculpt = commands.add_parser("sculpt", help="Search a sculpture for an HDA.")
        sculpt.add_argument("path")
        sculpt.add_argument("--max-dim", type=int)

        generate = commands.add_parser("generate", help="Emit a named example.")
        generate.add_argument("--example", required=True)
        generate.add_argument("--k", type=int, default=2)

        encode = commands.add_parser("encode", help="Encode as (or decode from) a Chu space.")
        encode.add_argument("path")
        encode.add_argument("--chu", type=int, choices=(2, 3, 4), required=True)

        for sub in commands.choices.values():
            sub.add_argument("--budget", type=int)

    def handle(self, *args: Any, **options: Any) -> None:
        subcommand = options["subcommand"]
        logger.info("truecc %s", subcommand)
        try:
            getattr(self, f"handle_{subcommand}")(options)
        except WorkbenchError as exc:
            payload = exc.as_dict()
            raise CommandError(f"{payload['code']}: {payload['message']}", returncode=2) from exc

    # Output ------------------------------------------------------------------
    def emit(self, value: Any) -> None:
        self.stdout.write(dumps(value), ending="")

    def emit_json(self, payload: Any) -> None:
        self.stdout.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))

    def verdict(self, payload: dict[str, Any]) -> None:
        self.emit_json(payload)
        if not payload["verdict"]:
            raise CommandError("negative verdict", returncode=1)

    def emit_dot(self, value: Any) -> None:
        if isinstance(value, STStructure):
            self.stdout.write(st_dot(value), ending="")
        elif isinstance(value, HDA):
            self.stdout.write(hda_dot(value), ending="")
        elif isinstance(value, STCStructure):
            self.stdout.write(stc_dot(value), ending="")
        else:
            raise CommandError(f"No step graph for {type(value).__name__}.", returncode=2)

    # Subcommands -------------------------------------------------------------
    def handle_check(self, options: dict[str, Any]) -> None:
        document = load(options["path"])
        value = document.value
        if options["dot"]:
            self.emit_dot(value)
            return
        report: dict[str, Any] = {"kind": document.kind}
        if document.kind == Kind.ST:
            report.update(property_report(value).as_json())
        elif document.kind == Kind.STC:
            report["configs"] = len(value)
            report["maximal"] = sorted(str(config) for config in maximal_configs(value))
        elif document.kind == Kind.CONFIG:
            properties = config_properties(value)
            report.update(asdict(properties), stable=properties.stable)
        elif document.kind == Kind.EVENT:
            report["configs"] = len(left_closed_configs(value))
        elif document.kind in (Kind.HDA, Kind.SCULPTURE):
            h = value if document.kind == Kind.HDA else value.hda
            acyclic, cycle = is_acyclic(h)
            non_degenerate, witness = is_non_degenerate(h)
            report.update(
                cells=len(h),
                degenerate=h.degenerate,
                acyclic=acyclic,
                non_degenerate=non_degenerate,
                cycle=list(cycle),
                witness=witness.as_json() if witness else None,
            )
            if document.kind == Kind.SCULPTURE:
                report["bulkDim"] = value.dim
        elif document.kind == Kind.CHU:
            report.update(K=value.k, states=len(value))
        self.emit_json(report)

    def handle_translate(self, options: dict[str, Any]) -> None:
        document = load(options["path"])
        expected, translate = TRANSLATIONS[options["target"]]
        if options["source"] and options["source"] != document.kind:
            raise SchemaError(kind=options["source"], detail=f"document is {document.kind}")
        if document.kind != expected:
            detail = f"{options['target']} cannot read a {document.kind}"
            raise SchemaError(kind=expected, detail=detail)
        if options["target"] in BUDGETED:
            result = translate(document.value, budget=options["budget"])
        else:
            result = translate(document.value)
        if options["dot"]:
            self.emit_dot(result)
        else:
            self.emit(result)

    def handle_compare(self, options: dict[str, Any]) -> None:
        left, right = load(options["left"]), load(options["right"])
        mode, budget = options["mode"], options["budget"]
        if left.kind != right.kind:
            raise SchemaError(kind=left.kind, detail=f"cannot compare with a {right.kind}")
        if left.kind == Kind.ST:
            self.verdict(self._compare_st(left.value, right.value, mode, budget))
        elif left.kind == Kind.HDA and mode in (CompareMode.ISO, CompareMode.HH):
            if mode == CompareMode.ISO:
                iso = hda_isomorphic(left.value, right.value)
                self.verdict({"verdict": iso is not None, "mode": mode, "iso": _bijection(iso)})
            else:
                self.verdict(hda_hh_bisimilar(left.value, right.value, budget=budget).as_json())
        elif left.kind == Kind.SCULPTURE and mode == CompareMode.ISO:
            self.verdict({"verdict": sculptures_isomorphic(left.value, right.value), "mode": mode})
        else:
            raise SchemaError(kind=left.kind, detail=f"mode {mode} is not available")

    @staticmethod
    def _compare_st(a: STStructure, b: STStructure, mode: str, budget: int | None) -> dict:
        if mode == CompareMode.ISO:
            iso = st_isomorphic(a, b)
            return {"verdict": iso is not None, "mode": mode, "iso": _bijection(iso)}
        if mode == CompareMode.CC:
            return {"verdict": cc_equivalent_structures(a, b), "mode": mode}
        decide = st_hh_bisimilar if mode == CompareMode.HH else st_h_bisimilar
        return decide(a, b, budget=budget).as_json()

    def handle_refine(self, options: dict[str, Any]) -> None:
        document = self._load_st(options["path"])
        try:
            raw = json.loads(options["images"])
        except json.JSONDecodeError:
            raw = parse_json(read_text(options["images"]))
        if not isinstance(raw, dict):
            raise SchemaError(kind="refinement", detail="expected {label: document}")
        images = {}
        for label, payload in raw.items():
            image = decode(payload)
            if image.kind != Kind.ST:
                raise SchemaError(kind="refinement", detail=f"image of {label} is {image.kind}")
            images[label] = image.value
        self.emit(refine(document.value, RefinementFunction(images), budget=options["budget"]))

    def handle_trace(self, options: dict[str, Any]) -> None:
        st = self._load_st(options["path"]).value
        budget = options["budget"]
        if options["target"] is None:
            traces = sorted(trace_set(st, budget=budget), key=str)
            self.emit_json({"traces": [trace.as_json() for trace in traces]})
            return
        target = parse_config(options["target"])
        paths = enumerate_rooted_paths(st, target, budget)
        self.emit_json(
            {
                "target": str(target),
                "paths": [str(path) for path in paths],
                "traces": [st_trace(path).as_json() for path in paths],
            }
        )

    def handle_sculpt(self, options: dict[str, Any]) -> None:
        document = load(options["path"])
        if document.kind == Kind.ST:
            h = stintoh(document.value)
        elif document.kind == Kind.HDA:
            h = document.value
        else:
            raise SchemaError(kind=document.kind, detail="sculpt reads st or hda documents")
        found = is_sculpture(h, max_dim=options["max_dim"], budget=options["budget"])
        if found is None:
            bound = sculpture_bound(h, budget=options["budget"])
            self.verdict(
                {
                    "verdict": False,
                    "sculpture": None,
                    "searched": [bound, options["max_dim"] or bound],
                    "detail": "no sculpture within the label-derived dimension bound",
                }
            )
        self.emit(found)

    def handle_generate(self, options: dict[str, Any]) -> None:
        name = options["example"]
        if name in SIZED_EXAMPLES:
            self.emit(SIZED_EXAMPLES[name](options["k"]))
            return
        examples = _examples()
        if name not in examples:
            known = ", ".join(sorted([*examples, *SIZED_EXAMPLES]))
            raise CommandError(f"Unknown example {name!r}; known: {known}.", returncode=2)
        self.emit(examples[name]())

    def handle_encode(self, options: dict[str, Any]) -> None:
        document = load(options["path"])
        k = options["chu"]
        encoders = {
            (Kind.CONFIG, 2): chu2_encode,
            (Kind.ST, 3): chu3_encode,
            (Kind.STC, 4): chu4_encode,
        }
        if (document.kind, k) in encoders:
            self.emit(encoders[(document.kind, k)](document.value))
        elif document.kind == Kind.CHU and document.value.k == k:
            decoders = {2: chu2_decode, 3: chu3_decode, 4: chu4_decode}
            self.emit(decoders[k](document.value))
        else:
            raise SchemaError(kind=document.kind, detail=f"no Chu-{k} encoding")

    def _load_st(self, path: str) -> Document:
        document = load(path)
        if document.kind != Kind.ST:
            raise SchemaError(kind=Kind.ST, detail=f"document is {document.kind}")
        return document
