import json
from io import StringIO
from unittest import mock

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from src.core import samples as st_samples
from src.core.exceptions import (
    CubicalLawViolation,
    ParseError,
    SchemaError,
    UnreadableDocument,
)
from src.hda import samples as hda_samples
from src.interchange.documents import dumps, encode, load, loads
from src.interchange.dot import hda_dot, st_dot, stc_dot
from src.interchange.management.commands.truecc import parse_config
from src.interchange.models import DocumentKind
from src.stc import samples as stc_samples
from src.stc.chu import chu3_encode, chu4_encode


def fixture(name):
    return str(settings.FIXTURES_DIR / name)


def truecc(*args):
    out = StringIO()
    call_command("truecc", *args, stdout=out)
    return out.getvalue()


def truecc_failure(*args):
    out = StringIO()
    try:
        call_command("truecc", *args, stdout=out)
    except CommandError as exc:
        return exc, out.getvalue()
    raise AssertionError(f"truecc {' '.join(args)} succeeded")


class DocumentTests(SimpleTestCase):
    def test_fixtures_are_canonical(self):
        for path in sorted(settings.FIXTURES_DIR.glob("*.json")):
            if path.name.startswith("broken-"):
                continue
            text = path.read_text(encoding="utf-8")
            with self.subTest(path.name):
                self.assertEqual(dumps(loads(text)), text)

    def test_samples_survive_a_reload(self):
        values = [
            *(build() for build in st_samples.SAMPLES.values()),
            *(build() for build in stc_samples.STC_SAMPLES.values()),
            *(build() for build in hda_samples.HDA_SAMPLES.values()),
            chu3_encode(st_samples.chain()),
            chu4_encode(stc_samples.gen_demonic()),
        ]
        for value in values:
            text = dumps(value)
            with self.subTest(text[:60]):
                self.assertEqual(loads(text).value, value)

    def test_envelope(self):
        payload = encode(st_samples.single_event())
        self.assertEqual(payload["kind"], DocumentKind.ST)
        self.assertEqual(payload["version"], 1)
        self.assertEqual(payload["mode"], "strict")

    def test_malformed_json_reports_the_position(self):
        with self.assertRaises(ParseError) as cm:
            loads('{"kind": "st",\n  "version": 1,,}')
        self.assertEqual(cm.exception.params["line"], 2)
        self.assertEqual(cm.exception.params["column"], 16)

    def test_schema_errors(self):
        documents = [
            "[]",
            '{"kind": "banana", "version": 1}',
            '{"kind": "st", "version": 2, "events": [], "configs": []}',
            '{"kind": "st", "version": 1, "events": []}',
            '{"kind": "st", "version": 1, "events": [], "configs": [{"S": []}]}',
        ]
        for text in documents:
            with self.subTest(text), self.assertRaises(SchemaError):
                loads(text)

    def test_domain_errors_pass_through(self):
        with self.assertRaises(CubicalLawViolation):
            load(fixture("broken-square.hda.json"))

    def test_missing_file_is_unreadable(self):
        with self.assertRaises(UnreadableDocument) as cm:
            load(fixture("nothing-here.st.json"))
        self.assertTrue(cm.exception.params["path"].endswith("nothing-here.st.json"))

    def test_fixture_matches_its_sample(self):
        self.assertEqual(load(fixture("winskel.st.json")).value, st_samples.parallel_switch())
        self.assertEqual(load(fixture("demonic.stc.json")).value, stc_samples.gen_demonic())


class DotTests(SimpleTestCase):
    def test_st_graph(self):
        text = st_dot(st_samples.single_event())
        self.assertTrue(text.startswith('digraph "st" {'))
        self.assertEqual(text.count("->"), 2)

    def test_hda_graph(self):
        text = hda_dot(hda_samples.filled_square())
        self.assertIn("(a)", text)
        self.assertTrue(text.endswith("}\n"))

    def test_stc_graph(self):
        self.assertIn("->", stc_dot(stc_samples.gen_demonic()))


class CommandTests(SimpleTestCase):
    def test_check_reports_the_failed_intersection(self):
        report = json.loads(truecc("check", fixture("winskel.st.json")))
        self.assertTrue(report["closed_bounded_unions"])
        self.assertFalse(report["closed_bounded_intersections"])
        self.assertFalse(report["stable"])

    def test_check_stc(self):
        report = json.loads(truecc("check", fixture("angelic.stc.json")))
        self.assertEqual(report["configs"], 7)
        self.assertEqual(report["maximal"], ["(de,de,f)", "(df,df,e)"])

    def test_check_dot(self):
        self.assertIn("digraph", truecc("check", fixture("chain.st.json"), "--dot"))

    def test_broken_document_exits_with_two(self):
        exc, _ = truecc_failure("check", fixture("broken-square.hda.json"))
        self.assertEqual(exc.returncode, 2)
        self.assertTrue(str(exc).startswith("cubical_law_violation"))

    def test_missing_document_exits_with_two(self):
        exc, _ = truecc_failure("check", fixture("nothing-here.st.json"))
        self.assertEqual(exc.returncode, 2)
        self.assertTrue(str(exc).startswith("unreadable_document"))

    def test_translate(self):
        document = loads(truecc("translate", fixture("winskel.st.json"), "--to", "stintoc"))
        self.assertEqual(document.kind, DocumentKind.CONFIG)

    def test_translate_rejects_the_wrong_kind(self):
        exc, _ = truecc_failure("translate", fixture("angelic.stc.json"), "--to", "stintoh")
        self.assertEqual(exc.returncode, 2)

    def test_compare_hh_filled_and_empty(self):
        exc, out = truecc_failure(
            "compare", fixture("filled-square.st.json"), fixture("empty-square.st.json")
        )
        self.assertEqual(exc.returncode, 1)
        self.assertFalse(json.loads(out)["verdict"])

    def test_compare_isomorphic(self):
        out = truecc(
            "compare",
            fixture("asymmetric-conflict.st.json"),
            fixture("asymmetric-conflict.st.json"),
            "--mode",
            "iso",
        )
        self.assertTrue(json.loads(out)["verdict"])

    def test_compare_asymmetric_conflicts(self):
        left = fixture("asymmetric-conflict.st.json")
        right = fixture("asymmetric-conflict-3.st.json")
        self.assertTrue(json.loads(truecc("compare", left, right))["verdict"])
        exc, _ = truecc_failure("compare", left, right, "--mode", "iso")
        self.assertEqual(exc.returncode, 1)

    def test_compare_cc(self):
        square = fixture("filled-square.st.json")
        out = truecc("compare", square, square, "--mode", "cc")
        self.assertTrue(json.loads(out)["verdict"])

    def test_refine_inline_map(self):
        images = json.dumps({"a": encode(st_samples.chain())})
        refined = loads(truecc("refine", fixture("chain.st.json"), "--map", images)).value
        self.assertIn("a.a", refined.events)
        self.assertIn("b", refined.events)

    def test_refine_with_a_missing_map_exits_with_two(self):
        exc, _ = truecc_failure(
            "refine", fixture("chain.st.json"), "--map", fixture("nothing-here.json")
        )
        self.assertEqual(exc.returncode, 2)
        self.assertTrue(str(exc).startswith("unreadable_document"))

    def test_trace_to_a_target(self):
        out = json.loads(truecc("trace", fixture("chain.st.json"), "--target", "a,b:a"))
        self.assertEqual(out["traces"], [[["a", 0], ["a", 1], ["b", 0]]])

    def test_trace_set(self):
        out = json.loads(truecc("trace", fixture("chain.st.json")))
        self.assertIn([["a", 0], ["a", 1], ["b", 0], ["b", 3]], out["traces"])

    def test_sculpt(self):
        document = loads(truecc("sculpt", fixture("filled-square.st.json")))
        self.assertEqual(document.kind, DocumentKind.SCULPTURE)

    def test_sculpt_reports_the_searched_bound(self):
        stdin = StringIO(dumps(hda_samples.demonic_choice()))
        with mock.patch("sys.stdin", stdin):
            exc, out = truecc_failure("sculpt", "-")
        self.assertEqual(exc.returncode, 1)
        payload = json.loads(out)
        self.assertIsNone(payload["sculpture"])
        self.assertEqual(payload["searched"], [3, 3])

    def test_generate_shutdown_backup(self):
        document = loads(truecc("generate", "--example", "shutdown-backup", "--k", "2"))
        self.assertEqual(document.value, stc_samples.gen_shutdown_backup(2))

    def test_generate_named_example(self):
        document = loads(truecc("generate", "--example", "hda-loop"))
        self.assertEqual(document.value, hda_samples.loop())

    def test_generate_unknown_example(self):
        exc, _ = truecc_failure("generate", "--example", "nothing")
        self.assertEqual(exc.returncode, 2)

    def test_encode_and_decode(self):
        chu = loads(truecc("encode", fixture("demonic.stc.json"), "--chu", "4"))
        self.assertEqual(chu.kind, DocumentKind.CHU)
        self.assertEqual(chu.value.k, 4)
        chu3 = truecc("encode", fixture("chain.st.json"), "--chu", "3")
        self.assertEqual(loads(chu3).value, chu3_encode(st_samples.chain()))

    def test_parse_config(self):
        self.assertEqual(str(parse_config("a,b:a")), "(ab,a)")
        self.assertEqual(parse_config(":").dimension, 0)
