import glob
import os

import pytest

from logtk.src.utils.errors import DuplicateName, ManifestSyntaxError, UnresolvedReference
from logtk.src.utils.manifest import normalize, parse_manifest

MANIFESTS = sorted(glob.glob(os.path.join(os.path.dirname(__file__), "..", "manifests", "*.toml")))

NODE = """
[field]
name = "Fp(5)"

[settings]
degree_bound = 4

[monoid.N2]
generators = ["a", "b"]

[ring.A]
variables = ["x", "y"]
relations = ["x*y"]

[prelog.node]
ring = "A"
monoid = "N2"
alpha = { a = "x", b = "y" }

[task.regular]
procedure = "log-regular"
prelog = "node"
"""


def test_parse_sections():
    m = parse_manifest(NODE)
    assert m.field.name == "Fp(5)"
    assert m.settings == {"degree_bound": 4}
    assert m.rings["A"].relations == ["x*y"]
    assert m.prelogs["node"].alpha == {"a": "x", "b": "y"}
    assert m.tasks["regular"].procedure == "log-regular"


def test_syntax_error_is_positioned():
    with pytest.raises(ManifestSyntaxError) as exc:
        parse_manifest('[monoid.M]\ngenerators = ["a", \n')
    assert exc.value.line >= 1
    assert exc.value.expected


def test_unknown_key_is_positioned():
    with pytest.raises(ManifestSyntaxError) as exc:
        parse_manifest('[ring.A]\nvariables = ["x"]\ncolour = "red"\n')
    assert exc.value.line == 3
    assert exc.value.found == "colour"


def test_unknown_section_kind():
    with pytest.raises(ManifestSyntaxError):
        parse_manifest("[scheme.X]\n")


def test_decode_error_reports_line():
    with pytest.raises(ManifestSyntaxError) as exc:
        parse_manifest('[ring.A]\nvariables = ["x"]\nmode = \n')
    assert exc.value.line == 3
    assert exc.value.expected and "line 3" not in exc.value.expected[0]


def test_section_needs_a_name():
    with pytest.raises(ManifestSyntaxError) as exc:
        parse_manifest('[monoid]\ngenerators = ["a"]\n')
    assert exc.value.found == "[monoid]"
    assert exc.value.line == 1


def test_duplicate_key():
    with pytest.raises(DuplicateName) as exc:
        parse_manifest('[ring.A]\nvariables = []\nvariables = ["x"]\n')
    assert exc.value.identifier == "ring.A.variables"


def test_unresolved_reference():
    with pytest.raises(UnresolvedReference) as exc:
        parse_manifest('[prelog.P]\nmonoid = "missing"\n')
    assert exc.value.identifier == "missing"


def test_duplicate_section():
    with pytest.raises(DuplicateName):
        parse_manifest('[ring.A]\nvariables = []\n\n[ring.A]\nvariables = []\n')


def test_map_kind():
    m = parse_manifest(
        '[monoid.M]\ngenerators = ["a"]\n\n[monoid.N]\ngenerators = ["b"]\n\n'
        '[map.h]\nsource = "M"\ntarget = "N"\nmonoid = { a = "2*b" }\n'
    )
    assert m.map_kind("h") == "monoid"


def test_monoid_relations_survive_normalize():
    text = '[monoid.M]\ngenerators = ["a", "b", "c"]\nrelations = ["a + b = 2*c"]\n'
    assert parse_manifest(normalize(text)).monoids["M"].relations == ["a + b = 2*c"]


@pytest.mark.parametrize("path", MANIFESTS, ids=os.path.basename)
def test_shipped_manifests_normalize_idempotently(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    once = normalize(text)
    assert normalize(once) == once
    assert parse_manifest(once) == parse_manifest(text)
