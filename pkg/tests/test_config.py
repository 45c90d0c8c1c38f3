import pytest

from logtk.src.commands.workspace import effective_settings
from logtk.src.utils.config import Settings, load_settings
from logtk.src.utils.errors import ManifestError
from logtk.src.utils.manifest import parse_manifest


def test_defaults():
    s = load_settings(env={}, dotenv=False)
    assert s == Settings()
    assert s.degree_bound == 8
    assert s.field_spec.characteristic == 0


def test_environment_layer():
    s = load_settings(env={"LOGTK_FIELD": "Fp(7)", "LOGTK_DEGREE_BOUND": "3", "LOGTK_JSON_OUTPUT": "yes",
                           "LOGTK_LOG_LEVEL": "debug"}, dotenv=False)
    assert s.field_spec.characteristic == 7
    assert s.degree_bound == 3
    assert s.json_output is True
    assert s.log_level == "DEBUG"


@pytest.mark.parametrize("env", [
    {"LOGTK_FIELD": "Fp(6)"},
    {"LOGTK_ORDER": "lex-ish"},
    {"LOGTK_HILBERT_BUDGET": "0"},
    {"LOGTK_LOG_LEVEL": "LOUD"},
])
def test_invalid_environment(env):
    with pytest.raises(ManifestError):
        load_settings(env=env, dotenv=False)


def test_unknown_setting():
    with pytest.raises(ManifestError):
        Settings().merged({"colour": "red"})


def test_manifest_between_environment_and_flags():
    base = load_settings(env={"LOGTK_FIELD": "Fp(3)", "LOGTK_CLASS_BUDGET": "100"}, dotenv=False)
    manifest = parse_manifest('[field]\nname = "Fp(5)"\n\n[settings]\ndegree_bound = 2\n')
    s = effective_settings(base, manifest)
    assert s.field == "Fp(5)"
    assert s.degree_bound == 2
    assert s.class_budget == 100
    s = effective_settings(base, manifest, {"degree_bound": 6, "field": None})
    assert s.degree_bound == 6
    assert s.field == "Fp(5)"
