"""Command-line interface: schemas, exit codes, determinism."""

import contextlib
import io
import json
from pathlib import Path

import jsonschema
import pytest
from referencing import Registry, Resource

from coxfan import cli, corpus

SCHEMA_DIR = Path(corpus.corpus_dir()).parent / "schemas"


def _registry():
    reg = Registry()
    for path in SCHEMA_DIR.glob("*.schema.json"):
        reg = Resource.from_contents(json.loads(path.read_text())) @ reg
    return reg


REGISTRY = _registry()


def _validate(payload, name):
    with open(SCHEMA_DIR / f"{name}.schema.json") as fh:
        schema = json.load(fh)
    jsonschema.Draft202012Validator(schema, registry=REGISTRY).validate(payload)


def _run(args):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(args)
    return code, buf.getvalue()


@pytest.fixture(scope="module")
def p2():
    return str(corpus.fixture_path("p2"))


@pytest.fixture(scope="module")
def quadric():
    return str(corpus.fixture_path("quadric_cone"))


CASES = [
    ("fan_validate", lambda f: ["fan", "validate", f]),
    ("fan_report", lambda f: ["fan", "report", f, "--flags", "field,noetherian,reduced"]),
    ("grading_build", lambda f: ["grading", "build", f]),
    ("pic", lambda f: ["pic", f]),
    ("subgroup_classify", lambda f: ["subgroup", "classify", f, "--subgroup", "2"]),
    ("cox_build", lambda f: ["cox", "build", f, "--subgroup", "2", "--flags", "field"]),
    ("chart", lambda f: ["chart", f, "--cone", "0,1"]),
    ("ideal_saturate", lambda f: ["ideal", "saturate", f, "--ideal", "Z1*Z2,Z1*Z3"]),
    ("module_sections", lambda f: ["module", "sections", f, "--degrees", "0;1;2"]),
    ("module_torsion", lambda f: ["module", "torsion", f, "--ideal", "Z1,Z2,Z3"]),
    ("sheaf_xi_check", lambda f: ["sheaf", "xi-check", f, "--ideal", "Z1"]),
    ("sheaf_lift", lambda f: ["sheaf", "lift", f, "--ideal", "Z1"]),
]


@pytest.mark.parametrize("schema_name,mk", CASES, ids=[c[0] for c in CASES])
def test_output_validates_against_schema(p2, schema_name, mk):
    code, out = _run(mk(p2))
    assert code == 0, out
    _validate(json.loads(out), schema_name)


@pytest.mark.parametrize("schema_name,mk", CASES, ids=[c[0] for c in CASES])
def test_output_is_byte_identical_across_runs(p2, schema_name, mk):
    _, a = _run(mk(p2))
    _, b = _run(mk(p2))
    assert a == b


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    code, out = _run(["fan", "validate", str(bad)])
    assert code == cli.EXIT_PARSE
    _validate(json.loads(out), "error")


def test_domain_error_exit_code(tmp_path):
    nonpointed = tmp_path / "np.json"
    nonpointed.write_text(
        json.dumps(
            {"rank": 1, "rays": [[1], [-1]], "max_cones": [[0, 1]]}
        )
    )
    code, out = _run(["fan", "validate", str(nonpointed)])
    assert code == cli.EXIT_DOMAIN
    payload = json.loads(out)
    _validate(payload, "error")
    assert payload["error"]["type"] == "NonPointed"


def test_primitivity_warning(tmp_path):
    scaled = tmp_path / "scaled.json"
    scaled.write_text(
        json.dumps(
            {"rank": 2, "rays": [[2, 0], [0, 1]], "max_cones": [[0], [1]]}
        )
    )
    code, out = _run(["fan", "validate", str(scaled)])
    assert code == 0
    payload = json.loads(out)
    assert payload["warnings"]


def test_fan_round_trip(p2):
    fan, warnings = cli.parse_fan_json(Path(p2).read_text())
    again, _ = cli.parse_fan_json(json.dumps(cli.serialize_fan(fan)))
    assert fan == again and not warnings


def test_saturate_example_against_oracle(p2):
    # the given pair is already saturated for the triangle fan
    _, out = _run(["ideal", "saturate", p2, "--ideal", "Z1*Z2,Z1*Z3"])
    payload = json.loads(out)
    assert sorted(payload["generators"]) == ["Z1*Z2", "Z1*Z3"]


def test_sections_pinned_dimensions(p2):
    _, out = _run(["module", "sections", p2, "--degrees", "0;1;2;3"])
    payload = json.loads(out)
    dims = [payload["dimensions"][str(d)]["dimension"] for d in range(4)]
    assert dims == [1, 3, 6, 10]


def test_chart_on_affine_quadric(quadric):
    code, out = _run(["chart", quadric, "--cone", "0,1,2,3"])
    assert code == 0
    payload = json.loads(out)
    assert len(payload["degree_zero_generators"]) == 4


def test_unknown_cone_is_domain_error(p2):
    code, out = _run(["chart", p2, "--cone", "0,1,2"])
    assert code == cli.EXIT_DOMAIN
    _validate(json.loads(out), "error")


def test_module_json_loader(p2, tmp_path):
    mod = tmp_path / "mod.json"
    mod.write_text(
        json.dumps(
            {
                "generator_degrees": [[0]],
                "relations": [
                    [{"gen": 0, "exponent": [1, 1, 0], "coefficient": 1}]
                ],
            }
        )
    )
    code, out = _run(
        ["module", "torsion", p2, "--module", str(mod)]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["is_torsion"] is False
