import json

import pytest

from diskpot.cli import main
from diskpot.corpus import tagged_terms
from diskpot.novikov import Potential, render
from diskpot.parsing import parse_potential
from diskpot.potentials import gz25_polytope, quadric_potential

CP2 = {"dim": 2, "facets": [{"normal": [-1, -1], "offset": "-1", "label": "0"},
                            {"normal": [1, 0], "offset": "-1", "label": "1"},
                            {"normal": [0, 1], "offset": "-1", "label": "2"}]}
S1_LEVEL0 = {"matrix": [[1, 0]], "offsets": [0], "level": [0], "variables": ["z"], "parameters": "keep"}


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_reduce_cp2(files, capsys):
    code, out, _ = run(capsys, "reduce", files("cp2.json", CP2), files("s1_level0.json", S1_LEVEL0))
    assert code == 0
    assert out == "z*T^{1+u2} + z^-1*T^{1-u2}"


def test_reduce_with_params(files, capsys):
    code, out, _ = run(capsys, "reduce", files("cp2.json", CP2), files("a.json", S1_LEVEL0), "--params", "u2=1/2")
    assert code == 0
    assert out == "z*T^{3/2} + z^-1*T^{1/2}"


def test_reduce_potential_json_uses_overrides(files, capsys):
    action = dict(S1_LEVEL0, overrides={"a": "semistable", "b": "unstable"})
    pot = files("w.json", tagged_terms([["a", "y2*T^{1+u2}"], ["b", "y1*T^{1+u1}"]]).to_json())
    code, out, _ = run(capsys, "reduce", pot, files("a.json", action))
    assert code == 0 and out == "z*T^{1+u2}"


def test_reduce_warns_on_non_free_faces(files, capsys):
    action = {"matrix": [[1, 0, 0, 0, 0, 0], [-1, 1, 1, 0, 0, 0], [0, -1, -1, 1, 1, 0], [0, 0, 0, -1, -1, 1]],
              "offsets": [0, 0, 0, 5], "level": [2, 2, 2, 2]}
    code, out, err = run(capsys, "reduce", files("gz.json", gz25_polytope().to_json()), files("a.json", action))
    assert code == 0
    assert err.count("warning: action not free") == 2
    assert len(parse_potential(out)) == 7


def test_stability(files, capsys):
    code, out, _ = run(capsys, "stability", files("cp2.json", CP2), files("a.json", S1_LEVEL0))
    assert code == 0
    assert "facet 1: unstable" in out
    assert "facet 0: semistable" in out
    code, out, _ = run(capsys, "stability", files("cp2.json", CP2), files("a.json", S1_LEVEL0), "--json")
    assert json.loads(out)["classes"] == {"0": "semistable", "1": "unstable", "2": "semistable"}


def test_json_output_round_trips(files, capsys):
    code, out, _ = run(capsys, "quadric", "4", "--json")
    assert code == 0
    assert Potential.from_json(json.loads(out)) == quadric_potential(4)


def test_potential(files, capsys):
    code, out, _ = run(capsys, "potential", files("cp2.json", CP2))
    assert code == 0
    assert out == render(parse_potential("y1*T^{1+u1} + y2*T^{1+u2} + y1^-1*y2^-1*T^{1-u1-u2}"))


def test_allow_unbounded(files, capsys):
    cone = {"dim": 2, "facets": [{"normal": [1, 0], "offset": "0"}, {"normal": [0, 1], "offset": "0"},
                                 {"normal": [-1, 1], "offset": "-1"}]}
    path = files("cone.json", cone)
    code, _, err = run(capsys, "potential", path)
    assert code == 1 and err.startswith("Unbounded:")
    code, out, _ = run(capsys, "potential", path, "--allow-unbounded")
    assert code == 0 and len(parse_potential(out)) == 3


def test_dual(files, capsys):
    code, out, _ = run(capsys, "dual", files("cp2.json", CP2))
    assert code == 0
    assert out.splitlines()[-1] == "lattice points: 4"


def test_lift(files, capsys):
    pot = files("w.json", tagged_terms([["b1", "z*T^{u}"], ["b2", "z^-1*T^{1+2*nu-u}"]]).to_json())
    spec = {"fiber_variable": "y2", "degree": 2, "fiber_class_area": "u2", "relation": {"b1": 1, "b2": 1},
            "variable_map": {"z": "y1"}, "parameter_map": {"u": "u1", "nu": "u2"}}
    code, out, err = run(capsys, "lift", pot, files("spec.json", spec))
    assert code == 0, err
    assert out == render(parse_potential("y1*T^{u1} + y1^-1*y2^2*T^{1+2*u2-u1}"))


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--workers", "2")
    assert code == 0
    assert "FAIL" not in out


def test_verify_empty_dir_fails(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", "--corpus", str(tmp_path))
    assert code == 1


@pytest.mark.parametrize("content", ["{not json", '{"dim": 2}'])
def test_malformed_json_exit_2(files, capsys, content):
    code, _, err = run(capsys, "potential", files("bad.json", content))
    assert code == 2
    assert err.startswith("MalformedSpec:")


def test_parse_error_exit_2(files, capsys):
    code, _, err = run(capsys, "reduce", files("w.txt", "z*T^{1+"), files("a.json", S1_LEVEL0))
    assert code == 2
    assert err.startswith("ParseError:")


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "potential", "/nonexistent/p.json")
    assert code == 2 and err.startswith("InputError:")


def test_domain_error_exit_1(capsys):
    code, _, err = run(capsys, "quadric", "1")
    assert code == 1
    assert err.startswith("InvalidDimension:")


def test_bad_params_exit_2(capsys):
    code, _, err = run(capsys, "quadric", "2", "--params", "u1")
    assert code == 2 and err.startswith("MalformedSpec:")


def test_usage_error(capsys):
    assert main([]) == 2
