import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from crdyn import gallery
from crdyn.cli import main
from crdyn.io import parse_instance, serialize_instance


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def docs(tmp_path_factory):
    root = tmp_path_factory.mktemp("docs")
    paths = {}
    for name in ("dens", "pair-sink", "ex1", "fse1"):
        p = root / f"{name}.json"
        p.write_text(gallery.build(name).document())
        paths[name] = str(p)
    bad = root / "bad.json"
    bad.write_text('{"space": {"kind": "finite", "points": ["a"]}, "relation": {"kind": "pairs", "pairs": []}}')
    paths["bad"] = str(bad)
    paths["root"] = str(root)
    return paths


class TestClassify:
    def test_dens_table(self, docs):
        code, out, _ = run_cli("classify", docs["dens"])
        assert code == 0
        lines = out.splitlines()
        assert any("0" in l and "trans1" in l and "certified" in l for l in lines)
        assert any("intransitive" in l for l in lines)

    def test_single_point(self, docs):
        code, out, _ = run_cli("classify", docs["dens"], "--point", "1")
        assert code == 0
        assert "intransitive" in out
        assert "trans1" not in out

    def test_symbolic_requires_point(self, docs):
        code, _, err = run_cli("classify", docs["ex1"])
        assert code == 2
        assert "--point" in err

    def test_symbolic_point_report(self, docs):
        code, out, _ = run_cli(
            "classify", docs["ex1"], "--point", "1/2", "--eps", "1/16", "--horizon", "60"
        )
        assert code == 0
        assert "trans2-at-eps" in out and "certified" in out
        assert "trans1-at-eps" in out and "refuted" in out

    def test_unknown_point_is_usage_error(self, docs):
        code, _, err = run_cli("classify", docs["dens"], "--point", "zzz")
        assert code == 2


class TestParseErrors:
    def test_empty_relation_rejected(self, docs):
        code, _, err = run_cli("classify", docs["bad"])
        assert code == 2
        assert "non-empty" in err

    def test_missing_file(self):
        code, _, err = run_cli("classify", "/nonexistent/x.json")
        assert code == 2


class TestTransitive:
    def test_pair_sink_vector(self, docs):
        code, out, _ = run_cli("transitive", docs["pair-sink"])
        assert code == 0
        assert "transitive: false" in out
        assert "false false false false false false false false" in out

    def test_fse1_plus(self, docs):
        code, out, _ = run_cli("transitive", docs["fse1"], "--plus")
        assert code == 0
        assert "+transitive: true" in out

    def test_symbolic_grid(self, docs):
        code, out, _ = run_cli("transitive", docs["ex1"], "--eps", "1/4", "--horizon", "8")
        assert code == 0
        assert "certified" in out


class TestTreeReachMahavier:
    def test_tree_levels_and_dot_stability(self, docs, tmp_path):
        dot1 = tmp_path / "a.dot"
        dot2 = tmp_path / "b.dot"
        code, out, _ = run_cli("tree", docs["fse1"], "--point", "1", "--depth", "4",
                               "--dot", str(dot1))
        assert code == 0
        assert "level 4: 2" in out
        run_cli("tree", docs["fse1"], "--point", "1", "--depth", "4", "--dot", str(dot2))
        assert dot1.read_bytes() == dot2.read_bytes()

    def test_reach_chain(self, docs):
        code, out, _ = run_cli("reach", docs["dens"], "--point", "0")
        assert code == 0
        assert "stabilized: true" in out

    def test_mahavier(self, docs):
        code, out, _ = run_cli("mahavier", docs["fse1"], "--depth", "2", "--count")
        assert code == 0
        assert "count: 3" in out
        code, out, _ = run_cli("mahavier", docs["fse1"], "--depth", "2", "--list", "2")
        assert out.splitlines()[-2:] == ["1 2 3", "2 3 1"]


class TestDiscretize:
    def test_writes_loadable_document(self, docs, tmp_path):
        out_path = tmp_path / "disc.json"
        code, out, _ = run_cli("discretize", docs["ex1"], "--delta", "1/4",
                               "-o", str(out_path))
        assert code == 0
        text = out_path.read_text()
        data = json.loads(text)
        assert data["density"]["eps"] == "1/4"
        code, out, _ = run_cli("classify", str(out_path))
        assert code == 0

    def test_rejects_finite_input(self, docs, tmp_path):
        code, _, err = run_cli("discretize", docs["dens"], "--delta", "1/4",
                               "-o", str(tmp_path / "x.json"))
        assert code == 2


class TestGallery:
    def test_list(self):
        code, out, _ = run_cli("gallery", "list")
        assert code == 0
        assert "fse1" in out

    def test_run_single(self):
        code, out, _ = run_cli("gallery", "run", "fse1")
        assert code == 0
        assert "0 fail" in out

    def test_run_unknown_name(self):
        code, _, err = run_cli("gallery", "run", "zzz")
        assert code == 2
        assert "zzz" in err


class TestRoundTripAllGallery:
    def test_serialize_parse_identity(self):
        for name in gallery.names():
            text = gallery.build(name).document()
            assert serialize_instance(parse_instance(text)) == text
