import json
import os

import pytest

from sl2cox.cli import main
from sl2cox.exactmath import FinAbGroup, IntMatrix
from sl2cox.presentation import poly_from_json, poly_to_json

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def fixture(name: str) -> str:
    return os.path.join(FIXTURES, name)


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


class TestValidate:
    def test_valid_file(self, capsys):
        rc, out, _ = run(capsys, "validate", fixture("mu3.json"))
        assert rc == 0 and "valid" in out

    def test_garbage_file(self, tmp_path, capsys):
        bad = tmp_path / "garbage.json"
        bad.write_text("{]")
        rc, out, err = run(capsys, "validate", str(bad))
        assert rc == 1

    def test_schema_violation(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"group": {"type": "cyclic", "n": 3}, "oops": []}))
        rc, out, err = run(capsys, "validate", str(bad))
        assert rc == 1

    def test_invalid_embedding(self, tmp_path, capsys):
        doc = {"group": {"type": "cyclic", "n": 5},
               "divisors": [{"over": "x0", "h": 1, "l": "1"}]}
        f = tmp_path / "invalid.json"
        f.write_text(json.dumps(doc))
        rc, out, err = run(capsys, "validate", str(f))
        assert rc == 1 and "ValuationOutsideCone" in out

    def test_usage_error(self, capsys):
        rc, out, err = run(capsys)
        assert rc == 3


class TestClassgroup:
    def test_json_payload(self, capsys):
        rc, out, _ = run(capsys, "classgroup", fixture("sl2_trivial_4pts.json"),
                         "--format", "json")
        assert rc == 0
        doc = json.loads(out)
        assert doc["group"] == {"rank": 4, "torsion": []}
        assert doc["presentation_matrix"] == [
            [-1, -2, 1, 3, 0, 0, 0, 0],
            [-1, -2, 0, 0, 1, 1, 0, 0],
            [-1, -2, 0, 0, 0, 0, 1, 5],
            [1, -1, 0, -5, 0, -1, 0, -4],
        ]

    def test_json_roundtrip_to_memory(self, capsys):
        from sl2cox import classgroup as cg
        from sl2cox.embedding import load_embedding

        rc, out, _ = run(capsys, "classgroup", fixture("mu3.json"), "--format", "json")
        doc = json.loads(out)
        E = load_embedding(fixture("mu3.json"))
        R = cg.class_group(E)
        assert FinAbGroup(doc["group"]["rank"], tuple(doc["group"]["torsion"])) == R.group
        assert IntMatrix(doc["presentation_matrix"], cols=len(doc["generators"])) \
            == R.presentation
        assert {k: tuple(v) for k, v in doc["images"].items()} == R.images


class TestCoxCommands:
    def test_cox_full_pretty(self, capsys):
        rc, out, _ = run(capsys, "cox-full", fixture("mu3.json"))
        assert rc == 0
        assert "N_{x1}" in out and "V_3" in out

    def test_cox_full_verify_and_roundtrip(self, capsys):
        rc, out, _ = run(capsys, "cox-full", fixture("sl2_trivial_4pts.json"),
                         "--format", "json", "--verify")
        assert rc == 0
        doc = json.loads(out)
        assert len(doc["presentation"]["variables"]) == 12
        assert len(doc["presentation"]["relations"]) == 10
        # relations survive a JSON round trip exactly
        from sl2cox.coxring import full_cox_presentation_cyclic
        from sl2cox.embedding import load_embedding

        res = full_cox_presentation_cyclic(load_embedding(fixture("sl2_trivial_4pts.json")))
        expected = res.presentation.canonical_relations()
        got = [poly_from_json(r) for r in doc["presentation"]["relations"]]
        assert [p.terms for p in got] == [p.terms for p in expected]

    def test_cox_full_not_cyclic_exit_code(self, capsys):
        rc, out, err = run(capsys, "cox-full", fixture("tetrahedral.json"))
        assert rc == 2 and "NotCyclic" in err

    def test_cox_u_special_fiber(self, capsys):
        rc, out, _ = run(capsys, "cox-u", fixture("tetrahedral.json"),
                         "--special-fiber", "--verify", "--format", "json")
        assert rc == 0
        doc = json.loads(out)
        assert doc["special_fiber"]["classification"] == "polynomial"
        assert doc["special_fiber"]["normal"] is True


class TestOtherCommands:
    def test_batyrev_haddad(self, capsys):
        rc, out, _ = run(capsys, "batyrev-haddad", fixture("affine_mu5.json"),
                         "--format", "json")
        doc = json.loads(out)
        assert rc == 0
        assert (doc["p"], doc["q"], doc["k"], doc["a"], doc["b"]) == (1, 6, 5, 1, 1)

    def test_batyrev_haddad_wrong_shape(self, capsys):
        rc, out, err = run(capsys, "batyrev-haddad", fixture("mu3.json"))
        assert rc == 2

    def test_iterate(self, capsys):
        rc, out, _ = run(capsys, "iterate", fixture("affine_mu5.json"),
                         "--format", "json")
        doc = json.loads(out)
        assert rc == 0
        assert doc["m_lo"] == doc["m_hi"] <= doc["bound"] == 2

    def test_diagnose(self, capsys):
        rc, out, _ = run(capsys, "diagnose", fixture("mu3.json"), "--format", "json")
        doc = json.loads(out)
        assert rc == 0
        assert doc["special_fiber_normal"] is True
        assert doc["total_space_log_terminal"] is True
        assert doc["constant_functions"]["holds"] is True

    def test_diagnose_with_hypercones(self, tmp_path, capsys):
        cones = [{
            "slices": [
                {"point": "x0", "vectors": [{"h": "1", "l": "-1"}]},
                {"point": "xinf", "vectors": [{"h": "1", "l": "-1"}]},
                {"point": "extra:0", "vectors": [{"h": "1", "l": "-1"}]},
                {"point": "xd", "vectors": ["color"]},
            ],
        }]
        f = tmp_path / "cones.json"
        f.write_text(json.dumps(cones))
        rc, out, _ = run(capsys, "diagnose", fixture("mu3.json"),
                         "--hypercones", str(f), "--format", "json")
        doc = json.loads(out)
        assert rc == 0
        assert doc["orbits"] == [{"kind": "A_l", "tuple": [1, 1, 1]}]
        assert doc["X_log_terminal"] is True

    def test_verify_seed_free(self, capsys):
        rc, out, _ = run(capsys, "classgroup", fixture("mu3.json"),
                         "--verify", "--seed-free")
        assert rc == 0

    def test_verify_only_changes_warnings(self, capsys):
        rc1, out1, _ = run(capsys, "cox-full", fixture("mu3.json"), "--format", "json")
        rc2, out2, _ = run(capsys, "cox-full", fixture("mu3.json"), "--format", "json",
                           "--verify")
        d1, d2 = json.loads(out1), json.loads(out2)
        d1.pop("warnings")
        d2.pop("warnings")
        assert rc1 == rc2 == 0 and d1 == d2


class TestPolyJson:
    def test_roundtrip_gaussian(self):
        from sl2cox.exactmath import gauss
        from sl2cox.presentation import SparsePoly

        p = (SparsePoly.term(gauss({"re": "1/2", "im": "-3"}), {"x": 2, "y": 1})
             + SparsePoly.term(5, {}))
        assert poly_from_json(poly_to_json(p)).terms == p.terms
