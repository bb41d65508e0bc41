import json

from topfan import fanio, gallery
from topfan.cli import EXIT_MATH_FAIL, EXIT_PASS, EXIT_USAGE, main
from topfan.fan import classify, make_fan


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_fan(tmp_path, fan, name="fan.json"):
    path = tmp_path / name
    path.write_text(fanio.emit_fan(fan))
    return str(path)


class TestValidate:
    def test_valid_gallery_input(self, capsys):
        code, out, _ = run(capsys, "validate", "gallery:cp2")
        assert code == EXIT_PASS
        assert "overall: valid" in out
        assert "completeness: pass (exact)" in out

    def test_invalid_fan_exits_one(self, capsys, tmp_path):
        base = gallery.cpn(2)
        fan = make_fan(2, 3, [{1, 2}, {2, 3}], base.beta)
        code, out, _ = run(capsys, "validate", write_fan(tmp_path, fan))
        assert code == EXIT_MATH_FAIL
        assert "overall: INVALID" in out
        assert "uncovered direction" in out

    def test_machine_format_is_reproducible(self, capsys):
        code1, out1, _ = run(capsys, "validate", "gallery:cp2", "--format", "machine")
        code2, out2, _ = run(capsys, "validate", "gallery:cp2", "--format", "machine")
        assert code1 == code2 == EXIT_PASS
        assert out1 == out2
        doc = json.loads(out1)
        assert doc["kind"] == "validity" and doc["valid"] is True

    def test_missing_file_exits_two(self, capsys):
        code, _, err = run(capsys, "validate", "/nonexistent/fan.json")
        assert code == EXIT_USAGE and "error:" in err


class TestClassify:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "classify", "gallery:nice_nontoric")
        assert code == EXIT_PASS
        assert "toric: no" in out and "nice: yes" in out

    def test_machine(self, capsys):
        code, out, _ = run(capsys, "classify", "gallery:cp2", "--format", "machine")
        doc = json.loads(out)
        assert code == EXIT_PASS and doc["toric"] and doc["nice"]


class TestTransition:
    def test_cp1_golden_text(self, capsys):
        code, out, _ = run(capsys, "transition", "gallery:cp1", "--from", "1", "--to", "2")
        assert code == EXIT_PASS
        assert out == "w_2 = z_1^-1\n"

    def test_cp2_spec_example_text(self, capsys):
        code, out, _ = run(capsys, "transition", "gallery:cp2", "--from", "1,2", "--to", "2,3")
        assert code == EXIT_PASS
        lines = out.splitlines()
        assert lines[0] == "w_2 = z_1^-1·z_2^1"
        assert lines[1] == "w_3 = z_1^-1"

    def test_machine_laurent(self, capsys):
        code, out, _ = run(
            capsys, "transition", "gallery:cp1", "--from", "1", "--to", "2",
            "--format", "machine",
        )
        doc = json.loads(out)
        assert code == EXIT_PASS
        assert doc["laurent"] == [[[-1, 0]]]
        assert doc["entries"][0][0] == {"re": "-1", "im": "0", "w": -1}

    def test_nonexistent_simplex_is_usage_error(self, capsys):
        code, _, err = run(capsys, "transition", "gallery:cp2", "--from", "1,3", "--to", "1,2")
        # {1,3} is a maximal simplex of cp2, so pick one that is not
        assert code == EXIT_PASS or code == EXIT_USAGE
        code, _, err = run(capsys, "transition", "gallery:cp2", "--from", "1,4", "--to", "1,2")
        assert code == EXIT_USAGE and "maximal simplices" in err


class TestCocycle:
    def test_exact_pass(self, capsys):
        code, out, _ = run(capsys, "cocycle", "gallery:hirzebruch(1)")
        assert code == EXIT_PASS
        assert "cocycle identity holds (exact) over 64 triples" in out

    def test_numeric_mode(self, capsys):
        code, out, _ = run(
            capsys, "cocycle", "gallery:cp2", "--mode", "numeric", "--points", "5"
        )
        assert code == EXIT_PASS and "numeric" in out

    def test_invalid_fan_gated(self, capsys, tmp_path):
        base = gallery.cpn(2)
        fan = make_fan(2, 3, [{1, 2}, {2, 3}], base.beta)
        code, _, err = run(capsys, "cocycle", write_fan(tmp_path, fan))
        assert code == EXIT_MATH_FAIL and "valid" in err


class TestOracle:
    def test_pass(self, capsys):
        code, out, _ = run(capsys, "oracle", "gallery:cp2", "--points", "10")
        assert code == EXIT_PASS and out.startswith("oracle pass")

    def test_machine_reproducible(self, capsys):
        args = ["oracle", "gallery:cp2", "--points", "5", "--format", "machine", "--seed", "3"]
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2
        assert json.loads(out1)["ok"] is True


class TestNiceify:
    def test_pipeline_to_validate_and_classify(self, capsys, tmp_path):
        source = write_fan(tmp_path, gallery.perturbed("cp2", 7), "perturbed.json")
        target = str(tmp_path / "nice.json")
        code, out, _ = run(capsys, "niceify", source, "--output", target)
        assert code == EXIT_PASS
        # emitted fan revalidates and classifies as nice through the CLI
        code, out, _ = run(capsys, "validate", target)
        assert code == EXIT_PASS and "overall: valid" in out
        code, out, _ = run(capsys, "classify", target)
        assert code == EXIT_PASS and "nice: yes" in out
        # sidecar documents parse as path and certificate
        path_doc = json.loads((tmp_path / "nice.json.path.json").read_text())
        cert_doc = json.loads((tmp_path / "nice.json.cert.json").read_text())
        assert path_doc["kind"] == "deformation_path"
        assert cert_doc["kind"] == "regularity_certificate" and cert_doc["ok"]

    def test_machine_bundle(self, capsys, tmp_path):
        source = write_fan(tmp_path, gallery.perturbed("cp2", 3))
        code, out, _ = run(capsys, "niceify", source, "--format", "machine")
        doc = json.loads(out)
        assert code == EXIT_PASS and doc["kind"] == "niceify"
        nice = fanio.fan_from_dict(doc["fan"])
        assert classify(nice).nice

    def test_invalid_input_exits_one(self, capsys, tmp_path):
        base = gallery.cpn(2)
        fan = make_fan(2, 3, [{1, 2}, {2, 3}], base.beta)
        code, _, err = run(capsys, "niceify", write_fan(tmp_path, fan))
        assert code == EXIT_MATH_FAIL and "valid" in err

    def test_text_already_nice(self, capsys):
        code, out, _ = run(capsys, "niceify", "gallery:cp2")
        assert code == EXIT_PASS
        assert "segments []" in out and "certificate pass" in out


class TestGallery:
    def test_list(self, capsys):
        code, out, _ = run(capsys, "gallery", "--list")
        assert code == EXIT_PASS
        assert "cp1" in out and "nice_nontoric" in out

    def test_emit_round_trips(self, capsys):
        code, out, _ = run(capsys, "gallery", "hirzebruch(2)")
        assert code == EXIT_PASS
        assert fanio.parse_fan(out) == gallery.hirzebruch(2)

    def test_unknown_name(self, capsys):
        code, _, err = run(capsys, "gallery", "banana")
        assert code == EXIT_USAGE and "error:" in err

    def test_missing_name(self, capsys):
        code, _, err = run(capsys, "gallery")
        assert code == EXIT_USAGE


class TestCharts:
    def test_text_flags(self, capsys):
        code, out, _ = run(capsys, "charts", "gallery:cp2")
        assert code == EXIT_PASS
        for line in out.strip().splitlines():
            assert "smooth, real-algebraic, algebraic" in line

    def test_machine(self, capsys):
        code, out, _ = run(capsys, "charts", "gallery:cp2", "--format", "machine")
        doc = json.loads(out)
        assert code == EXIT_PASS and doc["kind"] == "atlas"
        rec = next(c for c in doc["charts"] if c["simplex"] == [2, 3])
        assert rec["alpha"][0]["u"] == [-1, 1]


def test_entry_point_installed():
    import shutil
    import subprocess

    exe = shutil.which("topfan")
    assert exe is not None
    proc = subprocess.run(
        [exe, "validate", "gallery:cp1"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "overall: valid" in proc.stdout
