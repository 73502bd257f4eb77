import csv
import io
import json

import pytest

from xfam.cli import EXIT_CAP, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, UsageError, main, parse_range


def run(*argv, out_dir=None):
    buf = io.StringIO()
    args = list(argv)
    if out_dir is not None:
        args += ["--out", str(out_dir)]
    code = main(args, out=buf)
    return code, buf.getvalue()


def test_parse_range():
    assert parse_range("3", "n") == [3]
    assert parse_range("2..4", "n") == [2, 3, 4]
    with pytest.raises(UsageError):
        parse_range("4..2", "n")
    with pytest.raises(UsageError):
        parse_range("x", "n")


class TestBound:
    def test_sum_side(self):
        code, text = run("bound", "--n", "4", "--t", "2", "--m", "2", "--format", "json")
        doc = json.loads(text)
        assert code == EXIT_OK
        assert (doc["value"], doc["branch"]) == ("12", "sum_side")

    def test_m_times_M(self):
        code, text = run("bound", "--n", "4", "--t", "2", "--m", "3", "--format", "json")
        assert json.loads(text)["branch"] == "m_times_M" and json.loads(text)["value"] == "15"

    def test_t_above_n(self):
        assert run("bound", "--n", "2", "--t", "3", "--m", "2")[0] == EXIT_USAGE

    def test_missing_arg(self):
        assert run("bound", "--n", "4", "--t", "2")[0] == EXIT_USAGE

    def test_text_and_csv(self):
        code, text = run("bound", "--n", "4", "--t", "2", "--m", "2")
        assert code == EXIT_OK and "12" in text
        code, text = run("bound", "--n", "4", "--t", "2", "--m", "2", "--format", "csv")
        rows = list(csv.reader(io.StringIO(text)))
        assert "12" in rows[1]


class TestVerify:
    def test_grid_writes_certificates(self, tmp_path):
        code, _ = run("verify", "--n", "2..4", "--t", "1..4", "--m", "2..3", out_dir=tmp_path)
        assert code == EXIT_OK
        certs = sorted(tmp_path.glob("cert_*.json"))
        assert len(certs) == 18
        rows = list(csv.DictReader((tmp_path / "sweep.csv").open()))
        assert len(rows) == 18 and all(r["match"] == "True" for r in rows)
        cell = next(r for r in rows if (r["n"], r["t"], r["m"]) == ("4", "2", "3"))
        assert (cell["optimum"], cell["branch"]) == ("15", "m_times_M")
        code, text = run("recheck", *map(str, certs))
        assert code == EXIT_OK and text.count(": ok") == 18

    def test_cap(self, tmp_path):
        assert run("verify", "--n", "9", "--t", "2", "--m", "2", out_dir=tmp_path)[0] == EXIT_CAP

    def test_tampered_certificate(self, tmp_path):
        run("verify", "--n", "3", "--t", "2", "--m", "2", out_dir=tmp_path)
        path = tmp_path / "cert_n3_t2_m2.json"
        doc = json.loads(path.read_text())
        doc["optimum"] = str(int(doc["optimum"]) + 1)
        path.write_text(json.dumps(doc))
        code, text = run("recheck", str(path))
        assert code == EXIT_MISMATCH and "FAILED" in text

    def test_unreadable_certificate(self, tmp_path):
        bad = tmp_path / "x.json"
        bad.write_text("{")
        assert run("recheck", str(bad))[0] == EXIT_USAGE

    def test_env_default_out(self, tmp_path, monkeypatch):
        monkeypatch.setenv("XFAM_RESULTS_DIR", str(tmp_path / "env"))
        assert run("verify", "--n", "2", "--t", "2", "--m", "2")[0] == EXIT_OK
        assert (tmp_path / "env" / "cert_n2_t2_m2.json").exists()


class TestLemma:
    def test_shift_preserves(self, tmp_path):
        code, text = run("lemma", "--name", "shift-preserves", "--trials", "200", "--format", "json",
                         out_dir=tmp_path)
        doc = json.loads(text)
        assert code == EXIT_OK and doc["passed"] == doc["instances"] == 200

    def test_unknown_name(self):
        assert run("lemma", "--name", "nosuch")[0] == EXIT_USAGE

    def test_workers_byte_identical(self, tmp_path):
        texts = [run("lemma", "--name", "le1", "--trials", "150", "--seed", "4", "--workers", str(w),
                     "--format", "json", out_dir=tmp_path / str(w))[1] for w in (1, 2)]
        assert texts[0] == texts[1]


class TestFamily:
    def test_katona(self):
        code, text = run("family", "katona", "--n", "5", "--t", "2", "--check", "2", "--format", "json")
        doc = json.loads(text)
        assert code == EXIT_OK
        assert doc["size"] == 10 and doc["intersecting"] is True

    def test_katona_check_fails_for_larger_t(self):
        assert run("family", "katona", "--n", "5", "--t", "2", "--check", "3")[0] == EXIT_MISMATCH

    def test_rs(self):
        code, text = run("family", "rs", "--n", "4", "--l", "4", "--t", "2", "--check", "2", "--format", "json")
        assert code == EXIT_OK and json.loads(text)["norm"] == 12

    def test_frankl(self):
        code, text = run("family", "frankl", "--n", "5", "--k", "3", "--t", "2", "--r", "1",
                         "--check", "2", "--format", "json")
        assert code == EXIT_OK and json.loads(text)["size"] == 4
