"""CLI subcommands, exit codes, output determinism."""

import json

from relcomm.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSpectrum:
    def test_trivial_group(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--group", '{"cyclic": 1}')
        assert code == 0
        obj = json.loads(out)
        assert obj["spectrum"] == ["1/1"]

    def test_d8_json(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--group", '{"dihedral": 4}')
        assert code == 0
        obj = json.loads(out)
        assert obj["spectrum"] == ["1/1", "3/4", "5/8"]
        assert [w["value"] for w in obj["witnesses"]] == obj["spectrum"]

    def test_tsv(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--group", '{"dihedral": 4}',
                           "--format", "tsv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "value\twitnessOrder\twitnessElements"
        assert len(lines) == 4

    def test_specfile(self, capsys, tmp_path):
        path = tmp_path / "g.json"
        path.write_text('{"symmetric": 3}')
        code, out, _ = run(capsys, "spectrum", str(path))
        assert code == 0
        assert json.loads(out)["spectrum"] == ["1/1", "2/3", "1/2"]

    def test_out_file(self, capsys, tmp_path):
        dest = tmp_path / "spec.json"
        code, _, _ = run(capsys, "spectrum", "--group", '{"cyclic": 6}',
                         "--out", str(dest))
        assert code == 0
        assert json.loads(dest.read_text())["order"] == 6


class TestVerifyClassify:
    def test_verify_sl23(self, capsys):
        code, out, _ = run(capsys, "verify", "--group", '{"sl23": true}')
        assert code == 0
        obj = json.loads(out)
        assert obj["verdict"] == "Match"
        assert obj["spectrum"] == ["1/1", "7/12", "1/2", "3/8", "7/24"]
        assert obj["caseTag"] == {"case": "NN5.iv-A4", "p": 2, "q": 3}

    def test_classify_d16(self, capsys):
        code, out, _ = run(capsys, "classify", "--group", '{"dihedral": 8}')
        assert code == 0
        obj = json.loads(out)
        assert obj["caseTag"]["case"] == "N5.i"
        assert obj["predicted"] == obj["spectrum"]

    def test_classify_unclassified(self, capsys):
        code, out, _ = run(capsys, "classify", "--group", '{"symmetric": 4}')
        assert code == 0
        obj = json.loads(out)
        assert obj["verdict"] == "NotApplicable"
        assert obj["predicted"] is None


class TestExitCodes:
    def test_bad_json(self, capsys):
        code, _, err = run(capsys, "spectrum", "--group", "{nope")
        assert code == 2 and "input error" in err

    def test_schema_error(self, capsys):
        code, _, err = run(capsys, "spectrum", "--group", '{"symmetric": 9}')
        assert code == 2

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "spectrum", "/nonexistent/spec.json")
        assert code == 2

    def test_cap_exceeded(self, capsys):
        code, _, err = run(capsys, "spectrum", "--group", '{"cyclic": 1000}')
        assert code == 3 and "cap" in err

    def test_cap_override_allows(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--group", '{"cyclic": 1000}',
                           "--cap", "1024")
        assert code == 0
        assert json.loads(out)["order"] == 1000

    def test_counterexample_s5s5_rejected(self, capsys):
        code, _, err = run(capsys, "counterexample", "--pair", "s5s5")
        assert code == 2 and "14400" in err

    def test_counterexample_s4s4_needs_flag(self, capsys):
        code, _, err = run(capsys, "counterexample", "--pair", "s4s4")
        assert code == 2 and "--allow-heavy" in err


class TestScan:
    def test_small_scan_json(self, capsys):
        code, out, _ = run(capsys, "scan", "--max-order", "12")
        assert code == 0
        records = [json.loads(line) for line in out.splitlines()]
        names = [r["name"] for r in records]
        assert names == sorted(names)
        a4 = next(r for r in records if r["name"] == "A4")
        assert a4["verdict"] == "Match"
        assert a4["spectrum"] == ["1/1", "2/3", "1/2", "1/3"]

    def test_deterministic_across_threads(self, capsys, tmp_path):
        f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
        assert run(capsys, "scan", "--max-order", "16", "--out", str(f1))[0] == 0
        assert run(capsys, "scan", "--max-order", "16", "--threads", "3",
                   "--out", str(f2))[0] == 0
        assert f1.read_bytes() == f2.read_bytes()

    def test_tsv_columns(self, capsys):
        code, out, _ = run(capsys, "scan", "--max-order", "8",
                           "--format", "tsv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "name\torder\tspectrumSize\tcaseTag\tverdict"
        assert all(len(line.split("\t")) == 5 for line in lines[1:])

    def test_figures_written(self, capsys, tmp_path):
        figdir = tmp_path / "figs"
        code, _, _ = run(capsys, "scan", "--max-order", "12",
                         "--figures", str(figdir), "--out",
                         str(tmp_path / "o.json"))
        assert code == 0
        from relcomm.figures import FIGURE_NAMES
        for fname in FIGURE_NAMES:
            f = figdir / fname
            assert f.exists() and f.stat().st_size > 0

    def test_custom_catalog_file(self, capsys, tmp_path):
        cat = tmp_path / "cat.jsonl"
        cat.write_text('{"name": "MyD8", "spec": {"dihedral": 4}}\n')
        code, out, _ = run(capsys, "scan", "--catalog", str(cat))
        assert code == 0
        rec = json.loads(out.splitlines()[0])
        assert rec["name"] == "MyD8" and rec["spectrumSize"] == 3

    def test_audits_flag(self, capsys):
        code, out, _ = run(capsys, "scan", "--max-order", "8", "--audits")
        assert code == 0
        for line in out.splitlines():
            rec = json.loads(line)
            assert rec["auditResults"] == {"chainBound": True,
                                           "omegaBound": True}

    def test_max_order_over_cap(self, capsys):
        code, _, err = run(capsys, "scan", "--max-order", "2000")
        assert code == 3

    def test_timings_flag_populates_phases(self, capsys):
        code, out, _ = run(capsys, "scan", "--max-order", "6", "--timings")
        assert code == 0
        rec = json.loads(out.splitlines()[0])
        assert set(rec["timings"]) == {"buildMs", "latticeMs", "classifyMs"}

    def test_worker_failure_in_pool_exits_2(self, capsys, tmp_path):
        cat = tmp_path / "bad.jsonl"
        cat.write_text(
            '{"name": "Bad", "spec": {"semidirect": {"n": {"cyclic": 5}, '
            '"h": {"cyclic": 2}, "action": {"h_gen": [0,2,4,1,3]}}}}\n')
        code, _, err = run(capsys, "scan", "--catalog", str(cat),
                           "--threads", "2")
        assert code == 2 and "homomorphism" in err


class TestAudit:
    def test_chain_small(self, capsys):
        code, out, _ = run(capsys, "audit", "--check", "chain",
                           "--max-order", "16")
        assert code == 0
        records = [json.loads(line) for line in out.splitlines()]
        assert all(r["holds"] for r in records)
        assert all(r["check"] == "ChainBound" for r in records)

    def test_omega_notes_interpretation(self, capsys):
        code, out, _ = run(capsys, "audit", "--check", "omega",
                           "--max-order", "12")
        assert code == 0
        for line in out.splitlines():
            rec = json.loads(line)
            assert "Z(H,G)" in rec["detail"]["interpretation"]

    def test_product_curated(self, capsys):
        code, out, _ = run(capsys, "audit", "--check", "product")
        assert code == 0
        records = [json.loads(line) for line in out.splitlines()]
        assert len(records) >= 10
        assert any(r["subject"] == "D8 x Heis3" for r in records)
        assert all(r["holds"] for r in records)

    def test_product_pairs_sweep(self, capsys):
        code, out, _ = run(capsys, "audit", "--check", "product", "--pairs",
                           "--max-order", "30")
        assert code == 0
        records = [json.loads(line) for line in out.splitlines()]
        assert all(r["holds"] for r in records)
        assert len(records) > 10

    def test_prime_power_skips_inapplicable(self, capsys):
        code, out, _ = run(capsys, "audit", "--check", "prime-power",
                           "--max-order", "24")
        assert code == 0
        records = [json.loads(line) for line in out.splitlines()]
        # only non-nilpotent five-degree groups are audited
        assert all(r["holds"] for r in records)
        assert records, "expected at least D18 and F20 to qualify"

    def test_counterexample_a4s4(self, capsys):
        code, out, _ = run(capsys, "counterexample", "--pair", "a4s4")
        assert code == 0
        obj = json.loads(out)
        assert obj["delta"] == -3
        assert obj["sizeH"] == 4 and obj["sizeK"] == 9
        assert obj["sizeProduct"] == 33
