import copy
import json
import socket
import subprocess
import sys
import time
import urllib.request

import pytest

from riskweave.cli import main
from riskweave.store import write_model_file


@pytest.fixture()
def model_path(paper_doc, tmp_path):
    path = tmp_path / "model.json"
    write_model_file(paper_doc, path)
    return path


class TestValidate:
    def test_fixture_passes_with_all_ratios_listed(self, model_path, capsys):
        assert main(["validate", str(model_path)]) == 0
        out = capsys.readouterr().out
        assert "criteria-vs-goal" in out
        assert "34 matrices, 0 above the 0.1 threshold" in out

    def test_strict_fails_after_perturbation(self, paper_doc, tmp_path, capsys):
        doc = copy.deepcopy(paper_doc)
        doc["matrices"]["criteria-vs-goal"]["judgments"][0]["value"] = "9"
        path = tmp_path / "perturbed.json"
        write_model_file(doc, path)
        assert main(["validate", str(path), "--strict"]) == 1
        assert "CR>0.1" in capsys.readouterr().out

    def test_missing_file_exit_3(self, tmp_path):
        assert main(["validate", str(tmp_path / "ghost.json")]) == 3

    def test_invalid_document_exit_1(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text(json.dumps({"schema_version": 1, "name": "x"}), encoding="utf-8")
        assert main(["validate", str(path)]) == 1


class TestSolve:
    def test_outputs_written_and_deterministic(self, model_path, tmp_path):
        out1, out2 = tmp_path / "run1", tmp_path / "run2"
        assert main(["solve", str(model_path), "--weights-source", "paper", "--out", str(out1)]) == 0
        assert main(["solve", str(model_path), "--weights-source", "paper", "--out", str(out2)]) == 0
        for name in (
            "rpn_table.csv",
            "supermatrix_unweighted.csv",
            "supermatrix_weighted.csv",
            "supermatrix_limit.csv",
            "report.json",
        ):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_paper_weights_rpn_table_matches_published_within_one_percent(
        self, model_path, tmp_path, paper_model
    ):
        from riskweave.fixture import PUBLISHED_RPN

        out = tmp_path / "run"
        main(["solve", str(model_path), "--weights-source", "paper", "--out", str(out)])
        rows = (out / "rpn_table.csv").read_text().strip().splitlines()[1:]
        assert len(rows) == 17
        for row in rows:
            cells = row.split(",")
            cause, classic, weighted = cells[0], int(cells[4]), float(cells[5])
            expected_classic, expected_weighted = PUBLISHED_RPN[cause]
            assert classic == expected_classic
            assert abs(weighted - expected_weighted) / expected_weighted < 0.01

    def test_supermatrix_csv_has_id_headers(self, model_path, tmp_path):
        out = tmp_path / "run"
        main(["solve", str(model_path), "--out", str(out)])
        lines = (out / "supermatrix_weighted.csv").read_text().strip().splitlines()
        header = lines[0].split(",")
        assert header[0] == ""
        assert header[1] == "select-project-manager"
        assert len(lines) == 22  # header + 21 element rows

    def test_incomplete_judgments_exit_1_listing_gaps(self, paper_doc, tmp_path, capsys):
        doc = copy.deepcopy(paper_doc)
        del doc["matrices"]["criteria-vs-goal"]["judgments"][0]
        # bypass load-time completeness by dropping the whole matrix
        del doc["matrices"]["criteria-vs-goal"]
        path = tmp_path / "incomplete.json"
        write_model_file(doc, path)
        assert main(["solve", str(path), "--out", str(tmp_path / "o")]) == 1
        err = capsys.readouterr().err
        assert "criteria-vs-goal" in err

    def test_unwritable_out_dir_exit_3(self, model_path, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("file, not a directory", encoding="utf-8")
        assert main(["solve", str(model_path), "--out", str(blocker / "sub")]) == 3


class TestCompare:
    def test_table_and_aggregates(self, model_path, capsys):
        assert main(["compare", str(model_path), "--weights-source", "paper"]) == 0
        out = capsys.readouterr().out
        assert "lack-of-humility" in out
        assert "(4 -> 13)" in out  # the largest shift
        assert "weighted RPN exceeds classic on 13 of 17 causes" in out
        assert "tie groups (classic): {8: 2, 12: 3}" in out
        assert "tie groups (weighted): none" in out

    def test_solve_then_compare_equals_compare(self, model_path, tmp_path, capsys):
        main(["solve", str(model_path), "--weights-source", "paper", "--out", str(tmp_path / "o")])
        capsys.readouterr()
        main(["compare", str(model_path), "--weights-source", "paper"])
        direct = capsys.readouterr().out
        main(["compare", str(model_path), "--weights-source", "paper"])
        again = capsys.readouterr().out
        assert direct == again

    def test_two_item_toy_model_correlation_is_unit(self, tmp_path, capsys):
        doc = {
            "schema_version": 1,
            "name": "toy",
            "network": {
                "name": "toy",
                "clusters": [
                    {"id": "goal", "kind": "goal", "elements": ["objective"]},
                    {"id": "c1", "kind": "criteria", "elements": ["x", "y"]},
                    {
                        "id": "alternatives",
                        "kind": "alternatives",
                        "elements": ["severity", "occurrence", "detection"],
                    },
                ],
                "edges": [
                    {"source": "goal", "target": "c1", "level": "cluster"},
                    {"source": "c1", "target": "alternatives", "level": "cluster"},
                ],
            },
            "matrices": {
                "subcriteria:c1": {"judgments": [{"row": "x", "col": "y", "value": "3"}]},
                "options:x": {
                    "judgments": [
                        {"row": "severity", "col": "occurrence", "value": "2"},
                        {"row": "severity", "col": "detection", "value": "2"},
                        {"row": "occurrence", "col": "detection", "value": "1"},
                    ]
                },
                "options:y": {
                    "judgments": [
                        {"row": "severity", "col": "occurrence", "value": "3"},
                        {"row": "severity", "col": "detection", "value": "3"},
                        {"row": "occurrence", "col": "detection", "value": "1"},
                    ]
                },
            },
            "fmea_items": [
                {"cause": "x", "severity": 8, "occurrence": 4, "detection": 2},
                {"cause": "y", "severity": 2, "occurrence": 3, "detection": 4},
            ],
        }
        path = tmp_path / "toy.json"
        write_model_file(doc, path)
        assert main(["compare", str(path)]) == 0
        out = capsys.readouterr().out
        assert "rank correlation (Spearman, tie-corrected): 1.000000" in out


class TestServe:
    def test_occupied_port_exit_3(self):
        blocker = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        blocker.bind(("127.0.0.1", 0))
        port = blocker.getsockname()[1]
        try:
            assert main(["serve", "--addr", f"127.0.0.1:{port}"]) == 3
        finally:
            blocker.close()

    def test_bad_addr_exit_1(self):
        assert main(["serve", "--addr", "nonsense"]) == 1

    def test_real_server_answers_health(self, tmp_path):
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.bind(("127.0.0.1", 0))
        port = probe.getsockname()[1]
        probe.close()
        proc = subprocess.Popen(
            [sys.executable, "-m", "riskweave.cli", "serve",
             "--addr", f"127.0.0.1:{port}", "--store", str(tmp_path)],
            stdout=subprocess.DEVNULL,
            stderr=subprocess.DEVNULL,
        )
        try:
            deadline = time.time() + 30
            body = None
            while time.time() < deadline:
                try:
                    with urllib.request.urlopen(
                        f"http://127.0.0.1:{port}/health", timeout=1
                    ) as response:
                        body = json.load(response)
                    break
                except OSError:
                    time.sleep(0.2)
            assert body == {"status": "ok"}
        finally:
            proc.terminate()
            proc.wait(timeout=10)
