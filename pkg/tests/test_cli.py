"""Command-line behaviour: exit codes, determinism, file formats."""

import json
from fractions import Fraction as F

from treeradon import io, make_measure, vertex_function
from treeradon.cli import main


def write_star3(tmp_path):
    path = tmp_path / "star3.json"
    star3 = io.build_tree({
        "vertices": ["c", "a", "b", "d"],
        "edges": [
            ("c", "a", 1), ("c", "b", 1), ("c", "d", 1),
            ("a", None, "inf"), ("a", None, "inf"),
            ("b", None, "inf"), ("b", None, "inf"),
            ("d", None, "inf"), ("d", None, "inf"),
        ],
    })
    io.save_tree(star3, path)
    return path, star3


def write_tripod(tmp_path):
    path = tmp_path / "tripod.json"
    tripod = io.build_tree({
        "vertices": ["o", "x", "y", "z"],
        "edges": [("o", "x", 1), ("o", "y", 1), ("o", "z", 1)],
    })
    io.save_tree(tripod, path)
    return path, tripod


class TestGenTree:
    def test_writes_valid_tree(self, tmp_path, capsys):
        out = tmp_path / "t.json"
        code = main(["gen-tree", "--seed", "1", "--max-vertices", "6",
                     "--mode", "complete", "--out", str(out)])
        assert code == 0
        tree = io.load_tree(out)
        assert tree.geodesically_complete

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        argv = ["gen-tree", "--seed", "1", "--max-vertices", "6", "--mode", "complete"]
        assert main(argv + ["--out", str(a)]) == 0
        assert main(argv + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_bogus_mode_is_usage_error(self, tmp_path, capsys):
        code = main(["gen-tree", "--mode", "bogus", "--out", str(tmp_path / "t.json")])
        assert code == 2


class TestRadonInvert:
    def test_forward_then_invert_round_trip(self, tmp_path, capsys):
        tree_file, star3 = write_star3(tmp_path)
        h_file = tmp_path / "h.json"
        io.save_vertex_function(
            vertex_function(star3, {"c": 1, "a": 2, "b": 3, "d": 4}), h_file)
        table_file = tmp_path / "table.json"
        assert main(["radon", str(tree_file), str(h_file), "--out", str(table_file)]) == 0
        rows = json.loads(table_file.read_text())["flags"]
        assert len(rows) == 12
        by_key = {(r["x"], r["e"], r["f"]): r["value"] for r in rows}
        assert by_key[("c", 0, 1)] == "5"

        out_file = tmp_path / "h2.json"
        assert main(["invert", str(tree_file), str(table_file),
                     "--total", "10", "--out", str(out_file)]) == 0
        assert out_file.read_bytes() == h_file.read_bytes()

    def test_missing_total_is_usage_error(self, tmp_path):
        tree_file, _ = write_star3(tmp_path)
        code = main(["invert", str(tree_file), str(tree_file), "--out", str(tmp_path / "x")])
        assert code == 2

    def test_malformed_h_file(self, tmp_path, capsys):
        tree_file, _ = write_star3(tmp_path)
        h_file = tmp_path / "h.json"
        h_file.write_text("{broken")
        code = main(["radon", str(tree_file), str(h_file), "--out", str(tmp_path / "t")])
        assert code == 2

    def test_leafy_tree_is_domain_error(self, tmp_path, capsys):
        tree_file, tripod = write_tripod(tmp_path)
        table_file = tmp_path / "table.json"
        io.save_flag_table(
            __import__("treeradon").radon_forward(tripod, vertex_function(tripod, {})),
            table_file)
        code = main(["invert", str(tree_file), str(table_file),
                     "--total", "0", "--out", str(tmp_path / "h.json")])
        assert code == 1


class TestW2AndPlan:
    def test_tip_diracs(self, tmp_path, capsys):
        tree_file, tripod = write_tripod(tmp_path)
        mu_file, nu_file = tmp_path / "mu.json", tmp_path / "nu.json"
        io.save_measure(tripod, make_measure(tripod, [(tripod.vertex_point("x"), 1)]), mu_file)
        io.save_measure(tripod, make_measure(tripod, [(tripod.vertex_point("y"), 1)]), nu_file)
        assert main(["w2", str(tree_file), str(mu_file), str(nu_file)]) == 0
        assert capsys.readouterr().out.strip() == "4"

    def test_identical_measures(self, tmp_path, capsys):
        tree_file, tripod = write_tripod(tmp_path)
        mu_file = tmp_path / "mu.json"
        io.save_measure(tripod, make_measure(tripod, [(tripod.vertex_point("x"), 1)]), mu_file)
        assert main(["w2", str(tree_file), str(mu_file), str(mu_file)]) == 0
        assert capsys.readouterr().out.strip() == "0"

    def test_three_atom_case_matches_oracle(self, tmp_path, capsys):
        from treeradon import w2_squared_enumerated
        tree_file, tripod = write_tripod(tmp_path)
        mu = make_measure(tripod, [
            (tripod.vertex_point("x"), F(1, 3)),
            (tripod.vertex_point("y"), F(1, 3)),
            (tripod.point(2, F(1, 2)), F(1, 3)),
        ])
        nu = make_measure(tripod, [
            (tripod.vertex_point("o"), F(1, 2)),
            (tripod.vertex_point("z"), F(1, 2)),
        ])
        mu_file, nu_file = tmp_path / "mu.json", tmp_path / "nu.json"
        io.save_measure(tripod, mu, mu_file)
        io.save_measure(tripod, nu, nu_file)
        assert main(["w2", str(tree_file), str(mu_file), str(nu_file)]) == 0
        printed = capsys.readouterr().out.strip()
        assert printed == str(w2_squared_enumerated(tripod, mu, nu))

    def test_plan_file(self, tmp_path, capsys):
        tree_file, tripod = write_tripod(tmp_path)
        mu_file, nu_file = tmp_path / "mu.json", tmp_path / "nu.json"
        io.save_measure(tripod, make_measure(tripod, [(tripod.vertex_point("x"), 1)]), mu_file)
        io.save_measure(tripod, make_measure(tripod, [(tripod.vertex_point("y"), 1)]), nu_file)
        out = tmp_path / "plan.json"
        assert main(["plan", str(tree_file), str(mu_file), str(nu_file),
                     "--out", str(out)]) == 0
        payload = json.loads(out.read_text())
        assert payload["w2_squared"] == "4"

    def test_interpolate(self, tmp_path, capsys):
        tree_file, tripod = write_tripod(tmp_path)
        mu_file, nu_file = tmp_path / "mu.json", tmp_path / "nu.json"
        io.save_measure(tripod, make_measure(tripod, [(tripod.vertex_point("x"), 1)]), mu_file)
        io.save_measure(tripod, make_measure(tripod, [(tripod.vertex_point("y"), 1)]), nu_file)
        out = tmp_path / "mid.json"
        assert main(["interpolate", str(tree_file), str(mu_file), str(nu_file),
                     "--t", "1/2", "--out", str(out)]) == 0
        mid = io.load_measure(tripod, out)
        assert mid == make_measure(tripod, [(tripod.vertex_point("o"), 1)])


class TestReconstruct:
    def test_round_trip(self, tmp_path, capsys):
        tree_file, star3 = write_star3(tmp_path)
        hidden = make_measure(star3, [
            (star3.vertex_point("c"), F(1, 4)),
            (star3.vertex_point("a"), F(1, 4)),
            (star3.point(1, F(1, 3)), F(1, 2)),
        ])
        hidden_file = tmp_path / "hidden.json"
        io.save_measure(star3, hidden, hidden_file)
        out = tmp_path / "rec.json"
        assert main(["reconstruct", str(tree_file), str(hidden_file),
                     "--out", str(out)]) == 0
        payload = json.loads(out.read_text())
        recovered = io.measure_from_dict(star3, payload["measure"])
        assert recovered == hidden
        assert payload["provenance"]["interior_total"] == "1/2"

    def test_inconsistent_skeleton_is_domain_error(self, tmp_path, capsys):
        tree_file, star3 = write_star3(tmp_path)
        hidden = make_measure(star3, [
            (star3.point(1, F(1, 3)), F(1, 2)),
            (star3.vertex_point("c"), F(1, 2)),
        ])
        hidden_file = tmp_path / "hidden.json"
        io.save_measure(star3, hidden, hidden_file)
        code = main(["reconstruct", str(tree_file), str(hidden_file),
                     "--skeleton", "0,2,3,4,5,6,7,8", "--out", str(tmp_path / "r.json")])
        assert code == 1
        assert "error" in capsys.readouterr().err


class TestVerify:
    def test_default_run_passes(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(["verify", "--trials", "3", "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["ok"] is True
        assert "duration_seconds" not in payload

    def test_trials_zero(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert main(["verify", "--trials", "0", "--out", str(out)]) == 0
        payload = json.loads(out.read_text())
        assert all(p["trials"] == 0 for p in payload["properties"])

    def test_injected_fault_fails(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(["verify", "--trials", "2", "--inject-fault", "--out", str(out)])
        assert code == 1
        assert json.loads(out.read_text())["ok"] is False

    def test_report_reruns_byte_identical(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["verify", "--trials", "2", "--seed", "9", "--out", str(a)]) == 0
        assert main(["verify", "--trials", "2", "--seed", "9", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()


class TestUsage:
    def test_no_command(self):
        assert main([]) == 2

    def test_unknown_flag(self, tmp_path):
        assert main(["gen-tree", "--nope", "--out", str(tmp_path / "t")]) == 2


def test_console_entry_point(tmp_path):
    import subprocess
    import sys

    out = tmp_path / "t.json"
    proc = subprocess.run(
        [sys.executable, "-m", "treeradon.cli", "gen-tree", "--seed", "3",
         "--max-vertices", "5", "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert io.load_tree(out).geodesically_complete
