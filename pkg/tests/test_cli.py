import json

from click.testing import CliRunner

from alteration_lab.cli import main
from alteration_lab.graphs import Graph
from alteration_lab.randomness import RandomSource, sample_gnp


def invoke(*args):
    runner = CliRunner()
    result = runner.invoke(main, [str(a) for a in args], catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return result.output


def write_host(tmp_path, n=12, p=0.4, seed=3):
    g = sample_gnp(n, p, RandomSource(seed).stream("host"))
    path = tmp_path / "host.txt"
    path.write_text(g.to_text())
    return path, g


def test_density_command():
    out = json.loads(invoke("density", "K3"))
    assert out["value"] == "2" and out["strictly_balanced"]


def test_density_core_and_csv():
    out = json.loads(invoke("density", "C5", "--core"))
    assert out["minimal_core"]["m"] == 5
    csv_out = invoke("density", "K4", "--format", "csv")
    assert csv_out.startswith("key,value")


def test_density_hypergraph_pattern():
    out = json.loads(invoke("density", "K4r3"))
    assert out["uniformity"] == 3 and out["value"] == "3"


def test_copies_command(tmp_path):
    path, _ = write_host(tmp_path)
    out = json.loads(invoke("copies", path, "--pattern", "K3", "--k-set", "0,1,2,3,4"))
    assert "copies" in out and out["k_reports"][0]["bound_holds"]


def test_alter_command_round_trip(tmp_path):
    path, g = write_host(tmp_path)
    text = invoke("alter", path, "--pattern", "K3", "--method", "refined")
    altered = Graph.from_text(text)
    assert altered.edge_set <= g.edge_set

    out_file = tmp_path / "out.txt"
    summary = json.loads(
        invoke("alter", path, "--pattern", "K3", "--method", "krivelevich", "--out", out_file)
    )
    assert out_file.exists()
    assert summary["kept"] == Graph.from_text(out_file.read_text()).num_edges

    greedy_text = invoke(
        "alter", path, "--pattern", "K3", "--method", "greedy", "--order", "random", "--seed", 5
    )
    assert Graph.from_text(greedy_text).edge_set <= g.edge_set


def test_alpha_command(tmp_path):
    path = tmp_path / "c5.txt"
    path.write_text("5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n")
    out = json.loads(invoke("alpha", path))
    assert out["alpha"] == 2 and out["exact"]


def test_certify_command(tmp_path):
    path = tmp_path / "c5.txt"
    path.write_text("5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n")
    out = json.loads(invoke("certify", path, "--pattern", "K3", "--k", 3))
    assert out["holds"] and out["status"] == "certified"


def test_concentration_command_with_outputs(tmp_path):
    out_dir = tmp_path / "results"
    out = json.loads(
        invoke(
            "concentration",
            "--pattern", "K3", "--k", 6, "--C", 0.5, "--c", 8,
            "--trials", 4, "--k-samples", 4, "--seed", 2, "--out", out_dir,
        )
    )
    assert "freq_y_ok" in out
    assert (out_dir / "summary.json").exists()
    assert (out_dir / "summary.csv").exists()
    assert (out_dir / "trials.jsonl").exists()
    lines = (out_dir / "trials.jsonl").read_text().strip().splitlines()
    assert len(lines) == 4


def test_lemma5_command():
    out = json.loads(
        invoke("lemma5", "--pattern", "K3", "--k", 40, "--C", 4, "--c", 0.2, "--trials", 5, "--seed", 3)
    )
    assert out["identity_violations"] == 0


def test_tail_command(tmp_path):
    out_dir = tmp_path / "tail"
    out = json.loads(
        invoke("tail", "--n", 10, "--p", 0.3, "--trials", 500, "--seed", 1, "--out", out_dir)
    )
    assert out["members"] == 36
    assert (out_dir / "plot.csv").exists()


def test_tail_command_explicit_grid():
    out = json.loads(
        invoke("tail", "--n", 10, "--p", 0.3, "--trials", 300, "--seed", 2, "--x", 3, "--x", 4)
    )
    assert out["grid"] == [3, 4]


def test_witness_command():
    out = json.loads(invoke("witness", "--pattern", "K3", "--k", 12, "--n", 12, "--p", 0.4, "--delta", 1.0))
    assert out["holds"]


def test_ramsey_search_command():
    out = json.loads(
        invoke("ramsey-search", "--pattern", "K3", "--k", 3, "--C", 1.4, "--c", 0.7, "--trials", 40, "--seed", 11)
    )
    assert out["found"] and out["best"]["n"] == 5


def test_rps_command():
    out = json.loads(
        invoke("rps", "--pattern", "K3", "--k", 6, "--n", 10, "--p", 0.4, "--trials", 3, "--seed", 4)
    )
    assert out["mode"] == "rps"


def test_builder_game_command():
    out = json.loads(
        invoke(
            "builder-game", "--pattern", "K3", "--k", 9, "--n", 16, "--p", 0.5,
            "--trials", 3, "--seed", 4, "--builder", "pump",
        )
    )
    assert out["red_core_violations"] == 0


def test_pattern_flag_accepts_files(tmp_path):
    pattern_file = tmp_path / "pattern.txt"
    pattern_file.write_text(complete_pattern_text())
    out = json.loads(
        invoke("rps", "--pattern", pattern_file, "--k", 5, "--n", 8, "--p", 0.3, "--trials", 2, "--seed", 1)
    )
    assert out["mode"] == "rps"


def complete_pattern_text():
    return "3 3\n0 1\n0 2\n1 2\n"


def test_family_mode_flags():
    out = json.loads(
        invoke(
            "concentration",
            "--family", "K3", "--family", "C4", "--k", 6, "--C", 0.5, "--c", 8,
            "--trials", 3, "--k-samples", 3, "--seed", 5,
        )
    )
    assert out["params"]["family_mode"]


def test_config_file_defaults(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"density": {"core": True}}))
    out = json.loads(invoke("--config", config, "density", "C5"))
    assert "minimal_core" in out


def test_r_flag_validation(tmp_path):
    runner = CliRunner()
    result = runner.invoke(
        main,
        ["concentration", "--pattern", "K3", "--k", "6", "--r", "3", "--trials", "2"],
    )
    assert result.exit_code != 0
    assert "disagrees" in result.output
