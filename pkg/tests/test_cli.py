"""Tests for the command-line interface."""

import pytest

from onnemu.cli import build_parser, main
from onnemu.core import (
    format_config,
    format_pattern,
    parse_pattern,
    parse_weights_csv,
)
from onnemu.datasets import builtin_dataset


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------- parser


def test_parser_requires_a_subcommand():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_unknown_flag_exits_with_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["bench", "3x3", "--no-such-flag"])
    assert exc.value.code == 2


def test_help_lists_all_subcommands(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    for sub in ("train", "run", "bench", "scale", "serve"):
        assert sub in out


# ---------------------------------------------------------------- train


def test_train_writes_weights_and_stability(tmp_path, capsys):
    code, out, _ = run_cli(["train", "3x3", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert out.startswith("effective-config:")
    assert "converged = True" in out
    weights = parse_weights_csv((tmp_path / "weights.csv").read_text())
    assert weights.n == 9
    stability = (tmp_path / "stability.txt").read_text()
    assert "pattern 0: stable" in stability
    assert "pattern 1: stable" in stability


def test_train_echo_reports_parameters(tmp_path, capsys):
    _, out, _ = run_cli(
        ["train", "3x3", "--threshold", "2.0", "--max-epochs", "50",
         "--out", str(tmp_path)],
        capsys,
    )
    assert "stability_threshold = 2.0" in out
    assert "max_epochs = 50" in out


def test_train_non_convergence_exits_one_unless_allowed(tmp_path, capsys):
    code, _, err = run_cli(
        ["train", "3x3", "--max-epochs", "1", "--out", str(tmp_path)], capsys
    )
    assert code == 1
    assert "did not converge" in err
    assert (tmp_path / "weights.csv").exists()  # artifacts written anyway
    code, _, _ = run_cli(
        ["train", "3x3", "--max-epochs", "1", "--allow-unstable",
         "--out", str(tmp_path)],
        capsys,
    )
    assert code == 0


def test_train_rejects_unknown_dataset(tmp_path, capsys):
    with pytest.raises((SystemExit, KeyError, ValueError)):
        main(["train", "/no/such/dataset", "--out", str(tmp_path)])


# ---------------------------------------------------------------- run


@pytest.fixture()
def trained_3x3(tmp_path, capsys):
    out = tmp_path / "model"
    assert main(["train", "3x3", "--out", str(out)]) == 0
    capsys.readouterr()  # discard training output
    return out


def test_run_retrieves_stored_pattern(trained_3x3, tmp_path, capsys):
    _, patterns = builtin_dataset("3x3")
    probe = tmp_path / "probe.txt"
    probe.write_text(format_pattern(patterns[0]))
    code, out, _ = run_cli(
        ["run", "--weights", str(trained_3x3 / "weights.csv"),
         "--pattern", str(probe)],
        capsys,
    )
    assert code == 0
    assert "settled = True" in out
    assert "timed_out = False" in out
    tail = out[out.index("decoded pattern:") :]
    decoded = parse_pattern(tail.split("decoded pattern:\n", 1)[1])
    assert decoded == patterns[0]


def test_run_writes_trace_file(trained_3x3, tmp_path, capsys):
    _, patterns = builtin_dataset("3x3")
    probe = tmp_path / "probe.txt"
    probe.write_text(format_pattern(patterns[1]))
    trace = tmp_path / "trace.txt"
    code, out, _ = run_cli(
        ["run", "--weights", str(trained_3x3 / "weights.csv"),
         "--pattern", str(probe), "--trace", str(trace)],
        capsys,
    )
    assert code == 0
    lines = trace.read_text().splitlines()
    assert lines[0].startswith("# architecture=")
    assert len(lines) >= 2
    assert len(lines[1].split(",")) == 9


def test_run_architectures_agree_on_outcome(trained_3x3, tmp_path, capsys):
    _, patterns = builtin_dataset("3x3")
    probe = tmp_path / "probe.txt"
    probe.write_text(format_pattern(patterns[0]))

    def outcome_lines(extra):
        code, out, _ = run_cli(
            ["run", "--weights", str(trained_3x3 / "weights.csv"),
             "--pattern", str(probe), *extra],
            capsys,
        )
        assert code == 0
        return out[out.index("settled =") :]

    rec = outcome_lines(["--arch", "recurrent"])
    hyb = outcome_lines(["--arch", "hybrid", "--hybrid-mode", "aligned"])
    assert rec == hyb


def test_run_rejects_mismatched_weights(trained_3x3, tmp_path, capsys):
    probe = tmp_path / "probe.txt"
    probe.write_text("10\n01\n")
    with pytest.raises(SystemExit):
        main(["run", "--weights", str(trained_3x3 / "weights.csv"),
              "--pattern", str(probe)])


def test_config_file_drives_run(trained_3x3, tmp_path, capsys):
    from onnemu.core import Architecture, HybridSampling, NetworkConfig

    cfg = NetworkConfig(Architecture.HYBRID, 9, hybrid_sampling=HybridSampling.ALIGNED)
    cfg_file = tmp_path / "net.cfg"
    cfg_file.write_text(format_config(cfg))
    _, patterns = builtin_dataset("3x3")
    probe = tmp_path / "probe.txt"
    probe.write_text(format_pattern(patterns[0]))
    code, out, _ = run_cli(
        ["run", "--weights", str(trained_3x3 / "weights.csv"),
         "--pattern", str(probe), "--config", str(cfg_file)],
        capsys,
    )
    assert code == 0
    assert "architecture = hybrid" in out
    assert "hybrid_sampling = aligned" in out


def test_config_file_with_wrong_n_is_rejected(trained_3x3, tmp_path, capsys):
    cfg_file = tmp_path / "net.cfg"
    cfg_file.write_text("n_oscillators = 16\n")
    probe = tmp_path / "probe.txt"
    _, patterns = builtin_dataset("3x3")
    probe.write_text(format_pattern(patterns[0]))
    with pytest.raises(SystemExit):
        main(["run", "--weights", str(trained_3x3 / "weights.csv"),
              "--pattern", str(probe), "--config", str(cfg_file)])


# ---------------------------------------------------------------- bench


def bench_args(out_dir, extra=()):
    # A small period budget keeps the non-settling probes cheap; the
    # tests here exercise plumbing and determinism, not accuracy.
    return ["bench", "3x3", "--trials", "30", "--seed", "5",
            "--max-periods", "50", "--out", str(out_dir), *extra]


def test_bench_reports_are_byte_identical_across_reruns(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(bench_args(a)) == 0
    assert main(bench_args(b)) == 0
    capsys.readouterr()
    assert (a / "bench_report.csv").read_bytes() == (b / "bench_report.csv").read_bytes()
    assert (a / "bench_report.txt").read_bytes() == (b / "bench_report.txt").read_bytes()


def test_bench_parallel_report_matches_serial(tmp_path, capsys):
    serial, parallel = tmp_path / "serial", tmp_path / "parallel"
    assert main(bench_args(serial)) == 0
    assert main(bench_args(parallel, ["--parallel", "2"])) == 0
    capsys.readouterr()
    assert (serial / "bench_report.csv").read_bytes() == (
        parallel / "bench_report.csv"
    ).read_bytes()
    assert (serial / "bench_report.txt").read_bytes() == (
        parallel / "bench_report.txt"
    ).read_bytes()


def test_bench_echo_excludes_parallelism_but_includes_seed(tmp_path, capsys):
    code, out, _ = run_cli(bench_args(tmp_path, ["--parallel", "2"]), capsys)
    assert code == 0
    echo = out.split("\n\n", 1)[0]
    assert "seed = 5" in echo
    assert "parallel" not in echo  # worker count must not taint the echo


def test_bench_percentage_levels_are_normalized(tmp_path, capsys):
    code, out, _ = run_cli(
        bench_args(tmp_path, ["--levels", "10,25"]), capsys
    )
    assert code == 0
    assert "levels = 0.1,0.25" in out


def test_bench_rejects_bad_levels(tmp_path, capsys):
    with pytest.raises(SystemExit):
        main(bench_args(tmp_path, ["--levels", "150"]))


# ---------------------------------------------------------------- scale


def test_scale_stdout_covers_default_power_range(capsys):
    code, out, _ = run_cli(["scale"], capsys)
    assert code == 0
    body = out.split("\n\n", 1)[1]
    data = [l for l in body.splitlines() if l and not l.startswith("#")]
    assert data[0].startswith("n,oscillators")
    ns = [int(l.split(",")[0]) for l in data[1:]]
    assert ns == [8, 16, 32, 64, 128, 256, 512]


def test_scale_writes_csv_per_architecture(tmp_path, capsys):
    code, _, _ = run_cli(
        ["scale", "--arch", "recurrent", "--range", "8:64",
         "--out", str(tmp_path)],
        capsys,
    )
    assert code == 0
    text = (tmp_path / "scale_recurrent.csv").read_text()
    assert text.startswith("n,oscillators")


def test_scale_linear_and_list_ranges(capsys):
    code, out, _ = run_cli(["scale", "--range", "10:30:10"], capsys)
    assert code == 0
    body = out.split("\n\n", 1)[1]
    ns = [int(l.split(",")[0]) for l in body.splitlines()[1:] if "," in l]
    assert ns == [10, 20, 30]

    code, out, _ = run_cli(["scale", "--range", "48,506"], capsys)
    assert code == 0
    body = out.split("\n\n", 1)[1]
    ns = [int(l.split(",")[0]) for l in body.splitlines()[1:] if "," in l]
    assert ns == [48, 506]


def test_scale_rejects_malformed_range(capsys):
    with pytest.raises(SystemExit):
        main(["scale", "--range", "8:4"])
    with pytest.raises(SystemExit):
        main(["scale", "--range", "1:2:3:4"])


def test_scale_custom_profile(tmp_path, capsys):
    profile = tmp_path / "device.txt"
    profile.write_text(
        "luts = 100000\nflipflops = 200000\ndsp_slices = 400\nbram_blocks = 280\n"
    )
    code, out, _ = run_cli(
        ["scale", "--range", "64,128", "--profile", str(profile)], capsys
    )
    assert code == 0
    assert "profile = " in out
