import io
import logging
import os
from dataclasses import replace

import pytest

from cli.commands import main
from cli.resolve import build_system, parse_time, resolve_set, snap_step
from coefficients.catalog import catalog_lookup
from data.coefficient_file import write_coefficient_file
from data.models import ComplexCoefficient
from problems.hamiltonians import Kepler
from utils.csv_output import format_value, header_line, parse_rows
from utils.errors import DomainError, UnknownMethodError


def run(*argv):
    """Run the CLI and return (exit code, header line, columns, rows)."""
    out = io.StringIO()
    code = main(list(argv), stdout=out)
    text = out.getvalue()
    if not text:
        return code, None, [], []
    header, columns, rows = parse_rows(text)
    return code, header, columns, rows


@pytest.fixture
def corrupted_file(tmp_path):
    """SC5 with the real parts moved so w1 still holds but w31 does not."""
    sc5 = catalog_lookup("SC5")
    coeffs = list(sc5.coeffs)
    coeffs[0] = ComplexCoefficient(coeffs[0].re + 1e-6, coeffs[0].im)
    coeffs[-1] = ComplexCoefficient(coeffs[-1].re + 1e-6, coeffs[-1].im)
    coeffs[2] = ComplexCoefficient(coeffs[2].re - 2e-6, 0.0)
    bad = replace(sc5, name="SC5-bad", coeffs=tuple(coeffs))
    return write_coefficient_file(bad, str(tmp_path / "bad.txt"))


@pytest.fixture
def restore_root_level():
    root = logging.getLogger()
    level = root.level
    yield root
    root.setLevel(level)


class TestCatalogCommand:

    def test_lists_bundled_sets(self):
        code, header, columns, rows = run("catalog")
        assert code == 0
        assert header.startswith("# command=catalog")
        assert columns[:2] == ["name", "stages"]
        assert [r[0] for r in rows] == ["SC2", "SC3", "SC5", "SC9", "SC11", "PR3", "PC3"]
        assert rows[0][5] == "symmetric_conjugate"

    def test_verify_column(self):
        code, _, columns, rows = run("catalog", "--verify")
        assert code == 0
        assert columns[-2:] == ["max_residual", "passed"]
        assert all(r[-1] == "true" for r in rows)
        assert all(float(r[-2]) <= 5e-13 for r in rows)

    def test_export(self, tmp_path):
        code, *_ = run("catalog", "--export", str(tmp_path / "sets"))
        assert code == 0
        assert sorted(os.listdir(tmp_path / "sets"))[:2] == ["PC3.txt", "PR3.txt"]
        assert len(os.listdir(tmp_path / "sets")) == 7

    def test_out_file(self, tmp_path):
        target = tmp_path / "csv" / "catalog.csv"
        out = io.StringIO()
        assert main(["--out", str(target), "catalog"], stdout=out) == 0
        assert out.getvalue() == ""
        assert target.read_text(encoding="utf-8").startswith("# command=catalog")


class TestVerifyCommand:

    def test_bundled_method_passes(self):
        code, header, columns, rows = run("verify", "SC5")
        assert code == 0
        assert columns == ["check", "value", "limit", "status"]
        assert rows[-1][:2] == ["result", "pass"]
        assert "methods=SC5" in header

    def test_palindromic_note(self):
        _, _, _, rows = run("verify", "PC3")
        assert any(r[0] == "note" for r in rows)

    def test_conjugate_member(self):
        code, header, _, _ = run("verify", "SC5*")
        assert code == 0
        assert "methods=SC5*" in header

    def test_corrupted_file_fails(self, corrupted_file):
        code, _, _, rows = run("verify", corrupted_file)
        assert code == 4
        failing = [r[0] for r in rows if r[3] == "fail"]
        assert "defect w31" in failing
        assert "defect w1" not in failing

    def test_unknown_method(self):
        code, header, _, _ = run("verify", "SC4")
        assert code == 2
        assert header is None

    def test_unreadable_file(self, tmp_path):
        path = tmp_path / "broken.txt"
        path.write_text("name x\nstages 1\nbogus 2\n", encoding="utf-8")
        assert run("verify", str(path))[0] == 2


class TestProbeCommand:

    def test_symmetry_degree(self):
        code, header, columns, rows = run("probe", "symmetry", "SC2")
        assert code == 0
        assert "first_degree=8" in header
        assert columns == ["degree", "defect"]
        assert len(rows) == 25

    def test_saturated_probe(self):
        _, header, _, _ = run("probe", "symmetry", "PR3", "--degree", "16")
        assert "saturated=true" in header

    def test_stability(self):
        code, _, columns, rows = run("probe", "stability", "S2")
        assert code == 0
        assert columns[2] == "h_t"
        assert float(rows[0][2]) == pytest.approx(2.0, abs=1e-6)

    def test_elbow(self):
        code, header, columns, rows = run("probe", "elbow", "SC3")
        assert code == 0
        assert "elbow=0.5163977" in header
        assert columns == ["h", "effective_error", "basic_error"]
        assert len(rows) == 50

    def test_elbow_needs_fourth_order(self):
        assert run("probe", "elbow", "S2")[0] == 2

    def test_order_on_oscillator(self):
        code, header, _, rows = run("probe", "order", "SC2", "--h-grid", "0.05", "0.2", "4", "--tf", "10")
        assert code == 0
        assert "problem=ho" in header
        assert len(rows) == 4

    def test_local_order_on_oracle(self):
        code, header, _, _ = run("probe", "order", "SC2", "--problem", "oracle", "--seed", "3",
                                 "--projection", "none", "--h-grid", "0.02", "0.2", "5")
        assert code == 0
        assert "seed=3" in header

    def test_oracle_norm_option(self):
        code, header, _, rows = run("probe", "order", "SC5", "--problem", "oracle", "--seed", "3", "--norm", "4",
                                    "--projection", "none", "--h-grid", "0.05", "0.2", "5")
        assert code == 0
        assert "norm=4" in header
        assert len(rows) == 5

    def test_bad_degree(self):
        assert run("probe", "symmetry", "SC2", "--degree", "50")[0] == 2

    def test_bad_kind(self):
        assert run("probe", "entropy", "SC2")[0] == 2


class TestBenchCommand:

    def test_work_precision(self):
        code, header, columns, rows = run("bench", "ho", "--methods", "SC5,PR3", "--tf", "10", "--steps", "100,200")
        assert code == 0
        assert columns == ["method", "h", "steps", "cost", "metric", "value"]
        assert [(r[0], r[2], r[3]) for r in rows] == [
            ("SC5", "100", "500"), ("SC5", "200", "1000"), ("PR3", "100", "300"), ("PR3", "200", "600"),
        ]
        assert "problem=ho" in header

    def test_equal_cost(self):
        _, _, _, rows = run("bench", "ho", "--methods", "SC3,SC5", "--tf", "10", "--costs", "600")
        assert [(r[0], r[2], r[3]) for r in rows] == [("SC3", "200", "600"), ("SC5", "120", "600")]

    def test_drift(self):
        code, _, columns, rows = run("bench", "pendulum", "--methods", "PR3", "--tf", "20pi",
                                     "--steps", "400", "--drift")
        assert code == 0
        assert columns[3:5] == ["first_decile_max", "last_decile_max"]
        assert float(rows[0][2]) == pytest.approx(20 * 3.141592653589793)

    def test_trajectory(self):
        code, _, columns, rows = run("bench", "kepler", "--methods", "SC5", "--tf", "1", "--steps", "10",
                                     "--trajectory")
        assert code == 0
        assert columns == ["t", "q1", "q2", "p1", "p2", "rel_energy_error"]
        assert len(rows) == 11
        assert float(rows[0][1]) == pytest.approx(0.4)

    def test_sample_dt(self):
        _, _, _, rows = run("bench", "pendulum", "--methods", "SC5", "--tf", "4pi", "--steps", "40",
                            "--sample-dt", "pi", "--trajectory")
        assert len(rows) == 5

    def test_trajectory_takes_one_method(self):
        assert run("bench", "ho", "--methods", "SC5,PR3", "--tf", "1", "--trajectory")[0] == 2

    def test_bad_time(self):
        assert run("bench", "ho", "--tf", "ten")[0] == 2

    def test_bad_eccentricity(self):
        assert run("bench", "kepler", "--e", "1.5", "--tf", "1")[0] == 2


class TestSearchCommand:

    def test_two_stage_search(self, tmp_path):
        code, header, columns, rows = run("search", "--stages", "2", "--order", "3", "--starts", "20", "--seed", "3",
                                          "--export", str(tmp_path))
        assert code == 0
        assert len(rows) == 1
        assert rows[0][1] == "SC2_o3_1"
        assert float(rows[0][5]) == pytest.approx(0.5)
        assert os.path.exists(tmp_path / "SC2_o3_1.txt")
        assert "solutions=1" in header

    def test_unsupported_order(self):
        assert run("search", "--stages", "5", "--order", "7")[0] == 2


class TestArguments:

    def test_missing_subcommand(self):
        assert main([], stdout=io.StringIO()) == 2

    def test_help(self):
        assert main(["--help"], stdout=io.StringIO()) == 0

    @pytest.mark.parametrize("text, value", [
        ("650", 650.0),
        ("200pi", 200 * 3.141592653589793),
        ("2*pi", 2 * 3.141592653589793),
        ("pi", 3.141592653589793),
        ("1.5e2", 150.0),
    ])
    def test_parse_time(self, text, value):
        assert parse_time(text) == pytest.approx(value)

    @pytest.mark.parametrize("text", ["", "pi2", "abc", "."])
    def test_parse_time_rejects(self, text):
        with pytest.raises(DomainError):
            parse_time(text)

    def test_snap_step(self):
        assert snap_step(0.3, 1.0) == pytest.approx(1.0 / 3.0)
        with pytest.raises(DomainError):
            snap_step(0.0, 1.0)

    def test_resolve_set(self, tmp_path):
        assert resolve_set("SC3*").alphas[0] == catalog_lookup("SC3").alphas[0].conjugate()
        path = write_coefficient_file(catalog_lookup("SC2"), str(tmp_path / "sc2.txt"))
        assert resolve_set(path).alphas == catalog_lookup("SC2").alphas
        with pytest.raises(UnknownMethodError):
            resolve_set(str(tmp_path / "missing.txt"))

    def test_build_system(self):
        assert isinstance(build_system("kepler", {"e": 0.3}), Kepler)
        with pytest.raises(DomainError):
            build_system("three-body", {})

    def test_csv_formatting(self):
        assert format_value(0.1) == "0.10000000000000001"
        assert format_value(float("inf")) == "inf"
        assert format_value(None) == ""
        assert format_value(True) == "true"
        assert header_line([("command", "probe"), ("kind", "a b")]) == "# command=probe kind=a_b"

    def test_out_after_subcommand(self, tmp_path):
        target = tmp_path / "catalog.csv"
        assert main(["catalog", "--out", str(target)], stdout=io.StringIO()) == 0
        assert target.read_text(encoding="utf-8").startswith("# command=catalog")

    def test_log_level_either_side(self, restore_root_level):
        assert main(["--log-level", "warning", "catalog"], stdout=io.StringIO()) == 0
        assert restore_root_level.level == logging.WARNING
        assert main(["catalog", "--log-level", "ERROR"], stdout=io.StringIO()) == 0
        assert restore_root_level.level == logging.ERROR

    def test_unknown_log_level(self):
        assert main(["--log-level", "loud", "catalog"], stdout=io.StringIO()) == 2
        assert main(["catalog", "--log-level", "loud"], stdout=io.StringIO()) == 2

    def test_unexpected_error_logged_and_raised(self, monkeypatch, caplog):
        def broken():
            raise RuntimeError("catalog unavailable")
        monkeypatch.setattr("cli.commands.bundled_sets", broken)
        with pytest.raises(RuntimeError):
            main(["catalog"], stdout=io.StringIO())
        assert "unexpected failure in 'catalog'" in caplog.text


class TestEntryPoint:

    def test_dependencies_present(self):
        import main as entry
        entry.check_dependencies()

    def test_setup_logging_creates_log_dir(self, tmp_path, monkeypatch):
        import config.settings
        import main as entry
        log_dir = tmp_path / "logs"
        monkeypatch.setattr(config.settings, "LOG_DIR", str(log_dir))
        logger = entry.setup_logging()
        assert log_dir.is_dir()
        assert logger.name == "main"
