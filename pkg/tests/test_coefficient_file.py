from dataclasses import replace

import pytest

from coefficients.catalog import catalog_lookup
from data.coefficient_file import (
    format_decimal,
    read_coefficient_file,
    significant_digits,
    validate_coefficient_set,
    write_coefficient_file,
)
from data.models import Symmetry
from utils.errors import CoefficientFileError, DomainError, ValidationError

SC2_TEXT = """\
# two-stage method
name SC2-file
stages 2
composition_order 3
projected_order 4
symmetry symmetric-conjugate
stage 0.5 -0.288675134594812882254574
stage 0.5 0.288675134594812882254574
"""


@pytest.fixture
def write_text(tmp_path):
    """Write text to a coefficient file and return its path."""
    def _write(text, name="method.txt"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write


class TestReadCoefficientFile:

    def test_reads_minimal_file(self, write_text):
        s = read_coefficient_file(write_text(SC2_TEXT))
        assert s.name == "SC2-file"
        assert s.stages == 2
        assert s.symmetry is Symmetry.SYMMETRIC_CONJUGATE
        assert s.alphas == catalog_lookup("SC2").alphas
        assert s.coeffs[0].im_text == "-0.288675134594812882254574"

    def test_missing_pseudo_order_is_predicted(self, write_text):
        s = read_coefficient_file(write_text(SC2_TEXT))
        assert s.pseudo_symmetry_order == 7

    def test_explicit_pseudo_order_and_provenance(self, write_text):
        text = SC2_TEXT.replace("stage 0.5 -", "pseudo_symmetry_order none\nprovenance hand typed\nstage 0.5 -", 1)
        s = read_coefficient_file(write_text(text))
        assert s.pseudo_symmetry_order is None
        assert s.provenance == "hand typed"

    def test_provenance_kept_verbatim(self, write_text):
        text = SC2_TEXT.replace("stages 2", "provenance run #3,  seed 7 \nstages 2")
        assert read_coefficient_file(write_text(text)).provenance == "run #3,  seed 7 "

    def test_comments_and_blank_lines(self, write_text):
        text = SC2_TEXT.replace("stages 2", "\nstages 2   # two of them\n")
        assert read_coefficient_file(write_text(text)).stages == 2

    @pytest.mark.parametrize("old, new, line", [
        ("stages 2", "stages 2\ncolour blue", 4),
        ("stages 2", "stages 2\nstages 2", 4),
        ("stage 0.5 0.288675134594812882254574", "stage 0.5 abc", 8),
        ("symmetry symmetric-conjugate", "symmetry skew", 6),
        ("stages 2", "stages two", 3),
    ])
    def test_malformed_lines_name_the_line(self, write_text, old, new, line):
        with pytest.raises(CoefficientFileError) as excinfo:
            read_coefficient_file(write_text(SC2_TEXT.replace(old, new)))
        assert excinfo.value.line_number == line
        assert f"line {line}" in str(excinfo.value)

    def test_stage_count_mismatch(self, write_text):
        with pytest.raises(CoefficientFileError, match="declared 3 stages"):
            read_coefficient_file(write_text(SC2_TEXT.replace("stages 2", "stages 3")))

    def test_missing_key(self, write_text):
        with pytest.raises(CoefficientFileError, match="projected_order"):
            read_coefficient_file(write_text(SC2_TEXT.replace("projected_order 4\n", "")))

    def test_inconsistent_sum(self, write_text):
        text = SC2_TEXT.replace("stage 0.5 0.2886", "stage 0.6 0.2886")
        with pytest.raises(ValidationError, match="sum"):
            read_coefficient_file(write_text(text))

    def test_declared_symmetry_must_hold(self, write_text):
        text = SC2_TEXT.replace("symmetric-conjugate", "palindromic")
        with pytest.raises(ValidationError, match="declared palindromic"):
            read_coefficient_file(write_text(text))

    def test_declared_none_skips_symmetry_check(self, write_text):
        text = SC2_TEXT.replace("symmetric-conjugate", "none")
        assert read_coefficient_file(write_text(text)).symmetry is Symmetry.NONE


class TestWriteCoefficientFile:

    def test_round_trip_keeps_source_digits(self, tmp_path):
        sc5 = catalog_lookup("SC5")
        path = write_coefficient_file(sc5, str(tmp_path / "out" / "SC5.txt"))
        text = (tmp_path / "out" / "SC5.txt").read_text(encoding="utf-8")
        assert "stage 0.1752684090720741140583563 0.05761474413053870201304364" in text
        assert "symmetry symmetric-conjugate" in text

        loaded = read_coefficient_file(path)
        assert loaded.alphas == sc5.alphas
        assert loaded.pseudo_symmetry_order == sc5.pseudo_symmetry_order
        assert loaded.provenance == sc5.provenance

    def test_round_trip_keeps_provenance_text(self, tmp_path):
        sc2 = replace(catalog_lookup("SC2"), provenance="search #12  (seed 3)")
        loaded = read_coefficient_file(write_coefficient_file(sc2, str(tmp_path / "SC2.txt")))
        assert loaded.provenance == "search #12  (seed 3)"

    def test_multiline_provenance_rejected(self, tmp_path):
        sc2 = replace(catalog_lookup("SC2"), provenance="first\nsecond")
        with pytest.raises(DomainError):
            write_coefficient_file(sc2, str(tmp_path / "SC2.txt"))

    def test_round_trip_of_computed_values(self, tmp_path):
        pc3 = catalog_lookup("PC3")
        loaded = read_coefficient_file(write_coefficient_file(pc3, str(tmp_path / "PC3.txt")))
        assert loaded.alphas == pc3.alphas
        assert loaded.symmetry is Symmetry.PALINDROMIC

    def test_real_palindrome_written_as_palindromic(self, tmp_path):
        pr3 = catalog_lookup("PR3")
        path = write_coefficient_file(pr3, str(tmp_path / "PR3.txt"))
        text = (tmp_path / "PR3.txt").read_text(encoding="utf-8")
        assert "pseudo_symmetry_order none" in text
        assert read_coefficient_file(path).pseudo_symmetry_order is None


class TestDecimalText:

    def test_short_exact_text_kept(self):
        assert format_decimal(0.5, "0.5") == "0.5"

    def test_long_text_kept(self):
        text = "0.2797158214698834510255077"
        assert format_decimal(float(text), text) == text

    def test_inexact_short_text_expanded(self):
        out = format_decimal(0.1, "0.1")
        assert out != "0.1"
        assert float(out) == 0.1

    def test_mismatched_text_ignored(self):
        out = format_decimal(0.25, "0.3")
        assert float(out) == 0.25

    def test_no_text(self):
        value = 1.0 / 3.0
        assert float(format_decimal(value)) == value

    @pytest.mark.parametrize("text, digits", [
        ("0.00131970516037055255293318", 24),
        ("1200", 2),
        ("1.50", 3),
        ("-2.5e-3", 2),
    ])
    def test_significant_digits(self, text, digits):
        assert significant_digits(text) == digits

    def test_validate_accepts_bundled(self):
        validate_coefficient_set(catalog_lookup("SC11"))
