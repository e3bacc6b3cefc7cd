"""Render the five stock figure families and check what lands in the SVG.

The producing tool is driven strictly through its command line, the same
way a user would; nothing here imports it.
"""

import re
import subprocess
import sys

import pytest

from figrender import FigureSpec, load_series, render, rescale_endpoint
from figrender.render import main

SERIES_ID = re.compile(r'id="series-')


def qdarwin(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "qdarwin", *argv],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def figure_csvs(tmp_path_factory):
    """All five stock families, generated once per test session."""
    root = tmp_path_factory.mktemp("curves")
    dirs = {}
    for fig, extra in [
        ("fig2", ("--samples", "3", "--seed", "0")),
        ("fig3", ()),
        ("fig4", ()),
        ("fig5", ()),
        ("fig6", ()),
    ]:
        out = root / fig
        qdarwin("figure", fig, "--out", str(out), *extra)
        dirs[fig] = out
    return dirs


def count_series(svg_path):
    return len(SERIES_ID.findall(svg_path.read_text()))


class TestStockFigures:
    def test_five_images_with_expected_series_counts(self, figure_csvs, tmp_path):
        expected = {
            "fig2": (sorted(figure_csvs["fig2"].glob("fig2_*.csv")), 16),
            "fig3": (sorted(figure_csvs["fig3"].glob("fig3_*.csv")), 4),
            "fig4": (sorted(figure_csvs["fig4"].glob("fig4_*.csv")), 4),
            "fig5": (sorted(figure_csvs["fig5"].glob("fig5_*.csv")), 8),
            "fig6": (sorted(figure_csvs["fig6"].glob("fig6_*.csv")), 5),
        }
        for fig, (paths, n_series) in expected.items():
            assert len(paths) == n_series
            out = tmp_path / f"{fig}.svg"
            render(FigureSpec(
                csv_paths=tuple(str(p) for p in paths),
                out_path=str(out),
                rescale=(fig == "fig5"),
                x_fraction=(fig == "fig3"),
            ))
            assert out.exists()
            assert count_series(out) == n_series
        print("PASS: five rendered figures carry 16/4/4/8/5 series")

    def test_fig2_mixes_circles_and_lines(self, figure_csvs):
        analytic = load_series(str(figure_csvs["fig2"] / "fig2_analytic_N5.csv"))
        sampled = load_series(str(figure_csvs["fig2"] / "fig2_sampled_N5.csv"))
        assert not analytic.sampled
        assert sampled.sampled

    def test_fig2_svg_has_markers_only_for_sampled(self, figure_csvs, tmp_path):
        def series_group(path):
            # the artist carrying the series gid: markers render as <use>
            # references inside its group, plain lines as a single <path>
            body = path.read_text().split('id="series-', 1)[1]
            return body[: body.index("</g>")]

        a = tmp_path / "analytic.svg"
        s = tmp_path / "sampled.svg"
        render(FigureSpec(
            (str(figure_csvs["fig2"] / "fig2_analytic_N5.csv"),), str(a)))
        render(FigureSpec(
            (str(figure_csvs["fig2"] / "fig2_sampled_N5.csv"),), str(s)))
        assert "<use" not in series_group(a)
        assert "<use" in series_group(s)

    def test_fig5_rescale_ends_at_exactly_one(self, figure_csvs):
        for path in sorted(figure_csvs["fig5"].glob("fig5_*.csv")):
            series = load_series(str(path))
            assert rescale_endpoint(series.y)[-1] == 1.0

    def test_rendering_is_deterministic(self, figure_csvs, tmp_path):
        paths = tuple(
            str(p) for p in sorted(figure_csvs["fig3"].glob("fig3_*.csv"))
        )
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        render(FigureSpec(paths, str(a), x_fraction=True))
        render(FigureSpec(paths, str(b), x_fraction=True))
        assert a.read_bytes() == b.read_bytes()

    def test_x_fraction_label(self, figure_csvs, tmp_path):
        out = tmp_path / "frac.svg"
        render(FigureSpec(
            (str(figure_csvs["fig3"] / "fig3_dS8.csv"),), str(out),
            x_fraction=True))
        assert "m/N" in out.read_text()


class TestLoadSeries:
    def test_label_defaults_to_basename(self, tmp_path):
        p = tmp_path / "mycurve.csv"
        p.write_text("m,I_bits,stderr_bits\n0,0,\n1,1,\n")
        s = load_series(str(p))
        assert s.label == "mycurve"
        assert s.m == (0, 1)
        assert s.stderr is None

    def test_extra_columns_tolerated(self, tmp_path):
        p = tmp_path / "four.csv"
        p.write_text("m,I_bits,stderr_bits,I_rescaled\n0,0,0,0\n2,2,0,1\n")
        s = load_series(str(p))
        assert s.y == (0.0, 2.0)
        assert s.stderr == (0.0, 0.0)

    def test_bad_header(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("x,y\n1,2\n")
        with pytest.raises(ValueError, match="bad.csv"):
            load_series(str(p))

    def test_bad_value_names_file_and_line(self, tmp_path):
        p = tmp_path / "oops.csv"
        p.write_text("m,I_bits,stderr_bits\n0,zero,\n")
        with pytest.raises(ValueError, match=r"oops\.csv:2"):
            load_series(str(p))

    def test_empty_file(self, tmp_path):
        p = tmp_path / "empty.csv"
        p.write_text("m,I_bits,stderr_bits\n")
        with pytest.raises(ValueError, match="no data rows"):
            load_series(str(p))


class TestSpecAndRescale:
    def test_empty_series_list(self):
        with pytest.raises(ValueError, match="no input series"):
            FigureSpec((), "out.svg")

    def test_bad_format(self):
        with pytest.raises(ValueError, match="format"):
            FigureSpec(("a.csv",), "out.gif", fmt="gif")

    def test_label_count_mismatch(self):
        with pytest.raises(ValueError, match="one label per CSV"):
            FigureSpec(("a.csv", "b.csv"), "out.svg", labels=("only",))

    def test_rescale_zero_endpoint(self):
        with pytest.raises(ValueError, match="endpoint is zero"):
            rescale_endpoint((0.0, 0.0))


class TestCommandLine:
    def test_png_output(self, tmp_path):
        p = tmp_path / "c.csv"
        p.write_text("m,I_bits,stderr_bits\n0,0,\n1,1,\n2,2,\n")
        out = tmp_path / "c.png"
        assert main([str(p), "--out", str(out), "--format", "png"]) == 0
        assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_missing_file_named(self, tmp_path, capsys):
        out = tmp_path / "x.svg"
        assert main(["/nowhere/gone.csv", "--out", str(out)]) == 1
        assert "gone.csv" in capsys.readouterr().err

    def test_invalid_csv_named(self, tmp_path, capsys):
        p = tmp_path / "mangled.csv"
        p.write_text("not,a,curve\n")
        assert main([str(p), "--out", str(tmp_path / "x.svg")]) == 1
        assert "mangled.csv" in capsys.readouterr().err

    def test_no_inputs_is_usage_error(self, capsys):
        assert main(["--out", "x.svg"]) == 2

    def test_rescale_flag_round_trip(self, tmp_path, capsys):
        p = tmp_path / "c.csv"
        p.write_text("m,I_bits,stderr_bits\n0,0,\n1,1,\n2,4,\n")
        out = tmp_path / "c.svg"
        assert main([str(p), "--out", str(out), "--rescale-endpoint"]) == 0
        assert "wrote" in capsys.readouterr().err
        assert count_series_text(out.read_text()) == 1


def count_series_text(text):
    return len(SERIES_ID.findall(text))
