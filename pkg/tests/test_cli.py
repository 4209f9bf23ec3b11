import numpy as np
import pytest

from plate_edges.cli import main
from plate_edges.image_core import edges_to_gray, read_gray, read_image, write_image
from plate_edges.plate_synth import read_manifest


@pytest.fixture
def corpus(tmp_path):
    cfg = tmp_path / "bench.cfg"
    cfg.write_text("plate_count = 2\nplate_width = 120\nplate_height = 40\n"
                   "detectors = canny, copda\nlevels = 0, 0.3\ntiming = false\ndump_edges = true\n")
    assert main(["gen", "--config", str(cfg), "--out-dir", str(tmp_path / "plates")]) == 0
    return tmp_path, cfg


def test_gen_writes_plates_and_manifest(corpus):
    tmp, _ = corpus
    entries = read_manifest((tmp / "plates" / "manifest.tsv").read_text())
    assert len(entries) == 2
    for pid, spec in entries:
        img = read_image(tmp / "plates" / f"{pid}.pgm")
        truth = read_image(tmp / "plates" / f"{pid}_truth.pgm")
        assert img.shape == truth.shape == (spec.height, spec.width)
        assert set(np.unique(truth)) == {0.0, 255.0}


def test_noise_detect_pfom_chain(corpus, capsys):
    tmp, _ = corpus
    pid = read_manifest((tmp / "plates" / "manifest.tsv").read_text())[0][0]
    src = tmp / "plates" / f"{pid}.pgm"
    noisy = tmp / "noisy.pgm"
    assert main(["noise", "--kind", "impulse", "--level", "0.1", "--seed", "3",
                 "--in", str(src), "--out", str(noisy)]) == 0
    assert (read_gray(noisy) != read_gray(src)).any()
    edges = tmp / "edges.pgm"
    assert main(["detect", "--detector", "canny", "--in", str(src), "--out", str(edges)]) == 0
    capsys.readouterr()
    truth = tmp / "plates" / f"{pid}_truth.pgm"
    assert main(["pfom", "--detected", str(truth), "--truth", str(truth)]) == 0
    assert capsys.readouterr().out.strip() == "1.0000"
    assert main(["pfom", "--detected", str(edges), "--truth", str(truth)]) == 0
    score = capsys.readouterr().out.strip()
    assert len(score.split(".")[1]) == 4 and 0 < float(score) <= 1


def test_detect_flags(tmp_path):
    img = np.zeros((10, 10))
    img[:, 5:] = 255
    write_image(tmp_path / "s.pgm", img)
    for det, extra in [("sobel", ["--threshold", "100"]), ("copda", ["--window", "5", "--min-chain", "2"]),
                       ("laplacian", []), ("morph", ["--threshold", "auto"]), ("canny", ["--sigma", "1.0"])]:
        out = tmp_path / f"{det}.pgm"
        assert main(["detect", "--detector", det, "--in", str(tmp_path / "s.pgm"), "--out", str(out), *extra]) == 0
        assert read_gray(out).max() == 255


def test_detect_accepts_ppm(tmp_path):
    rgb = np.zeros((6, 6, 3))
    rgb[:, 3:] = 200
    write_image(tmp_path / "c.ppm", rgb)
    assert main(["detect", "--detector", "sobel", "--in", str(tmp_path / "c.ppm"),
                 "--out", str(tmp_path / "e.pgm")]) == 0


def test_run_and_report(corpus, capsys):
    tmp, cfg = corpus
    out = tmp / "run"
    assert main(["run", "--config", str(cfg), "--out-dir", str(out)]) == 0
    csv_text = (out / "report.csv").read_text()
    assert len(csv_text.splitlines()) == 1 + 2 * 2 * 2
    assert len(list(out.glob("*.pgm"))) == 8
    assert "Image with noise (30%)" in (out / "report.md").read_text()
    capsys.readouterr()
    assert main(["report", "--rows", str(out / "report.csv"), "--format", "markdown"]) == 0
    assert "Image without noise" in capsys.readouterr().out
    assert main(["report", "--rows", str(out / "report.csv"), "--format", "csv"]) == 0
    assert capsys.readouterr().out == csv_text


def test_errors_exit_nonzero(tmp_path, capsys):
    (tmp_path / "bad.pgm").write_bytes(b"P5 2 2 255\n\x00")
    assert main(["detect", "--detector", "sobel", "--in", str(tmp_path / "bad.pgm"),
                 "--out", str(tmp_path / "o.pgm")]) != 0
    assert "error" in capsys.readouterr().err
    assert main(["noise", "--level", "2", "--in", str(tmp_path / "bad.pgm"), "--out", "x"]) != 0
    assert main(["pfom", "--detected", str(tmp_path / "missing.pgm"), "--truth", "x"]) != 0
    write_image(tmp_path / "z.pgm", np.zeros((3, 3)))
    write_image(tmp_path / "e.pgm", edges_to_gray(np.ones((3, 3), bool)))
    assert main(["pfom", "--detected", str(tmp_path / "e.pgm"), "--truth", str(tmp_path / "z.pgm")]) != 0
    (tmp_path / "bad.cfg").write_text("nonsense\n")
    assert main(["run", "--config", str(tmp_path / "bad.cfg"), "--out-dir", str(tmp_path / "o")]) != 0
