import json
import subprocess
import sys

import numpy as np
import pytest

from crackcode import errors
from crackcode.bmp import new_image, write_bmp
from crackcode.cli import EXIT_IO, main


@pytest.fixture
def bmp(tmp_path):
    path = tmp_path / "in.bmp"
    path.write_bytes(write_bmp(new_image(np.random.default_rng(1).integers(0, 3, (17, 23)), 8)))
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_compress_decompress_verify(tmp_path, bmp, capsys):
    crk, back = tmp_path / "x.crk", tmp_path / "back.bmp"
    code, out, _ = run(capsys, "compress", bmp, crk)
    assert code == 0
    report = json.loads(out.strip().splitlines()[-1])
    assert report["original_size"] == bmp.stat().st_size
    assert report["compressed_size"] == crk.stat().st_size
    assert report["bytes_differed"] == 0
    assert "compression:" in out
    code, out, _ = run(capsys, "decompress", crk, back, "--verify", bmp)
    assert code == 0
    assert "bytes_differed=0" in out
    assert back.read_bytes() == bmp.read_bytes()


def test_verify_failure(tmp_path, bmp, capsys):
    crk, back, other = tmp_path / "x.crk", tmp_path / "back.bmp", tmp_path / "other.bmp"
    other.write_bytes(write_bmp(new_image(np.zeros((17, 23)), 8)))
    run(capsys, "compress", bmp, crk)
    code, _, err = run(capsys, "decompress", crk, back, "--verify", other)
    assert code == errors.VerifyFailed.exit_code
    assert "VerifyFailed" in err


def test_bad_magic_exit(tmp_path, bmp, capsys):
    crk = tmp_path / "x.crk"
    run(capsys, "compress", bmp, crk)
    crk.write_bytes(b"CRK0" + crk.read_bytes()[4:])
    code, _, err = run(capsys, "decompress", crk, tmp_path / "out.bmp")
    assert code == errors.BadMagic.exit_code
    assert not (tmp_path / "out.bmp").exists()


def test_truncated_stream_leaves_no_output(tmp_path, bmp, capsys):
    crk, out = tmp_path / "x.crk", tmp_path / "out.bmp"
    run(capsys, "compress", bmp, crk)
    crk.write_bytes(crk.read_bytes()[:-1])
    code, _, _ = run(capsys, "decompress", crk, out)
    assert code == errors.Truncated.exit_code
    assert not out.exists()
    assert set(tmp_path.iterdir()) == {bmp, crk}


def test_coverage_mismatch_exit(tmp_path, capsys):
    from crackcode.codec import Chain, ChainSet
    from crackcode.container import serialize

    image = new_image(np.full((2, 2), 3), 8)
    crk = tmp_path / "x.crk"
    crk.write_bytes(serialize(ChainSet(2, 2, [Chain(0, 0, 3, (2, 3))]), image))
    code, _, _ = run(capsys, "decompress", crk, tmp_path / "o.bmp")
    assert code == errors.CoverageMismatch.exit_code


@pytest.mark.parametrize(
    "payload, exc",
    [
        (b"XX", errors.BadMagic),
        (b"BM" + b"\0" * 10, errors.Truncated),
    ],
)
def test_compress_errors(tmp_path, capsys, payload, exc):
    src = tmp_path / "bad.bmp"
    src.write_bytes(payload)
    code, _, err = run(capsys, "compress", src, tmp_path / "o.crk")
    assert code == exc.exit_code
    assert exc.__name__ in err


def test_unsupported_compression_exit(tmp_path, bmp, capsys):
    data = bytearray(bmp.read_bytes())
    data[30] = 1
    bmp.write_bytes(bytes(data))
    code, _, _ = run(capsys, "compress", bmp, tmp_path / "o.crk")
    assert code == errors.UnsupportedCompression.exit_code


def test_missing_file(tmp_path, capsys):
    code, _, _ = run(capsys, "compress", tmp_path / "nope.bmp", tmp_path / "o.crk")
    assert code == EXIT_IO


def test_exit_codes_distinct():
    codes = [cls.exit_code for cls in errors.ALL_ERRORS] + [0, 1, 2, EXIT_IO]
    assert len(codes) == len(set(codes))


def test_help_documents_exit_codes(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    for cls in errors.ALL_ERRORS:
        assert f"{cls.exit_code:<3d} {cls.__name__}" in out


def test_inspect_single_pixel(tmp_path, capsys):
    path = tmp_path / "one.bmp"
    path.write_bytes(write_bmp(new_image([[7]], 8)))
    code, out, _ = run(capsys, "inspect", path)
    assert code == 0
    dump = [line for line in out.splitlines() if not line.startswith("#")]
    assert dump == ["0 0 7 -1"]
    assert "# bfType = 19778" in out
    assert "# biBitCount = 8" in out
    assert "# bfOffBits = 1078" in out


def test_inspect_uniform_and_stream(tmp_path, capsys):
    path, crk = tmp_path / "u.bmp", tmp_path / "u.crk"
    path.write_bytes(write_bmp(new_image(np.full((2, 2), 33), 8)))
    code, out, _ = run(capsys, "inspect", path)
    assert [line for line in out.splitlines() if not line.startswith("#")] == ["0 0 33 2 3 0 -1"]
    run(capsys, "compress", path, crk)
    code, out2, _ = run(capsys, "inspect", crk)
    assert code == 0
    assert [line for line in out2.splitlines() if not line.startswith("#")] == ["0 0 33 2 3 0 -1"]


def test_inspect_paper_region(tmp_path, capsys):
    # a 3x6 region whose first chain reproduces the first line of the paper's dump
    m = np.array([
        [200, 1, 2, 3, 4, 5],
        [200, 200, 200, 200, 200, 200],
        [6, 7, 8, 200, 200, 200],
    ])
    path = tmp_path / "p.bmp"
    path.write_bytes(write_bmp(new_image(m, 8)))
    _, out, _ = run(capsys, "inspect", path)
    dump = [line for line in out.splitlines() if not line.startswith("#")]
    assert dump[0] == "0 0 200 3 2 2 2 2 2 3 0 0 -1"


def test_gen_and_bench(tmp_path, capsys):
    spec = tmp_path / "specs.json"
    spec.write_text(json.dumps([
        {"name": "flat", "width": 10, "height": 10, "kind": "uniform", "value": 4},
        {"name": "rgb", "width": 10, "height": 10, "depth": 24, "kind": "noise", "seed": 3},
    ]))
    outdir = tmp_path / "corpus"
    code, out, _ = run(capsys, "gen", "--spec", spec, "--out", outdir)
    assert code == 0
    assert sorted(p.name for p in outdir.iterdir()) == ["flat.bmp", "rgb.bmp"]
    csv_a, csv_b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "bench", "--corpus", outdir, "--out", csv_a, "--repeats", "1")[0] == 0
    assert run(capsys, "bench", "--spec", spec, "--out", csv_b, "--repeats", "1")[0] == 0
    a, b = csv_a.read_text().splitlines(), csv_b.read_text().splitlines()
    assert a[0] == b[0] == "name,original_size,compressed_size,compression_pct,time_s,bytes_differed,chain_count,code_count,rle_size,rle_pct,error"
    assert len(a) == len(b) == 3


def test_bad_spec_exit(tmp_path, capsys):
    spec = tmp_path / "specs.json"
    spec.write_text(json.dumps([{"width": 10, "height": 10, "kind": "plaid"}]))
    code, _, _ = run(capsys, "gen", "--spec", spec, "--out", tmp_path / "o")
    assert code == errors.BadSpec.exit_code


def test_module_entry_point(tmp_path, bmp):
    crk = tmp_path / "x.crk"
    proc = subprocess.run([sys.executable, "-m", "crackcode", "compress", str(bmp), str(crk)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    proc = subprocess.run([sys.executable, "-m", "crackcode", "decompress", str(crk), str(tmp_path / "b.bmp"),
                           "--verify", str(bmp)], capture_output=True, text=True)
    assert proc.returncode == 0
    proc = subprocess.run([sys.executable, "-m", "crackcode", "decompress", str(bmp), str(tmp_path / "c.bmp")],
                          capture_output=True, text=True)
    assert proc.returncode == errors.BadMagic.exit_code
