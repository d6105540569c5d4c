import json

from unimap.cli import main
from unimap.enumeration import enum_dominant
from unimap.maps import dump_map


def write_dominant_map(tmp_path, n=4):
    m = next(iter(enum_dominant(1, n)))
    path = tmp_path / "map.json"
    dump_map(m.map, path, root=1)
    return m, path


def test_validate_ok(tmp_path, capsys):
    _, path = write_dominant_map(tmp_path)
    assert main(["validate", str(path)]) == 0
    out = capsys.readouterr().out
    assert "genus=1" in out and "unicellular=True" in out


def test_validate_bad_file(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"alpha": [1, 2], "beta": [2, 1]}))
    assert main(["validate", str(p)]) == 1


def test_usage_error_exit_code():
    assert main(["enumerate"]) == 2  # missing --g
    assert main(["no-such-command"]) == 2


def test_enumerate_csv(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["enumerate", "--g", "1", "--n", "3", "-o", str(out)]) == 0
    assert out.read_text() == "g,n,count,generator\n1,3,10,brute-force\n"


def test_enumerate_dominant(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["enumerate", "--g", "1", "--n", "3", "--dominant",
                 "-o", str(out)]) == 0
    assert "1,3,1,brute-force" in out.read_text()


def test_open_close_roundtrip(tmp_path):
    m, path = write_dominant_map(tmp_path)
    trees = tmp_path / "trees.jsonl"
    assert main(["open", str(path), "--all", "-o", str(trees)]) == 0
    lines = trees.read_text().splitlines()
    assert len(lines) == 2  # 2^g g! openings
    first = tmp_path / "t.json"
    first.write_text(lines[0])
    closed = tmp_path / "closed.json"
    assert main(["close", str(first), "-o", str(closed)]) == 0
    d = json.loads(closed.read_text())
    assert tuple(d["alpha"]) == m.map.alpha
    assert tuple(d["beta"]) == m.map.beta


def test_open_requires_sequence_or_all(tmp_path):
    _, path = write_dominant_map(tmp_path)
    assert main(["open", str(path)]) == 2


def test_check_suites(capsys):
    assert main(["check", "--suite", "surgery", "--g", "1",
                 "--nmax", "4"]) == 0
    assert main(["check", "--suite", "bijection", "--g", "1",
                 "--nmax", "4"]) == 0
    assert main(["check", "--suite", "series", "--g", "1",
                 "--nmax", "5"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 3


def test_sample_deterministic(tmp_path):
    a = tmp_path / "a.jsonl"
    b = tmp_path / "b.jsonl"
    args = ["sample", "--kind", "dominant-map", "--g", "1", "--n", "12",
            "--count", "3", "--seed", "9"]
    assert main(args + ["-o", str(a)]) == 0
    assert main(args + ["-o", str(b)]) == 0
    assert a.read_text() == b.read_text()
    assert len(a.read_text().splitlines()) == 3


def test_seed_env_default(tmp_path, monkeypatch):
    monkeypatch.setenv("UNIMAP_SEED", "77")
    from unimap.cli import _default_seed
    assert _default_seed() == 77


def test_estimate_csv(tmp_path):
    out = tmp_path / "e.csv"
    assert main(["estimate-tg", "--g", "0", "--n", "50", "--samples", "10",
                 "--seed", "1", "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "g,n,samples,method,value,stderr,seed"
    assert lines[1].startswith("0,50,10,moment,")


def test_profile_csv(tmp_path):
    out = tmp_path / "p.csv"
    assert main(["profile", "--g", "1", "--n", "40", "--samples", "3",
                 "--seed", "2", "-o", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("k,position,mass")
    assert "radius" in text
