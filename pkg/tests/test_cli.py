import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from xmlsumm import load_stats, parse_file
from xmlsumm.cli import main, parse_sweep
from xmlsumm.config import CONFIG_ENV, SummaryConfig, parse_config_text, resolve_config
from xmlsumm.errors import ConfigError

from conftest import TOY_DOCS

MOVIES = Path(__file__).parent / "fixtures" / "movies"


@pytest.fixture
def toy_dir(tmp_path):
    d = tmp_path / "toy"
    d.mkdir()
    for i, data in enumerate(TOY_DOCS):
        (d / f"doc{i}.xml").write_bytes(data)
    return d


@pytest.fixture
def movie_stats(tmp_path):
    out = tmp_path / "movies.stats"
    assert main(["build-stats", "--corpus", str(MOVIES), "--out", str(out)]) == 0
    return out


def error_line(capsys):
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1 and err[0].startswith("error: ")
    return err[0]


def test_build_stats(toy_dir, tmp_path, capsys):
    out = tmp_path / "s.tsv"
    assert main(["build-stats", "--corpus", str(toy_dir), "--out", str(out)]) == 0
    assert load_stats(out).num_documents == 4
    assert "documents: 4" in capsys.readouterr().out


def test_build_stats_empty_dir(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    assert main(["build-stats", "--corpus", str(empty), "--out", str(tmp_path / "s")]) == 2
    assert "empty corpus" in error_line(capsys)


def test_build_stats_missing_dir(tmp_path, capsys):
    assert main(["build-stats", "--corpus", str(tmp_path / "nope"), "--out", str(tmp_path / "s")]) == 2
    error_line(capsys)


def test_build_stats_skips_malformed(toy_dir, tmp_path, capsys):
    (toy_dir / "doc0.xml").write_bytes(b"<m><title>broken</m>")
    out = tmp_path / "s.tsv"
    assert main(["build-stats", "--corpus", str(toy_dir), "--out", str(out)]) == 0
    assert load_stats(out).num_documents == 3
    captured = capsys.readouterr()
    assert captured.err.count("warning:") == 1
    assert "skipped: 1" in captured.out


def test_summarize_size_five(movie_stats, tmp_path):
    out = tmp_path / "samurai.xml"
    rc = main(["summarize", "--doc", str(MOVIES / "last_samurai.xml"), "--stats", str(movie_stats),
               "--size", "5", "--alpha", "1.0", "--out", str(out)])
    assert rc == 0
    summary = parse_file(out)
    assert sum(1 for leaf in summary.leaves if leaf.node.text) == 5


@pytest.mark.parametrize("flags, message", [
    (["--alpha", "1.5"], "alpha must be in [0,1]"),
    (["--beta", "-1"], "beta must be in [0,1]"),
    (["--lambda", "0.7", "--mu", "0.7"], "lambda + mu must be <= 1"),
    (["--size", "0"], "size must be >= 1"),
    (["--size", "ten"], "invalid value for size"),
])
def test_summarize_bad_flags(movie_stats, tmp_path, capsys, flags, message):
    argv = ["summarize", "--doc", str(MOVIES / "seven.xml"), "--stats", str(movie_stats),
            "--out", str(tmp_path / "o.xml")]
    if "--size" not in flags:
        argv += ["--size", "5"]
    assert main(argv + flags) == 2
    assert message in error_line(capsys)


def test_summarize_missing_files(movie_stats, tmp_path, capsys):
    assert main(["summarize", "--doc", str(tmp_path / "x.xml"), "--stats", str(movie_stats),
                 "--size", "5", "--out", str(tmp_path / "o.xml")]) == 2
    error_line(capsys)
    assert main(["summarize", "--doc", str(MOVIES / "seven.xml"), "--stats", str(tmp_path / "no"),
                 "--size", "5", "--out", str(tmp_path / "o.xml")]) == 2
    error_line(capsys)


def test_usage_errors_are_single_line(capsys):
    assert main(["summarize"]) == 2
    error_line(capsys)
    assert main(["frobnicate"]) == 2
    error_line(capsys)


def test_uniform_specialty_alpha_invariant(tmp_path):
    # every person document has the same tag counts, so specialty is uniform
    people = tmp_path / "people"
    people.mkdir()
    for i, name in enumerate(["Matt Damon", "Ben Affleck", "Tom Cruise"]):
        (people / f"p{i}.xml").write_text(
            f"<person><name>{name}</name><birthdate>19{70 + i}</birthdate>"
            f"<acts_in><movie>M{i}a</movie><role>R{i}a</role></acts_in>"
            f"<acts_in><movie>M{i}b</movie><role>R{i}b</role></acts_in>"
            f"<spouse>S{i}</spouse></person>"
        )
    stats = tmp_path / "people.stats"
    assert main(["build-stats", "--corpus", str(people), "--out", str(stats)]) == 0
    outputs = []
    for alpha in ("1.0", "0.8"):
        out = tmp_path / f"o{alpha}.xml"
        assert main(["summarize", "--doc", str(people / "p1.xml"), "--stats", str(stats),
                     "--size", "10", "--alpha", alpha, "--out", str(out)]) == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_config_precedence(tmp_path, monkeypatch):
    cfg = tmp_path / "xmlsumm.conf"
    cfg.write_text("# defaults for the movie runs\nalpha = 0.6\nbeta = 0.5\nentities = actor, director\n")
    monkeypatch.setenv(CONFIG_ENV, str(cfg))
    resolved = resolve_config({"beta": 0.9})
    assert (resolved.alpha, resolved.beta) == (0.6, 0.9)
    assert resolved.entity_paths == ("actor", "director")
    assert resolved.lam == SummaryConfig().lam


def test_config_file_errors():
    with pytest.raises(ConfigError, match="unknown config key"):
        parse_config_text("gamma = 1")
    with pytest.raises(ConfigError, match="key = value"):
        parse_config_text("alpha 1")


def test_config_file_through_cli(movie_stats, tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "bad.conf"
    cfg.write_text("alpha = 3\n")
    monkeypatch.setenv(CONFIG_ENV, str(cfg))
    rc = main(["summarize", "--doc", str(MOVIES / "seven.xml"), "--stats", str(movie_stats),
               "--size", "5", "--out", str(tmp_path / "o.xml")])
    assert rc == 2 and "alpha must be in [0,1]" in error_line(capsys)
    # a flag overrides the broken file value
    rc = main(["summarize", "--doc", str(MOVIES / "seven.xml"), "--stats", str(movie_stats),
               "--size", "5", "--alpha", "1", "--out", str(tmp_path / "o.xml")])
    assert rc == 0


def test_entity_matching():
    from xmlsumm import TagUnit
    cfg = SummaryConfig(entity_paths=("actor", "movie/director"))
    assert cfg.is_entity(TagUnit(("movie", "cast", "casting", "actor")))
    assert cfg.is_entity(TagUnit(("movie", "director")))
    assert not cfg.is_entity(TagUnit(("movie", "title")))


def test_parse_sweep():
    assert parse_sweep("sizes=5,10,20;alphas=1.0,0.8,0.6") == ([5, 10, 20], [1.0, 0.8, 0.6])
    with pytest.raises(ConfigError):
        parse_sweep("sizes=5")
    with pytest.raises(ConfigError):
        parse_sweep("sizes=5;alphas=x")


def test_batch_layout(movie_stats, tmp_path):
    out = tmp_path / "batch"
    rc = main(["batch", "--docs", str(MOVIES), "--stats", str(movie_stats),
               "--sweep", "sizes=5,10;alphas=1.0,0.6", "--out-dir", str(out), "--jobs", "3"])
    assert rc == 0
    names = sorted(p.name for p in out.iterdir())
    assert len(names) == 10 * 4
    assert "usual_suspects_10_0.6.xml" in names and "seven_5_1.0.xml" in names
    assert not any(n.startswith(".") for n in names)


def test_batch_rejects_bad_alpha(movie_stats, tmp_path, capsys):
    rc = main(["batch", "--docs", str(MOVIES), "--stats", str(movie_stats),
               "--sweep", "sizes=5;alphas=1.5", "--out-dir", str(tmp_path / "b")])
    assert rc == 2 and "alpha must be in [0,1]" in error_line(capsys)


def test_module_entry_point(movie_stats, tmp_path):
    out = tmp_path / "o.xml"
    proc = subprocess.run(
        [sys.executable, "-m", "xmlsumm", "summarize", "--doc", str(MOVIES / "seven.xml"),
         "--stats", str(movie_stats), "--size", "3", "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.read_text().startswith("<?xml")
