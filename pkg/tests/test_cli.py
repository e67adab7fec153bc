import json

import pytest
from click.testing import CliRunner

from app import cli, run

BIB = "phd:bibliography"
COMMANDS = ["scaffold", "lint", "backlinks", "index", "export-csv", "analyze"]


@pytest.fixture
def runner():
    return CliRunner()


def _registries(registry_paths):
    return ["--core", str(registry_paths["core"]), "--scimago", str(registry_paths["scimago"])]


def test_scaffold_then_lint(runner, tmp_path):
    target = str(tmp_path / "wiki")
    result = runner.invoke(cli, ["scaffold", target, "--program", "master"])
    assert result.exit_code == 0, result.output
    assert "start.txt" in result.stdout.splitlines()

    result = runner.invoke(cli, ["lint", target])
    assert result.exit_code == 0
    assert "0 error" in result.stderr


def test_scaffold_twice_fails(runner, tmp_path):
    target = str(tmp_path / "wiki")
    assert runner.invoke(cli, ["scaffold", target]).exit_code == 0
    result = runner.invoke(cli, ["scaffold", target])
    assert result.exit_code == 1
    assert "Error" in result.stderr


def test_lint_fixture(runner, wiki_dir):
    result = runner.invoke(cli, ["lint", str(wiki_dir)])
    assert result.exit_code == 0
    assert result.stderr.splitlines()[-1] == "0 error, 14 warning, 0 info"
    assert result.stdout == ""


def test_lint_errors_give_exit_code_one(runner, make_wiki):
    root = make_wiki({f"{BIB}:x": "No table here."})
    result = runner.invoke(cli, ["lint", str(root.root_path)])
    assert result.exit_code == 1
    assert f"error\tR03\t{BIB}:x\t" in result.stderr


def test_backlinks(runner, wiki_dir):
    result = runner.invoke(cli, ["backlinks", str(wiki_dir), f"{BIB}:author:w-bruce-croft"])
    assert result.exit_code == 0
    assert result.stdout.splitlines() == [
        f"{BIB}:entity-linking-with-a-knowledge-base",
        f"{BIB}:relevance-based-language-models",
    ]


def test_backlinks_bad_page_id(runner, wiki_dir):
    result = runner.invoke(cli, ["backlinks", str(wiki_dir), "???"])
    assert result.exit_code == 2


def test_index_prints_json(runner, wiki_dir):
    result = runner.invoke(cli, ["index", str(wiki_dir), "author"])
    assert result.exit_code == 0
    index = json.loads(result.stdout)
    assert index[f"{BIB}:author:w-bruce-croft"] == [
        f"{BIB}:entity-linking-with-a-knowledge-base",
        f"{BIB}:relevance-based-language-models",
    ]


def test_index_unknown_kind(runner, wiki_dir):
    assert runner.invoke(cli, ["index", str(wiki_dir), "keyword"]).exit_code == 2


def test_export_csv_to_stdout(runner, wiki_dir, registry_paths, golden_bibliography):
    result = runner.invoke(cli, ["export-csv", str(wiki_dir), *_registries(registry_paths)])
    assert result.exit_code == 0
    assert result.stdout_bytes == golden_bibliography


def test_export_csv_to_file(runner, wiki_dir, registry_paths, golden_bibliography, tmp_path):
    output = tmp_path / "export" / "bibliography.csv"
    result = runner.invoke(cli, ["--workers", "1", "export-csv", str(wiki_dir),
                                 *_registries(registry_paths), "-o", str(output)])
    assert result.exit_code == 0
    assert output.read_bytes() == golden_bibliography


def test_export_csv_requires_registries(runner, wiki_dir):
    assert runner.invoke(cli, ["export-csv", str(wiki_dir)]).exit_code == 2


def test_export_csv_with_overrides(runner, wiki_dir, registry_paths):
    result = runner.invoke(cli, ["export-csv", str(wiki_dir), *_registries(registry_paths),
                                 "--overrides", str(registry_paths["overrides"])])
    assert result.exit_code == 0
    assert "Hyperedges for Retrieval,Ana Sousa,2019,ECIR 2019,A," in result.stdout


def test_analyze_is_repeatable(runner, wiki_dir, registry_paths, tmp_path):
    outputs = []
    for name in ("first", "second"):
        output = tmp_path / name
        result = runner.invoke(cli, ["analyze", str(wiki_dir), "--output", str(output),
                                     *_registries(registry_paths)])
        assert result.exit_code == 0, result.output
        outputs.append(output)
    names = sorted(p.name for p in outputs[0].iterdir())
    assert len(names) == 13
    assert names == sorted(p.name for p in outputs[1].iterdir())
    for name in names:
        assert (outputs[0] / name).read_bytes() == (outputs[1] / name).read_bytes(), name


def test_analyze_several_namespaces(runner, wiki_dir, tmp_path):
    output = tmp_path / "out"
    result = runner.invoke(cli, ["analyze", str(wiki_dir), "--output", str(output),
                                 "--namespace", BIB, "--namespace", "PhD:Experiments"])
    assert result.exit_code == 0, result.output
    assert (output / "changes-phd-experiments.csv").is_file()
    assert (output / "changes-phd-bibliography.svg").is_file()
    assert len(result.stdout.splitlines()) == 15


@pytest.mark.parametrize("command", COMMANDS)
def test_help(runner, command):
    result = runner.invoke(cli, [command, "--help"])
    assert result.exit_code == 0
    assert "Usage" in result.stdout


def test_unknown_flag(runner, wiki_dir):
    assert runner.invoke(cli, ["lint", str(wiki_dir), "--frobnicate"]).exit_code == 2


def test_missing_wiki(runner, tmp_path):
    result = runner.invoke(cli, ["lint", str(tmp_path / "nowhere")])
    assert result.exit_code == 1
    assert "Pas de wiki" in result.stderr


def test_run_returns_exit_codes(wiki_dir, tmp_path, capsys):
    assert run(["lint", str(wiki_dir)]) == 0
    assert run(["lint", str(tmp_path / "nowhere")]) == 1
    assert run(["lint", str(wiki_dir), "--frobnicate"]) == 2
    assert run(["--help"]) == 0
    assert "scaffold" in capsys.readouterr().out
