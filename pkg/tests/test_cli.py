import json
import subprocess
import sys

import goldens
from conftest import CORPUS, normalise
from gamescribe.cli import main


def _run(*argv, cwd=None):
    return subprocess.run([sys.executable, "-m", "gamescribe.cli", *argv],
                          capture_output=True, text=True, cwd=cwd)


def test_translate_prints_golden():
    proc = _run("translate", "--game", str(CORPUS / "TicTacToe.lud"))
    assert proc.returncode == 0
    assert normalise(proc.stdout) == normalise(goldens.TICTACTOE)


def test_missing_file_exits_2(tmp_path):
    proc = _run("translate", "--game", str(tmp_path / "nope.lud"))
    assert proc.returncode == 2
    assert "not found" in proc.stderr


def test_parse_error_exits_3(tmp_path):
    bad = tmp_path / "bad.lud"
    bad.write_text('(game "Broken" (players 2)')
    proc = _run("translate", "--game", str(bad))
    assert proc.returncode == 3
    assert "parse failed" in proc.stderr


def test_compile_error_exits_3(tmp_path):
    bad = tmp_path / "bad.lud"
    bad.write_text('(game "Broken" (players 2) '
                   '(equipment {(board (square 3)) (piece "Disc" P7)}) '
                   '(rules (play (move Add (to (sites Empty)))) '
                   '(end (if (is Line 3) (result Mover Win)))))')
    proc = _run("translate", "--game", str(bad))
    assert proc.returncode == 3
    assert "compile failed" in proc.stderr


def test_endless_game_exits_4(tmp_path):
    game = tmp_path / "wander.lud"
    game.write_text('(game "Wander" (players 1) '
                    '(equipment {(board (square 3)) '
                    '(piece "Marker" P1 (move Step (directions Adjacent)))}) '
                    '(rules (start (place "Marker" {"A1"})) '
                    '(play (forEach Piece)) '
                    '(end (if (is Line 9) (result Mover Win)))))')
    proc = _run("generate", "--game", str(game), "--playouts", "1",
                "--out", str(tmp_path / "out"))
    assert proc.returncode == 4
    assert "no terminal state" in proc.stderr


def test_generate_writes_expected_tree(tmp_path):
    out = tmp_path / "out"
    proc = _run("generate", "--game", str(CORPUS / "TicTacToe.lud"),
                "--playouts", "20", "--out", str(out))
    assert proc.returncode == 0
    game_dir = out / "Tic-Tac-Toe"
    assert f"wrote {game_dir / 'manual.html'}" in proc.stdout
    assert (game_dir / "manual.html").is_file()
    assert (game_dir / "svg" / "setup.svg").is_file()
    manifest = json.loads((game_dir / "manual.json").read_text())
    assert manifest["sections"] == ["Rules", "Heuristics", "Setup", "Endings", "Moves"]
    assert not (game_dir / "traces.json").exists()


def test_generate_json_format_dumps_traces(tmp_path):
    out = tmp_path / "out"
    proc = _run("generate", "--game", str(CORPUS / "TicTacToe.lud"),
                "--playouts", "5", "--out", str(out), "--format", "json")
    assert proc.returncode == 0
    game_dir = out / "Tic-Tac-Toe"
    traces = json.loads((game_dir / "traces.json").read_text())
    assert len(traces) == 5
    assert traces[0]["seed"] == 0
    assert (game_dir / "taxonomy.json").is_file()


def test_generate_multiple_games_writes_index(tmp_path):
    out = tmp_path / "out"
    proc = _run("generate", "--game", str(CORPUS / "TicTacToe.lud"),
                "--game", str(CORPUS / "Breakthrough.lud"),
                "--playouts", "10", "--out", str(out))
    assert proc.returncode == 0
    index = (out / "index.html").read_text()
    assert 'href="Tic-Tac-Toe/manual.html"' in index
    assert 'href="Breakthrough/manual.html"' in index


def test_playout_stats_reports_counts():
    proc = _run("playout-stats", "--game", str(CORPUS / "TicTacToe.lud"),
                "--playouts", "30")
    assert proc.returncode == 0
    assert "30 playouts" in proc.stdout
    assert "distinct move signatures: 2" in proc.stdout
    assert "move-rule coverage: complete" in proc.stdout


def test_main_callable_in_process(capsys):
    rc = main(["translate", "--game", str(CORPUS / "Hex.lud")])
    assert rc == 0
    out = capsys.readouterr().out
    assert normalise(out) == normalise(goldens.HEX)


def test_heuristics_flag_feeds_strategy_section(tmp_path):
    heur = tmp_path / "h.lud"
    heur.write_text('(heuristics {(material "Disc" 0.9)})')
    out = tmp_path / "out"
    proc = _run("generate", "--game", str(CORPUS / "TicTacToe.lud"),
                "--playouts", "10", "--out", str(out),
                "--heuristics", str(heur))
    assert proc.returncode == 0
    manifest = json.loads((out / "Tic-Tac-Toe" / "manual.json").read_text())
    assert manifest["heuristics"]["placeholder"] is False
    assert manifest["heuristics"]["lines"] == [
        "Try to maximise the number of Disc(s) you control (very high importance)"]
