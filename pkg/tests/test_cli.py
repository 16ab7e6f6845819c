import csv
import io
import json

import pytest

from cli.grammar import UsageError
from cli.parser import parse_args
from cli.runner import execute
from conftest import GOLDEN_DIR
from main import run
from models.schemas import Command, Job, OutputFormat, Report, VerifySuite
from utils.constants import EXIT_OK, EXIT_REFUSED, EXIT_USAGE, S_ENUM_FIELDS


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


GOLDEN_CASES = [
    ("f_n1", ["f", "--n", "1"]),
    ("s_n0_k3", ["s", "--n", "0", "--k", "3"]),
    ("normal_form_235", ["lgroup", "normal-form", "--weights", "2,3,5", "--raw=-1,-1,-1", "--c", "1"]),
    ("euler_line_simple", ["euler", "--weights", "2,2,2", "--a", "L:0,0,0;0", "--b", "E:1,0,1"]),
    (
        "hall_line_torsion",
        ["hall", "line-torsion", "--weights", "2,2,2", "--x", "0,0,0;0", "--y", "1,0,0;0", "--s", "E:1,1,1"],
    ),
    (
        "hall_split_both",
        [
            "hall", "split-both", "--weights", "2,3,5", "--line", "0,0,0;0", "--line-mid", "1,0,0;0",
            "--s-mid", "E:1,0,1", "--s-quot", "E:1,1,2",
        ],
    ),
    (
        "hall_ext_exceptional",
        [
            "hall", "ext-exceptional", "--weights", "2,2,2", "--base", "0,0,0;0", "--offset", "0,0,0;0",
            "--base2", "1,1,1;-2", "--offset2", "0,0,0;0", "--s", "E:1,0,2",
        ],
    ),
    (
        "hall_ext_homog",
        [
            "hall", "ext-homog", "--weights", "2,2,2", "--base", "0,0,0;0", "--offset", "0,0,0;0",
            "--base2=0,0,0;-1", "--offset2", "0,0,0;0", "--d", "1", "--n", "2",
        ],
    ),
    (
        "hall_ext_lines",
        [
            "hall", "ext-lines", "--weights", "2,2,2", "--base", "0,0,0;0", "--offset", "0,0,0;0",
            "--l1", "1,1,1;-3", "--l2", "0,0,0;1",
        ],
    ),
    ("quiver_weight_d5", ["quiver", "weight", "--family", "D~:5"]),
    ("quiver_hall_e6_ext_lines", ["quiver", "hall", "--family", "E~6", "--case", "ext-lines", "--n", "2"]),
    ("verify_s_enum", ["verify", "--suite", "s-enum", "--weights", "2,2,2", "--n", "1", "--k", "0", "--q", "5"]),
    ("verify_green", ["verify", "--suite", "green", "--p", "1", "--q", "2", "--max-dim", "1"]),
    ("verify_rp", ["verify", "--suite", "rp", "--p", "1", "--q", "2", "--max-dim", "2"]),
    ("verify_assoc", ["verify", "--suite", "assoc", "--p", "1", "--q", "2", "--max-dim", "1"]),
    ("verify_dims", ["verify", "--suite", "dims", "--p", "2", "--q", "2", "--max-length", "1"]),
    ("verify_auts", ["verify", "--suite", "auts", "--p", "2", "--q", "3", "--max-length", "2"]),
    ("verify_sweep_ext", ["verify", "--suite", "sweep-ext", "--weights", "2,2,2", "--max-length", "1"]),
]


@pytest.mark.parametrize("name, argv", GOLDEN_CASES, ids=[name for name, _ in GOLDEN_CASES])
def test_golden_output(name, argv):
    code, text = invoke(*argv)
    assert code == EXIT_OK
    assert text == (GOLDEN_DIR / f"{name}.txt").read_text(encoding="utf-8")


# --- Exit codes ---


@pytest.mark.parametrize(
    "argv",
    [
        ["f"],
        ["s", "--n", "1", "--k", "4"],
        ["hall", "line-torsion", "--weights", "2,x", "--x", "0,0;0", "--y", "0,0;0"],
        ["lgroup", "normal-form", "--weights", "2,3,5", "--raw", "1,2"],
        ["euler", "--weights", "2,2,2", "--a", "Q:1", "--b", "E:1,0,1"],
        ["quiver", "weight", "--family", "B~:3"],
        ["verify", "--suite", "s-enum", "--sigma", "H:1,1"],
        ["verify", "--suite", "s-enum", "--q", "1"],
        ["verify", "--suite", "dims", "--p", "0"],
        ["verify", "--suite", "green", "--max-dim", "0"],
    ],
)
def test_usage_errors(argv, capsys):
    code, text = invoke(*argv)
    assert code == EXIT_USAGE
    assert text == ""
    assert "usage error" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        [
            "hall", "split-middle", "--weights", "2,2,2", "--line", "0,0,0;0", "--line-mid", "1,0,0;0",
            "--s", "E:1,1,2", "--s-mid", "E:1,1,1",
        ],
        [
            "hall", "ext-lines", "--weights", "2,3", "--base", "0,0;0", "--offset", "0,0;0",
            "--l1", "0,0;0", "--l2", "0,0;0",
        ],
        ["quiver", "hall", "--family", "D~:4", "--case", "preinj-i1r"],
        ["quiver", "hall", "--family", "A~:2,3", "--case", "ext-lines", "--n", "2"],
        ["s", "--n", "-2", "--k", "0"],
        [
            "hall", "ext-homog", "--weights", "2,2,2", "--base", "0,0,0;0", "--offset", "0,0,0;0",
            "--base2=0,0,0;-1", "--offset2", "0,0,0;0", "--d", "0", "--n", "1",
        ],
    ],
)
def test_refusals(argv, capsys):
    code, _ = invoke(*argv)
    assert code == EXIT_REFUSED
    assert "error:" in capsys.readouterr().err


def test_empty_suite_is_not_a_pass():
    params = {"p": 2, "q": 2, "max_length": 0}
    job = Job(command=Command.VERIFY, subcase=VerifySuite.DIMS.value, arguments={"params": params})
    report = execute(job)
    assert report.records == []
    assert report.verdict is False


def test_help_exits_cleanly(capsys):
    code, _ = invoke("--help")
    assert code == EXIT_OK
    assert "hwpl" in capsys.readouterr().out


# --- Output formats ---


def test_records_format():
    code, text = invoke("f", "--n", "2", "--format", "records")
    assert code == EXIT_OK
    record = json.loads(text)
    assert record["command"] == "f"
    assert record["result"] == "q^2 - 3*q + 3"
    assert record["inputs"] == {"n": "2"}
    assert "elapsed_ms" not in record
    assert Report.model_validate_json(text).result == "q^2 - 3*q + 3"


def test_csv_format():
    code, text = invoke("verify", "--suite", "identities", "--f-max", "2", "--s-max", "1", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) >= 3
    assert {row["command"] for row in rows} == {"verify"}
    assert all(row["verdict"] == "ok" for row in rows)


def test_out_file(tmp_path):
    target = tmp_path / "f.txt"
    code, text = invoke("f", "--n", "0", "--out", str(target))
    assert code == EXIT_OK
    assert text == ""
    assert target.read_text(encoding="utf-8") == "1\n"


# --- Parsing ---


def test_parse_common_options():
    job = parse_args(["f", "--n", "3", "--verbose", "--format", "csv"])
    assert job.command is Command.F
    assert job.log_level == "DEBUG"
    assert job.output_format is OutputFormat.CSV
    assert parse_args(["f", "--n", "3", "--quiet"]).log_level == "WARNING"
    with pytest.raises(UsageError):
        parse_args(["f", "--n", "3", "--quiet", "--verbose"])


def test_verify_defaults():
    job = parse_args(["verify", "--suite", "green"])
    assert job.subcase == VerifySuite.GREEN.value
    assert job.arguments["params"] == {"p": 2, "q": 2, "max_dim": 4}
    params = parse_args(["verify", "--suite", "s-enum"]).arguments["params"]
    assert params["q_values"] == S_ENUM_FIELDS
    assert "sigma" not in params
    params = parse_args(["verify", "--suite", "s-enum", "--sigma", "E:1,0,1", "--k", "1"]).arguments["params"]
    assert params["k_values"] == (1,)
    assert len(params["sigma"]) == 1
    with pytest.raises(UsageError):
        parse_args(["verify", "--suite", "s-enum", "--sigma", "E:1,0,1", "--k", "2"])


def test_quiver_hall_job():
    job = parse_args(["quiver", "hall", "--family", "E~8", "--case", "ext-exceptional", "--N", "1"])
    assert job.weights == "2,3,5"
    assert job.arguments["case"].n_value == 1


def test_quiver_regular_terms_by_role():
    argv = [
        "quiver", "hall", "--family", "D~:4", "--case", "preinj-ipr", "--assume-exists",
        "--line", "0,0,0;0", "--r1", "E:1,1,1", "--r2", "H:1,1",
    ]
    case = parse_args(argv).arguments["case"]
    assert str(case.r1) == "E:1,1,1"
    assert case.r2 is not None and case.torsion is None
    code, text = invoke(*argv)
    assert code == EXIT_OK
    assert text.strip() == "1"
    # the middle term goes in --r2; a bare --torsion leaves it missing
    code, _ = invoke(*argv[:7], "--torsion", "H:1,1", "--hom-dim", "0")
    assert code == EXIT_REFUSED
