import json

import pytest

from qwlab.cli import run


def _capture(capsys):
    out = capsys.readouterr()
    return out.out, out.err


def test_verify_noumi_passes_and_emits_json(capsys):
    code = run(["verify-noumi", "--lambda", "2,1", "--n", "2", "--q", "1/3",
                "--t", "1/5", "--order", "3", "--samples", "2", "--seed", "7"])
    out, _ = _capture(capsys)
    assert code == 0
    obj = json.loads(out.strip())
    assert obj["check_id"] == "noumi-eigenrelation"
    assert obj["pass"] is True
    assert obj["seed"] == 7


def test_same_seed_same_flags_byte_identical(capsys):
    argv = ["verify-noumi", "--lambda", "2", "--n", "2", "--order", "2",
            "--samples", "3", "--seed", "11"]
    run(argv)
    first, _ = _capture(capsys)
    run(argv)
    second, _ = _capture(capsys)
    assert first == second


def test_seed_changes_samples(capsys):
    run(["verify-noumi", "--lambda", "2", "--n", "2", "--order", "2",
         "--samples", "3", "--seed", "1"])
    a, _ = _capture(capsys)
    run(["verify-noumi", "--lambda", "2", "--n", "2", "--order", "2",
         "--samples", "3", "--seed", "2"])
    b, _ = _capture(capsys)
    assert a != b


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        run(["no-such-command"])
    assert exc.value.code == 2


def test_domain_error_reports_exit_2(capsys):
    code = run(["verify-stade", "--u", "-1", "--lambda", "0.7", "--nu", "0.6"])
    _, err = _capture(capsys)
    assert code == 2
    assert "error:" in err


def test_failing_check_exits_1(capsys):
    code = run(["verify-gamma-identity", "--r", "0.3+0.1j,-0.2",
                "--nu", "2,1", "--tolerance", "0.0"])
    out, _ = _capture(capsys)
    assert code == 1
    assert json.loads(out.strip())["pass"] is False


def test_gamma_identity_passes(capsys):
    code = run(["verify-gamma-identity", "--r", "0.3+0.1j,-0.2", "--nu", "2,1"])
    out, _ = _capture(capsys)
    assert code == 0


def test_limit_exp(capsys):
    code = run(["limit-exp", "--eps-list", "0.4,0.2,0.1", "--u", "1", "--x-n", "0"])
    out, _ = _capture(capsys)
    assert code == 0
    assert json.loads(out.strip())["check_id"] == "eq-exponential-limit"


def test_limit_sweep_csv(tmp_path, capsys):
    path = tmp_path / "sweep.csv"
    code = run(["limit-sweep", "--eps-list", "0.4,0.2,0.1", "--x", "0.3",
                "--w", "0.5", "--prec-bits", "128", "--out", str(path)])
    assert code == 0
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "epsilon,re_value,im_value,re_target,im_target,abs_err"
    assert len(lines) == 4


def test_eval_macdonald(capsys):
    code = run(["eval-macdonald", "--lambda", "2", "--q", "1/3", "--t", "1/5",
                "--z", "2/3,5/7"])
    out, _ = _capture(capsys)
    assert code == 0
    obj = json.loads(out.strip())
    assert obj["coefficients"]["[1, 1]"] == "8/7"
    assert obj["value"] == "661/441"


def test_eval_whittaker(capsys):
    code = run(["eval-whittaker", "--lambda", "0.5,-0.2", "--x", "0.3,-0.3"])
    out, _ = _capture(capsys)
    assert code == 0
    obj = json.loads(out.strip())
    assert abs(float(obj["value"]["re"]) - 0.38394938440851) < 1e-9


def test_suite_quick_single_criterion(capsys):
    code = run(["suite", "--quick", "--criteria", "3"])
    out, err = _capture(capsys)
    assert code == 0
    assert "PASS" in err
    last = json.loads(out.strip().split("\n")[-1])
    assert last["check_id"] == "suite-summary"
    assert last["pass"] is True
