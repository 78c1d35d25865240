import json

from onecyl.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_stratum_human(capsys):
    code, out, _ = run(capsys, "stratum", "1 1 2 / 3 2 3")
    assert code == 0
    assert out.strip() == "Q(2,-1,-1) g=1 dim=3"


def test_stratum_json_deterministic(capsys):
    code, out1, _ = run(capsys, "--json", "stratum", "1 1 2 / 3 2 3")
    code2, out2, _ = run(capsys, "--json", "stratum", "1 1 2 / 3 2 3")
    assert code == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload == {"schema": "1", "orders": [2, -1, -1], "genus": 1, "dim": 3}


def test_parse_and_errors(capsys):
    code, out, _ = run(capsys, "parse", "1 2 / 2 1")
    assert code == 0 and "abelian" in out
    code, _, err = run(capsys, "parse", "1 1 / 2")
    assert code == 2 and "exactly twice" in err


def test_check_red(capsys):
    code, out, _ = run(capsys, "check", "red", "1 2 2 3 3 1 / 0 0")
    assert code == 0 and "violated" in out
    code, out, _ = run(capsys, "check", "red", "1 2 3 4 3 5 4 / 6 6 1 5 2")
    assert code == 0 and "satisfied" in out


def test_enumerate_pattern(capsys):
    code, out, _ = run(capsys, "enumerate", "--pattern", "8")
    assert code == 0
    assert out.strip().endswith("7 classes")


def test_enumerate_sym_sensitivity(capsys):
    # negative control: without row swap the same enumeration overcounts
    code, out, _ = run(capsys, "--sym", "relabel,rotate", "--json", "enumerate", "--type", "5,5", "--pattern", "8")
    assert code == 0
    assert json.loads(out)["count"] == 5
    code, out, _ = run(capsys, "--sym", "relabel,rotate,swap", "--json", "enumerate", "--type", "5,5", "--pattern", "8")
    assert json.loads(out)["count"] == 4


def test_angle_and_excise(capsys):
    rep = "1 2 3 4 2 5 6 / 1 4 5 7 6 7 3"
    code, out, _ = run(capsys, "angle", rep, "--lengths", "1 1 1 1 1 1 1 1 1 1 1 1 1 1")
    assert code == 0 and "s=2" in out
    code, out, _ = run(capsys, "excise", rep)
    assert code == 0 and "angle 2" in out


def test_vperm(capsys):
    code, out, _ = run(capsys, "vperm", "0 1 0 / 2 3 2 1 3", "--lengths", "2 1 2 1 1 1 1 1")
    assert code == 0 and "lambda" in out


def test_rep_subcommand(capsys):
    code, out, _ = run(capsys, "rep", "pi1", "1", "1")
    assert code == 0 and "hyp:pi1(1,1)" in out
    code, out, _ = run(capsys, "rep", "irr", "12-I")
    assert code == 0 and "irr:12-I" in out


def test_classify_small(capsys):
    code, out, _ = run(capsys, "--json", "classify", "--pattern=-1,5")
    assert code == 0
    payload = json.loads(out)
    assert payload["upper_bound"] == 1
    assert len(payload["classes"]) == 2


def test_reproduce_appendix_filter(capsys):
    code, out, _ = run(capsys, "reproduce-appendix", "--only", "fig")
    assert code == 0
    assert "[PASS] fig-suspension" in out

    # the refuted orbit claim is reported as data with exit 1
    code, out, _ = run(capsys, "reproduce-appendix", "--only", "q8-one-orbit")
    assert code == 1
    assert "[FAIL] q8-one-orbit" in out
