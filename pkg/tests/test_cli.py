import json

from localregen import descriptor
from localregen.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_construct_verify_dmin_flow(tmp_path, capsys):
    out = str(tmp_path / "c1.json")
    rc, _, _ = run(capsys, "construct", "--family", "sum_parity_msr",
                   "--field", "7", "--r", "2", "--delta", "3", "--m", "2",
                   "--Delta", "1", "--d", "3", "-o", out)
    assert rc == 0
    rc, stdout, _ = run(capsys, "verify", out)
    assert rc == 0
    assert "d_min=4 == bound=4" in stdout
    rc, stdout, _ = run(capsys, "dmin", out)
    assert rc == 0
    assert stdout.strip() == "4"


def test_tampered_descriptor_detected(tmp_path, capsys):
    out = str(tmp_path / "code.json")
    rc, _, _ = run(capsys, "construct", "--family", "pyramid", "--field", "11",
                   "--k", "4", "--r", "2", "--delta", "3", "--dmin", "4",
                   "-o", out)
    assert rc == 0
    data = json.loads(open(out).read())
    # overwrite the global parity column: block-2 words now reach weight 3
    for row in range(4):
        data["generator"][row * 9 + 8] = 1 if row == 0 else 0
    with open(out, "w") as fh:
        json.dump(data, fh)
    rc, stdout, err = run(capsys, "dmin", out)
    assert rc == 1
    assert "mismatch" in err
    rc, stdout, _ = run(capsys, "verify", out)
    assert rc == 1
    assert "MISMATCH" in stdout


def test_unknown_subcommand_usage_error(capsys):
    assert main(["frobnicate"]) == 2
    capsys.readouterr()
    assert main([]) == 2
    capsys.readouterr()


def test_bounds_subcommand(capsys):
    rc, stdout, _ = run(capsys, "bounds", "scalar-locality", "--n", "9",
                        "--k", "4", "--r", "2", "--delta", "3")
    assert rc == 0
    assert json.loads(stdout) == {"scalar-locality": 4}
    rc, stdout, _ = run(capsys, "bounds", "ura", "--n", "5", "--K", "9",
                        "--profile", "4,3,2,0,0")
    assert json.loads(stdout) == {"ura": 3}
    rc, stdout, _ = run(capsys, "bounds", "structural", "--n", "12", "--r", "4",
                        "--delta", "3", "--K", "36", "--alpha", "6",
                        "--kappa", "7")
    vals = json.loads(stdout)
    assert vals["kappa"] == 4 and vals["k"] == 5
    rc, stdout, _ = run(capsys, "bounds", "concatenated", "--n1", "3",
                        "--k1", "2", "--d1", "2", "--n2", "4", "--k2", "3",
                        "--d2", "2")
    assert json.loads(stdout) == {"concatenated": 5}


def test_repair_sim_and_compare(tmp_path, capsys):
    pent = str(tmp_path / "pentagon.json")
    rs = str(tmp_path / "rs.json")
    rc, _, _ = run(capsys, "construct", "--family", "rbt_mbr", "--field", "11",
                   "--n", "5", "--k", "3", "-o", pent)
    assert rc == 0
    rc, _, _ = run(capsys, "construct", "--family", "trivial_msr", "--field", "16",
                   "--n", "14", "--k", "10", "-o", rs)
    assert rc == 0
    rc, stdout, _ = run(capsys, "repair-sim", pent)
    assert rc == 0
    sim = json.loads(stdout)
    assert sim["record"]["omega_bar"] == 4.0
    assert len(sim["transcripts"]) == 5
    out_csv = str(tmp_path / "table.csv")
    rc, _, _ = run(capsys, "compare", rs, pent, "-o", out_csv)
    assert rc == 0
    lines = open(out_csv).read().splitlines()
    assert lines[0].startswith("family,n,K,alpha,dmin")
    assert len(lines) == 3


def test_construct_via_spec_file(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({
        "family": "rbt_mbr_local", "field": 16,
        "r": 2, "delta": 2, "m": 2, "Delta": 1,
    }))
    out = str(tmp_path / "c3.json")
    rc, _, _ = run(capsys, "construct", "--spec", str(spec), "-o", out)
    assert rc == 0
    built = descriptor.load(out)
    assert built.code.n == 7 and built.claimed_dmin == 3


def test_stack_family_via_base(tmp_path, capsys):
    base = str(tmp_path / "base.json")
    rc, _, _ = run(capsys, "construct", "--family", "pyramid", "--field", "11",
                   "--k", "4", "--r", "2", "--delta", "3", "--dmin", "4",
                   "-o", base)
    assert rc == 0
    out = str(tmp_path / "stacked.json")
    rc, _, _ = run(capsys, "construct", "--family", "stack", "--base", base,
                   "--alpha", "3", "-o", out)
    assert rc == 0
    built = descriptor.load(out)
    assert built.code.alpha == 3 and built.code.K == 12
    rc, stdout, _ = run(capsys, "verify", out)
    assert rc == 0


def test_randomized_family_reverify(tmp_path, capsys):
    out = str(tmp_path / "rand.json")
    rc, _, _ = run(capsys, "construct", "--family", "random_msr_local",
                   "--field", "257", "--r", "2", "--delta", "3", "--m", "2",
                   "--Delta", "1", "--d", "3", "--seed", "0", "-o", out)
    assert rc == 0
    rc, stdout, _ = run(capsys, "verify", out)
    assert rc == 0
    assert "d_min=4 == bound=4" in stdout


def test_missing_file_is_usage_error(capsys):
    assert main(["verify", "/nonexistent/file.json"]) == 2
    capsys.readouterr()
