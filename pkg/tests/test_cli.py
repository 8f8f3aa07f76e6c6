"""Command line behavior: golden output fragments, JSON round-trips,
and exit codes."""

import json

import pytest

from rspin import cli


@pytest.fixture(autouse=True)
def no_color(monkeypatch):
    monkeypatch.setenv("RSPIN_NO_COLOR", "1")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestReport:
    def test_r2(self, capsys):
        code, out, _ = run(capsys, "report", "--r", "2", "--g", "9", "--eps", "0")
        assert code == 0
        assert "Z ⊕ Z/4" in out
        assert "4(lambda + 4*mu)" in out

    def test_r5_trivial_torsion(self, capsys):
        code, out, _ = run(capsys, "report", "--r", "5", "--g", "16")
        assert code == 0
        assert "torsion: trivial" in out
        assert "h2: Z" in out

    def test_force_banner(self, capsys):
        code, out, _ = run(capsys, "report", "--r", "3", "--g", "2", "--force")
        assert code == 0
        assert "UNVERIFIED (below stable range)" in out

    def test_below_range_exit_3(self, capsys):
        code, _, err = run(capsys, "report", "--r", "3", "--g", "2")
        assert code == 3
        assert "stable range" in err

    def test_missing_eps_exit_2(self, capsys):
        code, _, err = run(capsys, "report", "--r", "2", "--g", "9")
        assert code == 2

    def test_eps_for_odd_r_exit_2(self, capsys):
        code, _, err = run(capsys, "report", "--r", "3", "--g", "10", "--eps", "0")
        assert code == 2

    def test_empty_moduli_reported(self, capsys):
        code, out, _ = run(capsys, "report", "--r", "3", "--g", "9")
        assert code == 0
        assert "nonempty: false" in out
        assert "groups omitted" in out
        assert "h2:" not in out


class TestEval:
    def test_r3_example(self, capsys):
        code, out, _ = run(capsys, "eval", "--r", "3", "--g", "10", "3*lambda(1/3) + lambda")
        assert code == 0
        assert "d: 0" in out
        assert "phi: 8" in out
        assert "torsion of order 3" in out

    def test_zero(self, capsys):
        code, out, _ = run(capsys, "eval", "--r", "2", "--g", "9", "--eps", "1", "0")
        assert code == 0
        assert "d: 0" in out and "phi: 0" in out

    def test_r4_torsion(self, capsys):
        code, out, _ = run(capsys, "eval", "--r", "4", "--g", "9", "--eps", "0", "mu - 2*lambda(1/4)")
        assert code == 0
        assert "phi: 21" in out
        assert "torsion of order 8" in out

    def test_parse_error_exit_2(self, capsys):
        code, _, err = run(capsys, "eval", "--r", "4", "--g", "9", "--eps", "0", "lambda(1/3)")
        assert code == 2
        assert "position" in err

    def test_mu_odd_exit_2(self, capsys):
        code, _, err = run(capsys, "eval", "--r", "3", "--g", "10", "mu")
        assert code == 2
        assert "mu" in err


class TestTheta:
    def test_r2_eps1(self, capsys):
        code, out, _ = run(capsys, "theta", "--r", "2", "--g", "9", "--eps", "1")
        assert code == 0
        assert "index: 2" in out
        assert "- lambda" in out and "- 2*mu" in out

    def test_r3(self, capsys):
        code, out, _ = run(capsys, "theta", "--r", "3", "--g", "10")
        assert code == 0
        assert "h1: Z/3" in out
        assert "index: 1" in out

    def test_r4_eps0(self, capsys):
        code, out, _ = run(capsys, "theta", "--r", "4", "--g", "9", "--eps", "0")
        assert code == 0
        assert "h1: Z/8" in out

    def test_internal_mismatch_exit_4(self, capsys):
        code, _, err = run(capsys, "theta", "--r", "9", "--g", "10")
        assert code == 4
        assert "consistency" in err


class TestTwist:
    def test_lambda_invariant(self, capsys):
        code, out, _ = run(
            capsys, "twist", "--r", "6", "--g", "10", "--eps", "0", "--arf", "1", "--beta", "3",
            "5*lambda(2/6) - lambda",
        )
        assert code == 0
        assert "total shift: 0 mod 6" in out

    def test_mu_r4(self, capsys):
        code, out, _ = run(
            capsys, "twist", "--r", "4", "--g", "9", "--eps", "1", "--arf", "1", "--beta", "1", "mu"
        )
        assert code == 0
        assert "total shift: 2 mod 4" in out

    def test_kappa_r2(self, capsys):
        code, out, _ = run(
            capsys, "twist", "--r", "2", "--g", "9", "--eps", "0", "--arf", "0", "--beta", "1",
            "kappa1(1/2)",
        )
        assert code == 0
        assert "total shift: 0 mod 2" in out


class TestTable:
    def test_rows_2_to_4(self, capsys):
        code, out, _ = run(capsys, "table", "--r-min", "2", "--r-max", "4")
        assert code == 0
        assert "u r: 12" in out and "u r: 4" in out and "u r: 6" in out
        for mult in ("4", "3", "8"):
            assert f"pi2 multiplier: {mult}" in out

    def test_r5(self, capsys):
        code, out, _ = run(capsys, "table", "--r-min", "5", "--r-max", "5")
        assert code == 0
        assert "pi2 multiplier: 25" in out
        assert "torsion: 0" in out

    def test_empty_range(self, capsys):
        code, out, _ = run(capsys, "table", "--r-min", "5", "--r-max", "4")
        assert code == 0


class TestJson:
    @pytest.mark.parametrize(
        "argv",
        [
            ["report", "--r", "2", "--g", "9", "--eps", "0"],
            ["report", "--r", "5", "--g", "16"],
            ["eval", "--r", "3", "--g", "10", "3*lambda(1/3) + lambda"],
            ["theta", "--r", "4", "--g", "9", "--eps", "1"],
            ["twist", "--r", "4", "--g", "9", "--eps", "1", "--arf", "1", "--beta", "1", "mu"],
            ["table", "--r-min", "2", "--r-max", "6"],
        ],
    )
    def test_round_trip(self, capsys, argv):
        code, text_out, _ = run(capsys, *argv)
        assert code == 0
        code, json_out, _ = run(capsys, *argv, "--json")
        assert code == 0
        parsed = json.loads(json_out)
        # re-rendering the parsed JSON reproduces the text output
        assert cli._render_text(parsed, color=False) + "\n" == text_out

    def test_numerics_are_strings(self, capsys):
        _, json_out, _ = run(capsys, "report", "--r", "2", "--g", "9", "--eps", "0", "--json")
        parsed = json.loads(json_out)

        def walk(node):
            if isinstance(node, dict):
                for v in node.values():
                    walk(v)
            elif isinstance(node, list):
                for v in node:
                    walk(v)
            else:
                assert isinstance(node, (str, bool))

        walk(parsed)


class TestUsage:
    def test_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["report", "--bogus"])
        assert exc.value.code == 2
        capsys.readouterr()

    def test_no_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main([])
        assert exc.value.code == 2
        capsys.readouterr()
