import json
import random
import subprocess
import sys

import pytest

from woundlab.cli import format_value, load_corpus, parse, parse_corpus, parse_expression, parse_field, run, run_corpus
from woundlab.cli.corpus import CorpusError, default_corpus_text
from woundlab.cli.expr import ExprSyntaxError, UnknownVariable, parse_russell
from woundlab.cli.main import main
from woundlab.field_core import GF, BivarRatFunc, FieldElement, DensePoly, LaurentSeries, RatFunc
from woundlab.field_core.bivar import BivarPoly
from woundlab.hassewitt import BinaryForm
from woundlab.ppoly import RussellEquation

FIELDS = [GF(2), GF(3), GF(5), GF(2, 2), GF(3, 2)]


class TestParser:
    def test_laurent_example(self):
        x = parse_expression("t^-2 + 2*t^-1", GF(3))
        assert isinstance(x, LaurentSeries)
        assert x.support() == [-2, -1]
        assert x.coeff(-1) == 2

    def test_binary_form_example(self):
        a = parse_expression("t0^2*t1^2*(t0^8+t1^8)", GF(3))
        assert isinstance(a, BinaryForm)
        assert a.degree == 12 and a.terms() == {2: 1, 10: 1}

    def test_russell_example(self):
        R = parse_expression("u^3+v+t*v^3", GF(3))
        assert isinstance(R, RussellEquation)
        assert (R.p, R.n, R.m) == (3, 1, 1)
        assert R.a == (RatFunc.t(GF(3)),)

    def test_short_russell(self):
        R = parse_russell("p=3 n=1 a=[t]")
        assert R == parse_expression("u^3+v+t*v^3", GF(3))
        R2 = parse_russell("p=2 n=1 a=[t + 1, 1/(t^2+1)]")
        assert R2.m == 2 and R2.a[1] == 1 / (RatFunc.t(GF(2)) ** 2 + 1)

    def test_bivariate_and_element(self):
        F = GF(2)
        x = parse_expression("s*t^2 + 1", F)
        assert isinstance(x, BivarRatFunc)
        assert x == BivarRatFunc.s(F) * BivarRatFunc.t(F) ** 2 + 1
        F4 = GF(2, 2)
        w = parse_expression("w^2", F4)
        assert str(w) == "w + 1"

    def test_big_O(self):
        x = parse_expression("t^-1 + 1 + O(t^5)", GF(3))
        assert x.prec == 5

    def test_whitespace(self):
        F = GF(3)
        assert parse_expression(" t ^ 2 +\t2 * t ", F) == parse_expression("t^2+2*t", F)

    def test_syntax_error_position(self):
        with pytest.raises(ExprSyntaxError) as exc:
            parse("t^2 + * t", GF(3))
        assert exc.value.pos == 6
        with pytest.raises(ExprSyntaxError):
            parse("(t + 1", GF(3))

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariable) as exc:
            parse("t + x", GF(3))
        assert exc.value.pos == 4

    def test_fields(self):
        assert parse_field("F9").q == 9
        assert parse_field("GF(8)").q == 8
        F4 = parse_field("F4:w^2+w+1")
        assert F4.q == 4
        with pytest.raises(ValueError):
            parse_field("F6")
        with pytest.raises(ValueError):
            parse_field("F4:w^2+1")


def _rand_laurent(F, rng):
    prec = rng.choice([None, rng.randint(-3, 25)])
    hi = prec if prec is not None else rng.randint(-4, 8)
    return LaurentSeries.from_dict(F, {e: rng.randrange(F.q) for e in range(-6, hi)}, prec)


def _rand_ratfunc(F, rng):
    num = DensePoly.from_codes(F, [rng.randrange(F.q) for _ in range(rng.randint(0, 5))])
    den = DensePoly.from_codes(F, [rng.randrange(F.q) for _ in range(rng.randint(0, 3))] + [1])
    return RatFunc(num, den)


def _rand_bivar(F, rng):
    def poly(n):
        return BivarPoly(F, {(rng.randint(0, 3), rng.randint(0, 3)): rng.randrange(1, F.q) for _ in range(n)})
    den = poly(rng.randint(1, 2))
    while not den:
        den = poly(1)
    return BivarRatFunc(poly(rng.randint(0, 4)), den)


def _rand_form(F, rng):
    N = rng.randint(0, 14)
    return BinaryForm.from_terms(F, N, {i: rng.randrange(F.q) for i in range(N + 1) if rng.random() < 0.5})


def _rand_russell(F, rng):
    a = [_rand_ratfunc(F, rng) for _ in range(rng.randint(1, 3))]
    while not a[-1]:
        a[-1] = _rand_ratfunc(F, rng)
    return RussellEquation(F.p, rng.randint(1, 2), tuple(a))


class TestRoundTrip:
    KINDS = ["laurent", "ratfunc", "bivar", "form", "russell", "element"]

    @pytest.mark.parametrize("kind", KINDS)
    def test_parse_format(self, kind):
        rng = random.Random(100 + self.KINDS.index(kind))
        for i in range(500):
            F = FIELDS[i % len(FIELDS)]
            if kind == "laurent":
                x = _rand_laurent(F, rng)
                y = parse(format_value(x), F).to_laurent()
                assert y == x and y.prec == x.prec
            elif kind == "ratfunc":
                x = _rand_ratfunc(F, rng)
                assert parse(format_value(x), F).to_ratfunc() == x
            elif kind == "bivar":
                x = _rand_bivar(F, rng)
                assert parse(format_value(x), F).to_bivar() == x
            elif kind == "form":
                x = _rand_form(F, rng)
                assert parse(format_value(x), F).to_binary_form(x.degree) == x
            elif kind == "russell":
                x = _rand_russell(F, rng)
                assert parse(x.to_str(format_value), F).to_russell() == x
            else:
                x = FieldElement(F, rng.randrange(F.q))
                assert parse(format_value(x), F).to_element() == x


class TestCommands:
    def test_classify(self):
        code, out, _ = run(["--field", "F3", "classify", "u^3+v+t*v^3"])
        assert code == 0
        assert out["classification"] == {"tag": "QuasiElliptic", "case": "2", "genus": 1}
        assert (out["p"], out["n"], out["m"], out["coeffs"]) == (3, 1, 1, ["t"])

    def test_classify_trace(self):
        code, out, text = run(["classify", "--trace", "p=3 n=1 a=[t]"])
        assert code == 0 and out["splitting_degree"] == 3
        assert "splitting degree 3" in text

    def test_genus_forms(self):
        assert run(["genus", "2", "2", "2"])[1]["genus"] == 3
        assert run(["--field", "F2", "genus", "u^4+v+t*v^4"])[1]["genus"] == 3

    def test_compactify(self):
        code, out, _ = run(["compactify", "p=2 n=1 a=[t]"])
        assert code == 0
        assert out["equation"] == "t2^2 + t0*t1 + t*t1^2"
        assert out["regular"] and out["weights"] == [1, 1, 1] and out["degree"] == 2
        assert out["boundary_degree"] == 2

    def test_group_law(self):
        assert run(["group-law", "add", "1", "t"])[1]["sum"] == "1/(t + 1)"
        assert run(["group-law", "add", "1", "1/t"])[1]["sum"] == "inf"
        out = run(["group-law", "--a", "t^3+t", "--field", "F8", "embed", "w*t"])[1]
        assert set(out) >= {"u", "v", "s"}
        code, out, _ = run(["group-law", "--a", "t^2", "add", "1", "t"])
        assert code == 2

    def test_torsor(self):
        out = run(["torsor", "reduce", "--p", "3", "--k", "1", "--f", "t^-2"])[1]
        assert out["normal_form"] == "2*t^-1" and out["lang_k"] == 1 and out["lang_n"] == 0
        out = run(["--field", "F3", "torsor", "reduce", "--model", "u^3+v+t*v^3", "t^-3"])[1]
        assert out["trivial"] is True
        out = run(["torsor", "trivial", "--p", "3", "--k", "1", "t^-1"])[1]
        assert out["trivial"] is False
        out = run(["torsor", "reduce", "--trace", "--p", "3", "--k", "1", "t^-2"])[1]
        assert [mv["kind"] for mv in out["trace"]] == ["v-move"]

    def test_hasse_witt(self):
        argv = ["hasse-witt", "--p", "3", "--n", "1", "--m", "1", "--k", "2", "--a", "t0^2*t1^2*(t0^8+t1^8)"]
        code, out, _ = run(argv)
        assert code == 0
        assert (out["d"], out["r"], out["h2"], out["h1L_dim"]) == (5, 4, 0, 1)
        assert out["h1G"] == {"torsion": 3, "rank": 4} and out["experimental"] is False

    def test_prec_env(self, monkeypatch):
        monkeypatch.setenv("WOUNDLAB_PREC", "20")
        assert run(["torsor", "reduce", "--p", "3", "--k", "1", "t^-2"])[1]["precision"] == 20
        assert run(["--prec", "30", "torsor", "reduce", "--p", "3", "--k", "1", "t^-2"])[1]["precision"] == 30
        monkeypatch.delenv("WOUNDLAB_PREC")
        assert run(["torsor", "reduce", "--p", "3", "--k", "1", "t^-2"])[1]["precision"] == 64


class TestExitCodes:
    @pytest.mark.parametrize("argv,code", [
        (["genus", "3", "1", "1"], 0),
        (["torsor", "reduce", "--p", "2", "--m", "2", "--k", "1", "--prec", "7", "t^-3"], 1),
        (["--field", "F2", "torsor", "reduce", "--model", "u^2+v+t*v^2+t*v^4", "t^-1"], 1),
        (["nonsense"], 2),
        (["classify"], 2),
        (["--field", "F3", "classify", "u^3+v+t*"], 2),
        (["--field", "F6", "classify", "u^3+v+t*v^3"], 2),
        (["hasse-witt", "--p", "3", "--k", "2", "t0^2"], 2),
        (["torsor", "reduce", "t^-1"], 2),
    ])
    def test_codes(self, argv, code):
        assert run(argv)[0] == code

    def test_main_streams(self, capsys):
        assert main(["--field", "F3", "classify", "u^3+v+t*"]) == 2
        captured = capsys.readouterr()
        assert "error" in captured.err and not captured.out

    def test_help(self, capsys):
        assert main(["genus", "--help"]) == 0
        assert "usage" in capsys.readouterr().out
        assert main(["nosuch", "--help"]) == 2
        assert "invalid choice" in capsys.readouterr().err

    def test_json_byte_stable(self, capsys):
        argv = ["--json", "hasse-witt", "--field", "F3", "--k", "2", "t0^2*t1^2*(t0^8+t1^8)"]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        second = capsys.readouterr().out
        assert first == second
        payload = json.loads(first)
        assert list(payload) == sorted(payload)

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "woundlab", "--json", "genus", "2", "1", "1"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["genus"] == 0


class TestCorpus:
    def test_default_corpus_passes(self):
        report = run_corpus(load_corpus())
        assert report.total >= 20
        assert report.ok, report.to_text()

    def test_verify_command(self):
        code, out, _ = run(["verify-paper"])
        assert code == 0 and out["failed"] == 0

    def test_one_perturbed_value(self, tmp_path):
        text = default_corpus_text().replace("expect.r: 4", "expect.r: 5", 1)
        path = tmp_path / "perturbed.txt"
        path.write_text(text)
        code, out, txt = run(["verify-paper", "--corpus", str(path)])
        assert code == 3
        assert out["failed"] == 1
        assert txt.count("FAIL") == 1

    def test_empty_corpus(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("# nothing here\n")
        code, out, _ = run(["verify-paper", "--corpus", str(path)])
        assert code == 0 and out["total"] == 0

    def test_malformed_corpus(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("name: x\ncommand: genus 2 1 1\n")
        assert run(["verify-paper", "--corpus", str(path)])[0] == 2
        with pytest.raises(CorpusError):
            parse_corpus("name: a\nbogus: 1\nexpect.x: 1\n")

    def test_ordering_by_name(self):
        text = "name: zeta\ncommand: genus 3 1 1\nexpect.genus: 1\n\nname: alpha\ncommand: genus 2 1 1\nexpect.genus: 0\n"
        report = run_corpus(parse_corpus(text))
        assert [r.name for r in report.results] == ["alpha", "zeta"]

    def test_crashing_entry_is_failure(self):
        report = run_corpus(parse_corpus("name: x\ncheck: no-such-check\nexpect.count: 1\n"))
        assert report.failures and report.failures[0].error

    def test_timing_only_on_request(self):
        rep = run_corpus(parse_corpus("name: a\ncommand: genus 3 1 1\nexpect.genus: 1\n"))
        assert "elapsed_ms" not in rep.as_dict()["entries"][0]
        assert "elapsed_ms" in rep.as_dict(timing=True)["entries"][0]
