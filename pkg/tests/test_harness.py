import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from selberg import cli
from selberg.errata import RECURSION_CORRECTIONS, ledger, recursion_variant, d1_display, printed_recursion
from selberg.exact import ClosedForm, HalfInt, UniPoly
from selberg.jackeval import closed_form
from selberg.report import SCHEMA, EvaluationReport, MethodResult
from selberg.symfunc import Partition


@pytest.fixture(autouse=True)
def _private_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("SELBERG_CACHE_DIR", str(tmp_path / "cache"))


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# --- reports -------------------------------------------------------------------------------

rationals = st.fractions(max_denominator=10 ** 30).filter(lambda q: abs(q) < 10 ** 40)
closed_forms = st.builds(
    ClosedForm, rationals, st.integers(-4, 4),
    st.lists(st.integers(0, 30).map(HalfInt), max_size=4).map(tuple),
    st.tuples(st.integers(1, 5), st.integers(1, 40)),
    st.lists(rationals, max_size=5).map(UniPoly))
results = st.builds(MethodResult, st.sampled_from(["perm", "jack", "rec", "oracle"]),
                    st.one_of(st.none(), rationals), st.integers(0, 10 ** 6),
                    st.one_of(st.none(), closed_forms), st.one_of(st.none(), st.text(max_size=20)))


@given(st.sampled_from(["I", "J"]), st.integers(1, 6), st.integers(0, 6),
       st.lists(results, max_size=4))
def test_report_json_round_trip(kind, n, d, res):
    report = EvaluationReport(kind, n, d, 3 if kind == "I" else None,
                              None if kind == "I" else "2,1", res)
    text = report.dumps()
    again = EvaluationReport.loads(text)
    assert again == report
    assert again.dumps() == text


def test_report_agreement_flags():
    r = EvaluationReport("I", 2, 1, 0, results=[
        MethodResult("perm", None, note="not applicable (odd d)"),
        MethodResult("jack", Fraction(1, 16)), MethodResult("rec", Fraction(1, 16))])
    assert r.agreement and r.first_disagreement is None
    r.results.append(MethodResult("oracle", Fraction(1, 17)))
    assert not r.agreement and r.first_disagreement == ("jack", "oracle")
    obj = r.to_json()
    assert obj["schema"] == SCHEMA and obj["first_disagreement"] == ["jack", "oracle"]
    obj["agreement"] = True
    with pytest.raises(ValueError):
        EvaluationReport.from_json(obj)


def test_rationals_are_strings_not_floats():
    big = Fraction(3 ** 200, 7 ** 90)
    r = EvaluationReport("I", 1, 1, 0, results=[MethodResult("oracle", big)])
    v = json.loads(r.dumps())["methods"][0]["value"]
    assert v == {"num": str(3 ** 200), "den": str(7 ** 90)}


def test_closed_form_in_report_round_trips():
    cf = closed_form(3, 1)
    r = EvaluationReport("I", 3, 1, 0, results=[MethodResult("jack", cf.evaluate(0), 5, cf)])
    assert EvaluationReport.loads(r.dumps()).results[0].closed_form == cf


# --- errata --------------------------------------------------------------------------------

def test_every_ledger_entry_is_arbitrated():
    entries = ledger()
    assert len(entries) >= 6
    assert len({e.key for e in entries}) == len(entries)
    for e in entries:
        assert e.arbitrated(), e.key


def test_each_recursion_correction_matters():
    for name in RECURSION_CORRECTIONS:
        lam = Partition((1,)) if name == "first_beta" else Partition()
        assert recursion_variant(2, 1, lam, frozenset({name})) != recursion_variant(2, 1, lam)
    assert recursion_variant(2, 1, Partition(), frozenset({"inner_factor"})) == Fraction(1, 6)
    assert printed_recursion(2, 1) == Fraction(1, 16) != Fraction(1, 12)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_displayed_closed_forms_are_shifted_by_one(n):
    shown = d1_display(n)
    ours = closed_form(n, 1)
    for p in range(5):
        assert ours.evaluate(p) == shown.evaluate(p + 1)


# --- command line --------------------------------------------------------------------------

def test_eval_all_agrees(capsys):
    code, out, _ = run(capsys, "eval", "--n", "2", "--d", "2", "--p", "0")
    assert code == 0
    assert out.count("1/36") == 4 and "agreement: yes" in out


def test_eval_odd_d_marks_perm(capsys):
    code, out, _ = run(capsys, "eval", "--n", "2", "--d", "1", "--p", "0", "--json")
    assert code == 0
    report = EvaluationReport.loads(out)
    perm = report.results[0]
    assert perm.method == "perm" and perm.value is None and perm.note == "not applicable (odd d)"
    assert {v for _, v in report.values} == {Fraction(1, 16)}


def test_eval_trivial_dimension(capsys):
    code, out, _ = run(capsys, "eval", "--n", "1", "--d", "2", "--p", "5", "--json")
    assert code == 0
    assert {v for _, v in EvaluationReport.loads(out).values} == {Fraction(1, 6)}


def test_eval_latex(capsys):
    code, out, _ = run(capsys, "eval", "--n", "2", "--d", "2", "--p", "0", "--method", "jack", "--latex")
    assert code == 0
    assert r"\Gamma\left(2p + 7\right)" in out and r"\left(2p + 5\right)" in out


@pytest.mark.parametrize("argv", [
    ["eval", "--n", "2", "--d", "1", "--p", "0", "--method", "perm"],
    ["eval", "--n", "0", "--d", "1", "--p", "0"],
    ["eval", "--n", "two", "--d", "1", "--p", "0"],
    ["phi", "--n", "2", "--d", "3", "--method", "det"],
    ["jack", "--alpha", "0", "--nvars", "2", "--partition", "1"],
    ["j", "--n", "2", "--kappa", "1", "--partition", "1,2"],
    [],
])
def test_usage_errors_exit_1(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_guard_exits_3(capsys):
    code, _, err = run(capsys, "eval", "--n", "5", "--d", "1", "--p", "0", "--method", "oracle")
    assert code == 3 and "guard" in err


def test_phi_outputs(capsys):
    code, out, _ = run(capsys, "phi", "--n", "2", "--d", "2", "--method", "det")
    assert code == 0 and "8*p + 20" in out and "degree: 1" in out
    code, out2, _ = run(capsys, "phi", "--n", "2", "--d", "2", "--method", "perm")
    assert out2.splitlines()[0] == out.splitlines()[0]
    code, out, _ = run(capsys, "phi", "--n", "1", "--d", "3", "--method", "jack")
    assert code == 0 and "= 1" in out.splitlines()[0]


def test_j_and_jack(capsys):
    code, out, _ = run(capsys, "j", "--n", "2", "--kappa", "2", "--partition", "1,1")
    assert code == 0 and out.count("1/360") == 2
    code, out, _ = run(capsys, "jack", "--alpha", "2", "--nvars", "2", "--partition", "2")
    assert code == 0 and "2/3 * m_[1,1]" in out


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "--max-n", "1", "--max-d", "1", "--max-p", "0")
    assert code == 0 and "all checks passed" in out
    code, out, _ = run(capsys, "validate", "--max-n", "2", "--max-d", "2", "--max-p", "1",
                       "--corrupt-fixture")
    assert code == 2 and "FAIL" in out


def test_errata_views(capsys):
    code, out, _ = run(capsys, "errata")
    assert code == 0 and "NOT ARBITRATED" not in out
    code, out, _ = run(capsys, "errata", "--json")
    rows = json.loads(out)
    assert code == 0 and len(rows) >= 6 and all(r["arbitrated"] for r in rows)
    code, out, _ = run(capsys, "errata", "--empty")
    assert code == 0 and len(out.strip().splitlines()) == 1


def test_cache_file_is_written_and_reused(capsys, tmp_path):
    run(capsys, "jack", "--alpha", "2/3", "--nvars", "3", "--partition", "2,1")
    path = tmp_path / "cache" / "jack-cache.txt"
    assert path.exists()
    assert path.read_text().startswith("selberg-jack-cache v1\n")
    code, out, _ = run(capsys, "jack", "--alpha", "2/3", "--nvars", "3", "--partition", "2,1")
    assert code == 0 and "9/4 * m_[1,1,1]" in out


def test_corrupt_cache_is_ignored(capsys, tmp_path):
    path = tmp_path / "cache" / "jack-cache.txt"
    path.parent.mkdir(parents=True)
    path.write_text("not a cache\n")
    code, out, err = run(capsys, "jack", "--alpha", "1", "--nvars", "2", "--partition", "1,1")
    assert code == 0
