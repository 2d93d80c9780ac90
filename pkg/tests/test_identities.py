import json

import pytest

from thetacalc import identities as ident


def test_catalog_shape():
    cat = ident.builtin_catalog()
    names = [c.name for c in cat]
    assert len(cat) >= 55
    assert len(set(names)) == len(names)
    for c in cat:
        assert c.ref and c.params and c.group
    groups = {c.group for c in cat}
    assert {"q-lemmas", "macdonald", "series", "main"} <= groups


def test_select_by_group_and_glob():
    assert len(ident.select("q-lemmas")) == 7
    assert [c.name for c in ident.select("theta-reciprocity")] == ["theta-reciprocity"]
    assert ident.select("mac-*")
    assert ident.select("zzz*") == []


def test_unknown_check_suggests():
    with pytest.raises(ident.UnknownCheckError) as info:
        ident.get_check("theta-reciprocty")
    assert "theta-reciprocity" in info.value.suggestions
    assert "did you mean" in str(info.value)


def test_bound_derived_degree():
    assert ident.Bound(N=2).D == 4
    assert ident.Bound(N=4).D == 8
    assert ident.Bound(N=6).D == 8


def test_theta_reciprocity_instance_count():
    # mu |- k for k <= 4, times m in 0..4
    insts = ident.get_check("theta-reciprocity").instances(ident.Bound(N=4))
    assert len(insts) == (1 + 1 + 2 + 3 + 5) * 5


def test_spanning_inputs():
    assert ident.input_labels(0) == ["1"]
    assert ident.input_labels(2) == ["H[2]", "H[1, 1]", "e2", "rand2"]
    assert ident.make_input("rand3") == ident.make_input("rand3")
    assert ident.make_input("rand3").degrees() == [3]
    with pytest.raises(ValueError):
        ident.make_input("bogus")


@pytest.mark.parametrize("name", ["mac-orthogonality", "theta-reciprocity", "five-term", "main-identity"])
def test_selected_checks_pass_small(name):
    res = ident.run_check(name, ident.Bound(N=2))
    assert res.status == "pass", res.counterexample
    assert res.instances_run == len(ident.get_check(name).instances(ident.Bound(N=2)))


def test_bound_zero_passes():
    summary = ident.run_all(ident.Bound(N=0, qbound=2))
    assert summary.failures == 0


def test_q_lemmas_pass():
    summary = ident.run_all(ident.Bound(N=1, qbound=6), "q-lemmas")
    assert summary.failures == 0 and len(summary.results) == 7


@pytest.mark.parametrize("mutation, check", [
    ("nabla_sign_flip", "nabla-omegabar"),
    ("drop_theta_tilde_v_factor", "main-identity"),
])
def test_mutations_are_caught(mutation, check):
    res = ident.run_check(check, ident.Bound(N=2), mutation=mutation)
    assert res.status == "fail"
    cx = res.counterexample
    assert "params" in cx and ("difference" in cx or "error" in cx)
    # the mutation does not leak past the run
    assert ident.run_check(check, ident.Bound(N=2)).status == "pass"


def test_report_json_is_deterministic():
    a = ident.run_all(ident.Bound(N=1), "mac-*").to_json(timings=False)
    b = ident.run_all(ident.Bound(N=1), "mac-*", jobs=2).to_json(timings=False)
    assert json.dumps(a) == json.dumps(b)
    assert set(a) == {"bound", "checks", "failures", "total_ms"}
    row = a["checks"][0]
    assert {"name", "ref", "instances", "status", "ms"} <= set(row)
    assert row["ms"] == 0


def test_failing_report_has_counterexample():
    summary = ident.run_all(ident.Bound(N=2), "nabla-omegabar", mutation="nabla_sign_flip")
    js = summary.to_json(timings=False)
    assert js["failures"] == 1
    assert "counterexample" in js["checks"][0]
