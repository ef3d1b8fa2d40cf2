import pytest

from ncriem import qconn as qc
from ncriem.groupconn import UnknownCondition
from ncriem.suites import SUITES, RunConfig, UnknownSuite, classify_qsu2, run_suite


@pytest.mark.parametrize("name", ["s3-calculus", "qsl2-algebra", "qsu2-calculus", "qsu2-classification", "sphere"])
def test_suite_passes(name):
    rep = run_suite(name, RunConfig(samples=5))
    assert rep["ok"], [c for c in rep["checks"] if c["status"] != "pass"]
    assert all({"id", "ref", "status"} <= c.keys() for c in rep["checks"])


def test_s3_classification_reports_only_the_nonempty_conjunction():
    rep = run_suite("s3-classification", RunConfig(samples=3))
    failing = [c["id"] for c in rep["checks"] if c["status"] != "pass"]
    assert failing == ["s3.classify.braid+invertible_sigma+star_compatible+torsion_free"]


def test_suite_is_deterministic():
    assert run_suite("qsu2-calculus", RunConfig(seed=4)) == run_suite("qsu2-calculus", RunConfig(seed=4))


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("s4-calculus")
    assert len(SUITES) == 6


@pytest.mark.parametrize("conds, family", [
    (["metric", "star", "torsion-compat"], "metric-torsion-compatible-star"),
    (["metric", "star", "torsion-compat", "braid"], "braided-points"),
    (["metric", "star", "torsion-compat", "star-preserving"], "star-preserving-points"),
    (["metric", "star", "torsion-compat", "torsion-free"], "levi-civita-points"),
    (["braid"], "braid-m-zero"),
    (["torsion-compat"], "torsion-compatible"),
    (["metric"], "metric"),
])
def test_classify_qsu2(conds, family):
    rep = classify_qsu2(conds, metric=qc.QMetric(1, 2, 3), samples=3)
    assert rep["ok"] and rep["families"][0]["name"] == family
    assert rep["off_family_samples"]["passing"] == 0


def test_classify_qsu2_uncatalogued_and_unknown():
    rep = classify_qsu2(["torsion-free"], samples=2)
    assert not rep["catalogued"] and not rep["ok"]
    with pytest.raises(UnknownCondition):
        classify_qsu2(["flatness"])
