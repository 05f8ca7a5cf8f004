import json

import pytest

from finconv import spaces as sp
from finconv.harness import properties
from finconv.harness.mining import (
    MiningTask,
    UnknownProperty,
    document_instance,
    instance_document,
    mine,
    property_names,
    replay,
    witness_text,
)
from finconv.harness.docformat import parse


def test_registry_covers_every_invariant():
    expected = {
        "filter_functoriality", "pullback_lemma", "reflexive", "initial_greatest", "final_least", "reflector",
        "reflector_universal", "initial_preserves_top", "final_sink", "exp_law", "ev_continuous",
        "exp_transitive", "exp_products", "exp_filter_oracle", "pasting", "pasting_refinement",
        "pc_functorial", "pc_product", "pc_topological", "pc_discrete", "kent", "biquotient_oracle",
        "induced_mult", "group_remark", "h_group", "group_components", "schedules", "roundtrip",
    }
    assert set(property_names()) == expected


@pytest.mark.parametrize("name", [n for n in property_names() if n != "schedules"])
def test_each_property_holds_on_a_small_sample(name):
    report = mine(MiningTask(name, count=8, seed=11))
    assert report.instances == 8
    assert report.ok, report.violations


def test_unknown_property():
    with pytest.raises(UnknownProperty):
        MiningTask("no_such_property")


def test_exhaustive_needs_an_enumerator():
    with pytest.raises(ValueError):
        MiningTask("exp_law", source="exhaustive")


def test_identical_seeds_give_identical_reports(tmp_path):
    a = mine(MiningTask("pasting", count=200, seed=5)).to_json()
    b = mine(MiningTask("pasting", count=200, seed=5)).to_json()
    assert a == b
    assert json.loads(a)["instances"] == 200


def test_workers_do_not_change_the_report():
    serial = mine(MiningTask("kent", source="exhaustive", max_points=3))
    parallel = mine(MiningTask("kent", source="exhaustive", max_points=3, workers=2))
    assert serial.to_json() == parallel.to_json()
    assert serial.instances == 390


def broken(inst):
    X = inst["X"]
    return "space has an edge" if X.edges() else None


def test_violations_write_replayable_witnesses(tmp_path, monkeypatch):
    prop = properties.Property("edgeless", "every space is discrete", broken,
                               properties.REGISTRY["pc_discrete"].sample,
                               properties.REGISTRY["pc_discrete"].exhaustive)
    monkeypatch.setitem(properties.REGISTRY, "edgeless", prop)
    report = mine(MiningTask("edgeless", source="exhaustive", max_points=2, out_dir=str(tmp_path)))
    assert report.exit_status == 1
    # 1 + 1 + 4 relations on up to two points, three with an edge
    assert report.instances == 6 and len(report.violations) == 3
    for v in report.violations:
        prop_name, msg = replay(tmp_path / v.witness)
        assert prop_name == "edgeless" and msg == "space has an edge"
    saved = json.loads((tmp_path / "edgeless-report.json").read_text())
    assert saved["status"] == "violated"


def test_instance_documents_declare_derived_spaces():
    X = sp.sierpinski()
    m = sp.SpaceMap(sp.product([X, X]), X, (0, 0, 0, 1))
    doc = instance_document({"X": X, "m": m})
    assert [name for _, name in doc.order] == ["X", "m_dom", "m"]
    back = document_instance(parse(witness_text("induced_mult", "x", {"X": X, "m": m})))
    assert properties.REGISTRY["induced_mult"].check(back) is None
    assert back["m"].dom == sp.product([back["X"], back["X"]])


def test_group_witness_replays():
    from finconv.groups import symmetric_group_3
    G = symmetric_group_3()
    back = document_instance(parse(witness_text("group_remark", "x", {"G": G})))
    assert properties.REGISTRY["group_remark"].check(back) is None
    assert back["G"].order == 6
