import json

import pytest

from exactpde.catalog import check_params, default_params, get, load, loads
from exactpde.errors import ConstraintViolation, NotFound, SchemaError
from exactpde.expr import parse, to_text


def _doc(**over):
    entry = {
        "id": "S2-99",
        "source_label": "test",
        "residual": "w_t - a*w",
        "solution": "F(x)*exp(a*t)",
        "params": [{"name": "a", "default": 0.5, "constraint": "a != 0"}],
        "slots": [{"name": "F", "arg": "x"}],
        "window": [0.6, 1.4, 0.3, 1.1],
        "tier": "A",
        "quarantined": False,
        "note": "",
    }
    entry.update(over)
    return json.dumps({"version": 1, "entries": [entry]})


def test_shipped_catalogue_loads(catalog):
    assert len(catalog) == 80
    ids = catalog.ids
    assert len(set(ids)) == 80
    assert sum(i.startswith("S2-") for i in ids) == 46
    assert sum(i.startswith("S3-") for i in ids) == 22
    assert sum(i.startswith("S4-") for i in ids) == 12


def test_quarantined_entries_carry_notes_and_repairs(catalog):
    q = [e for e in catalog if e.quarantined]
    assert q
    for e in q:
        assert e.note
        fixed = e.repaired()
        if fixed is not None:
            assert not fixed.quarantined
            assert fixed.id == e.id


def test_minimal_document_loads():
    cat = loads(_doc())
    e = get(cat, "S2-99")
    assert e.tier == "A" and default_params(e) == {"a": 0.5}


@pytest.mark.parametrize(
    "over, msg",
    [
        ({"id": "X-1"}, "id"),
        ({"solution": "F(x)*exp(q*t)"}, "undeclared parameter"),
        ({"solution": "H(x)*exp(a*t)"}, "undeclared slot"),
        ({"tier": "B"}, "tier"),
        ({"window": [1, 0, 0, 1]}, "window"),
        ({"params": [{"name": "a", "default": 0.0, "constraint": "a != 0"}]}, "violate"),
        ({"residual": "w_t - (a*w"}, None),
        ({"repair": {"bogus": 1}}, "repair"),
        ({"repair": {"residual": "w_t - q*w"}}, "repair"),
    ],
)
def test_schema_errors(over, msg):
    with pytest.raises(SchemaError, match=msg):
        loads(_doc(**over))


def test_duplicate_ids_and_version():
    d = json.loads(_doc())
    d["entries"].append(d["entries"][0])
    with pytest.raises(SchemaError, match="duplicate"):
        loads(json.dumps(d))
    d = json.loads(_doc())
    d["version"] = 7
    with pytest.raises(SchemaError, match="version"):
        loads(json.dumps(d))


def test_constraint_gate(catalog):
    e = get(catalog, "S2-05")
    check_params(e, default_params(e))
    with pytest.raises(ConstraintViolation, match="n != 1"):
        check_params(e, {**default_params(e), "n": 1.0})


def test_unknown_entry(catalog):
    with pytest.raises(NotFound):
        get(catalog, "S9-01")


def test_catalogue_round_trip(catalog):
    for e in catalog:
        names = set(e.param_names)
        for expr in (e.residual, e.solution):
            assert parse(to_text(expr), names) == expr


def test_checksum_tracks_content(tmp_path, catalog):
    again = load()
    assert again.checksum == catalog.checksum
    assert loads(_doc()).checksum != loads(_doc(note="x")).checksum
