from __future__ import annotations

import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import signatures
from holant3.holant import LEAFLESS, eval_brute, k33_grid, random_grid, random_set_system
from holant3.io import (
    SchemaError,
    digest,
    dump_instance,
    dumps,
    grid_from_json,
    load_instance,
    parse_rat,
    planar_from_json,
    set_system_from_json,
)
from holant3.planar import planar_fixtures
from holant3.signatures import SymSig3


@given(signatures(), st.integers(1, 6), st.integers(0, 10**6))
def test_grid_round_trip(values, n, seed):
    g = random_grid(n, SymSig3(*values), random.Random(seed))
    doc = dump_instance(g)
    assert grid_from_json(json.loads(dumps(doc))) == g


@given(st.integers(1, 8), st.integers(0, 10**6))
def test_set_system_round_trip(n, seed):
    s = random_set_system(n, random.Random(seed))
    assert set_system_from_json(json.loads(json.dumps(dump_instance(s)))) == s


@pytest.mark.parametrize("pg", planar_fixtures(), ids=lambda p: p.name)
def test_planar_round_trip(pg):
    assert planar_from_json(json.loads(dumps(dump_instance(pg)))) == pg


def test_pairs_form():
    doc = {"version": 1, "kind": "grid", "lhs_signature": ["1", "0", "-1", "2"], "n_lhs": 3, "n_rhs": 3,
           "pairs": [[i, j] for i in range(3) for j in range(3)]}
    assert eval_brute(grid_from_json(doc)) == 6


@pytest.mark.parametrize("bad", [0.5, True, "1.5", "x", None])
def test_parse_rat_rejects(bad):
    with pytest.raises(SchemaError):
        parse_rat(bad)


@pytest.mark.parametrize(
    "mutate",
    [lambda d: d.pop("version"), lambda d: d.update(kind="set-system"), lambda d: d.update(n_lhs="3"),
     lambda d: d.update(edges=[[0, 0, 0]]), lambda d: d.update(lhs_signature=[1, 2, 3]),
     lambda d: d.update(edges=d["edges"][:-1])],
)
def test_schema_errors(mutate):
    doc = dump_instance(k33_grid(LEAFLESS))
    mutate(doc)
    with pytest.raises(SchemaError):
        grid_from_json(doc)


def test_float_literal_rejected(tmp_path):
    p = tmp_path / "g.json"
    p.write_text('{"version": 1, "kind": "grid", "lhs_signature": [1, 0.0, -1, 2], "n_lhs": 1, "n_rhs": 1}')
    with pytest.raises(SchemaError, match="float"):
        load_instance(p)


def test_kind_mismatch(tmp_path):
    p = tmp_path / "g.json"
    p.write_text(dumps(dump_instance(k33_grid())))
    with pytest.raises(SchemaError):
        load_instance(p, "set-system")
    assert load_instance(p, "grid") == k33_grid()


def test_digest_ignores_key_order():
    assert digest({"a": 1, "b": 2}) == digest({"b": 2, "a": 1})
