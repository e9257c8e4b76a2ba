import json

import pytest
from hypothesis import given, settings, strategies as st

from twistres.cli import main
from twistres.errors import InstanceError
from twistres.fields import PrimeField
from twistres.instances import BUILTIN_NAMES, builtin_instance, parse_instance
from twistres.serialize import complex_registry, element_to_json, parse_element

DATA = "src/twistres/data"


def test_all_builtin_instances_parse():
    for name in BUILTIN_NAMES:
        inst = builtin_instance(name)
        assert inst.name == name
        assert inst.budgets.hdeg >= 2


def test_bundled_example_52_is_the_enveloping_algebra_instance():
    inst = builtin_instance("example-5.2")
    y, x = inst.S.parse_word("y"), inst.R.parse_word("x")
    assert inst.tau.apply(y, x) == {
        ((1,), (1,)): inst.field.one, ((1,), (0,)): inst.field.one}
    assert inst.field.characteristic == 0


def test_bundled_c2_skew_action():
    inst = builtin_instance("c2-skew")
    g = 1
    x = inst.R.parse_word("x")
    assert inst.action.act(g, x) == {x: inst.field.from_int(-1)}


def test_field_override_and_char2_rejected():
    inst = builtin_instance("c2-skew", field="F3")
    assert isinstance(inst.field, PrimeField) and inst.field.p == 3
    with pytest.raises(Exception):
        builtin_instance("c2-skew", field="F2")


def test_parse_instance_positioned_errors():
    base = {
        "name": "broken",
        "field": "Q",
        "R": {"family": "polynomial", "variables": ["x"]},
        "S": {"family": "polynomial", "variables": ["y"]},
        "twist": {"kind": "generator_rules", "rules": []},
    }
    bad = dict(base)
    bad["R"] = {"family": "weird"}
    with pytest.raises(InstanceError) as err:
        parse_instance(json.dumps(bad))
    assert "$.R" in str(err.value)
    bad = dict(base)
    bad["twist"] = {"kind": "unknown-kind"}
    with pytest.raises(InstanceError) as err:
        parse_instance(json.dumps(bad))
    assert "$.twist" in str(err.value)
    bad = dict(base)
    bad["twist"] = {"kind": "generator_rules",
                    "rules": [{"s": "y", "r": "z", "value": []}]}
    with pytest.raises(InstanceError):
        parse_instance(json.dumps(bad))
    with pytest.raises(InstanceError):
        parse_instance("{not json")


def test_element_round_trip():
    inst = builtin_instance("example-5.2")
    registry = complex_registry(inst)
    maps = inst.bar_maps()
    a_path = f"{DATA}/elements/a.json"
    cname, n, elt = parse_element(inst, open(a_path).read(), registry)
    assert (cname, n) == ("reduced_bar", 3)
    b = maps.aw_reduced.apply(n, elt)
    data = element_to_json(maps.prod_rbar, n, b)
    data["complex"] = "reduced_bar_product"
    cname2, n2, elt2 = parse_element(inst, json.dumps(data), registry)
    assert elt2 == b


def test_element_coefficients_multiply_across_slots():
    # the term coefficient is the product of the slot coefficients
    inst = builtin_instance("example-5.2")
    registry = complex_registry(inst)
    data = {"complex": "reduced_bar", "degree": 1,
            "element": [{"slots": [
                {"algebra": "k[x](x)k[y]", "word": "1 # 1", "coeff": "2"},
                {"algebra": "k[x](x)k[y]~", "word": "x # 1", "coeff": "3/2"},
                {"algebra": "k[x](x)k[y]", "word": "1 # 1"}]}]}
    _, _, elt = parse_element(inst, json.dumps(data), registry)
    (key, coeff), = elt.data.items()
    assert coeff == inst.field.parse("3")


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_element_serialization_round_trip_property(data):
    inst = builtin_instance("example-5.2")
    registry = complex_registry(inst)
    maps = inst.bar_maps()
    name = data.draw(st.sampled_from(
        ["reduced_bar", "intermediate", "reduced_bar_product", "koszul"]))
    X = registry[name]
    n = data.draw(st.integers(0, 2), label="degree")
    d = data.draw(st.integers(0, 2), label="internal degree")
    words = X.basis(n, d)
    if not words:
        return
    elt = X.term(n).zero()
    for _ in range(data.draw(st.integers(1, 3), label="terms")):
        comp, word = data.draw(st.sampled_from(words), label="word")
        coeff = inst.field.from_int(data.draw(
            st.integers(-3, 3).filter(bool), label="coeff"))
        elt.add_term(comp, word, coeff)
    if elt.is_zero():
        return
    payload = element_to_json(X, n, elt)
    cname, n2, back = parse_element(inst, json.dumps(payload), registry)
    assert (cname, n2) == (name, n)
    assert back == elt


def test_element_parse_rejects_bad_slots():
    inst = builtin_instance("example-5.2")
    registry = complex_registry(inst)
    base = {"complex": "reduced_bar", "degree": 1,
            "element": [{"slots": [
                {"algebra": "k[x](x)k[y]", "word": "1 # 1", "coeff": "1"},
                {"algebra": "k[x](x)k[y]~", "word": "x # 1"},
                {"algebra": "k[x](x)k[y]", "word": "1 # 1"}]}]}
    assert parse_element(inst, json.dumps(base), registry)[2]
    bad = json.loads(json.dumps(base))
    bad["element"][0]["slots"][1]["word"] = "1 # 1"   # unit in a reduced slot
    with pytest.raises(InstanceError):
        parse_element(inst, json.dumps(bad), registry)
    bad = json.loads(json.dumps(base))
    bad["element"][0]["slots"][1]["algebra"] = "nope"
    with pytest.raises(InstanceError):
        parse_element(inst, json.dumps(bad), registry)
    bad = json.loads(json.dumps(base))
    bad["complex"] = "nonexistent"
    with pytest.raises(InstanceError):
        parse_element(inst, json.dumps(bad), registry)


def test_cli_shuffle(capsys):
    assert main(["shuffle", "2", "1"]) == 0
    out = capsys.readouterr().out
    assert "(2 3)" in out and "sign -1" in out
    assert "(2,1)-shuffles: 3" in out


def test_cli_aw_prints_b(capsys):
    rc = main(["aw", "--instance", "example-5.2",
               "--element", f"{DATA}/elements/a.json"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "4 *" in out and "y^2" in out


def test_cli_json_outputs_are_byte_identical(capsys):
    args = ["--json", "aw", "--instance", "example-5.2",
            "--element", f"{DATA}/elements/a.json"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second
    payload = json.loads(first)
    assert payload["complex"] == "reduced_bar_product"


def test_cli_build(capsys):
    rc = main(["build", "--instance", "example-5.2", "--complex", "koszul",
               "--complex", "reduced_bar"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "koszul" in out and "free generators" in out


def test_cli_usage_error_exit_code(capsys):
    assert main(["aw", "--instance", "example-5.2",
                 "--element", "no-such-file.json"]) == 2
    assert main(["build", "--instance", "no-such-instance.json"]) == 2
    assert main(["nonsense-command"]) == 2


def test_cli_verify_exit_codes(capsys):
    rc = main(["verify", "--instance", "example-5.2",
               "--hdeg", "3", "--gdeg", "3"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "AW o EZ = 1" in out
    # the report carries the reference-value checks of the bundled instance
    for token in ("AW(a)=b", "EZ(b)=c", "AW(c)=b"):
        assert token in out and "PASS" in out
    # a verification failure (not a usage error) exits 1: corrupt the suite
    # by running the corrupted instance without its expected-failure tag
    rc = main(["--json", "verify", "--instance", "corrupted-twist"])
    out = capsys.readouterr().out
    assert rc == 0  # negative control failing as documented is green
    payload = json.loads(out)
    axiom = [r for r in payload["reports"]
             if r["check"].startswith("twist axiom")][0]
    assert axiom["passed"] is False and axiom["ok"] is True


def test_cli_verify_flags_broken_instance(tmp_path, capsys):
    # an instance whose twist is corrupted but NOT marked as a control
    # must make verify exit 1
    desc = json.loads(open(f"{DATA}/instances/corrupted-twist.json").read())
    desc["name"] = "not-a-control"
    desc["budgets"] = {"hdeg": 2, "gdeg": 3}
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(desc))
    rc = main(["verify", "--instance", str(path)])
    capsys.readouterr()
    assert rc == 1
