import pytest

from twistres.awez import ChainMap
from twistres.checks import check_chain_map
from twistres.conversion import (BootstrapLift, CompatibleChainMapPair,
                                 check_compatible, conversion_pi_iota,
                                 generators_in_reduced_window, koszul_inclusion,
                                 tensor_chain_maps)
from twistres.errors import ActionNotAdmissible
from twistres.fields import Rationals
from twistres.hopf import KoszulActionCompat
from twistres.instances import builtin_instance
from twistres.twisting import BarLeftCompat, BarRightCompat

Q = Rationals()


def koszul_setup(name="c2-koszul-kxy", field=None, n_max=2, d_max=2):
    inst = builtin_instance(name, field=field)
    pipe = inst.koszul_pipeline(n_max=n_max, d_max=d_max)
    return inst, pipe


def test_koszul_inclusion_is_a_compatible_chain_map():
    inst, pipe = koszul_setup()
    maps = inst.bar_maps()
    report = check_chain_map(pipe.iota_R, 2, 2)
    assert report.passed, report.witness
    pair = CompatibleChainMapPair(
        psi_R=pipe.iota_R,
        psi_S=ChainMap.identity(maps.rbar_S),
        tau_C=pipe.tau_K,
        tau_Cp=BarLeftCompat(inst.tau, reduced=True),
        tau_D=pipe.tau_D,
        tau_Dp=pipe.tau_D)
    ok, witness = check_compatible(pair, inst.S, inst.R, 2, 2)
    assert ok, witness


def test_identity_maps_are_compatible():
    inst = builtin_instance("example-5.2")
    maps = inst.bar_maps()
    tau_C = BarLeftCompat(inst.tau, reduced=True)
    tau_D = BarRightCompat(inst.tau, reduced=True)
    pair = CompatibleChainMapPair(ChainMap.identity(maps.rbar_R),
                                  ChainMap.identity(maps.rbar_S),
                                  tau_C, tau_C, tau_D, tau_D)
    ok, witness = check_compatible(pair, inst.S, inst.R, 2, 2)
    assert ok, witness


def test_sign_corrupted_compatibility_fails_with_witness():
    inst, pipe = koszul_setup()
    maps = inst.bar_maps()

    class Corrupted:
        def apply(self, n, s_word, word):
            out = pipe.tau_K.apply(n, s_word, word)
            if n == 2:
                return {k: -c for k, c in out.items()}
            return out

    pair = CompatibleChainMapPair(
        psi_R=pipe.iota_R,
        psi_S=ChainMap.identity(maps.rbar_S),
        tau_C=Corrupted(),
        tau_Cp=BarLeftCompat(inst.tau, reduced=True),
        tau_D=pipe.tau_D,
        tau_Dp=pipe.tau_D)
    ok, witness = check_compatible(pair, inst.S, inst.R, 2, 2)
    assert not ok
    assert witness[0] == "left"


def test_tensor_chain_maps_identity():
    inst = builtin_instance("example-5.2")
    maps = inst.bar_maps()
    tau_C = BarLeftCompat(inst.tau, reduced=True)
    tau_D = BarRightCompat(inst.tau, reduced=True)
    pair = CompatibleChainMapPair(ChainMap.identity(maps.rbar_R),
                                  ChainMap.identity(maps.rbar_S),
                                  tau_C, tau_C, tau_D, tau_D)
    t = tensor_chain_maps(pair, maps.prod_rbar, maps.prod_rbar)
    for n in range(3):
        for d in range(3):
            for comp, word in maps.prod_rbar.basis(n, d):
                assert t.apply_word(n, comp, word) == \
                    maps.prod_rbar.single(n, comp, word)


def test_conversion_degenerates_to_aw_ez():
    # with identity pi's and iota's the conversion maps are AW and EZ
    inst = builtin_instance("example-5.2")
    maps = inst.bar_maps()
    tau_C = BarLeftCompat(inst.tau, reduced=True)
    tau_D = BarRightCompat(inst.tau, reduced=True)
    pair = CompatibleChainMapPair(ChainMap.identity(maps.rbar_R),
                                  ChainMap.identity(maps.rbar_S),
                                  tau_C, tau_C, tau_D, tau_D)
    pi, iota = conversion_pi_iota(maps, maps.prod_rbar, pair, pair)
    for n in range(3):
        for d in range(3):
            for comp, word in maps.rbar_A.basis(n, d):
                assert pi.apply_word(n, comp, word) == \
                    maps.aw_reduced.apply_word(n, comp, word)
            for comp, word in maps.prod_rbar.basis(n, d):
                assert iota.apply_word(n, comp, word) == \
                    maps.ez_reduced.apply_word(n, comp, word)
    # pi o iota = 1 then follows from the AW/EZ identity
    for g in maps.prod_rbar.free_generators(2, 2):
        assert pi.apply(2, iota.apply(2, g)) == g


def test_bootstrap_on_identity_map():
    inst = builtin_instance("c2-skew")
    maps = inst.bar_maps()
    ident = ChainMap.identity(maps.rbar_A)
    lift = BootstrapLift(ident, 2, 2)
    for n in range(3):
        for d in range(3):
            for comp, word in maps.rbar_A.basis(n, d):
                assert lift.chain_map.apply_word(n, comp, word) == \
                    maps.rbar_A.single(n, comp, word)


def test_generators_land_in_reduced_window():
    inst, pipe = koszul_setup()
    ok, witness = generators_in_reduced_window(pipe.iota, 2, 2)
    assert ok, witness


@pytest.mark.parametrize("field", [None, "F3"])
def test_koszul_smash_pipeline_identity(field):
    inst, pipe = koszul_setup(field=field, n_max=2, d_max=2)
    assert pipe.identity_defect(2, 2) is None
    assert pipe.corollary_defect(2, 2) is None
    report = check_chain_map(pipe.pi, 2, 2)
    assert report.passed, report.witness
    report = check_chain_map(pipe.iota, 2, 2)
    assert report.passed, report.witness


def test_pipeline_pi_iota_idempotent():
    # iota o pi squares to itself (it is a projection onto the image)
    inst, pipe = koszul_setup(n_max=2, d_max=2)
    maps = inst.bar_maps()
    for d in range(3):
        for comp, word in maps.rbar_A.basis(2, d):
            once = pipe.iota.apply(2, pipe.pi.apply_word(2, comp, word))
            twice = pipe.iota.apply(2, pipe.pi.apply(2, once))
            assert once == twice


def test_pipeline_preserves_internal_degree():
    inst, pipe = koszul_setup(n_max=2, d_max=3)
    maps = inst.bar_maps()
    for n in range(3):
        for d in range(4):
            for comp, word in maps.rbar_A.basis(n, d):
                img = pipe.pi.apply_word(n, comp, word)
                for (c2, w2), _ in img.data.items():
                    assert pipe.X.term(n).degree(c2, w2) == d


def test_trivial_group_pipeline_degenerates():
    # with G = C1 the pipeline is the Koszul-vs-reduced-bar conversion for R
    import json
    from twistres.instances import parse_instance

    desc = {
        "name": "trivial-group",
        "field": "Q",
        "budgets": {"hdeg": 2, "gdeg": 3},
        "R": {"family": "polynomial", "variables": ["x", "y"]},
        "S": {"family": "group", "group": {"kind": "cyclic", "order": 1}},
        "twist": {"kind": "group_action", "matrices": {}},
    }
    inst = parse_instance(json.dumps(desc))
    pipe = inst.koszul_pipeline(n_max=2, d_max=2)
    assert pipe.identity_defect(2, 2) is None


def test_inadmissible_action_rejected():
    # the compatibility oracle refuses a middle subspace the group does not
    # preserve: against a swap action, the line spanned by x (x) y alone is
    # not invariant
    from twistres.tensors import TensorSubspace

    inst = builtin_instance("c2-swap-kxy")
    K = inst.koszul_complex(n_max=2)
    K.spaces[2] = TensorSubspace(
        inst.R, 2, [{(inst.R.var_word(0), inst.R.var_word(1)): Q.one}], "K2")
    with pytest.raises(ActionNotAdmissible):
        KoszulActionCompat(inst.action, K)
