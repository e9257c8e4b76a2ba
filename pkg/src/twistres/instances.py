"""Instance descriptions: fields, algebras, twists, budgets.

An instance bundles the two factor algebras, the twisting map, and degree
budgets; everything downstream (complexes, AW/EZ maps, pipelines) is built
lazily from it.  Instances parse from a JSON description; the built-in
examples ship as data files and load through the same parser.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .algebras import (Group, GroupAlgebra, PolynomialAlgebra,
                       RewritingAlgebra, TwistedProductAlgebra)
from .awez import TwistedBarMaps
from .complexes import KoszulComplex, quadratic_relations_for
from .conversion import smash_koszul_pipeline, smash_product_complex
from .errors import InstanceError
from .fields import FieldError, field_from_name
from .hopf import (HopfAction, HopfAlgebra, group_hopf, linear_group_action,
                   permutation_group_action, smash_twist)
from .twisting import bicharacter_twist, twist_from_generator_rules


@dataclass(frozen=True)
class Budgets:
    """Degree budgets: homological (hdeg) and internal (gdeg)."""

    hdeg: int = 4
    gdeg: int = 6


class Instance:
    """A validated instance with lazy construction of its resolutions."""

    def __init__(self, name, field, R, S, tau, budgets, action=None,
                 description="", run_pipeline=True):
        self.name = name
        self.field = field
        self.R = R
        self.S = S
        self.tau = tau
        self.budgets = budgets
        self.action = action
        self.description = description
        self.run_pipeline = run_pipeline
        self._maps = None
        self._pipeline = None

    @property
    def graded(self):
        return self.tau.strongly_graded

    @property
    def A(self):
        return self.bar_maps().A

    def bar_maps(self):
        if self._maps is None:
            # internal products in the AW/EZ tower stay within 2*gdeg
            A = TwistedProductAlgebra(self.R, self.S, self.tau,
                                      max_degree=2 * self.budgets.gdeg)
            self._maps = TwistedBarMaps(A, self.budgets.hdeg)
        return self._maps

    def koszul_relations(self):
        return quadratic_relations_for(self.R)

    def koszul_complex(self, n_max=None):
        return KoszulComplex(self.R, self.koszul_relations(),
                             n_max if n_max is not None else self.budgets.hdeg)

    def koszul_pipeline(self, n_max=None, d_max=None):
        if self.action is None:
            raise InstanceError(
                f"instance {self.name} has no Hopf action; "
                "the Koszul pipeline needs one")
        if self._pipeline is None:
            self._pipeline = smash_koszul_pipeline(
                self.bar_maps(), self.action, self.koszul_relations(),
                n_max if n_max is not None else self.budgets.hdeg,
                d_max if d_max is not None else min(self.budgets.gdeg, 3))
        return self._pipeline

    def koszul_smash_complex(self):
        """X = K (x)_tau rbar(H) without building the bootstrap lift."""
        if self.action is None:
            raise InstanceError(
                f"instance {self.name} has no Hopf action")
        if self._pipeline is not None:
            return self._pipeline.X
        _, _, _, X = smash_product_complex(
            self.bar_maps(), self.action, self.koszul_relations(),
            self.budgets.hdeg)
        return X

    def complexes(self):
        """Named resolutions this instance builds."""
        maps = self.bar_maps()
        out = {
            "bar": maps.bar_A,
            "reduced_bar": maps.rbar_A,
            "intermediate": maps.Y,
            "bar_product": maps.prod_bar,
            "reduced_bar_product": maps.prod_rbar,
        }
        try:
            out["koszul"] = self.koszul_complex()
        except InstanceError:
            pass
        for key, X in out.items():
            X.io_name = key
        return out

    def __repr__(self):
        return f"Instance({self.name} over {self.field.name})"


# -- JSON parsing -------------------------------------------------------------


def _need(data, key, location):
    if key not in data:
        raise InstanceError(f"missing field {key!r}", location)
    return data[key]


def _parse_algebra(field, data, gdeg, location):
    family = _need(data, "family", location)
    if family == "polynomial":
        variables = _need(data, "variables", location)
        if not variables or not all(isinstance(v, str) for v in variables):
            raise InstanceError("variables must be a nonempty list of names",
                                f"{location}.variables")
        return PolynomialAlgebra(field, variables, gdeg)
    if family == "group":
        spec = _need(data, "group", location)
        kind = _need(spec, "kind", f"{location}.group")
        if kind == "cyclic":
            group = Group.cyclic(int(_need(spec, "order", f"{location}.group")))
        elif kind == "symmetric":
            group = Group.symmetric(int(_need(spec, "degree", f"{location}.group")))
        elif kind == "table":
            elements = _need(spec, "elements", f"{location}.group")
            table = _need(spec, "table", f"{location}.group")
            group = Group(elements, table, name=spec.get("name", "G"))
        else:
            raise InstanceError(f"unknown group kind {kind!r}", f"{location}.group")
        return GroupAlgebra(field, group, gdeg)
    if family == "rewriting":
        gens = _need(data, "generators", location)
        rules = {}
        for k, rule in enumerate(_need(data, "rules", location)):
            loc = f"{location}.rules[{k}]"
            left = _need(rule, "left", loc)
            pieces = left.split("*")
            if len(pieces) != 2:
                raise InstanceError("rule left side must be a length-2 word", loc)
            try:
                j, i = gens.index(pieces[0]), gens.index(pieces[1])
            except ValueError:
                raise InstanceError(f"undeclared generator in {left!r}", loc) from None
            value = {}
            for t, term in enumerate(_need(rule, "value", loc)):
                word = tuple(gens.index(g) for g in term["word"].split("*")
                             if g != "1")
                value[word] = field.parse(term.get("coeff", "1"))
            rules[(j, i)] = value
        return RewritingAlgebra(field, gens, rules, gdeg)
    if family == "structure_constants":
        elements = _need(data, "elements", location)
        table_in = _need(data, "table", location)
        n = len(elements)
        table = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                entry = table_in[i][j]
                table[i][j] = elements.index(entry)
        group = Group(elements, table, name=data.get("name", "G"))
        return GroupAlgebra(field, group, gdeg)
    raise InstanceError(f"unknown algebra family {family!r}", f"{location}.family")


def _parse_twist(field, R, S, data, location):
    kind = _need(data, "kind", location)
    if kind == "generator_rules":
        rules = {}
        for k, rule in enumerate(_need(data, "rules", location)):
            loc = f"{location}.rules[{k}]"
            s_word = S.parse_word(_need(rule, "s", loc))
            r_word = R.parse_word(_need(rule, "r", loc))
            value = {}
            for term in _need(rule, "value", loc):
                pair = (R.parse_word(_need(term, "r", loc)),
                        S.parse_word(_need(term, "s", loc)))
                value[pair] = field.parse(term.get("coeff", "1"))
            rules[(s_word, r_word)] = value
        return twist_from_generator_rules(S, R, rules), None
    if kind == "bicharacter":
        q = field.parse(_need(data, "q", location))
        return bicharacter_twist(S, R, q), None
    if kind == "group_action":
        if not isinstance(S, GroupAlgebra):
            raise InstanceError("group_action twists need a group-algebra S",
                                location)
        hopf = group_hopf(S)
        if data.get("permutation_on_variables"):
            action = permutation_group_action(hopf, R)
        else:
            matrices = _need(data, "matrices", location)
            action = linear_group_action(hopf, R, matrices)
        return smash_twist(action), action
    if kind == "hopf_action":
        hopf = _parse_hopf_tables(field, S, _need(data, "hopf", location),
                                  f"{location}.hopf")
        table = _need(data, "action", location)
        parsed = {}
        for key, terms in table.items():
            h_name, r_name = (piece.strip() for piece in key.split("|", 1))
            h_word = S.parse_word(h_name)
            r_word = R.parse_word(r_name)
            parsed[(h_word, r_word)] = {
                R.parse_word(t["word"]): field.parse(t.get("coeff", "1"))
                for t in terms}

        def oracle(h_word, r_word):
            try:
                return parsed[(h_word, r_word)]
            except KeyError:
                raise InstanceError(
                    f"action table missing entry for "
                    f"({S.format_word(h_word)}, {R.format_word(r_word)})",
                    location) from None

        action = HopfAction(hopf, R, oracle)
        return smash_twist(action), action
    raise InstanceError(f"unknown twist kind {kind!r}", f"{location}.kind")


def _parse_hopf_tables(field, S, data, location):
    if data.get("kind", "group_algebra") == "group_algebra":
        if not isinstance(S, GroupAlgebra):
            raise InstanceError("group_algebra Hopf structure needs a group S",
                                location)
        return group_hopf(S)
    coproduct_in = _need(data, "coproduct", location)
    counit_in = _need(data, "counit", location)
    antipode_in = _need(data, "antipode", location)
    antipode_inv_in = data.get("antipode_inv", antipode_in)

    def parse_map1(table):
        return {S.parse_word(k): {S.parse_word(t["word"]): field.parse(t.get("coeff", "1"))
                                  for t in v}
                for k, v in table.items()}

    coproduct = {S.parse_word(k): {(S.parse_word(t["h1"]), S.parse_word(t["h2"])):
                                   field.parse(t.get("coeff", "1")) for t in v}
                 for k, v in coproduct_in.items()}
    counit = {S.parse_word(k): field.parse(v) for k, v in counit_in.items()}
    antipode = parse_map1(antipode_in)
    antipode_inv = parse_map1(antipode_inv_in)
    return HopfAlgebra(S,
                       lambda w: coproduct[w],
                       lambda w: counit[w],
                       lambda w: antipode[w],
                       lambda w: antipode_inv[w])


def parse_instance(source, field_override=None, hdeg=None, gdeg=None):
    """Parse an instance description from a dict, JSON text, or file path."""
    if isinstance(source, dict):
        data = source
    else:
        text = source
        if "\n" not in str(source) and str(source).endswith(".json"):
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"malformed JSON: {exc}", "$") from None
    name = data.get("name", "unnamed")
    try:
        field = field_from_name(field_override if field_override is not None
                                else _need(data, "field", "$"))
    except FieldError as exc:
        raise InstanceError(str(exc), "$.field") from None
    budgets_in = data.get("budgets", {})
    budgets = Budgets(hdeg=hdeg if hdeg is not None else int(budgets_in.get("hdeg", 4)),
                      gdeg=gdeg if gdeg is not None else int(budgets_in.get("gdeg", 6)))
    R = _parse_algebra(field, _need(data, "R", "$"), budgets.gdeg, "$.R")
    S = _parse_algebra(field, _need(data, "S", "$"), budgets.gdeg, "$.S")
    tau, action = _parse_twist(field, R, S, _need(data, "twist", "$"), "$.twist")
    tau.name = f"tau({name})"
    return Instance(name, field, R, S, tau, budgets, action=action,
                    description=data.get("description", ""),
                    run_pipeline=bool(data.get("pipeline", True)))


BUILTIN_NAMES = (
    "example-5.2",
    "c2-skew",
    "quantum-plane",
    "c2-koszul-kxy",
    "c2-swap-kxy",
    "s3-perm-kxyz",
    "corrupted-twist",
)


def builtin_instance(name, field=None, hdeg=None, gdeg=None):
    """Load a bundled instance by name, optionally overriding field/budgets."""
    if name not in BUILTIN_NAMES:
        raise InstanceError(f"unknown built-in instance {name!r}; "
                            f"available: {', '.join(BUILTIN_NAMES)}")
    ref = resources.files("twistres").joinpath(f"data/instances/{name}.json")
    return parse_instance(ref.read_text(encoding="utf-8"),
                          field_override=field, hdeg=hdeg, gdeg=gdeg)
