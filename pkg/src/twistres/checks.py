"""Machine checks for every identity the kernel constructs.

Each check evaluates both sides of an identity exactly on basis words
within a budget and reports the first mismatch with a concrete witness.
Negative controls (documented corruptions) are expected to fail; the suite
passes only when they do, so its own sensitivity is tested.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .complexes import BarComplex
from .tensors import FreeElement


@dataclass
class CheckReport:
    """Outcome of one machine check over one instance."""

    name: str
    instance: str
    budget: dict
    passed: bool
    expect_failure: bool = False
    witness: str = ""
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self):
        return self.passed != self.expect_failure

    def verdict(self):
        base = "PASS" if self.passed else "FAIL"
        if self.expect_failure:
            return f"{base} (expected FAIL)" if not self.passed else "FAIL (unexpected PASS)"
        return base

    def to_json(self):
        # wall time stays out so identical invocations are byte-identical
        out = {
            "check": self.name,
            "instance": self.instance,
            "budget": self.budget,
            "passed": self.passed,
            "ok": self.ok,
        }
        if self.expect_failure:
            out["expect_failure"] = True
        if self.witness:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out

    def line(self):
        status = "ok " if self.ok else "BAD"
        extra = f"  [{self.witness}]" if (self.witness and not self.ok) else ""
        return f"[{status}] {self.instance :<22} {self.name :<40} {self.verdict()}{extra}"


def timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        report = fn(*args, **kwargs)
        report.seconds = time.perf_counter() - t0
        return report
    return wrapper


@timed
def check_chain_map(f, n_max, d_max, instance="", expect_failure=False):
    """d_target o f = f o d_source on basis words; augmentation at degree 0."""
    budget = {"hdeg": n_max, "gdeg": d_max}
    for n in range(min(n_max, f.source.n_max, f.target.n_max) + 1):
        for d in range(d_max + 1):
            for comp, word in f.source.basis(n, d):
                img = f.apply_word(n, comp, word)
                if n == 0:
                    lhs = f.target.augmentation(img)
                    rhs = f.source.aug_word(comp, word)
                    if lhs.data != rhs.data:
                        wit = (f"augmentation square fails at "
                               f"{f.source.term(0).format(comp, word)}")
                        return CheckReport(f"chain map: {f.name}", instance,
                                           budget, False, expect_failure, wit)
                else:
                    lhs = f.target.differential(n, img)
                    rhs = f.apply(n - 1, f.source.diff_word(n, comp, word))
                    if lhs != rhs:
                        wit = (f"square fails at n={n}, "
                               f"{f.source.term(n).format(comp, word)}; "
                               f"d(f(w)) = {lhs}; f(d(w)) = {rhs}")
                        return CheckReport(f"chain map: {f.name}", instance,
                                           budget, False, expect_failure, wit)
    return CheckReport(f"chain map: {f.name}", instance, budget, True,
                       expect_failure)


@timed
def check_bimodule_map(f, n_max, d_max, instance="", coeff_degree=2,
                       seed=0, sample=16, exhaustive=False,
                       expect_failure=False):
    """f(a.w.b) = a.f(w).b for sampled coefficient pairs and all basis words.

    Coefficients run over the algebra basis up to ``coeff_degree``; a fixed
    seed picks ``sample`` pairs unless ``exhaustive`` is set.
    """
    A = f.source.A
    budget = {"hdeg": n_max, "gdeg": d_max, "coeff_deg": coeff_degree,
              "seed": seed}
    coeffs = A.basis_upto(min(coeff_degree, A.max_degree))
    pairs = [(a, b) for a in coeffs for b in coeffs]
    if not exhaustive and len(pairs) > sample:
        rng = random.Random(seed)
        pairs = rng.sample(pairs, sample)
    for n in range(min(n_max, f.source.n_max, f.target.n_max) + 1):
        for d in range(d_max + 1):
            for comp, word in f.source.basis(n, d):
                for a, b in pairs:
                    moved = f.source.act_word(n, a, comp, word, b)
                    lhs = f.apply(n, moved)
                    img = f.apply_word(n, comp, word)
                    rhs = f.target.act(n, A.monomial(a), img, A.monomial(b))
                    if lhs != rhs:
                        wit = (f"n={n}, w={f.source.term(n).format(comp, word)}, "
                               f"a={A.format_word(a)}, b={A.format_word(b)}; "
                               f"f(a.w.b) = {lhs}; a.f(w).b = {rhs}")
                        return CheckReport(f"bimodule map: {f.name}", instance,
                                           budget, False, expect_failure, wit)
    return CheckReport(f"bimodule map: {f.name}", instance, budget, True,
                       expect_failure)


@timed
def check_identity_composition(f, g, n_max, d_max, instance="",
                               expect_failure=False, name=None):
    """f o g = identity on every free generator within budget."""
    budget = {"hdeg": n_max, "gdeg": d_max}
    label = name or f"{f.name} o {g.name} = 1"
    for n in range(n_max + 1):
        for d in range(d_max + 1):
            for gen in g.source.free_generators(n, d):
                back = f.apply(n, g.apply(n, gen))
                if back != gen:
                    wit = f"n={n}, generator {gen}; came back as {back}"
                    return CheckReport(label, instance, budget, False,
                                       expect_failure, wit)
    return CheckReport(label, instance, budget, True, expect_failure)


@timed
def check_twist_axiom_report(tau, d_max, instance="", expect_failure=False):
    """Hexagon identity on all basis quadruples within the degree budget."""
    ok, witness, count = tau.check_axiom(d_max)
    wit = ""
    if witness is not None:
        wit = (f"quadruple {witness['quadruple']}: lhs = {witness['lhs']}; "
               f"rhs = {witness['rhs']}")
    return CheckReport(f"twist axiom: {tau.name}", instance,
                       {"gdeg": d_max}, ok, expect_failure, wit,
                       details={"quadruples": count})


@timed
def check_twist_inverse(tau, d_max, instance="", expect_failure=False):
    """tau^(-1) o tau = 1 and tau o tau^(-1) = 1 on basis pairs in budget."""
    S, R = tau.S, tau.R
    budget = {"gdeg": d_max}
    for s in S.basis_upto(min(d_max, S.max_degree)):
        for r in R.basis_upto(min(d_max, R.max_degree)):
            if S.degree(s) + R.degree(r) > d_max:
                continue
            round_trip = tau.inverse_elt(tau.apply(s, r))
            if round_trip != {(s, r): tau.R.field.one}:
                wit = f"tau^-1(tau({S.format_word(s)}, {R.format_word(r)})) != id"
                return CheckReport(f"twist inverse: {tau.name}", instance,
                                   budget, False, expect_failure, wit)
            round_trip = tau.apply_elt(tau.inverse(r, s))
            if round_trip != {(r, s): tau.R.field.one}:
                wit = f"tau(tau^-1({R.format_word(r)}, {S.format_word(s)})) != id"
                return CheckReport(f"twist inverse: {tau.name}", instance,
                                   budget, False, expect_failure, wit)
    return CheckReport(f"twist inverse: {tau.name}", instance, budget, True,
                       expect_failure)


@timed
def check_d_squared_report(X, n_max, d_max, instance="", expect_failure=False):
    from .complexes import check_d_squared

    ok, witness = check_d_squared(X, min(n_max, X.n_max), d_max)
    wit = ""
    if witness is not None:
        n, comp, word, left = witness
        wit = f"d(d(w)) != 0 at n={n}, w={X.term(n).format(comp, word)}"
    return CheckReport(f"d^2 = 0: {X.name}", instance,
                       {"hdeg": n_max, "gdeg": d_max}, ok, expect_failure, wit)


@timed
def check_exactness_report(X, n_max, d_max, graded, instance="",
                           expect_failure=False):
    from .complexes import check_truncated_exactness

    report = check_truncated_exactness(X, min(n_max, X.n_max - 1), d_max,
                                       graded=graded)
    bad = [e for e in report.entries if not e.exact]
    wit = ""
    if bad:
        e = bad[0]
        if not e.composite_zero:
            wit = (f"d o d != 0 on the block at position {e.position}, "
                   f"degrees {list(e.degrees)}")
        else:
            wit = (f"homology of dim {e.homology_dim} at position {e.position}, "
                   f"degrees {list(e.degrees)}")
    return CheckReport(f"exactness: {X.name}", instance,
                       {"hdeg": n_max, "gdeg": d_max}, not bad,
                       expect_failure, wit,
                       details={"strands": len(report.entries)})


@timed
def check_associativity(A, d_max, instance="", expect_failure=False):
    """(uv)w = u(vw) and unitality on basis words within budget."""
    budget = {"gdeg": d_max}
    words = A.basis_upto(min(d_max, A.max_degree))
    for u in words:
        if A.mul_words(u, A.unit) != {u: A.field.one} or \
                A.mul_words(A.unit, u) != {u: A.field.one}:
            return CheckReport(f"unitality: {A.name}", instance, budget,
                               False, expect_failure,
                               f"unit law fails on {A.format_word(u)}")
    for u in words:
        du = A.degree(u)
        for v in words:
            duv = du + A.degree(v)
            if duv > d_max:
                continue
            uv = A.mul_words(u, v)
            for w in words:
                if duv + A.degree(w) > d_max:
                    continue
                left = {}
                for m, c in uv.items():
                    for m2, c2 in A.mul_words(m, w).items():
                        _bump(left, m2, c * c2)
                right = {}
                for m, c in A.mul_words(v, w).items():
                    for m2, c2 in A.mul_words(u, m).items():
                        _bump(right, m2, c * c2)
                if left != right:
                    wit = (f"({A.format_word(u)})({A.format_word(v)})"
                           f"({A.format_word(w)})")
                    return CheckReport(f"associativity: {A.name}", instance,
                                       budget, False, expect_failure, wit)
    return CheckReport(f"associativity: {A.name}", instance, budget, True,
                       expect_failure)


def _bump(store, key, coeff):
    if not coeff:
        return
    new = store.get(key, 0) + coeff
    if new:
        store[key] = new
    else:
        del store[key]


class SignCorruptedBar(BarComplex):
    """Negative control: the i = 1 summand of d_2 carries the wrong sign.

    Flipping a single summand (rather than all of d_2) genuinely breaks
    d^2 = 0 and the exactness ranks, so the harness must flag it.
    """

    def __init__(self, A, n_max=3):
        super().__init__(A, reduced=True, n_max=n_max)
        self.name = f"corrupted-bar({A.name})"

    def diff_word(self, n, comp, word):
        out = super().diff_word(n, comp, word)
        if n != 2:
            return out
        extra = FreeElement(self.term(1))
        two = self.A.field.from_int(2)
        for w, c in self.A.mul_words(word[1], word[2]).items():
            if w == self.A.unit:
                continue
            extra.add_term((), (word[0], w, word[3]), two * c)
        return out + extra
