"""Complexes of free bimodules with distinguished tensor-word bases.

All complexes expose the same oracle surface: term signatures, a
differential on basis words, an augmentation in degree 0, the bimodule
action of the resolved algebra evaluated on basis words, and free
generators per (homological degree, internal degree).  Matrices are only
assembled per block when ranks are needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InstanceError, TwistresError
from .linalg import SparseMatrix, rank, subspace_intersection
from .tensors import (FreeElement, FullSlot, ReducedSlot, Signature,
                      SubspaceSlot, Term, TensorSubspace)
from .twisting import BarLeftCompat, BarRightCompat


class Complex:
    """Shared plumbing for all complex families."""

    def __init__(self, A, n_max, name):
        self.A = A
        self.n_max = n_max
        self.name = name
        self._terms = {}

    def term(self, n):
        if n < 0 or n > self.n_max:
            raise TwistresError(f"degree {n} outside homological budget of {self.name}")
        t = self._terms.get(n)
        if t is None:
            t = self._build_term(n)
            self._terms[n] = t
        return t

    def differential(self, n, elt):
        if n == 0:
            raise TwistresError("use augmentation() in degree 0")
        out = FreeElement(self.term(n - 1))
        for (comp, word), c in elt.data.items():
            out.add_elt(self.diff_word(n, comp, word), factor=c)
        return out

    def augmentation(self, elt):
        out = self.A.element()
        for (comp, word), c in elt.data.items():
            out = out + self.aug_word(comp, word).scale(c)
        return out

    def act(self, n, left, elt, right):
        out = FreeElement(self.term(n))
        for lw, lc in left.data.items():
            for (comp, word), c in elt.data.items():
                for rw, rc in right.data.items():
                    out.add_elt(self.act_word(n, lw, comp, word, rw),
                                factor=lc * c * rc)
        return out

    def basis(self, n, d):
        return self.term(n).basis(d)

    def single(self, n, comp, word, coeff=None):
        out = FreeElement(self.term(n))
        out.add_term(comp, word, coeff if coeff is not None else self.A.field.one)
        return out


class BarComplex(Complex):
    """Bar and reduced (normalized) bar resolution of an algebra A."""

    def __init__(self, A, reduced, n_max):
        tag = "reduced bar" if reduced else "bar"
        super().__init__(A, n_max, f"{tag}({A.name})")
        self.reduced = reduced

    def _build_term(self, n):
        inner = ReducedSlot(self.A) if self.reduced else FullSlot(self.A)
        slots = [FullSlot(self.A)] + [inner] * n + [FullSlot(self.A)]
        return Term([((), Signature(slots))], name=f"{self.name}_{n}")

    def diff_word(self, n, comp, word):
        out = FreeElement(self.term(n - 1))
        sign = self.A.field.one
        for i in range(n + 1):
            merged = self.A.mul_words(word[i], word[i + 1])
            inner_merge = self.reduced and 1 <= i <= n - 1
            for w, c in merged.items():
                if inner_merge and w == self.A.unit:
                    continue
                out.add_term((), word[:i] + (w,) + word[i + 2:], sign * c)
            sign = -sign
        return out

    def aug_word(self, comp, word):
        return self.A.element(self.A.mul_words(word[0], word[1]))

    def act_word(self, n, a_left, comp, word, a_right):
        out = FreeElement(self.term(n))
        for wl, cl in self.A.mul_words(a_left, word[0]).items():
            for wr, cr in self.A.mul_words(word[n + 1], a_right).items():
                out.add_term((), (wl,) + word[1:n + 1] + (wr,), cl * cr)
        return out

    def generator_words(self, n, d):
        """Inner tuples of the free bimodule basis in degree n."""
        if n == 0:
            return [()] if d == 0 else []
        inner = ReducedSlot(self.A) if self.reduced else FullSlot(self.A)
        return Signature([inner] * n).words(d)

    def free_generators(self, n, d):
        unit = self.A.unit
        out = []
        for inner in self.generator_words(n, d):
            out.append(self.single(n, (), (unit,) + inner + (unit,)))
        return out


def polynomial_quadratic_relations(R):
    """Commutation relations x_i (x) x_j - x_j (x) x_i spanning the ideal."""
    rels = []
    for i in range(R.nvars):
        for j in range(i + 1, R.nvars):
            vi, vj = R.var_word(i), R.var_word(j)
            rels.append({(vi, vj): R.field.one, (vj, vi): -R.field.one})
    return rels


def quadratic_relations_for(R):
    """Relation space of a quadratic presentation, or raise for other input."""
    from .algebras import PolynomialAlgebra, RewritingAlgebra

    if isinstance(R, PolynomialAlgebra):
        return polynomial_quadratic_relations(R)
    if isinstance(R, RewritingAlgebra):
        rels = []
        for (j, i), value in R.rules.items():
            rel = {((j,), (i,)): R.field.one}
            for w, c in value.items():
                if len(w) != 2:
                    raise InstanceError(
                        f"{R.name} is not quadratic: rule for {(j, i)} drops degree")
                rel[(((w[0],), (w[1],)))] = rel.get(((w[0],), (w[1],)), 0) - c
            rels.append({k: v for k, v in rel.items() if v})
        return rels
    raise InstanceError(f"no quadratic presentation available for {R.name}")


class KoszulComplex(Complex):
    """Koszul resolution of a quadratic algebra R = T(V)/(relations).

    The middle factor of K_n is the intersection of shifted relation
    spaces, computed by exact subspace intersection and stored with an
    abstract echelon basis.  The differential is the reduced-bar
    differential restricted along the standard inclusion: only the two
    outer multiplications survive because relations multiply to zero.
    """

    def __init__(self, R, relations, n_max):
        super().__init__(R, n_max, f"koszul({R.name})")
        for rel in relations:
            for pair in rel:
                if any(R.degree(w) != 1 for w in pair):
                    raise InstanceError("relations must live in V (x) V")
        self.relations = relations
        self.spaces = {1: TensorSubspace(
            R, 1, [{(v,): R.field.one} for v in R.basis(1)], "V")}
        if relations:
            self.spaces[2] = TensorSubspace(R, 2, relations, "K2")
        else:
            self.spaces[2] = TensorSubspace(R, 2, [], "K2")
        for n in range(3, n_max + 1):
            self.spaces[n] = self._intersect(n)

    def _intersect(self, n):
        v_words = self.R_basis1()
        index = {}
        counter = 0
        words = [()]
        for _ in range(n):
            words = [t + (v,) for t in words for v in v_words]
        for w in words:
            index[w] = counter
            counter += 1
        mats = []
        for j in range(n - 1):
            rows = []
            prefixes = [()]
            for _ in range(j):
                prefixes = [t + (v,) for t in prefixes for v in v_words]
            suffixes = [()]
            for _ in range(n - 2 - j):
                suffixes = [t + (v,) for t in suffixes for v in v_words]
            for pre in prefixes:
                for rel in self.relations:
                    for suf in suffixes:
                        row = {}
                        for (a, b), c in rel.items():
                            row[index[pre + (a, b) + suf]] = c
                        rows.append(row)
            mats.append(SparseMatrix(len(rows), len(words), rows))
        if not self.relations or any(m.nrows == 0 for m in mats):
            return TensorSubspace(self.A, n, [], f"K{n}")
        inter = subspace_intersection(mats)
        vectors = [{words[j]: c for j, c in row.items()} for row in inter.rows]
        return TensorSubspace(self.A, n, vectors, f"K{n}")

    def R_basis1(self):
        return self.A.basis(1)

    def dim_tilde(self, n):
        if n == 0:
            return 1
        return self.spaces[n].dim

    def _build_term(self, n):
        R = self.A
        if n == 0:
            slots = [FullSlot(R), FullSlot(R)]
        else:
            slots = [FullSlot(R), SubspaceSlot(self.spaces[n]), FullSlot(R)]
        return Term([((), Signature(slots))], name=f"{self.name}_{n}")

    def diff_word(self, n, comp, word):
        R = self.A
        out = FreeElement(self.term(n - 1))
        if n == 1:
            r0, idx, r1 = word
            for (vw,), c in self.spaces[1].basis[idx].items():
                for w, cc in R.mul_words(r0, vw).items():
                    out.add_term((), (w, r1), c * cc)
                for w, cc in R.mul_words(vw, r1).items():
                    out.add_term((), (r0, w), -(c * cc))
            return out
        r0, idx, r1 = word
        expansion = self.spaces[n].basis[idx]
        sign_right = self.A.field.one if n % 2 == 0 else -self.A.field.one
        lefts, rights = {}, {}
        for vs, c in expansion.items():
            lefts.setdefault(vs[0], {})[vs[1:]] = lefts.get(vs[0], {}).get(vs[1:], 0) + c
            rights.setdefault(vs[-1], {})[vs[:-1]] = rights.get(vs[-1], {}).get(vs[:-1], 0) + c
        for v, sub in sorted(lefts.items()):
            sub = {k: c for k, c in sub.items() if c}
            if not sub:
                continue
            coords = self.spaces[n - 1].coordinatize(sub)
            for w, cc in R.mul_words(r0, v).items():
                for k_idx, c2 in coords.items():
                    out.add_term((), (w, k_idx, r1), cc * c2)
        for v, sub in sorted(rights.items()):
            sub = {k: c for k, c in sub.items() if c}
            if not sub:
                continue
            coords = self.spaces[n - 1].coordinatize(sub)
            for w, cc in R.mul_words(v, r1).items():
                for k_idx, c2 in coords.items():
                    out.add_term((), (r0, k_idx, w), sign_right * cc * c2)
        return out

    def aug_word(self, comp, word):
        return self.A.element(self.A.mul_words(word[0], word[1]))

    def act_word(self, n, a_left, comp, word, a_right):
        out = FreeElement(self.term(n))
        last = len(word) - 1
        for wl, cl in self.A.mul_words(a_left, word[0]).items():
            for wr, cr in self.A.mul_words(word[last], a_right).items():
                out.add_term((), (wl,) + word[1:last] + (wr,), cl * cr)
        return out

    def free_generators(self, n, d):
        R = self.A
        if n == 0:
            return [self.single(0, (), (R.unit, R.unit))] if d == 0 else []
        if d != n:
            return []
        return [self.single(n, (), (R.unit, idx, R.unit))
                for idx in range(self.spaces[n].dim)]

    def include_word(self, n, comp, word):
        """Expand a Koszul word into reduced-bar words of R (the inclusion)."""
        if n == 0:
            return {word: self.A.field.one}
        r0, idx, r1 = word
        if n == 1:
            return {(r0,) + vs + (r1,): c
                    for vs, c in self.spaces[1].basis[idx].items()}
        return {(r0,) + vs + (r1,): c
                for vs, c in self.spaces[n].basis[idx].items()}


class IntermediateComplex(Complex):
    """The complex Y with Y_n = R^(n+2) (x) S^(n+2) mediating AW and EZ."""

    def __init__(self, A, n_max):
        super().__init__(A, n_max, f"Y({A.name})")
        self.R = A.R
        self.S = A.S
        self.tau = A.tau
        self._left = BarLeftCompat(self.tau, reduced=False)
        self._right = BarRightCompat(self.tau, reduced=False)

    def _build_term(self, n):
        slots = [FullSlot(self.R)] * (n + 2) + [FullSlot(self.S)] * (n + 2)
        return Term([((), Signature(slots))], name=f"{self.name}_{n}")

    def split(self, n, word):
        return word[:n + 2], word[n + 2:]

    def diff_word(self, n, comp, word):
        rpart, spart = self.split(n, word)
        out = FreeElement(self.term(n - 1))
        sign = self.A.field.one
        for ell in range(n + 1):
            rm = self.R.mul_words(rpart[ell], rpart[ell + 1])
            sm = self.S.mul_words(spart[ell], spart[ell + 1])
            for rw, cr in rm.items():
                new_r = rpart[:ell] + (rw,) + rpart[ell + 2:]
                for sw, cs in sm.items():
                    new_s = spart[:ell] + (sw,) + spart[ell + 2:]
                    out.add_term((), new_r + new_s, sign * cr * cs)
            sign = -sign
        return out

    def aug_word(self, comp, word):
        rpart, spart = self.split(0, word)
        out = {}
        for rw, cr in self.R.mul_words(*rpart).items():
            for sw, cs in self.S.mul_words(*spart).items():
                out[(rw, sw)] = out.get((rw, sw), 0) + cr * cs
        return self.A.element(out)

    def act_word(self, n, a_left, comp, word, a_right):
        rL, sL = a_left
        rR, sR = a_right
        rpart, spart = self.split(n, word)
        out = FreeElement(self.term(n))
        for (rblock, s1), c1 in self._left.apply(n, sL, rpart).items():
            for (r1, sblock), c2 in self._right.apply(n, spart, rR).items():
                for (r2, s2), c3 in self.tau.apply(s1, r1).items():
                    base = c1 * c2 * c3
                    for w0, c4 in self.R.mul_words(rL, rblock[0]).items():
                        for wlast, c5 in self.R.mul_words(rblock[-1], r2).items():
                            new_r = (w0,) + rblock[1:-1] + (wlast,)
                            for v0, c6 in self.S.mul_words(s2, sblock[0]).items():
                                for vlast, c7 in self.S.mul_words(sblock[-1], sR).items():
                                    new_s = (v0,) + sblock[1:-1] + (vlast,)
                                    out.add_term((), new_r + new_s,
                                                 base * c4 * c5 * c6 * c7)
        return out

    def free_generators(self, n, d):
        out = []
        r_inner = Signature([FullSlot(self.R)] * n)
        s_inner = Signature([FullSlot(self.S)] * n)
        for dr in range(d + 1):
            for rw in r_inner.words(dr):
                for sw in s_inner.words(d - dr):
                    word = (self.R.unit,) + rw + (self.R.unit,) \
                        + (self.S.unit,) + sw + (self.S.unit,)
                    out.append(self.single(n, (), word))
        return out


class TwistedProductComplex(Complex):
    """Total complex X = C (x)_tau D with the composed bimodule action."""

    def __init__(self, A, C, D, tau_C, tau_D, n_max, name=None):
        super().__init__(A, n_max, name or f"{C.name}(x){D.name}")
        self.C = C
        self.D = D
        self.tau = A.tau
        self.tau_C = tau_C
        self.tau_D = tau_D

    def _c_sig(self, i):
        return self.C.term(i).components[0][1]

    def _d_sig(self, j):
        return self.D.term(j).components[0][1]

    def _build_term(self, n):
        comps = []
        for i in range(n, -1, -1):
            j = n - i
            sig = Signature(self._c_sig(i).slots + self._d_sig(j).slots)
            comps.append(((i, j), sig))
        return Term(comps, name=f"{self.name}_{n}")

    def split(self, comp, word):
        i, j = comp
        k = len(self._c_sig(i))
        return word[:k], word[k:]

    def diff_word(self, n, comp, word):
        i, j = comp
        cw, dw = self.split(comp, word)
        out = FreeElement(self.term(n - 1))
        if i >= 1:
            for ((), cw2), c in self.C.diff_word(i, (), cw).data.items():
                out.add_term((i - 1, j), cw2 + dw, c)
        if j >= 1:
            sign = self.A.field.one if i % 2 == 0 else -self.A.field.one
            for ((), dw2), c in self.D.diff_word(j, (), dw).data.items():
                out.add_term((i, j - 1), cw + dw2, sign * c)
        return out

    def aug_word(self, comp, word):
        cw, dw = self.split(comp, word)
        r_elt = self.C.aug_word((), cw)
        s_elt = self.D.aug_word((), dw)
        return self.A.pair_element(r_elt, s_elt)

    def act_word(self, n, a_left, comp, word, a_right):
        i, j = comp
        rL, sL = a_left
        rR, sR = a_right
        cw, dw = self.split(comp, word)
        out = FreeElement(self.term(n))
        for (cw1, s1), c1 in self.tau_C.apply(i, sL, cw).items():
            for (r1, dw1), c2 in self.tau_D.apply(j, dw, rR).items():
                for (r2, s2), c3 in self.tau.apply(s1, r1).items():
                    base = c1 * c2 * c3
                    c_acted = self.C.act_word(i, rL, (), cw1, r2)
                    d_acted = self.D.act_word(j, s2, (), dw1, sR)
                    for ((), cw2), c4 in c_acted.data.items():
                        for ((), dw2), c5 in d_acted.data.items():
                            out.add_term((i, j), cw2 + dw2, base * c4 * c5)
        return out

    def free_generators(self, n, d):
        out = []
        for i in range(n, -1, -1):
            j = n - i
            for dc in range(d + 1):
                for gc in self.C.free_generators(i, dc):
                    for gd in self.D.free_generators(j, d - dc):
                        elt = FreeElement(self.term(n))
                        for ((), cw), c1 in gc.data.items():
                            for ((), dw), c2 in gd.data.items():
                                elt.add_term((i, j), cw + dw, c1 * c2)
                        out.append(elt)
        return out


@dataclass
class ExactnessEntry:
    position: int
    degrees: tuple
    dim: int
    rank_out: int
    rank_in: int
    composite_zero: bool = True

    @property
    def homology_dim(self):
        # rank bookkeeping certifies exactness only on top of d o d = 0;
        # a nonzero composite is reported as a defect in its own right
        if not self.composite_zero:
            return None
        return self.dim - self.rank_out - self.rank_in

    @property
    def exact(self):
        return self.composite_zero and self.homology_dim == 0


@dataclass
class ExactnessReport:
    complex_name: str
    entries: list = field(default_factory=list)

    @property
    def exact(self):
        return all(e.exact for e in self.entries)

    def summary(self):
        lines = [f"exactness of {self.complex_name}:"]
        for e in self.entries:
            if not e.composite_zero:
                verdict = "d o d != 0 on this block"
            elif e.homology_dim == 0:
                verdict = "exact"
            else:
                verdict = f"H != 0 (dim {e.homology_dim})"
            lines.append(
                f"  position {e.position}, degrees {list(e.degrees)}: dim {e.dim}, "
                f"rank d_out {e.rank_out}, rank d_in {e.rank_in} -> {verdict}")
        return "\n".join(lines)


def _algebra_block(A, degrees):
    out = []
    for d in degrees:
        out.extend(A.basis(d))
    return out


def block_matrix(X, n, degrees):
    """Matrix of d_n on the internal-degree block; d_0 is the augmentation."""
    domain = []
    for d in degrees:
        domain.extend(X.basis(n, d))
    if n == 0:
        codomain = _algebra_block(X.A, degrees)
        index = {w: i for i, w in enumerate(codomain)}
        rows = [dict() for _ in codomain]
        for jcol, (comp, word) in enumerate(domain):
            for w, c in X.aug_word(comp, word).data.items():
                irow = index.get(w)
                if irow is None:
                    raise TwistresError("augmentation leaves the degree block")
                rows[irow][jcol] = c
        return SparseMatrix(len(codomain), len(domain), rows), domain, codomain
    codomain = []
    for d in degrees:
        codomain.extend(X.basis(n - 1, d))
    index = {key: i for i, key in enumerate(codomain)}
    rows = [dict() for _ in codomain]
    for jcol, (comp, word) in enumerate(domain):
        img = X.diff_word(n, comp, word)
        for key, c in img.data.items():
            irow = index.get(key)
            if irow is None:
                raise TwistresError(
                    f"differential of {X.name} leaves the degree block at {key}")
            rows[irow][jcol] = c
    return SparseMatrix(len(codomain), len(domain), rows), domain, codomain


def check_truncated_exactness(X, n_max, d_max, graded=True):
    """Rank bookkeeping certifying no homology in the truncated strands.

    Graded complexes are checked per internal degree; filtered ones on the
    whole block of degrees <= d_max (the differential may drop degree).
    """
    report = ExactnessReport(X.name)
    blocks = [(d,) for d in range(d_max + 1)] if graded else [tuple(range(d_max + 1))]
    for degrees in blocks:
        ranks = {}
        dims = {}
        mats = {}
        for n in range(n_max + 1):
            m, dom, _ = block_matrix(X, n, degrees)
            mats[n] = m
            ranks[n] = rank(m)
            dims[n] = len(dom)
        a_dim = len(_algebra_block(X.A, degrees))
        report.entries.append(ExactnessEntry(-1, degrees, a_dim, 0, ranks[0]))
        for n in range(n_max):
            composite_zero = _product_is_zero(mats[n], mats[n + 1])
            report.entries.append(
                ExactnessEntry(n, degrees, dims[n], ranks[n], ranks[n + 1],
                               composite_zero))
    return report


def _product_is_zero(outer, inner):
    """Whether outer * inner = 0 for block matrices (im d_in <= ker d_out)."""
    outer_cols = {}
    for j, row in enumerate(outer.rows):
        for k, c in row.items():
            outer_cols.setdefault(k, []).append((j, c))
    for col in range(inner.ncols):
        out = {}
        for k, row in enumerate(inner.rows):
            c = row.get(col)
            if not c:
                continue
            for j, c2 in outer_cols.get(k, ()):
                new = out.get(j, 0) + c2 * c
                if new:
                    out[j] = new
                else:
                    out.pop(j, None)
        if out:
            return False
    return True


def check_d_squared(X, n_max, d_max):
    """Evaluate d(d(w)) exactly on every basis word within budget."""
    for n in range(2, n_max + 1):
        for d in range(d_max + 1):
            for comp, word in X.basis(n, d):
                once = X.diff_word(n, comp, word)
                twice = X.differential(n - 1, once)
                if not twice.is_zero():
                    return False, (n, comp, word, twice)
    for d in range(d_max + 1):
        for comp, word in X.basis(1, d):
            if not X.augmentation(X.diff_word(1, comp, word)).is_zero():
                return False, (1, comp, word, None)
    return True, None
