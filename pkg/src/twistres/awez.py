"""Twisted Alexander-Whitney and Eilenberg-Zilber maps.

Both maps factor through the intermediate complex Y:

* the twisted perfect unshuffle moves every S-factor of a bar word of
  R (x)_tau S rightward past the remaining R-factors, one twist per
  crossing, and its inverse interleaves back with inverse twists;
* the front/back face map multiplies a leading run of R-factors and a
  trailing run of S-factors;
* the shuffle map spreads the two inner blocks over signed (l, n-l)
  shuffles with unit padding.

Reduced versions sandwich these between the componentwise projections and
inclusions of the reduced bar complexes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complexes import BarComplex, IntermediateComplex, TwistedProductComplex
from .tensors import FreeElement
from .twisting import BarLeftCompat, BarRightCompat, _acc


@dataclass(frozen=True)
class Shuffle:
    """An (ell, m)-shuffle; ``images[k]`` is the 0-indexed image of k+1."""

    images: tuple
    ell: int
    m: int
    sign: int

    def permute(self, values):
        """Place values so that output slot sigma(k) holds input slot k."""
        out = [None] * len(self.images)
        for src, dst in enumerate(self.images):
            out[dst] = values[src]
        return tuple(out)

    def cycle_notation(self):
        n = len(self.images)
        seen = [False] * n
        bits = []
        for i in range(n):
            if seen[i] or self.images[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            bits.append("(" + " ".join(str(k + 1) for k in cyc) + ")")
        return "".join(bits) if bits else "(1)"


def enumerate_shuffles(ell, m):
    """All binomial(ell+m, ell) shuffles with signs, in lexicographic order."""
    n = ell + m
    out = []
    for first_block in itertools.combinations(range(n), ell):
        rest = [p for p in range(n) if p not in first_block]
        images = tuple(list(first_block) + rest)
        inversions = sum(1 for a in range(n) for b in range(a + 1, n)
                         if images[a] > images[b])
        out.append(Shuffle(images, ell, m, -1 if inversions % 2 else 1))
    return out


class ChainMap:
    """Degree-indexed family of linear maps given by a basis-word oracle."""

    def __init__(self, source, target, oracle, name, lifts_identity=True):
        self.source = source
        self.target = target
        self._oracle = oracle
        self.name = name
        self.lifts_identity = lifts_identity

    def apply_word(self, n, comp, word):
        return self._oracle(n, comp, word)

    def apply(self, n, elt):
        out = FreeElement(self.target.term(n))
        for (comp, word), c in elt.data.items():
            out.add_elt(self.apply_word(n, comp, word), factor=c)
        return out

    def compose(self, other):
        """self o other (other acts first)."""
        def oracle(n, comp, word):
            return self.apply(n, other.apply_word(n, comp, word))
        return ChainMap(other.source, self.target, oracle,
                        f"{self.name} o {other.name}",
                        self.lifts_identity and other.lifts_identity)

    @classmethod
    def identity(cls, X):
        def oracle(n, comp, word):
            return X.single(n, comp, word)
        return cls(X, X, oracle, f"id({X.name})")


class TwistedBarMaps:
    """The AW/EZ tower over one twisted tensor product algebra."""

    def __init__(self, A, n_max):
        self.A = A
        self.R = A.R
        self.S = A.S
        self.tau = A.tau
        self.n_max = n_max
        self.bar_A = BarComplex(A, reduced=False, n_max=n_max)
        self.rbar_A = BarComplex(A, reduced=True, n_max=n_max)
        self.Y = IntermediateComplex(A, n_max=n_max)
        self.bar_R = BarComplex(self.R, reduced=False, n_max=n_max)
        self.bar_S = BarComplex(self.S, reduced=False, n_max=n_max)
        self.rbar_R = BarComplex(self.R, reduced=True, n_max=n_max)
        self.rbar_S = BarComplex(self.S, reduced=True, n_max=n_max)
        self.prod_bar = TwistedProductComplex(
            A, self.bar_R, self.bar_S,
            BarLeftCompat(A.tau, reduced=False),
            BarRightCompat(A.tau, reduced=False), n_max,
            name=f"bar({self.R.name})(x)bar({self.S.name})")
        self.prod_rbar = TwistedProductComplex(
            A, self.rbar_R, self.rbar_S,
            BarLeftCompat(A.tau, reduced=True),
            BarRightCompat(A.tau, reduced=True), n_max,
            name=f"rbar({self.R.name})(x)rbar({self.S.name})")
        self.twisted_unshuffle = ChainMap(self.bar_A, self.Y,
                                          self._unshuffle_word, "unshuffle")
        self.twisted_shuffle = ChainMap(self.Y, self.bar_A,
                                        self._shuffle_word, "shuffle")
        self.front_back_face = ChainMap(self.Y, self.prod_bar,
                                        self._front_back_word, "front/back face")
        self.shuffle_map = ChainMap(self.prod_bar, self.Y,
                                    self._shuffle_map_word, "shuffle map")
        self.aw_unreduced = ChainMap(self.bar_A, self.prod_bar,
                                     self._aw_b_word, "AW_bar")
        self.ez_unreduced = ChainMap(self.prod_bar, self.bar_A,
                                     self._ez_b_word, "EZ_bar")
        self.aw_reduced = ChainMap(self.rbar_A, self.prod_rbar,
                                   self._aw_word, "AW")
        self.ez_reduced = ChainMap(self.prod_rbar, self.rbar_A,
                                   self._ez_word, "EZ")
        # in_2: merely a k-linear inclusion, generally not a bimodule map
        self.inclusion_reduced_product = ChainMap(
            self.prod_rbar, self.prod_bar,
            lambda n, comp, word: self.prod_bar.single(n, comp, word),
            "in_2", lifts_identity=False)

    # -- twisted perfect unshuffle and its inverse ---------------------------

    def _unshuffle_word(self, n, comp, word):
        # word: n+2 pair-slots of A; flatten to r0 s0 r1 s1 ...
        flat = tuple(x for pair in word for x in pair)
        states = {flat: self.A.field.one}
        for layer in range(1, n + 2):
            positions = [layer + 2 * t for t in range(n + 2 - layer)]
            for p in positions:
                new = {}
                for slots, c in states.items():
                    for (rw, sw), c2 in self.tau.apply(slots[p], slots[p + 1]).items():
                        _acc(new, slots[:p] + (rw, sw) + slots[p + 2:], c * c2)
                states = new
        out = FreeElement(self.Y.term(n))
        for slots, c in states.items():
            out.add_term((), slots, c)
        return out

    def _shuffle_word(self, n, comp, word):
        # word: r-block then s-block; interleave with inverse twists
        states = {tuple(word): self.A.field.one}
        for layer in range(n + 1, 0, -1):
            positions = [layer + 2 * t for t in range(n + 2 - layer)]
            for p in positions:
                new = {}
                for slots, c in states.items():
                    for (sw, rw), c2 in self.tau.inverse(slots[p], slots[p + 1]).items():
                        _acc(new, slots[:p] + (sw, rw) + slots[p + 2:], c * c2)
                states = new
        out = FreeElement(self.bar_A.term(n))
        for slots, c in states.items():
            pairs = tuple((slots[2 * k], slots[2 * k + 1])
                          for k in range(n + 2))
            out.add_term((), pairs, c)
        return out

    # -- front/back face and shuffle maps ------------------------------------

    def _front_back_word(self, n, comp, word):
        rpart, spart = word[:n + 2], word[n + 2:]
        out = FreeElement(self.prod_bar.term(n))
        one = self.A.field.one
        for ell in range(n + 1):
            sign = one if (ell * (n - ell)) % 2 == 0 else -one
            front = {rpart[0]: one}
            for k in range(1, ell + 1):
                new = {}
                for w, c in front.items():
                    for w2, c2 in self.R.mul_words(w, rpart[k]).items():
                        _acc(new, w2, c * c2)
                front = new
            back = {spart[n + 1]: one}
            for k in range(n, ell, -1):
                new = {}
                for w, c in back.items():
                    for w2, c2 in self.S.mul_words(spart[k], w).items():
                        _acc(new, w2, c * c2)
                back = new
            for fw, fc in front.items():
                for bw, bc in back.items():
                    new_word = (fw,) + rpart[ell + 1:] + spart[:ell + 1] + (bw,)
                    out.add_term((n - ell, ell), new_word, sign * fc * bc)
        return out

    def _shuffle_map_word(self, n, comp, word):
        # The bidegree prefactor lives on the face map only: with the Koszul
        # sign placement of the total differential, the shuffle sum is a
        # chain map bare, and the face-map prefactor alone makes the
        # composite the identity (the surviving block-swap shuffle has sign
        # (-1)^(i*j)).
        i, j = comp
        cw, dw = word[:i + 2], word[i + 2:]
        r_inner = cw[1:i + 1]
        s_inner = dw[1:j + 1]
        out = FreeElement(self.Y.term(n))
        one = self.A.field.one
        r_padded = r_inner + (self.R.unit,) * j
        s_padded = (self.S.unit,) * i + s_inner
        for sh in enumerate_shuffles(i, j):
            coeff = one if sh.sign == 1 else -one
            new_r = (cw[0],) + sh.permute(r_padded) + (cw[i + 1],)
            new_s = (dw[0],) + sh.permute(s_padded) + (dw[j + 1],)
            out.add_term((), new_r + new_s, coeff)
        return out

    # -- AW and EZ ------------------------------------------------------------

    def _aw_b_word(self, n, comp, word):
        return self.front_back_face.apply(n, self._unshuffle_word(n, comp, word))

    def _ez_b_word(self, n, comp, word):
        return self.twisted_shuffle.apply(n, self._shuffle_map_word(n, comp, word))

    def project_reduced_product(self, n, elt):
        """pr_2: componentwise inner projection in both bar factors."""
        out = FreeElement(self.prod_rbar.term(n))
        for ((i, j), word), c in elt.data.items():
            cw, dw = word[:i + 2], word[i + 2:]
            if any(w == self.R.unit for w in cw[1:i + 1]):
                continue
            if any(w == self.S.unit for w in dw[1:j + 1]):
                continue
            out.add_term((i, j), word, c)
        return out

    def project_reduced_bar(self, n, elt):
        """pr_1: kill bar words of A with a unit inner slot."""
        out = FreeElement(self.rbar_A.term(n))
        for ((), word), c in elt.data.items():
            if any(w == self.A.unit for w in word[1:n + 1]):
                continue
            out.add_term((), word, c)
        return out

    def _aw_word(self, n, comp, word):
        return self.project_reduced_product(n, self._aw_b_word(n, comp, word))

    def _ez_word(self, n, comp, word):
        return self.project_reduced_bar(n, self._ez_b_word(n, comp, word))


# -- closed formulas for group actions on polynomial rings -------------------


def group_prefix_products(S, g_words):
    """Left-to-right partial products g_0 g_1 ... g_(k-1); index 0 is empty."""
    prods = [S.unit]
    for g in g_words:
        prods.append(S.group.mul(prods[-1], g))
    return prods


def group_closed_aw(maps, action, n, word, reduced):
    """Closed-form AW for a group smash product, written directly.

    Twist each polynomial slot by the product of all group slots to its
    left, then front-multiply the first run of polynomial slots and
    back-multiply the trailing group slots.  Independent of the unshuffle
    machinery; pairs with the generic composition in the acceptance suite.
    """
    A = maps.A
    R, S = maps.R, maps.S
    target = maps.prod_rbar if reduced else maps.prod_bar
    one = A.field.one
    f_words = [w[0] for w in word]
    g_words = [w[1] for w in word]
    prefixes = group_prefix_products(S, g_words)
    twisted = [action.act(prefixes[k], f_words[k]) for k in range(n + 2)]
    out = FreeElement(target.term(n))
    for ell in range(n + 1):
        sign = one if (ell * (n - ell)) % 2 == 0 else -one
        front = {R.unit: one}
        for k in range(ell + 1):
            new = {}
            for w, c in front.items():
                for w2, c2 in twisted[k].items():
                    for w3, c3 in R.mul_words(w, w2).items():
                        _acc(new, w3, c * c2 * c3)
            front = new
        back_word = S.unit
        for k in range(ell + 1, n + 2):
            back_word = S.group.mul(back_word, g_words[k])
        if reduced and any(g == S.unit for g in g_words[1:ell + 1]):
            continue
        for combo, cc in _spread(twisted[ell + 1:], one):
            if reduced and any(w == R.unit for w in combo[:-1]):
                continue
            for fw, fc in front.items():
                full = (fw,) + combo + tuple(g_words[:ell + 1]) + (back_word,)
                out.add_term((n - ell, ell), full, sign * fc * cc)
    return out


def group_closed_ez(maps, action, n, comp, word, reduced):
    """Closed EZ for a group smash product via the explicit interleave.

    Shuffle the two padded inner blocks, then pair slot k with the inverse
    of the group prefix acting on its polynomial part.
    """
    A = maps.A
    R, S = maps.R, maps.S
    G = S.group
    target = maps.rbar_A if reduced else maps.bar_A
    i, j = comp
    cw, dw = word[:i + 2], word[i + 2:]
    out = FreeElement(target.term(n))
    one = A.field.one
    r_padded = cw[1:i + 1] + (R.unit,) * j
    s_padded = (S.unit,) * i + dw[1:j + 1]
    for sh in enumerate_shuffles(i, j):
        coeff = one if sh.sign == 1 else -one
        rfull = (cw[0],) + sh.permute(r_padded) + (cw[i + 1],)
        gfull = (dw[0],) + sh.permute(s_padded) + (dw[j + 1],)
        prefixes = group_prefix_products(S, gfull)
        slots = [action.act(G.inv(prefixes[k]), rfull[k]) for k in range(n + 2)]
        for combo, cc in _spread(slots, one):
            pairs = tuple((combo[k], gfull[k]) for k in range(n + 2))
            if reduced and any(p == A.unit for p in pairs[1:n + 1]):
                continue
            out.add_term((), pairs, coeff * cc)
    return out


def _spread(dicts, one):
    """Cartesian expansion of a list of sparse dicts into (tuple, coeff)."""
    combos = [((), one)]
    for d in dicts:
        combos = [(prefix + (w,), c * c2)
                  for prefix, c in combos for w, c2 in d.items()]
    return combos
