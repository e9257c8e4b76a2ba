"""Conversion between resolutions: compatible pairs, pi/iota, bootstrapping.

Given compatible chain maps into (or out of) the reduced bar resolutions of
the two factors, the twisted AW/EZ maps convert between the reduced bar
resolution of R (x)_tau S and a twisted product resolution C (x)_tau D.
When only injective maps are available, a one-sided inverse is built degree
by degree: invert on the image, lift on an echelon-pivot complement of the
free generators by solving the chain-square equation exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .awez import ChainMap
from .complexes import KoszulComplex, TwistedProductComplex
from .errors import NotLiftable
from .hopf import BarComoduleCompat, KoszulActionCompat
from .linalg import SparseMatrix, SparseVector, reduce_against, rref, solve_linear_system
from .tensors import FreeElement


@dataclass
class CompatibleChainMapPair:
    """Chain maps psi_R: C -> C' and psi_S: D -> D' with their four twists."""

    psi_R: ChainMap
    psi_S: ChainMap
    tau_C: object
    tau_Cp: object
    tau_D: object
    tau_Dp: object


def check_compatible(pair, S, R, n_max, d_max, coeff_degree=2):
    """Exhaustive basis check of both compatibility squares.

    Left square: (psi_R (x) 1) tau_C = tau_C' (1 (x) psi_R); right square:
    (1 (x) psi_S) tau_D = tau_D' (psi_S (x) 1).  Returns (ok, witness).
    """
    s_words = S.basis_upto(min(coeff_degree, S.max_degree))
    r_words = R.basis_upto(min(coeff_degree, R.max_degree))
    for n in range(n_max + 1):
        for d in range(d_max + 1):
            for comp, word in pair.psi_R.source.basis(n, d):
                for s in s_words:
                    lhs = {}
                    for (w2, s2), c in pair.tau_C.apply(n, s, word).items():
                        for ((), w3), c2 in pair.psi_R.apply_word(n, (), w2).data.items():
                            _bump(lhs, (w3, s2), c * c2)
                    rhs = {}
                    for ((), w2), c in pair.psi_R.apply_word(n, comp, word).data.items():
                        for (w3, s2), c2 in pair.tau_Cp.apply(n, s, w2).items():
                            _bump(rhs, (w3, s2), c * c2)
                    if lhs != rhs:
                        return False, ("left", n, comp, word, s, lhs, rhs)
            for comp, word in pair.psi_S.source.basis(n, d):
                for r in r_words:
                    lhs = {}
                    for (r2, w2), c in pair.tau_D.apply(n, word, r).items():
                        for ((), w3), c2 in pair.psi_S.apply_word(n, (), w2).data.items():
                            _bump(lhs, (r2, w3), c * c2)
                    rhs = {}
                    for ((), w2), c in pair.psi_S.apply_word(n, comp, word).data.items():
                        for (r2, w3), c2 in pair.tau_Dp.apply(n, w2, r).items():
                            _bump(rhs, (r2, w3), c * c2)
                    if lhs != rhs:
                        return False, ("right", n, comp, word, r, lhs, rhs)
    return True, None


def _bump(store, key, coeff):
    if not coeff:
        return
    new = store.get(key, 0) + coeff
    if new:
        store[key] = new
    else:
        del store[key]


def tensor_chain_maps(pair, X, Xp):
    """psi_R (x) psi_S on the twisted product complexes.

    Both chain maps have homological degree 0, so the Koszul sign
    convention contributes no signs here.
    """
    psi_R, psi_S = pair.psi_R, pair.psi_S

    def oracle(n, comp, word):
        i, j = comp
        cw, dw = X.split(comp, word)
        out = FreeElement(Xp.term(n))
        for ((), cw2), c1 in psi_R.apply_word(i, (), cw).data.items():
            for ((), dw2), c2 in psi_S.apply_word(j, (), dw).data.items():
                out.add_term((i, j), cw2 + dw2, c1 * c2)
        return out

    return ChainMap(X, Xp, oracle, f"{psi_R.name}(x){psi_S.name}")


def conversion_pi_iota(maps, X, inclusions, projections=None):
    """pi = (pi_R (x) pi_S) AW and iota = EZ (iota_R (x) iota_S).

    ``inclusions`` carries iota_R: C -> rbar(R) and iota_S: D -> rbar(S);
    ``projections``, when given, carries pi_R and pi_S the other way.
    Without projections, pi is omitted (build it with BootstrapLift).
    """
    iota_tensor = tensor_chain_maps(inclusions, X, maps.prod_rbar)
    iota = maps.ez_reduced.compose(iota_tensor)
    pi = None
    if projections is not None:
        pi_tensor = tensor_chain_maps(projections, maps.prod_rbar, X)
        pi = pi_tensor.compose(maps.aw_reduced)
    return pi, iota


def koszul_inclusion(K, rbar_R):
    """The standard inclusion chain map K -> reduced bar resolution of R."""

    def oracle(n, comp, word):
        out = FreeElement(rbar_R.term(n))
        for w, c in K.include_word(n, comp, word).items():
            out.add_term((), w, c)
        return out

    return ChainMap(K, rbar_R, oracle, "koszul inclusion")


def generators_in_reduced_window(chain_map, n_max, d_max):
    """Check that images of free generators land in k (x) Abar^n (x) k."""
    unit = chain_map.target.A.unit
    for n in range(n_max + 1):
        for d in range(d_max + 1):
            for g in chain_map.source.free_generators(n, d):
                img = chain_map.apply(n, g)
                for ((), word), _ in img.data.items():
                    if word[0] != unit or word[-1] != unit:
                        return False, (n, d, g)
    return True, None


class BootstrapLift:
    """One-sided inverse of an injective chain map into a reduced bar complex.

    Built degree by degree, as in the comparison-theorem diagram chase: on
    the image of iota invert directly; on an echelon-pivot complement of
    the degree-n free generators lift through the differential by solving
    an exact sparse linear system on the internal-degree block.  The
    degree -1 seed is the identity on the resolved algebra, realized here
    as the augmentation-preserving solve in degree 0.
    """

    def __init__(self, iota, n_max, d_max):
        self.iota = iota
        self.X = iota.source
        self.B = iota.target          # reduced bar complex of A
        self.A = self.B.A
        self.n_max = n_max
        self.d_max = d_max
        self._gen_values = {}          # (n, inner_word) -> FreeElement of X_n
        self.chain_map = ChainMap(self.B, self.X, self._oracle, "bootstrap pi")
        self._build()

    def _build(self):
        unit = self.A.unit
        for n in range(self.n_max + 1):
            for d in range(self.d_max + 1):
                gens = self.X.free_generators(n, d)
                images = []
                for g in gens:
                    img = self.iota.apply(n, g)
                    vec = {}
                    for ((), word), c in img.data.items():
                        if word[0] != unit or word[-1] != unit:
                            raise NotLiftable(
                                "iota image leaves the free-generator window "
                                f"k (x) Abar^{n} (x) k", block=(n, d))
                        vec[word[1:-1]] = c
                    images.append(vec)
                inner_words = self.B.generator_words(n, d)
                index = {w: k for k, w in enumerate(inner_words)}
                rows = [{index[w]: c for w, c in vec.items()} for vec in images]
                echelon, pivots = rref(rows, len(inner_words))
                pivot_set = set(pivots)
                complement = [w for w in inner_words if index[w] not in pivot_set]
                comp_values = {}
                for w in complement:
                    comp_values[w] = self._lift_complement(n, d, w)
                for w in inner_words:
                    vec = {index[w]: self.A.field.one}
                    coords, residue = reduce_against(echelon, pivots, vec)
                    value = FreeElement(self.X.term(n))
                    if coords:
                        img_coords = self._echelon_to_images(rows, len(inner_words),
                                                             coords, echelon)
                        for t, c in img_coords.items():
                            value.add_elt(gens[t], factor=c)
                    for jcol, c in residue.items():
                        wc = inner_words[jcol]
                        if wc not in comp_values:
                            raise NotLiftable(
                                "generator does not split over image + complement",
                                block=(n, d))
                        value.add_elt(comp_values[wc], factor=c)
                    self._gen_values[(n, w)] = value

    def _echelon_to_images(self, image_rows, width, coords, echelon):
        """Rewrite echelon-row coordinates as coordinates over the images."""
        target = {}
        for i, c in coords.items():
            for j, v in echelon[i].items():
                target[j] = target.get(j, 0) + c * v
        target = {j: v for j, v in target.items() if v}
        matrix_rows = [dict() for _ in range(width)]
        for t, row in enumerate(image_rows):
            for j, v in row.items():
                matrix_rows[j][t] = v
        m = SparseMatrix(width, len(image_rows), matrix_rows)
        x = solve_linear_system(m, SparseVector(width, target))
        if x is None:
            raise NotLiftable("internal: echelon row not in image span")
        return dict(x.entries)

    def _block(self, n):
        out = []
        for dd in range(self.d_max + 1):
            out.extend(self.X.basis(n, dd))
        return out

    def _lift_complement(self, n, d, inner_word):
        """Solve d_X xi = pi_(n-1)(d_B e) for a complement generator e."""
        unit = self.A.unit
        e_word = (unit,) + inner_word + (unit,)
        dom = self._block(n)
        if n == 0:
            target = self.B.aug_word((), e_word)
            cod = []
            for dd in range(self.d_max + 1):
                cod.extend(self.A.basis(dd))
            index = {w: i for i, w in enumerate(cod)}
            rows = [dict() for _ in cod]
            for jcol, (comp, word) in enumerate(dom):
                for w, c in self.X.aug_word(comp, word).data.items():
                    rows[index[w]][jcol] = c
            b = {index[w]: c for w, c in target.data.items()}
        else:
            rhs = self.evaluate(n - 1, self.B.diff_word(n, (), e_word))
            cod = self._block(n - 1)
            index = {key: i for i, key in enumerate(cod)}
            rows = [dict() for _ in cod]
            for jcol, (comp, word) in enumerate(dom):
                for key, c in self.X.diff_word(n, comp, word).data.items():
                    rows[index[key]][jcol] = c
            b = {}
            for key, c in rhs.data.items():
                irow = index.get(key)
                if irow is None:
                    raise NotLiftable("lift target outside the degree block",
                                      block=(n, d))
                b[irow] = c
        sol = solve_linear_system(SparseMatrix(len(cod), len(dom), rows),
                                  SparseVector(len(cod), b))
        if sol is None:
            raise NotLiftable(
                "inconsistent lift system (free-complement hypothesis failed)",
                block=(n, d))
        out = FreeElement(self.X.term(n))
        for jcol, c in sol.entries.items():
            comp, word = dom[jcol]
            out.add_term(comp, word, c)
        return out

    def _oracle(self, n, comp, word):
        inner = word[1:-1]
        value = self._gen_values.get((n, inner))
        if value is None:
            raise NotLiftable(
                f"bootstrap lift not built for a degree-{n} word of internal "
                f"degree {self.B.term(n).degree(comp, word)}")
        left = self.A.monomial(word[0])
        right = self.A.monomial(word[-1])
        return self.X.act(n, left, value, right)

    def evaluate(self, n, elt):
        return self.chain_map.apply(n, elt)


@dataclass
class KoszulSmashPipeline:
    """The Koszul-smash conversion package: X = K_R (x)_tau rbar(H) with pi iota = 1."""

    action: object
    maps: object            # TwistedBarMaps over A = R (x)_tau H
    koszul: KoszulComplex
    X: TwistedProductComplex
    tau_K: KoszulActionCompat
    tau_D: BarComoduleCompat
    iota_R: ChainMap
    iota_tensor: ChainMap   # iota_R (x) 1 into rbar(R) (x)_tau rbar(H)
    iota: ChainMap          # EZ o iota_tensor
    pi: ChainMap            # bootstrap lift with pi o iota = 1
    pi_RH: ChainMap         # pi o EZ: rbar(R) (x) rbar(H) -> X

    def identity_defect(self, n_max, d_max):
        """First free generator with pi(iota(g)) != g, or None."""
        for n in range(n_max + 1):
            for d in range(d_max + 1):
                for g in self.X.free_generators(n, d):
                    if self.pi.apply(n, self.iota.apply(n, g)) != g:
                        return (n, d, g)
        return None

    def corollary_defect(self, n_max, d_max):
        """First generator with pi_RH((iota_R (x) 1)(g)) != g, or None."""
        for n in range(n_max + 1):
            for d in range(d_max + 1):
                for g in self.X.free_generators(n, d):
                    if self.pi_RH.apply(n, self.iota_tensor.apply(n, g)) != g:
                        return (n, d, g)
        return None


def smash_product_complex(maps, action, relations, n_max):
    """K_R (x)_tau rbar(H) with its compatibility oracles, no chain maps."""
    A = maps.A
    R = maps.R
    K = KoszulComplex(R, relations, n_max)
    tau_K = KoszulActionCompat(action, K)
    tau_D = BarComoduleCompat(action, reduced=True)
    X = TwistedProductComplex(A, K, maps.rbar_S, tau_K, tau_D, n_max,
                              name=f"K({R.name})(x)rbar({maps.S.name})")
    return K, tau_K, tau_D, X


def smash_koszul_pipeline(maps, action, relations, n_max, d_max):
    """Build X = K_R (x)_tau rbar(H) and its conversion maps.

    ``maps`` is the TwistedBarMaps bundle of A = R (x)_tau H for the smash
    twist of ``action``.  pi is produced by bootstrap lifting from
    iota = EZ o (iota_R (x) 1), per the injective-only conversion route,
    whose hypothesis (generator images inside k (x) Rbar^n (x) k) is
    checked before lifting.
    """
    K, tau_K, tau_D, X = smash_product_complex(maps, action, relations, n_max)
    iota_R = koszul_inclusion(K, maps.rbar_R)
    ok, witness = generators_in_reduced_window(iota_R, n_max, d_max)
    if not ok:
        raise NotLiftable(
            "koszul inclusion leaves the free-generator window at "
            f"degree {witness[0]}", block=witness[:2])

    def iota_tensor_oracle(n, comp, word):
        i, j = comp
        cw, dw = X.split(comp, word)
        out = FreeElement(maps.prod_rbar.term(n))
        for ((), cw2), c in iota_R.apply_word(i, (), cw).data.items():
            out.add_term((i, j), cw2 + dw, c)
        return out

    iota_tensor = ChainMap(X, maps.prod_rbar, iota_tensor_oracle, "iota_R (x) 1")
    iota = maps.ez_reduced.compose(iota_tensor)
    lift = BootstrapLift(iota, n_max, d_max)
    pi = lift.chain_map
    pi_RH = pi.compose(maps.ez_reduced)
    return KoszulSmashPipeline(action=action, maps=maps, koszul=K, X=X,
                               tau_K=tau_K, tau_D=tau_D, iota_R=iota_R,
                               iota_tensor=iota_tensor, iota=iota, pi=pi,
                               pi_RH=pi_RH)
