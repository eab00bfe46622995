"""Monotone maps of finite ordinals, cosimplicial dg-algebra systems, the Čech
system of a finite cover, extension of modules along structure maps, and the
affine model C^{⊗k} ⊗_A M of the vertex modules."""

from .graded import GradedMap, ContractError, koszul
from .algebra import (DgAlgebra, DgModule, AlgebraMap, TensorOver,
                      extend_scalars, right_via, restrict_scalars, product_algebra,
                      ground_algebra, validate_algebra_map, tensor_space, module_hom_basis)
from .linalg import axpy, inverse_columns
from .report import Report
from .ainfty import Powers, AInftyCoalgebra


class OrdinalMap:
    """Monotone map [m] -> [n] given by its values."""

    __slots__ = ("m", "n", "values")

    def __init__(self, m, n, values):
        values = tuple(values)
        if len(values) != m + 1:
            raise ValueError("need %d values" % (m + 1))
        if any(not 0 <= v <= n for v in values):
            raise ValueError("values out of range")
        if any(a > b for a, b in zip(values, values[1:])):
            raise ValueError("map is not monotone")
        self.m, self.n, self.values = m, n, values

    def __call__(self, t):
        return self.values[t]

    def __matmul__(self, other):
        if other.n != self.m:
            raise ValueError("ordinal maps not composable")
        return OrdinalMap(other.m, self.n, [self.values[v] for v in other.values])

    def __eq__(self, other):
        return isinstance(other, OrdinalMap) and (self.m, self.n, self.values) == (
            other.m, other.n, other.values)

    def __hash__(self):
        return hash((self.m, self.n, self.values))

    def __repr__(self):
        return "[%d]->[%d]%s" % (self.m, self.n, self.values)

    def is_injective(self):
        return len(set(self.values)) == len(self.values)

    def is_identity(self):
        return self.m == self.n and self.values == tuple(range(self.m + 1))

    def factor(self):
        """Elementary factors in application order: codegeneracies then cofaces."""
        steps = []
        vals = list(self.values)
        # codegeneracies: collapse equal neighbours, largest position first
        eq = [j for j in range(self.m) if vals[j] == vals[j + 1]]
        cur = self.m
        for j in reversed(eq):
            steps.append(("s", cur - 1, j))
            cur -= 1
        image = sorted(set(vals))
        missed = [v for v in range(self.n + 1) if v not in image]
        cur = len(image) - 1
        for j in missed:
            steps.append(("d", cur + 1, j))
            cur += 1
        return steps

    @staticmethod
    def identity(n):
        return OrdinalMap(n, n, range(n + 1))

    @staticmethod
    def coface(n, i):
        """δ^i: [n-1] -> [n], skipping i."""
        return OrdinalMap(n - 1, n, [t if t < i else t + 1 for t in range(n)])

    @staticmethod
    def codegeneracy(n, i):
        """σ^i: [n+1] -> [n], hitting i twice."""
        return OrdinalMap(n + 1, n, [t if t <= i else t - 1 for t in range(n + 2)])

    @staticmethod
    def vertex(n, v):
        return OrdinalMap(0, n, [v])

    @staticmethod
    def head(i, n):
        """[i] -> [n], t -> t (the δ^{max} power)."""
        return OrdinalMap(i, n, range(i + 1))

    @staticmethod
    def tail(j, n):
        """[j] -> [n], t -> t + n - j (the δ^{min} power)."""
        return OrdinalMap(j, n, [t + n - j for t in range(j + 1)])

    @staticmethod
    def inclusion(seq, n):
        return OrdinalMap(len(seq) - 1, n, seq)


def compose_elementary(steps, m):
    f = OrdinalMap.identity(m)
    for kind, n, i in steps:
        g = OrdinalMap.codegeneracy(n, i) if kind == "s" else OrdinalMap.coface(n, i)
        f = g @ f
    return f


class CosimplicialSystem:
    """Levels A^0..A^N with coface and codegeneracy algebra maps."""

    def __init__(self, levels, cofaces, codegeneracies, augmentation=None, name="system"):
        self.levels = list(levels)
        self.N = len(self.levels) - 1
        self.cofaces = dict(cofaces)
        self.codegeneracies = dict(codegeneracies)
        self.augmentation = augmentation
        self.name = name
        self._maps = {}
        self._vertex = {}
        self.level_words = {}

    @property
    def field(self):
        return self.levels[0].field

    def level(self, n):
        if not 0 <= n <= self.N:
            raise ContractError("level %d beyond truncation %d" % (n, self.N))
        return self.levels[n]

    def structure_map(self, psi):
        """Algebra map A^m -> A^n of a monotone map [m] -> [n]."""
        if psi.n > self.N or psi.m > self.N:
            raise ContractError("level beyond truncation %d" % self.N)
        got = self._maps.get(psi)
        if got is None:
            A = self.levels[psi.m]
            got = AlgebraMap(A, A, GradedMap.identity(A.space), "id")
            for kind, n, i in psi.factor():
                step = self.codegeneracies[(n, i)] if kind == "s" else self.cofaces[(n, i)]
                got = step @ got
            got._valid = True
            self._maps[psi] = got
        return got

    def vertex_module(self, M, n, v):
        """Extension of M (over A^0) along the vertex v: [0] -> [n]."""
        key = (id(M), n, v)
        got = self._vertex.get(key)
        if got is None:
            phi = self.structure_map(OrdinalMap.vertex(n, v))
            got = extend_scalars(phi, M, check=False)
            got.vertex = (n, v)
            got.level = n
            got.space._module = got
            got.hom_basis_to = lambda Y, deg, P=got: extended_hom_basis(P, Y, deg)
            self._vertex[key] = got
            self._vertex.setdefault(("keep", id(M)), M)
        return got

    def unit_vector(self, M, n, v, x):
        """The adjunction unit m -> 1 ⊗ m in the vertex module."""
        P = self.vertex_module(M, n, v)
        A = self.levels[n]
        return P.project({(a, x): c for a, c in A.unit.items()})

    def pullback(self, psi, f):
        """ψ^* of a map between vertex modules at level psi.m, landing at level psi.n."""
        if psi.is_identity():
            return f
        if f.memo is not None and psi in f.memo:
            return f.memo[psi]
        got = self._pullback(psi, f)
        if f.memo is None:
            f.memo = {}
        f.memo[psi] = got
        return got

    def _pullback(self, psi, f):
        P, Q = f.source._module, f.target._module
        if P.level != psi.m or Q.level != psi.m:
            raise ContractError("pullback level mismatch")
        M, v = P.base_module, P.vertex[1]
        N, w = Q.base_module, Q.vertex[1]
        P2 = self.vertex_module(M, psi.n, psi(v))
        Q2 = self.vertex_module(N, psi.n, psi(w))
        alg = self.structure_map(psi)
        An = self.levels[psi.n]
        adeg = An.space.degrees
        cache = {}
        cols = {}
        for q, (a, x) in enumerate(P2.reps):
            img = cache.get(x)
            if img is None:
                img = {}
                for r, c in f.apply(self.unit_vector(M, psi.m, v, x)).items():
                    b, y = Q.reps[r]
                    for b2, c2 in alg.image(b).items():
                        axpy(img, c * c2, {(b2, y): 1})
                cache[x] = img
            s = koszul(f.degree, adeg[a])
            pairs = {}
            for (b2, y), c in img.items():
                for e, c3 in An.mul_basis(a, b2).items():
                    axpy(pairs, s * c * c3, {(e, y): 1})
            v2 = Q2.project(pairs)
            if v2:
                cols[q] = v2
        return GradedMap(P2.space, Q2.space, f.degree, cols, check=False)

    def hom_basis(self, M, n, v, N, w, degree):
        """A^n-linear maps P(n,v)M -> P(n,w)N of a degree, computed by adjunction."""
        key = (id(M), n, v, id(N), w, degree)
        cache = self.__dict__.setdefault("_homs", {})
        if key not in cache:
            P = self.vertex_module(M, n, v)
            Q = self.vertex_module(N, n, w)
            cache[key] = extended_hom_basis(P, Q, degree)
        return cache[key]


def extended_hom_basis(P, Y, degree):
    """Hom_{A'}(A' ⊗_A M, Y) ≅ Hom_A(M, Y restricted along phi)."""
    phi, M = P.phi, P.base_module
    R = restrict_scalars(phi, Y)
    out = []
    adeg = phi.target.space.degrees
    for g in module_hom_basis(M, R, degree):
        cols = {}
        for q, (a, x) in enumerate(P.reps):
            col = g.col(x)
            if not col:
                continue
            v = Y.act_vec({a: 1}, col)
            if v:
                cols[q] = {k: koszul(degree, adeg[a]) * c for k, c in v.items()}
        out.append(GradedMap(P.space, Y.space, degree, cols, check=False))
    return out


def validate_cosimplicial(sys):
    r = Report("cosimplicial %s" % sys.name, truncation={"N": sys.N})
    for (n, i), d in sorted(sys.cofaces.items()):
        if not validate_algebra_map(d).ok:
            r.fail("coface is an algebra map", (n, i))
    for (n, i), s in sorted(sys.codegeneracies.items()):
        if not validate_algebra_map(s).ok:
            r.fail("codegeneracy is an algebra map", (n, i))
    D, S = sys.cofaces, sys.codegeneracies
    for n in range(1, sys.N):
        for j in range(n + 2):
            for i in range(j):
                if (D[(n + 1, j)] @ D[(n, i)]).lin != (D[(n + 1, i)] @ D[(n, j - 1)]).lin:
                    r.fail("d^j d^i = d^i d^(j-1)", {"level": n + 1, "i": i, "j": j})
    for n in range(0, sys.N - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                if (S[(n, j)] @ S[(n + 1, i)]).lin != (S[(n, i)] @ S[(n + 1, j + 1)]).lin:
                    r.fail("s^j s^i = s^i s^(j+1)", {"level": n, "i": i, "j": j})
    for n in range(0, sys.N):
        # σ^j: A^{n+1} -> A^n and δ^i: A^n -> A^{n+1}
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = (S[(n, j)] @ D[(n + 1, i)]).lin
                if i == j or i == j + 1:
                    rhs = GradedMap.identity(sys.levels[n].space)
                elif i < j:
                    rhs = (D[(n, i)] @ S[(n - 1, j - 1)]).lin
                else:
                    rhs = (D[(n, i - 1)] @ S[(n - 1, j)]).lin
                if lhs != rhs:
                    r.fail("s^j d^i", {"level": n, "i": i, "j": j})
    if not r.checks:
        r.add("cosimplicial identities", True)
    return r


def constant_system(A, N):
    cof = {}
    cod = {}
    idm = AlgebraMap(A, A, GradedMap.identity(A.space), "id")
    for n in range(1, N + 1):
        for i in range(n + 1):
            cof[(n, i)] = idm
    for n in range(0, N):
        for i in range(n + 1):
            cod[(n, i)] = idm
    sys = CosimplicialSystem([A] * (N + 1), cof, cod, name="constant(%s)" % A.name)
    sys.constant = True
    return sys


class FiniteCover:
    """Points S, opens U_1..U_k covering S, optional coefficient algebra at each point."""

    def __init__(self, points, opens, coefficients=None):
        self.points = list(points)
        self.opens = [list(U) for U in opens]
        if not self.opens:
            raise ContractError("empty cover")
        covered = set().union(*map(set, self.opens))
        if covered != set(self.points):
            raise ContractError("opens do not cover the point set")
        if any(not set(U) <= set(self.points) for U in self.opens):
            raise ContractError("open contains an unknown point")
        self.coefficients = coefficients

    def intersection_count(self, n):
        """Σ over (n+1)-tuples of opens of |U_{i0} ∩ ... ∩ U_{in}|."""
        from itertools import product
        total = 0
        for idx in product(range(len(self.opens)), repeat=n + 1):
            s = set(self.points)
            for i in idx:
                s &= set(self.opens[i])
            total += len(s)
        return total


def _expand(vectors):
    """Tensor a list of vectors into a vector of words."""
    out = {(): 1}
    for v in vectors:
        out = {w + (k,): x * y for w, x in out.items() for k, y in v.items()}
    return out


class _LevelWords:
    """Level A^n = A^{⊗_B(n+1)} as a module of representative words."""

    def __init__(self, module, A):
        self.module = module
        self.A = A

    def project(self, wvec):
        return self.module.project_words(wvec) if isinstance(self.module, TensorOver) else {
            w[0]: c for w, c in wvec.items()}

    def word(self, q):
        return self.module.word(q)


def cech_system(cover, N, field=None):
    """A^n = A^{⊗_B(n+1)} for A = ∏_i ∏_{s ∈ U_i} R and B = ∏_s R."""
    if N < 1:
        raise ContractError("truncation must be at least 1")
    R = cover.coefficients
    if R is None:
        R = ground_algebra(field if field is not None else _default_field())
    B = product_algebra([(s, R) for s in cover.points], "B")
    labels = [("U%d:%s" % (i + 1, s), R) for i, U in enumerate(cover.opens) for s in U]
    A = product_algebra(labels, "A")
    cols = {}
    boff = {label: off for label, off, _ in B.blocks}
    aoff = {label: off for label, off, _ in A.blocks}
    for i, U in enumerate(cover.opens):
        for s in U:
            for r in range(R.dim):
                cols.setdefault(boff[s] + r, {})[aoff["U%d:%s" % (i + 1, s)] + r] = field_one(R)
    phi = AlgebraMap(B, A, GradedMap(B.space, A.space, 0, cols), "restrict")
    rep = validate_algebra_map(phi)
    if not rep.ok:
        raise ContractError(rep.summary())
    return tensor_power_system(phi, N, name="cech")


def _default_field():
    from .field import QQ
    return QQ


def field_one(R):
    return R.field.one


def tensor_power_system(phi, N, name="tensor powers"):
    """The cosimplicial algebra n -> A^{⊗_B(n+1)} of an algebra map phi: B -> A."""
    B, A = phi.source, phi.target
    Aphi = DgModule(B, A.space, restrict_scalars(phi, A.as_module()).action, A.d,
                    right_algebra=A, right_action=A.mult, name=A.name)
    mods = [A.as_module()]
    for n in range(1, N + 1):
        mods.append(TensorOver(right_via(phi, mods[-1]), Aphi, B, name="A%d" % n))
    levels = [A]
    for n in range(1, N + 1):
        levels.append(_level_algebra(mods[n], A, n))
    sys = CosimplicialSystem(levels, {}, {}, augmentation=phi, name=name)
    sys.words = {n: _LevelWords(mods[n], A) for n in range(N + 1)}
    for n in range(1, N + 1):
        for i in range(n + 1):
            sys.cofaces[(n, i)] = _coface(sys, A, n, i)
    for n in range(0, N):
        for i in range(n + 1):
            sys.codegeneracies[(n, i)] = _codegeneracy(sys, A, n, i)
    sys.base = B
    sys.cover_algebra = A
    return sys


def _level_algebra(mod, A, n):
    sp = mod.space
    adeg = A.space.degrees
    words = [mod.word(q) for q in range(sp.dim)]
    table = {}
    for p, w in enumerate(words):
        for q, u in enumerate(words):
            sign = 1
            for t in range(len(u)):
                later = sum(adeg[x] for x in w[t + 1:])
                sign *= koszul(adeg[u[t]], later)
            parts = [A.mul_basis(a, b) for a, b in zip(w, u)]
            if any(not x for x in parts):
                continue
            v = mod.project_words(_expand(parts))
            if v:
                table[p * sp.dim + q] = {k: sign * c for k, c in v.items()}
    unit = mod.project_words(_expand([A.unit] * (n + 1)))
    dcols = {}
    for p, w in enumerate(words):
        out = {}
        pre = 0
        for t, a in enumerate(w):
            da = A.d.col(a)
            if da:
                s = koszul(1, pre)
                parts = [{x: 1} for x in w[:t]] + [da] + [{x: 1} for x in w[t + 1:]]
                axpy(out, s, mod.project_words(_expand(parts)))
            pre += adeg[a]
        if out:
            dcols[p] = out
    mult = GradedMap(tensor_space(sp, sp), sp, 0, table, check=False)
    d = GradedMap(sp, sp, 1, dcols, check=False)
    return DgAlgebra(sp, mult, unit, d, A.commutative, name="A^%d" % n)


def _coface(sys, A, n, i):
    src, tgt = sys.levels[n - 1], sys.levels[n]
    ws, wt = sys.words[n - 1], sys.words[n]
    cols = {}
    for q in range(src.dim):
        w = ws.word(q)
        parts = [{x: 1} for x in w[:i]] + [A.unit] + [{x: 1} for x in w[i:]]
        v = wt.project(_expand(parts))
        if v:
            cols[q] = v
    return AlgebraMap(src, tgt, GradedMap(src.space, tgt.space, 0, cols, check=False),
                      "d%d^%d" % (n, i))


def _codegeneracy(sys, A, n, i):
    src, tgt = sys.levels[n + 1], sys.levels[n]
    ws, wt = sys.words[n + 1], sys.words[n]
    cols = {}
    for q in range(src.dim):
        w = ws.word(q)
        prod = A.mul_basis(w[i], w[i + 1])
        if not prod:
            continue
        parts = [{x: 1} for x in w[:i]] + [prod] + [{x: 1} for x in w[i + 2:]]
        v = wt.project(_expand(parts))
        if v:
            cols[q] = v
    return AlgebraMap(src, tgt, GradedMap(src.space, tgt.space, 0, cols, check=False),
                      "s%d^%d" % (n, i))


def coface_extend(sys, i, n, M):
    """Extension of scalars of an A^{n-1}-module along δ^i."""
    if not (1 <= n <= sys.N and 0 <= i <= n):
        raise ContractError("coface index out of range")
    return extend_scalars(sys.cofaces[(n, i)], M)


class AffineModel:
    """C = A^1 as an A^0-bimodule (left via δ^1, right via δ^0) with its tensor
    powers, and the glue isomorphisms C^{⊗k} ⊗_A M ≅ P(k,k)M."""

    def __init__(self, sys):
        if not hasattr(sys, "words"):
            raise ContractError("system lacks a coalgebra structure at level 1")
        self.sys = sys
        A0, A1 = sys.levels[0], sys.levels[1]
        self.A = A0
        left = restrict_scalars(sys.cofaces[(1, 1)], A1.as_module())
        right = right_via(sys.cofaces[(1, 0)], A1.as_module())
        self.C = DgModule(A0, A1.space, left.action, A1.d, right_algebra=A0,
                          right_action=right.right_action, name="C")
        self.powers = Powers(self.C, A0)
        self._glue = {}
        self._coalg = None

    def merge(self, cwords):
        """(a_1⊗a'_1) ⊗ ... ⊗ (a_k⊗a'_k) -> a_1 ⊗ a'_1 a_2 ⊗ ... ⊗ a'_k as a word vector."""
        A = self.sys.cover_algebra
        w1 = self.sys.words[1]
        pieces = [w1.word(c) for c in cwords]
        parts = [{pieces[0][0]: 1}]
        for t in range(len(pieces) - 1):
            parts.append(A.mul_basis(pieces[t][1], pieces[t + 1][0]))
        parts.append({pieces[-1][1]: 1})
        return _expand(parts)

    def glue(self, M, k):
        """Canonical iso C^{⊗k} ⊗_A M -> P(k,k)M as (forward, inverse)."""
        key = (id(M), k)
        if key in self._glue:
            return self._glue[key]
        sys = self.sys
        src = self.powers.mpower(M, k)
        P = sys.vertex_module(M, k, k)
        cols = {}
        for q in range(src.dim):
            w = src.word(q)
            mvec = M.project_word(w[k:])
            if k == 0:
                lw = sys.levels[0].unit
            else:
                lw = sys.words[k].project(self.merge(w[:k]))
            pairs = {(e, x): c * c2 for e, c in lw.items() for x, c2 in mvec.items()}
            v = P.project(pairs)
            if v:
                cols[q] = v
        fwd = GradedMap(src.space, P.space, 0, cols, check=False)
        inv = inverse_columns(fwd.cols, src.dim) if src.dim == P.dim else None
        if inv is None:
            raise ContractError("glue map C^%d⊗M -> P(%d,%d)M is not invertible" % (k, k, k))
        back = GradedMap(P.space, src.space, 0, inv, check=False)
        self._glue[key] = (fwd, back)
        return fwd, back

    def to_affine(self, f, M, k):
        """A map P(k,0)M -> P(k,k)N read as M -> C^{⊗k} ⊗_A N through the unit."""
        sys = self.sys
        N = f.target._module.base_module
        _, back = self.glue(N, k)
        cols = {}
        for x in range(M.dim):
            v = back.apply(f.apply(sys.unit_vector(M, k, 0, x)))
            if v:
                cols[x] = v
        return GradedMap(M.space, self.powers.mpower(N, k).space, f.degree, cols, check=False)

    def coalgebra(self):
        """C as an A∞-coalgebra over A: Δ_1 = -d_C, Δ_2 = δ^1 through the glue iso, ε = σ^0."""
        if self._coalg is not None:
            return self._coalg
        sys = self.sys
        C = self.C
        C2 = self.powers.power(2)
        # C ⊗_A C -> A^2
        cols = {}
        for q in range(C2.dim):
            v = sys.words[2].project(self.merge(C2.word(q)))
            if v:
                cols[q] = v
        fwd = GradedMap(C2.space, sys.levels[2].space, 0, cols, check=False)
        inv = inverse_columns(fwd.cols, C2.dim)
        if inv is None or C2.dim != sys.levels[2].dim:
            raise ContractError("C⊗_A C is not identified with level 2")
        back = GradedMap(sys.levels[2].space, C2.space, 0, inv, check=False)
        delta = back @ sys.cofaces[(2, 1)].lin
        coops = {2: delta}
        if not C.d.is_zero():
            coops[1] = C.d.scale(-1)
        eps = sys.codegeneracies[(0, 0)].lin
        self._coalg = AInftyCoalgebra(C, coops, base=self.A, counit=eps, name="C")
        return self._coalg


def paste_compose(sys, theta, eta):
    """δ^{min,i*}(η) ∘ δ^{max,j*}(θ) for θ at level i and η at level j."""
    i = theta.source._module.level
    j = eta.source._module.level
    n = i + j
    if n > sys.N:
        raise ContractError("level overflow beyond %d" % sys.N)
    a = sys.pullback(OrdinalMap.head(i, n), theta)
    b = sys.pullback(OrdinalMap.tail(j, n), eta)
    return b @ a


def paste_affine(model, theta, eta):
    """The same composite computed in the affine model: (id_{C^i} ⊗ η)∘θ."""
    i = theta.source._module.level
    j = eta.source._module.level
    M = theta.source._module.base_module
    N = eta.source._module.base_module
    P = eta.target._module.base_module
    t_aff = model.to_affine(theta, M, i)
    e_aff = model.to_affine(eta, N, j)
    src = model.powers.mpower(N, i)
    tgt = model.powers.mpower(P, i + j)
    Pj = model.powers.mpower(P, j)
    cols = {}
    for x in range(M.dim):
        out = {}
        for q, c in t_aff.col(x).items():
            w = src.word(q)
            s = koszul(eta.degree, sum(sl.space.degrees[y] for sl, y in zip(src.slots[:i], w[:i])))
            for y, c1 in N.project_word(w[i:]).items():
                for r, c2 in e_aff.col(y).items():
                    axpy(out, s * c * c1 * c2, tgt.project_word(w[:i] + Pj.word(r)))
        if out:
            cols[x] = out
    return GradedMap(M.space, tgt.space, theta.degree + eta.degree, cols, check=False)


def insert_coface(sys, theta, i):
    """δ^{i*}θ for 0 < i < n: a map at level n+1."""
    n = theta.source._module.level
    if not 0 < i < n:
        raise ContractError("insert_coface needs 0 < i < n")
    if n + 1 > sys.N:
        raise ContractError("level overflow beyond %d" % sys.N)
    return sys.pullback(OrdinalMap.coface(n + 1, i), theta)


def insert_comultiplication(model, f_aff, N, n, i):
    """(id^{i-1} ⊗ Δ ⊗ id) applied to an affine map M -> C^{⊗n} ⊗ N."""
    co = model.coalgebra()
    src = model.powers.mpower(N, n)
    tgt = model.powers.mpower(N, n + 1)
    cols = {}
    for x, col in f_aff.cols.items():
        out = {}
        for q, c in col.items():
            w = src.word(q)
            s = 1
            for v, c2 in co.coop_words(2, w[i - 1]).items():
                axpy(out, s * c * c2, tgt.project_word(w[:i - 1] + v + w[i:]))
        if out:
            cols[x] = out
    return GradedMap(f_aff.source, tgt.space, f_aff.degree, cols, check=False)
