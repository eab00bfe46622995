"""Finite-dimensional dg-algebras, modules, bimodules, tensor over an algebra,
extension of scalars and module hom complexes."""

from .graded import (GradedSpace, GradedMap, Complex, ContractError, DimensionError,
                     tensor_space, koszul, hom_differential)
from .linalg import axpy, Reducer, kernel
from .report import Report


class DgAlgebra:
    """Structure constants mult[a*dim + b] = a·b, a unit vector and a differential."""

    def __init__(self, space, mult, unit, d=None, commutative=False, name=None):
        self.space = space
        self.name = name or space.name
        self.mult = mult
        self.unit = dict(unit)
        self.d = d if d is not None else GradedMap.zero(space, space, 1)
        self.commutative = commutative
        self._n = space.dim
        if mult.source != tensor_space(space, space) or mult.target != space or (
                mult.degree != 0 and not mult.is_zero()):
            raise ContractError("multiplication must be a degree-0 map A⊗A -> A")
        self.complex = Complex(space, self.d)

    @property
    def field(self):
        return self.space.field

    @property
    def dim(self):
        return self.space.dim

    def degree(self, a):
        return self.space.degrees[a]

    def mul_basis(self, a, b):
        return self.mult.cols.get(a * self._n + b, {})

    def mul(self, u, v):
        out = {}
        for a, x in u.items():
            for b, y in v.items():
                col = self.mult.cols.get(a * self._n + b)
                if col:
                    axpy(out, x * y, col)
        return out

    def diff(self, vec):
        return self.d.apply(vec)

    def as_module(self):
        if not hasattr(self, "_regular"):
            self._regular = DgModule(self, self.space, self.mult, self.d,
                                     right_algebra=self, right_action=self.mult,
                                     name=self.name)
        return self._regular

    def __repr__(self):
        return "DgAlgebra(%s, dim=%d)" % (self.name, self.dim)


def algebra_from_table(name, field, basis, table, unit, d=None, commutative=False, window=None):
    """Build an algebra from products table[(i, j)] = {k: c} on basis indices."""
    space = GradedSpace(name, basis, window=window, field=field)
    AA = tensor_space(space, space)
    n = space.dim
    cols = {}
    for (i, j), vec in table.items():
        cols[i * n + j] = {k: field(c) for k, c in vec.items()}
    mult = GradedMap(AA, space, 0, cols)
    dm = None
    if d is not None:
        dm = GradedMap(space, space, 1, {j: {i: field(c) for i, c in col.items()}
                                         for j, col in d.items()})
    return DgAlgebra(space, mult, {k: field(c) for k, c in unit.items()}, dm, commutative, name)


def ground_algebra(field, name="k"):
    return algebra_from_table(name, field, [("1", 0)], {(0, 0): {0: 1}}, {0: 1},
                              commutative=True)


def truncated_polynomial(field, var="x", deg=0, order=2, name=None):
    """k[x]/(x^order) with |x| = deg and zero differential."""
    if deg % 2 and order > 2:
        raise ContractError("odd generator squares to zero in a graded-commutative algebra")
    basis = [("1" if i == 0 else (var if i == 1 else "%s^%d" % (var, i)), i * deg)
             for i in range(order)]
    table = {(i, j): {i + j: 1} for i in range(order) for j in range(order) if i + j < order}
    return algebra_from_table(name or "k[%s]/(%s^%d)" % (var, var, order), field, basis,
                              table, {0: 1}, commutative=True)


def exterior_algebra(field, var="e", deg=-1, name=None):
    return truncated_polynomial(field, var, deg, 2, name or "Λ(%s)" % var)


def product_algebra(factors, name="prod"):
    """∏ R_label over (label, R) pairs, componentwise structure."""
    field = factors[0][1].field
    basis = []
    offs = []
    for label, R in factors:
        offs.append(len(basis))
        if R.dim == 1:
            basis.append((str(label), R.space.degrees[0]))
        else:
            basis.extend(("%s@%s" % (b, label), d) for b, d in zip(R.space.names, R.space.degrees))
    table = {}
    unit = {}
    dcols = {}
    for (label, R), off in zip(factors, offs):
        for a in range(R.dim):
            for b in range(R.dim):
                v = R.mul_basis(a, b)
                if v:
                    table[(off + a, off + b)] = {off + k: c for k, c in v.items()}
            dv = R.d.col(a)
            if dv:
                dcols[off + a] = {off + k: c for k, c in dv.items()}
        for k, c in R.unit.items():
            unit[off + k] = c
    comm = all(R.commutative for _, R in factors)
    A = algebra_from_table(name, field, basis, table, unit, dcols or None, comm)
    A.blocks = [(label, off, R) for (label, R), off in zip(factors, offs)]
    return A


def validate_dg_algebra(A):
    r = Report("dg-algebra %s" % A.name)
    n = A.dim
    degs = A.space.degrees
    for a in range(n):
        for b in range(n):
            ab = A.mul_basis(a, b)
            for c in range(n):
                lhs = A.mul(ab, {c: 1})
                rhs = A.mul({a: 1}, A.mul_basis(b, c))
                if lhs != rhs:
                    r.fail("associativity", (A.space.names[a], A.space.names[b], A.space.names[c]))
    for a in range(n):
        e = {a: A.field.one}
        if A.mul(A.unit, e) != e or A.mul(e, A.unit) != e:
            r.fail("unit", A.space.names[a])
    if any(degs[k] != 0 for k in A.unit):
        r.fail("unit degree", None)
    if not (A.d @ A.d).is_zero():
        r.fail("d^2", None)
    for a in range(n):
        for b in range(n):
            ab = A.mul_basis(a, b)
            lhs = A.diff(ab)
            rhs = A.mul(A.diff({a: 1}), {b: 1})
            axpy(rhs, koszul(1, degs[a]), A.mul({a: 1}, A.diff({b: 1})))
            if lhs != rhs:
                r.fail("leibniz", (A.space.names[a], A.space.names[b]))
            if A.commutative:
                ba = A.mul_basis(b, a)
                if ab != {k: koszul(degs[a], degs[b]) * c for k, c in ba.items()}:
                    r.fail("graded commutativity", (A.space.names[a], A.space.names[b]))
    if not r.checks:
        r.add("dg-algebra axioms", True)
    return r


class AlgebraMap:
    """A degree-0 linear map between algebras, expected to be a unital dg-algebra map."""

    def __init__(self, source, target, lin, name=""):
        if lin.source != source.space or lin.target != target.space:
            raise DimensionError("algebra map spaces do not match")
        self.source = source
        self.target = target
        self.lin = lin
        self.name = name
        self._valid = None

    def __call__(self, vec):
        return self.lin.apply(vec)

    def image(self, a):
        return self.lin.col(a)

    def __matmul__(self, other):
        return AlgebraMap(other.source, self.target, self.lin @ other.lin,
                          "%s∘%s" % (self.name, other.name))

    def __eq__(self, other):
        return (isinstance(other, AlgebraMap) and self.source is other.source
                and self.target is other.target and self.lin == other.lin)

    __hash__ = None

    def is_valid(self):
        if self._valid is None:
            self._valid = validate_algebra_map(self).ok
        return self._valid


def identity_map(A):
    return AlgebraMap(A, A, GradedMap.identity(A.space), "id")


def validate_algebra_map(phi):
    A, B = phi.source, phi.target
    r = Report("algebra map %s" % phi.name)
    if phi.lin.degree != 0 and not phi.lin.is_zero():
        r.fail("degree", phi.lin.degree)
    if phi(A.unit) != B.unit:
        r.fail("unital", None)
    for a in range(A.dim):
        if phi(A.diff({a: 1})) != B.diff(phi.image(a)):
            r.fail("commutes with d", A.space.names[a])
        for b in range(A.dim):
            if phi(A.mul_basis(a, b)) != B.mul(phi.image(a), phi.image(b)):
                r.fail("multiplicative", (A.space.names[a], A.space.names[b]))
    if not r.checks:
        r.add("algebra map axioms", True)
    return r


class DgModule:
    """A left dg-module over ``algebra``; optionally also a right module.

    Representative words: a basis element of an iterated tensor product is
    represented by a tuple of basis indices of the plain factors (``slots``).
    """

    def __init__(self, algebra, space, action=None, d=None, right_algebra=None,
                 right_action=None, name=None):
        self.algebra = algebra
        self.space = space
        self.action = action
        self.right_algebra = right_algebra
        self.right_action = right_action
        self.name = name or space.name
        self.d = d if d is not None else GradedMap.zero(space, space, 1)
        if algebra is not None and action is not None:
            if action.source != tensor_space(algebra.space, space) or action.target != space:
                raise DimensionError("left action has wrong shape")
        if right_algebra is not None and right_action is not None:
            if right_action.source != tensor_space(space, right_algebra.space) or \
                    right_action.target != space:
                raise DimensionError("right action has wrong shape")
        self.slots = (self,)
        self.wlen = 1
        self.complex = Complex(space, self.d)

    @property
    def field(self):
        return self.space.field

    @property
    def dim(self):
        return self.space.dim

    def act(self, a, m):
        return self.action.cols.get(a * self.dim + m, {})

    def act_vec(self, avec, mvec):
        out = {}
        for a, x in avec.items():
            for m, y in mvec.items():
                col = self.action.cols.get(a * self.dim + m)
                if col:
                    axpy(out, x * y, col)
        return out

    def ract(self, m, b):
        if self.right_action is not None:
            return self.right_action.cols.get(m * self.right_algebra.dim + b, {})
        if self.algebra is not None and self.algebra.commutative:
            s = koszul(self.space.degrees[m], self.algebra.space.degrees[b])
            col = self.act(b, m)
            return {k: s * c for k, c in col.items()} if s < 0 else col
        raise ContractError("%s has no right action" % self.name)

    def ract_vec(self, mvec, bvec):
        out = {}
        for m, x in mvec.items():
            for b, y in bvec.items():
                col = self.ract(m, b)
                if col:
                    axpy(out, x * y, col)
        return out

    def right_base(self):
        if self.right_algebra is not None:
            return self.right_algebra
        if self.algebra is not None and self.algebra.commutative:
            return self.algebra
        return None

    def word(self, i):
        return (i,)

    def project_word(self, w):
        return {w[0]: self.field.one}

    def project_words(self, wvec):
        out = {}
        for w, c in wvec.items():
            axpy(out, c, self.project_word(w))
        return out

    def word_degree(self, w):
        return sum(s.space.degrees[i] for s, i in zip(self.slots, w))

    def __repr__(self):
        return "DgModule(%s, dim=%d)" % (self.name, self.dim)


class Bimodule(DgModule):
    def __init__(self, left, right, space, left_action, right_action, d=None, name=None):
        super().__init__(left, space, left_action, d, right, right_action, name)


def validate_module(M):
    r = Report("module %s" % M.name)
    names = M.space.names
    mdeg = M.space.degrees
    if not (M.d @ M.d).is_zero():
        r.fail("d^2", None)
    A = M.algebra
    if A is not None and M.action is not None:
        for m in range(M.dim):
            e = {m: M.field.one}
            if M.act_vec(A.unit, e) != e:
                r.fail("left unit", names[m])
            for a in range(A.dim):
                am = M.act(a, m)
                lhs = M.d.apply(am)
                rhs = M.act_vec(A.diff({a: 1}), e)
                axpy(rhs, koszul(1, A.degree(a)), M.act_vec({a: 1}, M.d.apply(e)))
                if lhs != rhs:
                    r.fail("left leibniz", (A.space.names[a], names[m]))
                for b in range(A.dim):
                    if M.act_vec(A.mul_basis(a, b), e) != M.act_vec({a: 1}, M.act(b, m)):
                        r.fail("left associativity", (A.space.names[a], A.space.names[b], names[m]))
    R = M.right_algebra
    if R is not None and M.right_action is not None:
        for m in range(M.dim):
            e = {m: M.field.one}
            if M.ract_vec(e, R.unit) != e:
                r.fail("right unit", names[m])
            for b in range(R.dim):
                mb = M.ract(m, b)
                lhs = M.d.apply(mb)
                rhs = M.ract_vec(M.d.apply(e), {b: 1})
                axpy(rhs, koszul(1, mdeg[m]), M.ract_vec(e, R.diff({b: 1})))
                if lhs != rhs:
                    r.fail("right leibniz", (names[m], R.space.names[b]))
                for c in range(R.dim):
                    if M.ract_vec(mb, {c: 1}) != M.ract_vec(e, R.mul_basis(b, c)):
                        r.fail("right associativity", (names[m], R.space.names[b], R.space.names[c]))
                if A is not None and M.action is not None:
                    for a in range(A.dim):
                        if M.ract_vec(M.act(a, m), {b: 1}) != M.act_vec({a: 1}, mb):
                            r.fail("actions commute", (A.space.names[a], names[m], R.space.names[b]))
    if not r.checks:
        r.add("module axioms", True)
    return r


def module_from_actions(algebra, space, act, d=None, name=None):
    """Left module from act[(a, m)] = {k: c} on basis indices."""
    AM = tensor_space(algebra.space, space)
    cols = {a * space.dim + m: {k: space.field(c) for k, c in v.items()}
            for (a, m), v in act.items()}
    dm = None
    if d is not None:
        dm = GradedMap(space, space, 1, {j: {i: space.field(c) for i, c in col.items()}
                                         for j, col in d.items()})
    return DgModule(algebra, space, GradedMap(AM, space, 0, cols), dm, name=name)


def free_module(A, rank=1, shifts=None, name=None):
    """A^{⊕rank}, generator i placed in degree -shifts[i]."""
    shifts = shifts or [0] * rank
    basis = []
    for g in range(rank):
        for n, d in zip(A.space.names, A.space.degrees):
            basis.append(("%s·g%d" % (n, g), d + shifts[g]))
    space = GradedSpace(name or "%s^%d" % (A.name, rank), basis, field=A.field)
    act = {}
    dcols = {}
    n = A.dim
    for g in range(rank):
        for b in range(n):
            for a in range(n):
                v = A.mul_basis(a, b)
                if v:
                    act[(a, g * n + b)] = {g * n + k: c for k, c in v.items()}
            dv = A.d.col(b)
            if dv:
                dcols[g * n + b] = {g * n + k: c for k, c in dv.items()}
    return module_from_actions(A, space, act, dcols or None, name)


def restrict_scalars(phi, X):
    """X viewed as a module over phi.source."""
    A = phi.source
    cols = {}
    for a in range(A.dim):
        img = phi.image(a)
        for m in range(X.dim):
            v = X.act_vec(img, {m: 1})
            if v:
                cols[a * X.dim + m] = v
    act = GradedMap(tensor_space(A.space, X.space), X.space, 0, cols, check=False)
    M = DgModule(A, X.space, act, X.d, name="%s|%s" % (X.name, A.name))
    M.parent = X
    _share_words(M, X)
    return M


def _share_words(M, X):
    M.word = X.word
    M.project_word = X.project_word
    M.slots, M.wlen = X.slots, X.wlen


def right_via(phi, X):
    """X (a left module over phi.target with right action) made a right phi.source-module."""
    A = phi.source
    R = X.right_base()
    if R is not phi.target:
        raise ContractError("right base of %s is not the target of the map" % X.name)
    cols = {}
    for m in range(X.dim):
        for a in range(A.dim):
            v = X.ract_vec({m: 1}, phi.image(a))
            if v:
                cols[m * A.dim + a] = v
    ract = GradedMap(tensor_space(X.space, A.space), X.space, 0, cols, check=False)
    M = DgModule(X.algebra, X.space, X.action, X.d, right_algebra=A, right_action=ract,
                 name=X.name)
    _share_words(M, X)
    return M


class TensorOver(DgModule):
    """M ⊗_A N as the cokernel of (m·a)⊗n - m⊗(a·n); basis = kept representative pairs."""

    def __init__(self, M, N, A, generators=None, name=None):
        if M.right_base() is not A:
            raise ContractError("right base of %s is not %s" % (M.name, A.name))
        if N.algebra is not A:
            raise ContractError("left base of %s is not %s" % (N.name, A.name))
        self.left, self.right, self.base = M, N, A
        gens = range(A.dim) if generators is None else generators
        red = Reducer()
        nN = N.dim
        for m in range(M.dim):
            for a in gens:
                ma = M.ract(m, a)
                for n in range(nN):
                    an = N.act(a, n)
                    rel = {}
                    for i, c in ma.items():
                        rel[(i, n)] = c
                    for j, c in an.items():
                        axpy(rel, -c, {(m, j): 1})
                    if rel:
                        red.add(rel)
        self._red = red
        pairs = [(i, j) for i in range(M.dim) for j in range(nN)
                 if (i, j) not in red.basis]
        self.reps = pairs
        self._pos = {p: k for k, p in enumerate(pairs)}
        basis = [("%s⊗%s" % (M.space.names[i], N.space.names[j]),
                  M.space.degrees[i] + N.space.degrees[j]) for i, j in pairs]
        lo = M.space.window[0] + N.space.window[0]
        hi = M.space.window[1] + N.space.window[1]
        space = GradedSpace(name or "%s⊗_%s%s" % (M.name, A.name, N.name), basis,
                            window=(lo, hi), field=M.field)
        self._wcache = {}
        self.slots = M.slots + N.slots
        self.wlen = M.wlen + N.wlen
        self.space = space
        dcols = {}
        for q, (i, j) in enumerate(pairs):
            v = self._pair_tensor(M.d.col(i), {j: 1})
            s = koszul(1, M.space.degrees[i])
            axpy(v, s, self._pair_tensor({i: 1}, N.d.col(j)))
            pv = self.project(v)
            if pv:
                dcols[q] = pv
        d = GradedMap(space, space, 1, dcols, check=False)
        left_alg = M.algebra if M.action is not None else None
        lact = None
        if left_alg is not None:
            cols = {}
            for a in range(left_alg.dim):
                for q, (i, j) in enumerate(pairs):
                    v = self.project(self._pair_tensor(M.act(a, i), {j: 1}))
                    if v:
                        cols[a * space.dim + q] = v
            lact = GradedMap(tensor_space(left_alg.space, space), space, 0, cols, check=False)
        ralg = N.right_algebra if N.right_action is not None else None
        ract = None
        if ralg is not None:
            cols = {}
            for q, (i, j) in enumerate(pairs):
                for b in range(ralg.dim):
                    v = self.project(self._pair_tensor({i: 1}, N.ract(j, b)))
                    if v:
                        cols[q * ralg.dim + b] = v
            ract = GradedMap(tensor_space(space, ralg.space), space, 0, cols, check=False)
        DgModule.__init__(self, left_alg, space, lact, d, ralg, ract, space.name)
        self.slots = M.slots + N.slots
        self.wlen = M.wlen + N.wlen

    @staticmethod
    def _pair_tensor(u, v):
        out = {}
        for i, x in u.items():
            for j, y in v.items():
                out[(i, j)] = x * y
        return out

    def project(self, pairvec):
        v, _ = self._red.reduce(pairvec)
        return {self._pos[k]: c for k, c in v.items()}

    def word(self, q):
        i, j = self.reps[q]
        return self.left.word(i) + self.right.word(j)

    def project_word(self, w):
        got = self._wcache.get(w)
        if got is None:
            lw = self.left.project_word(w[:self.left.wlen])
            rw = self.right.project_word(w[self.left.wlen:])
            got = self.project(self._pair_tensor(lw, rw))
            self._wcache[w] = got
        return got

    def project_words(self, wvec):
        out = {}
        for w, c in wvec.items():
            axpy(out, c, self.project_word(w))
        return out


def tensor_over(M, N, A, generators=None):
    return TensorOver(M, N, A, generators)


def extend_scalars(phi, M, check=True):
    """A' ⊗_A M along phi: A -> A'."""
    if check and not phi.is_valid():
        raise ContractError("extend_scalars needs a unital dg-algebra map")
    Ap = phi.target
    X = right_via(phi, Ap.as_module())
    P = TensorOver(X, M, phi.source, name="%s⊗%s" % (Ap.name, M.name))
    P.phi = phi
    P.base_module = M
    return P


def flatten_module(M, name=None):
    """The same module with single-letter words (forgets tensor structure)."""
    F = DgModule(M.algebra, M.space, M.action, M.d, M.right_algebra, M.right_action,
                 name=name or M.name)
    F.reps = getattr(M, "reps", None)
    F.unflat = M
    return F


def linearity_defect_columns(M, N, degree, pairs=None):
    """Columns of f -> (f(a·x) - (-1)^{p|a|} a·f(x))_{a,x} on the unknowns E(y,x) of degree p."""
    A = M.algebra
    Md, Nd = M.space.degrees, N.space.degrees
    unknowns = pairs if pairs is not None else [
        (x, y) for x in range(M.dim) for y in range(N.dim) if Nd[y] - Md[x] == degree]
    # a·x' contains x with coefficient c  ->  contributes c·e_y at (a, x')
    hits = {}
    for a in range(A.dim):
        for xp in range(M.dim):
            for x, c in M.act(a, xp).items():
                hits.setdefault(x, []).append((a, xp, c))
    cols = {}
    for u, (x, y) in enumerate(unknowns):
        col = {}
        for a, xp, c in hits.get(x, ()):
            axpy(col, c, {(a, xp, y): 1})
        for a in range(A.dim):
            s = -koszul(degree, A.degree(a))
            for z, c in N.act(a, y).items():
                axpy(col, s * c, {(a, x, z): 1})
        cols[u] = col
    return unknowns, cols


def module_hom_basis(M, N, degree):
    """A-linear maps M -> N of the given degree, as GradedMaps."""
    if M.algebra is not N.algebra:
        raise ContractError("modules over different algebras")
    unknowns, cols = linearity_defect_columns(M, N, degree)
    out = []
    for vec in kernel(cols, len(unknowns)):
        mcols = {}
        for u, c in vec.items():
            x, y = unknowns[u]
            mcols.setdefault(x, {})[y] = c
        out.append(GradedMap(M.space, N.space, degree, mcols, check=False))
    return out


def degree_range(M, N):
    return (N.space.window[0] - M.space.window[1], N.space.window[1] - M.space.window[0])


class ModuleHomComplex(Complex):
    """Hom_A(M, N): the A-linear part of the k-linear hom complex."""

    def __init__(self, M, N, degrees=None):
        self.M, self.N = M, N
        lo, hi = degrees if degrees is not None else degree_range(M, N)
        self.maps = []
        basis = []
        for p in range(lo, hi + 1):
            for k, f in enumerate(module_hom_basis(M, N, p)):
                self.maps.append(f)
                basis.append(("h%d_%d" % (p, k), p))
        space = GradedSpace("Hom_%s(%s,%s)" % (M.algebra.name, M.name, N.name), basis,
                            window=(lo, hi + 1), field=M.field)
        self._red = Reducer(track=True)
        for k, f in enumerate(self.maps):
            self._red.add(self._flat(f), tag=k)
        cols = {}
        for k, f in enumerate(self.maps):
            df = hom_differential(f, M.d, N.d)
            if df.degree <= hi:
                cols[k] = self.from_map(df)
            elif not df.is_zero():
                raise ContractError("differential leaves the degree range")
        super().__init__(space, GradedMap(space, space, 1, cols))

    @staticmethod
    def _flat(f):
        return {(x, y): c for x, col in f.cols.items() for y, c in col.items()}

    def to_map(self, vec):
        out = None
        for k, c in vec.items():
            g = self.maps[k].scale(c)
            out = g if out is None else out + g
        return out if out is not None else GradedMap.zero(self.M.space, self.N.space)

    def from_map(self, f):
        res, cb = self._red.reduce(self._flat(f), {})
        if res:
            raise ContractError("map is not A-linear")
        return {k: -c for k, c in cb.items() if c}


def module_hom_complex(M, N, degrees=None):
    if M.algebra is not N.algebra:
        raise ContractError("modules over different algebras")
    return ModuleHomComplex(M, N, degrees)


def is_linear(f, M, N):
    """f(a·x) = (-1)^{|f||a|} a·f(x) for all basis a, x."""
    A = M.algebra
    for a in range(A.dim):
        s = koszul(f.degree, A.degree(a))
        for x in range(M.dim):
            lhs = f.apply(M.act(a, x))
            rhs = N.act_vec({a: 1}, f.col(x))
            if s < 0:
                rhs = {k: -c for k, c in rhs.items()}
            if lhs != rhs:
                return False
    return True
