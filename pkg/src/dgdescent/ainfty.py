"""A∞-algebras, A∞-coalgebras and A∞-comodules; relation checkers, truncated
bar and cobar constructions, comodule map calculus and homotopy counitality.

Words are tuples of basis indices read left to right; an operation applied
at slot i picks up the Koszul sign (-1)^{|op| * (degree of the letters before i)}.
"""

from itertools import product

from .graded import (GradedSpace, GradedMap, ContractError, tensor_space, shift, koszul,
                     shift_conjugate, hom_differential)
from .algebra import TensorOver, module_hom_basis
from .linalg import axpy, Reducer, cokernel
from .report import Report


class _Slot:
    __slots__ = ("space",)

    def __init__(self, space):
        self.space = space


class FlatPower:
    """X_1 ⊗_k ... ⊗_k X_r with words equal to factor index tuples."""

    def __init__(self, spaces):
        self.slots = tuple(_Slot(s) for s in spaces)
        self.wlen = len(spaces)
        self.space = tensor_space(*spaces) if len(spaces) > 1 else spaces[0]
        self.field = spaces[0].field

    @property
    def dim(self):
        return self.space.dim

    def word(self, q):
        return self.space.word(q) if self.wlen > 1 else (q,)

    def project_word(self, w):
        return {self.space.flat(w) if self.wlen > 1 else w[0]: self.field.one}

    def project_words(self, wvec):
        out = {}
        for w, c in wvec.items():
            axpy(out, c, self.project_word(w))
        return out


def word_degree(slots, w):
    return sum(s.space.degrees[i] for s, i in zip(slots, w))


class Powers:
    """Tensor powers C^{⊗r} (r ≥ 1) and C^{⊗r} ⊗ M (r ≥ 0), over k or over a base algebra."""

    def __init__(self, C, base=None):
        self.C = C
        self.base = base
        self._pow = {}
        self._mpow = {}

    def _cspace(self):
        return self.C if isinstance(self.C, GradedSpace) else self.C.space

    def power(self, r):
        if r < 1:
            raise ValueError("power needs r >= 1")
        if r not in self._pow:
            if self.base is None:
                self._pow[r] = FlatPower([self._cspace()] * r)
            elif r == 1:
                self._pow[r] = self.C
            else:
                self._pow[r] = TensorOver(self.power(r - 1), self.C, self.base,
                                          name="C^%d" % r)
        return self._pow[r]

    def mpower(self, M, r):
        key = (id(M), r)
        if key not in self._mpow:
            if self.base is None:
                ms = M if isinstance(M, GradedSpace) else M.space
                self._mpow[key] = FlatPower([self._cspace()] * r + [ms])
            elif r == 0:
                self._mpow[key] = M
            else:
                self._mpow[key] = TensorOver(self.power(r), M, self.base,
                                             name="C^%d⊗%s" % (r, M.name))
            self._mpow[key]._owner = M
        return self._mpow[key]


def _ends_ok(space, w):
    ends = space.ends
    if not ends:
        return True
    for a, b in zip(w, w[1:]):
        if ends[space.names[a]][0] != ends[space.names[b]][1]:
            return False
    return True


def composable_words(space, n):
    return [w for w in product(range(space.dim), repeat=n) if _ends_ok(space, w)]


# ---------------------------------------------------------------- algebras

class AInftyAlgebra:
    """Operations ops[n]: B^{⊗n} -> B of degree 2-n over k (or k[E] via ``ends``)."""

    def __init__(self, space, ops, unit=None, name=None):
        self.space = space
        self.name = name or space.name
        self.ops = {}
        for n, m in ops.items():
            if m.is_zero():
                continue
            src = tensor_space(*([space] * n)) if n > 1 else space
            if m.source != src or m.target != space:
                raise ContractError("m_%d has wrong shape" % n)
            if m.degree != 2 - n:
                raise ContractError("m_%d must have degree %d" % (n, 2 - n))
            self.ops[n] = m
        self.unit = unit

    @property
    def max_arity(self):
        return max(self.ops) if self.ops else 0

    def op_on_word(self, j, w):
        m = self.ops.get(j)
        if m is None:
            return {}
        return m.col(m.source.flat(w) if j > 1 else w[0])


def check_ainfty(alg, max_m=None):
    """Σ (-1)^{ij+k} m_l(id^i ⊗ m_j ⊗ id^k) on every basis word of length m ≤ max_m."""
    if max_m is None:
        max_m = alg.max_arity + 2
    B = alg.space
    r = Report("A∞ relations %s" % alg.name, truncation={"max_m": max_m})
    failed = []
    for m in range(1, max_m + 1):
        bad = 0
        first = None
        for w in composable_words(B, m):
            res = ainfty_residue(alg, w)
            if res:
                bad += 1
                if first is None:
                    first = {"word": [B.names[i] for i in w],
                             "residue": {B.names[k]: c for k, c in sorted(res.items())}}
        r.add("m=%d" % m, bad == 0, first if bad else None)
        if bad:
            failed.append(m)
    r.failed_arities = failed
    return r


def ainfty_residue(alg, w):
    m = len(w)
    degs = alg.space.degrees
    out = {}
    for j in range(1, m + 1):
        if j not in alg.ops:
            continue
        for i in range(0, m - j + 1):
            k = m - j - i
            l = i + 1 + k
            if l not in alg.ops:
                continue
            inner = alg.op_on_word(j, w[i:i + j])
            if not inner:
                continue
            pre = sum(degs[x] for x in w[:i])
            sign = koszul(i, j) * (-1 if k % 2 else 1) * koszul(2 - j, pre)
            for y, c in inner.items():
                nw = w[:i] + (y,) + w[i + j:]
                if not _ends_ok(alg.space, nw):
                    continue
                axpy(out, sign * c, alg.op_on_word(l, nw))
    return out


class BarComplex:
    """T^c(B[1]) truncated at word length L with the coderivation from m'_n."""

    def __init__(self, alg, L, reduced=None):
        if L < 1:
            raise ValueError("word length bound must be >= 1")
        self.alg = alg
        self.L = L
        B = alg.space
        self.S = shift(B, 1)
        self.ops = {}
        for n, m in alg.ops.items():
            self.ops[n] = shift_conjugate(m, n, "up")
        self.warnings = []
        if alg.ops and max(alg.ops) > L:
            self.warnings.append("operations of arity > %d are invisible at this truncation" % L)
        self.words = []
        for n in range(1, L + 1):
            self.words.extend(composable_words(B, n))
        self._d = {}

    def op_on_word(self, j, w):
        m = self.ops.get(j)
        if m is None:
            return {}
        return m.col(m.source.flat(w) if j > 1 else w[0])

    def d(self, w):
        got = self._d.get(w)
        if got is not None:
            return got
        degs = self.S.degrees
        out = {}
        pre = 0
        r = len(w)
        for i in range(r):
            for j in self.ops:
                if i + j > r:
                    continue
                s = koszul(1, pre)
                for y, c in self.op_on_word(j, w[i:i + j]).items():
                    nw = w[:i] + (y,) + w[i + j:]
                    if _ends_ok(self.S, nw):
                        axpy(out, s * c, {nw: 1})
            pre += degs[w[i]]
        self._d[w] = out
        return out

    def d_vec(self, vec):
        out = {}
        for w, c in vec.items():
            axpy(out, c, self.d(w))
        return out

    def comultiply(self, w):
        """Deconcatenation, including the empty word on either side."""
        return {(w[:p], w[p:]): 1 for p in range(len(w) + 1)}

    def check_d_squared(self):
        r = Report("bar d^2", truncation={"word_length": self.L})
        by_len = {}
        for w in self.words:
            dd = self.d_vec(self.d(w))
            if dd:
                by_len.setdefault(len(w), []).append(w)
        for n in range(1, self.L + 1):
            ws = by_len.get(n, [])
            r.add("d^2 on length %d" % n, not ws,
                  [self.S.names[i] for i in ws[0]] if ws else None)
        r.failed_lengths = sorted(by_len)
        r.notes.extend(self.warnings)
        return r

    def check_coderivation(self):
        """Δ∘d = (d⊗1 + 1⊗d)∘Δ on every word."""
        for w in self.words:
            lhs = {}
            for v, c in self.d(w).items():
                axpy(lhs, c, self.comultiply(v))
            rhs = {}
            for (a, b), c in self.comultiply(w).items():
                for v, x in (self.d(a).items() if a else ()):
                    axpy(rhs, c * x, {(v, b): 1})
                sa = koszul(1, sum(self.S.degrees[i] for i in a))
                for v, x in (self.d(b).items() if b else ()):
                    axpy(rhs, sa * c * x, {(a, v): 1})
            if lhs != rhs:
                return False
        return True


def bar_construct(alg, L):
    return BarComplex(alg, L)


def reduced_algebra(alg, unit_vec):
    """B_red = B / k·1 with induced operations (for strictly unital inputs)."""
    B = alg.space
    kept, proj = cokernel([unit_vec], range(B.dim))
    R = GradedSpace(B.name + "_red", [(B.names[i], B.degrees[i]) for i in kept],
                    window=B.window, field=B.field)
    ops = {}
    for n, m in alg.ops.items():
        src = tensor_space(*([R] * n)) if n > 1 else R
        cols = {}
        for q in range(src.dim):
            w = src.word(q) if n > 1 else (q,)
            lifted = tuple(kept[x] for x in w)
            v = proj(m.col(m.source.flat(lifted) if n > 1 else lifted[0]))
            if v:
                cols[q] = v
        ops[n] = GradedMap(src, R, 2 - n, cols)
    return AInftyAlgebra(R, ops, name=alg.name + "_red")


def associative_as_ainfty(A, name=None):
    """A dg-algebra as A∞: m_1 = d, m_2 = multiplication."""
    ops = {2: A.mult}
    if not A.d.is_zero():
        ops[1] = A.d
    return AInftyAlgebra(A.space, ops, unit=A.unit, name=name or A.name)


# -------------------------------------------------------------- coalgebras

class AInftyCoalgebra:
    """Cooperations coops[n]: C -> C^{⊗n} of degree 2-n, over k or a base algebra.

    Over a base algebra, C is a bimodule and C^{⊗n} is the balanced tensor power.
    """

    def __init__(self, C, coops, base=None, counit=None, coaug=None, name=None):
        self.C = C
        self.base = base
        self.space = C if isinstance(C, GradedSpace) else C.space
        self.name = name or self.space.name
        self.powers = Powers(C, base)
        self.coops = {}
        for n, D in coops.items():
            if D.is_zero():
                continue
            if D.source != self.space or D.target != self.powers.power(n).space:
                raise ContractError("Δ_%d has wrong shape" % n)
            if D.degree != 2 - n:
                raise ContractError("Δ_%d must have degree %d" % (n, 2 - n))
            self.coops[n] = D
        self.counit = counit
        self.coaug = coaug

    @property
    def max_arity(self):
        return max(self.coops) if self.coops else 0

    def coop_words(self, j, c):
        """Δ_j(c) as a vector of representative words."""
        D = self.coops.get(j)
        if D is None:
            return {}
        P = self.powers.power(j)
        return {P.word(q): x for q, x in D.col(c).items()}


def _apply_at(wvec, slots, i, j, fn, op_deg, sign=1):
    """Replace letter i of each word by fn(letter) (a vector of words)."""
    out = {}
    for w, c in wvec.items():
        img = fn(w[i])
        if not img:
            continue
        s = sign * koszul(op_deg, word_degree(slots, w[:i]))
        for v, x in img.items():
            axpy(out, s * c * x, {w[:i] + v + w[i + 1:]: 1})
    return out


def coalgebra_residue(co, c, m):
    P = co.powers
    out = {}
    for l in range(1, m + 1):
        j = m - l + 1
        if l not in co.coops or j not in co.coops:
            continue
        first = co.coop_words(l, c)
        slots = P.power(l).slots
        for i in range(l):
            k = l - 1 - i
            sign = (-1 if i % 2 else 1) * koszul(j, k)
            v = _apply_at(first, slots, i, j, lambda x: co.coop_words(j, x), 2 - j, sign)
            axpy(out, 1, P.power(m).project_words(v))
    return out


def check_ainfty_coalgebra(co, max_m=None):
    """Σ (-1)^{i+jk} (id^i ⊗ Δ_j ⊗ id^k) Δ_l on every basis element."""
    if max_m is None:
        max_m = co.max_arity + 2
    S = co.space
    r = Report("A∞ coalgebra %s" % co.name, truncation={"max_m": max_m})
    failed = []
    for m in range(1, max_m + 1):
        bad = None
        for c in range(S.dim):
            res = coalgebra_residue(co, c, m)
            if res:
                bad = {"element": S.names[c], "terms": len(res)}
                break
        r.add("m=%d" % m, bad is None, bad)
        if bad:
            failed.append(m)
    if co.counit is not None:
        _check_counit(co, r)
    r.failed_arities = failed
    return r


def _check_counit(co, r):
    """(id⊗ε)Δ_2 = id = (ε⊗id)Δ_2 for a coalgebra over k."""
    if co.base is not None:
        return
    eps = co.counit
    ok = True
    for c in range(co.space.dim):
        left = {}
        right = {}
        for w, x in co.coop_words(2, c).items():
            e0 = eps.col(w[0]).get(0)
            e1 = eps.col(w[1]).get(0)
            if e1:
                axpy(left, x * e1, {w[0]: 1})
            if e0:
                axpy(right, x * e0, {w[1]: 1})
        if left != {c: 1} or right != {c: 1}:
            ok = False
    r.add("counit", ok)


def cobar_words(space, max_len):
    out = []
    for n in range(1, max_len + 1):
        out.extend(composable_words(space, n))
    return out


class CobarAlgebra:
    """T(C[-1]) with the derivation from Δ'_n, truncated by word length and degree window."""

    def __init__(self, co, window=None, max_len=4):
        if co.base is not None:
            raise ContractError("cobar is implemented over the ground field")
        self.co = co
        self.S = shift(co.space, -1)
        self.window = window
        self.max_len = max_len
        self.ops = {n: shift_conjugate(D, n, "down") for n, D in co.coops.items()}
        self._d = {}
        self.words = [w for w in cobar_words(co.space, max_len)
                      if window is None or window[0] <= word_degree(
                          [_Slot(self.S)] * len(w), w) <= window[1]]

    def d(self, w):
        got = self._d.get(w)
        if got is not None:
            return got
        degs = self.S.degrees
        out = {}
        pre = 0
        for t, x in enumerate(w):
            s = koszul(1, pre)
            for n, D in self.ops.items():
                P = D.target
                for q, c in D.col(x).items():
                    v = P.word(q) if n > 1 else (q,)
                    nw = w[:t] + v + w[t + 1:]
                    if _ends_ok(self.S, nw):
                        axpy(out, s * c, {nw: 1})
            pre += degs[x]
        self._d[w] = out
        return out

    def d_vec(self, vec):
        out = {}
        for w, c in vec.items():
            axpy(out, c, self.d(w))
        return out

    def check_d_squared(self):
        grow = max(1, max(self.ops, default=1)) - 1
        r = Report("cobar d^2", truncation={"max_len": self.max_len, "window": self.window})
        bad = None
        for w in self.words:
            if len(w) + 2 * grow > self.max_len:
                continue
            if self.d_vec(self.d(w)):
                bad = [self.S.names[i] for i in w]
                break
        r.add("d^2", bad is None, bad)
        return r


def reduced_coalgebra(co):
    """C_red = C / k·coaug with induced cooperations."""
    C = co.space
    unit = co.coaug
    kept, proj = cokernel([unit], range(C.dim))
    R = GradedSpace(C.name + "_red", [(C.names[i], C.degrees[i]) for i in kept],
                    window=C.window, field=C.field, ends=C.ends)
    coops = {}
    for n, D in co.coops.items():
        P = FlatPower([R] * n)
        cols = {}
        for q, i in enumerate(kept):
            v = {}
            for t, c in D.col(i).items():
                w = D.target.word(t) if n > 1 else (t,)
                pw = [proj({x: 1}) for x in w]
                part = {(): c}
                for pv in pw:
                    part = {a + (k,): x * y for a, x in part.items() for k, y in pv.items()}
                for a, x in part.items():
                    axpy(v, x, P.project_word(a))
            if v:
                cols[q] = v
        coops[n] = GradedMap(R, P.space, 2 - n, cols)
    return AInftyCoalgebra(R, coops, name=co.name + "_red")


def cobar_construct(co, window=None, max_len=4):
    if co.coaug is not None:
        co = reduced_coalgebra(co)
    return CobarAlgebra(co, window, max_len)


# -------------------------------------------------------------- comodules

class AInftyComodule:
    """Coactions nu[n]: M -> C^{⊗(n-1)} ⊗ M of degree 2-n."""

    def __init__(self, coalgebra, M, coactions, formal=True, name=None):
        self.co = coalgebra
        self.M = M
        self.space = M if isinstance(M, GradedSpace) else M.space
        self.name = name or self.space.name
        self.formal = formal
        self.nu = {}
        for n, v in coactions.items():
            if v.is_zero():
                continue
            if v.source != self.space or v.target != self.target_power(n - 1).space:
                raise ContractError("ν_%d has wrong shape" % n)
            if v.degree != 2 - n:
                raise ContractError("ν_%d must have degree %d" % (n, 2 - n))
            self.nu[n] = v

    def target_power(self, r):
        return self.co.powers.mpower(self.M, r)

    @property
    def max_arity(self):
        return max(self.nu) if self.nu else 0

    def nu_words(self, j, x):
        v = self.nu.get(j)
        if v is None:
            return {}
        P = self.target_power(j - 1)
        return {P.word(q): c for q, c in v.col(x).items()}


def _coop_at(co, comod, l, i, j):
    """The function applying Δ_j (or ν_j on the module slot) to a letter."""
    if i == l - 1:
        return lambda x: comod.nu_words(j, x)
    return lambda x: co.coop_words(j, x)


def comodule_residue(comod, x, m):
    co = comod.co
    out = {}
    for l in range(1, m + 1):
        j = m - l + 1
        if l not in comod.nu:
            continue
        first = comod.nu_words(l, x)
        slots = comod.target_power(l - 1).slots
        for i in range(l):
            k = l - 1 - i
            if k > 0 and j not in co.coops:
                continue
            if k == 0 and j not in comod.nu:
                continue
            sign = (-1 if i % 2 else 1) * koszul(j, k)
            v = _apply_at(first, slots, i, j, _coop_at(co, comod, l, i, j), 2 - j, sign)
            axpy(out, 1, comod.target_power(m - 1).project_words(v))
    return out


def check_comodule(comod, max_m=None):
    if max_m is None:
        max_m = max(comod.max_arity, comod.co.max_arity) + 2
    r = Report("A∞ comodule %s" % comod.name, truncation={"max_m": max_m})
    failed = []
    for m in range(1, max_m + 1):
        bad = None
        for x in range(comod.space.dim):
            res = comodule_residue(comod, x, m)
            if res:
                bad = {"element": comod.space.names[x], "terms": len(res)}
                break
        r.add("m=%d" % m, bad is None, bad)
        if bad:
            failed.append(m)
    r.failed_arities = failed
    return r


class ComoduleMap:
    """Components f[i]: M -> C^{⊗(i-1)} ⊗ N of degree |f| + 1 - i."""

    def __init__(self, source, target, degree, comps):
        self.source = source
        self.target = target
        self.degree = degree
        self.comps = {}
        for i, f in comps.items():
            if f.is_zero():
                continue
            if f.source != source.space or f.target != target.target_power(i - 1).space:
                raise ContractError("f_%d has wrong shape" % i)
            if f.degree != degree + 1 - i:
                raise ContractError("f_%d must have degree %d" % (i, degree + 1 - i))
            self.comps[i] = f

    def comp_words(self, i, x):
        f = self.comps.get(i)
        if f is None:
            return {}
        P = self.target.target_power(i - 1)
        return {P.word(q): c for q, c in f.col(x).items()}

    def component(self, i):
        f = self.comps.get(i)
        if f is None:
            return GradedMap.zero(self.source.space, self.target.target_power(i - 1).space,
                                  self.degree + 1 - i)
        return f

    def support(self):
        return max(self.comps) if self.comps else 0

    def __eq__(self, other):
        if set(self.comps) != set(other.comps):
            return False
        return all(self.comps[i] == other.comps[i] for i in self.comps)

    __hash__ = None

    def first_difference(self, other, upto):
        for i in range(1, upto + 1):
            if self.component(i) != other.component(i):
                return i
        return None


def comodule_identity(comod):
    return ComoduleMap(comod, comod, 0, {1: GradedMap.identity(comod.space)})


def _from_words(P, src, deg, fn):
    cols = {}
    for x in range(src.dim):
        v = P.project_words(fn(x))
        if v:
            cols[x] = v
    return GradedMap(src, P.space, deg, cols, check=False)


def comodule_map_compose(g, f, upto=None):
    """(g∘f)_n = Σ_{n = l+k-1} (-1)^{|g|(l-1)} (id^{l-1} ⊗ g_k) f_l."""
    if f.target is not g.source:
        raise ContractError("comodule maps are not composable")
    if upto is None:
        upto = f.support() + g.support() - 1
    comps = {}
    P_of = g.target.target_power
    for n in range(1, max(upto, 0) + 1):
        def fn(x, n=n):
            out = {}
            for l in range(1, n + 1):
                k = n - l + 1
                if l not in f.comps or k not in g.comps:
                    continue
                first = f.comp_words(l, x)
                slots = f.target.target_power(l - 1).slots
                s = koszul(g.degree, l - 1)
                axpy(out, 1, _apply_at(first, slots, l - 1, k,
                                       lambda y: g.comp_words(k, y), g.degree + 1 - k, s))
            return out
        comps[n] = _from_words(P_of(n - 1), f.source.space, f.degree + g.degree + 1 - n, fn)
    return ComoduleMap(f.source, g.target, f.degree + g.degree, comps)


def comodule_map_d(f, upto=None):
    """d(f)_n = Σ (-1)^{i+jk} (id^i⊗Δ_j⊗id^k) f_m - Σ (-1)^{p|f|} (id^{p-1}⊗f_q) ν_p.

    The first sum runs over j, m ≥ 1; Δ_j on the module slot (k = 0) is ν_j of the target.
    """
    M, N = f.source, f.target
    co = N.co
    if upto is None:
        upto = f.support() + max(M.max_arity, N.max_arity, co.max_arity) - 1
    comps = {}
    for n in range(1, max(upto, 0) + 1):
        def fn(x, n=n):
            out = {}
            for mm in range(1, n + 1):
                j = n - mm + 1
                if mm not in f.comps:
                    continue
                first = f.comp_words(mm, x)
                slots = N.target_power(mm - 1).slots
                for i in range(mm):
                    k = mm - 1 - i
                    if k > 0 and j not in co.coops:
                        continue
                    if k == 0 and j not in N.nu:
                        continue
                    sign = (-1 if i % 2 else 1) * koszul(j, k)
                    axpy(out, 1, _apply_at(first, slots, i, j, _coop_at(co, N, mm, i, j),
                                           2 - j, sign))
            for p in range(1, n + 1):
                q = n - p + 1
                if p not in M.nu or q not in f.comps:
                    continue
                first = M.nu_words(p, x)
                slots = M.target_power(p - 1).slots
                s = -koszul(p, f.degree)
                axpy(out, 1, _apply_at(first, slots, p - 1, q,
                                       lambda y: f.comp_words(q, y), f.degree + 1 - q, s))
            return out
        comps[n] = _from_words(N.target_power(n - 1), M.space, f.degree + 2 - n, fn)
    return ComoduleMap(M, N, f.degree + 1, comps)


def counit_composite(comod):
    """(ε⊗id)ν_2 : M -> M."""
    co = comod.co
    eps = co.counit
    if eps is None:
        raise ContractError("coalgebra has no counit")
    M = comod.M
    cols = {}
    for x in range(comod.space.dim):
        out = {}
        for w, c in comod.nu_words(2, x).items():
            e = eps.col(w[0])
            if co.base is None:
                z = e.get(0)
                if z:
                    axpy(out, c * z, {w[1]: 1})
            else:
                axpy(out, c, M.act_vec(e, {w[1]: 1}))
        if out:
            cols[x] = out
    return GradedMap(comod.space, comod.space, 0, cols, check=False)


def check_homotopy_counital(comod):
    """Solve d(h) = (ε⊗id)ν_2 - id in the complex (M, ν_1).  Returns (h, report)."""
    S = comod.space
    nu1 = comod.nu.get(1, GradedMap.zero(S, S, 1))
    E = counit_composite(comod)
    target = E - GradedMap.identity(S)
    r = Report("homotopy counital %s" % comod.name)
    linear = comod.co.base is not None and not isinstance(comod.M, GradedSpace)
    if linear:
        cands = module_hom_basis(comod.M, comod.M, -1)
    else:
        cands = []
        for x in range(S.dim):
            for y in range(S.dim):
                if S.degrees[y] == S.degrees[x] - 1:
                    cands.append(GradedMap(S, S, -1, {x: {y: S.field.one}}, check=False))

    def flat(g):
        return {(j, i): c for j, col in g.cols.items() for i, c in col.items()}

    red = Reducer(track=True)
    for t, h in enumerate(cands):
        red.add(flat(hom_differential(h, nu1, nu1)), tag=t)
    res, cb = red.reduce(flat(target), {})
    if res:
        r.add("homotopy exists", False, {"residual_entries": len(res)})
        return None, r
    h = GradedMap.zero(S, S, -1)
    for t, c in cb.items():
        if c:
            h = h + cands[t].scale(-c)
    ok = hom_differential(h, nu1, nu1) == target
    r.add("homotopy exists", ok, {"h_entries": len(h.entries()), "linear": linear})
    return h, r
