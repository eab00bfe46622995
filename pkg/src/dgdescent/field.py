"""Exact scalar fields: the rationals and prime fields."""

from fractions import Fraction


def _is_prime(p):
    if p < 2:
        return False
    q = 2
    while q * q <= p:
        if p % q == 0:
            return False
        q += 1
    return True


class Fp:
    """Residue class modulo a prime."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixing residues of different primes")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Fp(self._coerce(other), self.p) / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "%d mod %d" % (self.v, self.p)


class Field:
    """Descriptor for the scalar field: rationals when p is None, else GF(p)."""

    def __init__(self, p=None):
        if p is not None and not _is_prime(p):
            raise ValueError("%r is not prime" % (p,))
        self.p = p
        self.zero = self(0)
        self.one = self(1)

    def __call__(self, x):
        if self.p is None:
            if isinstance(x, Fp):
                raise TypeError("residue cannot be coerced to a rational")
            return Fraction(x)
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValueError("wrong characteristic")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError("denominator vanishes mod %d" % self.p)
            return Fp(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return Fp(int(x), self.p)

    def parse(self, s):
        return self(Fraction(s))

    def format(self, x):
        if self.p is not None:
            return str(self(x).v)
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return "%d/%d" % (x.numerator, x.denominator)

    def random(self, rng, lo=-3, hi=3, nonzero=False):
        while True:
            c = self(rng.randint(lo, hi))
            if c or not nonzero:
                return c

    def elements(self):
        if self.p is None:
            raise ValueError("the rationals are infinite")
        return [self(i) for i in range(self.p)]

    def describe(self):
        return {"kind": "QQ"} if self.p is None else {"kind": "GF", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else "GF(%d)" % self.p


QQ = Field()


def GF(p):
    return Field(p)
