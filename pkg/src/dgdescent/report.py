"""Verification reports: named checks with witnesses."""

from fractions import Fraction

from .field import Fp


def _plain(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, Fp):
        return str(x.v)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


class Check:
    __slots__ = ("name", "status", "witness")

    def __init__(self, name, status, witness=None):
        self.name = name
        self.status = status
        self.witness = witness

    def to_json(self):
        return {"name": self.name, "status": self.status, "witness": _plain(self.witness)}


class Report:
    """ok is true exactly when no check failed."""

    def __init__(self, title="", truncation=None, seed=None):
        self.title = title
        self.checks = []
        self.truncation = dict(truncation or {})
        self.seed = seed
        self.notes = []

    def add(self, name, passed, witness=None):
        self.checks.append(Check(name, "pass" if passed else "fail", witness))
        return passed

    def fail(self, name, witness=None):
        return self.add(name, False, witness)

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.witness))
        self.truncation.update(other.truncation)
        self.notes.extend(other.notes)
        return self

    @property
    def ok(self):
        return all(c.status == "pass" for c in self.checks)

    def failures(self):
        return [c for c in self.checks if c.status != "pass"]

    def __bool__(self):
        return self.ok

    def to_json(self):
        out = {
            "title": self.title,
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
            "truncation": _plain(self.truncation),
            "seed": self.seed,
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def summary(self):
        bad = self.failures()
        head = "%s: %s (%d checks, %d failed)" % (
            self.title or "report", "ok" if not bad else "FAILED", len(self.checks), len(bad))
        lines = [head]
        for c in bad[:20]:
            lines.append("  fail %s %s" % (c.name, _plain(c.witness)))
        return "\n".join(lines)

    def __repr__(self):
        return self.summary()
